"""Command-line front end.

Subcommands::

    extralab lambda      --catalog zsq --center 0
    extralab psh         --catalog log_norm2
    extralab curvature   --family gaussian_re --certificate extrapolation
    extralab extrapolate --scenario disc-point
    extralab extend      --scenario bidisc-diagonal --degree 6
    extralab prop41      --scenario disc-point --cutoffs "sharp;hinge,2;hinge,8"

Exit status: 0 when every verdict passes, 1 on a violated verdict, 2 on
configuration or numerical errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import bergman as bg
from ._parallel import get_threads, set_threads
from .certify import (OPERATOR_CATALOG, catalog_operator, prop41_probe, run_extension_scenario,
                      sweep, thm31_certificate, thm32_certificate)
from .cutoff import Cutoff
from .errors import ExtralabError, InputError
from .metricfam import FAMILY_CATALOG, HermitianMetricFamily, catalog_family, kobayashi_exact
from .scalarfield import (FIELD_CATALOG, RadiusSchedule, ScalarField, catalog_field,
                          lambda_estimate, psh_verdict, subharmonic_verdict)
from .scenarios import CATALOG, load_scenario, parse_complex_list, parse_tgrid, with_overrides

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


# --- output helpers ---------------------------------------------------------

def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return [_jsonable(float(x.real)), _jsonable(float(x.imag))]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if np.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    return x


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def write_json(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(data), indent=2) + "\n")


def write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) if isinstance(v, (float, np.floating, int)) else v for v in row])


def write_dat(path: Path, columns, comment: str) -> None:
    """Whitespace-separated columns for gnuplot."""
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {comment}"]
    for row in zip(*columns):
        lines.append(" ".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _provenance(extra=None) -> dict:
    out = {"package_version": __version__, "threads": get_threads()}
    out.update(extra or {})
    return out


# --- argument parsing ---------------------------------------------------------

def _nodes(text):
    try:
        nr, nt = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected Nr,Ntheta") from None
    return nr, nt


def _parse_point(text) -> list[complex]:
    return list(parse_complex_list(text))


def _schedule_for(fld: ScalarField, radii: str | None, angular: int) -> RadiusSchedule:
    if radii:
        return RadiusSchedule(tuple(float(r) for r in radii.split(",")), angular)
    h = fld.max_spacing
    mult = (12.8, 9.6, 6.4, 3.2) if fld.dims == 1 else (4.0, 3.0, 2.0)
    return RadiusSchedule(tuple(m * h for m in mult), angular if fld.dims == 1 else 32)


def _load_field(args) -> ScalarField:
    if args.field:
        return ScalarField.from_csv(args.field)
    if args.catalog:
        return catalog_field(args.catalog)
    raise InputError("give --catalog NAME or --field PATH")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extralab", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out_default):
        sp.add_argument("--out", default=out_default, help="output directory")
        sp.add_argument("--threads", type=int, default=1, help="worker threads (0 = all cores)")
        sp.add_argument("--tol", type=float, help="headline tolerance override")

    def scenario_flags(sp):
        sp.add_argument("--scenario", required=True,
                        help=f"catalog name ({', '.join(CATALOG)}) or YAML file")
        sp.add_argument("--degree", type=int)
        sp.add_argument("--nodes", type=_nodes, help="Nr,Ntheta")
        sp.add_argument("--tgrid", help="a:b:step")
        sp.add_argument("--cutoff", help="kind,K,w")
        sp.add_argument("--data", help="boundary data as Y-coefficients, e.g. 0,0,1")
        common(sp, "out")

    sp = sub.add_parser("lambda", help="Lambda estimate of a sampled field at a point")
    sp.add_argument("--catalog", help=f"field catalog: {', '.join(FIELD_CATALOG)}")
    sp.add_argument("--field", help="field CSV file")
    sp.add_argument("--center", required=True, help="z or z1,z2")
    sp.add_argument("--direction", help="a,b for a complex line in C^2")
    sp.add_argument("--radii", help="decreasing radii r1,r2,...")
    sp.add_argument("--angular", type=int, default=64)
    common(sp, None)

    sp = sub.add_parser("psh", help="sub-mean-value verdict for a sampled field")
    sp.add_argument("--catalog")
    sp.add_argument("--field")
    sp.add_argument("--directions", default="1,0;0,1;1,1;1,1j;1,-1")
    sp.add_argument("--radii")
    sp.add_argument("--angular", type=int, default=64)
    sp.add_argument("--stride", type=int, default=2)
    common(sp, None)

    sp = sub.add_parser("curvature", help="curvature of a metric family and its certificates")
    sp.add_argument("--family", help=f"family catalog: {', '.join(FAMILY_CATALOG)}")
    sp.add_argument("--csv", help="family CSV file")
    sp.add_argument("--operator", help=f"operator catalog: {', '.join(OPERATOR_CATALOG)}")
    sp.add_argument("--points", default="0.5;1;0.5+0.5j;1.5-0.5j", help="s1;s2;...")
    sp.add_argument("--step", type=float, default=1e-4)
    sp.add_argument("--certificate", choices=["transfer", "extrapolation"],
                    help="transfer needs --operator; extrapolation runs on the family")
    sp.add_argument("--tgrid", default="0:8:0.25")
    common(sp, None)

    for name, text in (("extrapolate", "p_t and p*_t sweep with the monotonicity certificate"),
                       ("extend", "full extension pipeline with the sharp bound"),
                       ("prop41", "soft transverse limit against the sharp boundary norm")):
        sp = sub.add_parser(name, help=text)
        scenario_flags(sp)
        if name == "prop41":
            sp.add_argument("--cutoffs", help="several cutoffs separated by ';'")
    return p


def _scenario_from_args(args):
    sc = load_scenario(args.scenario)
    return with_overrides(
        sc, degree=args.degree, nodes=args.nodes,
        t_grid=parse_tgrid(args.tgrid) if args.tgrid else None,
        cutoff=Cutoff.from_triple(args.cutoff) if args.cutoff else None, tol=args.tol,
        data=parse_complex_list(args.data) if args.data else None)


# --- subcommands ------------------------------------------------------------

def cmd_lambda(args) -> int:
    fld = _load_field(args)
    sched = _schedule_for(fld, args.radii, args.angular)
    center = _parse_point(args.center)
    if fld.dims == 2 and len(center) == 2:
        direction = _parse_point(args.direction) if args.direction else None
        val = lambda_estimate(fld, tuple(center), sched, direction)
    else:
        val = lambda_estimate(fld, center[0], sched)
    print(round(float(val), 10))
    if args.out:
        write_json(Path(args.out) / "report.json", {
            "command": "lambda", "field": fld.name, "center": center, "lambda": val,
            "radii": sched.radii, "provenance": _provenance({"shape": fld.shape})})
    return EXIT_OK


def cmd_psh(args) -> int:
    fld = _load_field(args)
    sched = _schedule_for(fld, args.radii, args.angular)
    tol = args.tol
    if fld.dims == 1:
        v = subharmonic_verdict(fld, sched, tol)
    else:
        dirs = [_parse_point(d) for d in args.directions.split(";")]
        v = psh_verdict(fld, dirs, sched, tol, stride=args.stride)
    print(v)
    if args.out:
        write_json(Path(args.out) / "report.json", {
            "command": "psh", "field": fld.name, "verdict": v.to_dict(), "radii": sched.radii,
            "provenance": _provenance({"shape": fld.shape})})
    return EXIT_OK if v.passed else EXIT_VIOLATION


def cmd_curvature(args) -> int:
    report = {"command": "curvature", "provenance": _provenance()}
    status = EXIT_OK
    if args.operator:
        op = catalog_operator(args.operator)
        cert = thm31_certificate(op, tol=args.tol or 1e-6)
        print(cert.summary())
        report["transfer_certificate"] = cert.to_dict()
        status = EXIT_OK if cert.passed else EXIT_VIOLATION
    else:
        fam: HermitianMetricFamily
        if args.csv:
            fam = HermitianMetricFamily.from_csv(args.csv)
        elif args.family:
            fam = catalog_family(args.family)
        else:
            raise InputError("give --family NAME, --csv PATH or --operator NAME")
        rows = []
        for s in [complex(x.replace("i", "j")) for x in args.points.split(";")]:
            for i, v in enumerate(np.eye(fam.rank)):
                k = kobayashi_exact(fam, s, v, args.step)
                rows.append((s.real, s.imag, i, k))
                print(f"s={s:.4g}  e{i}:  K = {k:.10g}")
        report["kobayashi"] = [{"s": [r[0], r[1]], "basis": r[2], "K": r[3]} for r in rows]
        if args.out:
            write_csv(Path(args.out) / "tables" / "curvature.csv", ["re_s", "im_s", "basis", "K"],
                      rows)
        if args.certificate == "extrapolation":
            t = np.asarray(parse_tgrid(args.tgrid))
            basis = list(np.eye(fam.rank))
            cert = thm32_certificate(fam, basis, basis, t, tol=args.tol or 1e-6)
            print(cert.summary())
            report["extrapolation_certificate"] = cert.to_dict()
            status = EXIT_OK if cert.passed else EXIT_VIOLATION
        elif args.certificate == "transfer":
            raise InputError("the transfer certificate needs --operator")
    if args.out:
        write_json(Path(args.out) / "report.json", report)
    return status


def _sweep_outputs(out: Path, t, p, p_dual, prov):
    write_csv(out / "tables" / "p_t.csv", ["t", "p_t", "p_t_sq"],
              [(a, b, b * b) for a, b in zip(t, p)])
    write_csv(out / "tables" / "p_dual_t.csv",
              ["t"] + [f"p_dual_l{i}" for i in range(p_dual.shape[1])],
              [(a, *row) for a, row in zip(t, p_dual)])
    note = f"nodes {prov['n_radial']},{prov['n_angular']} degree {prov['degree']}"
    write_dat(out / "p_t.dat", [t, p], f"t p_t(v); {note}")
    write_dat(out / "p_dual_t.dat", [t, *p_dual.T], f"t p*_t(l); {note}")


def cmd_extrapolate(args) -> int:
    sc = _scenario_from_args(args)
    fam = sc.family()
    if sc.t[-1] > fam.t_max:
        raise bg.ResolutionError(f"t={sc.t[-1]:g} exceeds t_max={fam.t_max:g}", limit=fam.t_max)
    metric = fam.quotient_family()
    f = bg.y_coefficients(sc.submanifold, sc.degree, sc.f)
    tol = sc.tolerances
    tables = sweep(metric, sc.t, [f], [np.pad(np.atleast_1d(np.asarray(l, complex)),
                                             (0, fam.y_size - len(l))) for l in sc.duals])
    cert = thm32_certificate(fam, [f], sc.duals, sc.t, tol.curvature, tol.convex, tol.monotone,
                             tables=tables)
    print(cert.summary())
    out = Path(args.out)
    prov = fam.provenance()
    prov["jitter"] = metric.provenance.get("jitter", 0.0)
    _sweep_outputs(out, sc.t, tables["p"][:, 0], tables["p_dual"], prov)
    write_json(out / "report.json", {"command": "extrapolate", "scenario": sc.to_dict(),
                                     "extrapolation_certificate": cert.to_dict(),
                                     "provenance": _provenance(prov)})
    return EXIT_OK if cert.passed else EXIT_VIOLATION


def cmd_extend(args) -> int:
    sc = _scenario_from_args(args)
    rep = run_extension_scenario(sc)
    print(rep.summary())
    out = Path(args.out)
    _sweep_outputs(out, rep.t, rep.p, rep.p_dual, rep.provenance)
    g = rep.extension
    write_csv(out / "tables" / "extension.csv", ["alpha", "re", "im"],
              [("-".join(map(str, a)), c.real, c.imag) for a, c in zip(g.basis, g.coeffs)])
    if rep.k_sweep:
        write_csv(out / "tables" / "k_sweep.csv",
                  ["K", "t", "p_sq", "ratio_to_norm", "mass_factor", "ratio_to_C_norm"],
                  [(r["K"], r["t"], r["p_sq"], r["ratio_to_norm"], r["mass_factor"],
                    r["ratio_to_C_norm"]) for r in rep.k_sweep])
    data = rep.to_dict()
    data["command"] = "extend"
    data["provenance"] = _provenance(rep.provenance)
    write_json(out / "report.json", data)
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_prop41(args) -> int:
    sc = _scenario_from_args(args)
    cuts = ([Cutoff.from_triple(c) for c in args.cutoffs.split(";")] if args.cutoffs
            else [sc.cutoff])
    results = [prop41_probe(sc, cutoff=c) for c in cuts]
    out = Path(args.out)
    t = results[0]["t"]
    write_dat(out / "prop41_ratio.dat", [t] + [r["value"] / r["sharp"] for r in results],
              "t " + " ".join(str(c) .replace(" ", "") for c in cuts)
              + "  (q_t(psi)^2 / sharp boundary norm; tends to the mass factor)")
    write_csv(out / "tables" / "prop41.csv",
              ["cutoff", "K", "w", "limit", "sharp", "ratio", "mass_factor", "max_violation"],
              [(str(c), r["cutoff"]["K"], r["cutoff"]["w"], r["limit"], r["sharp"], r["ratio"],
                r["mass_factor"], r["verdict"].max_violation) for c, r in zip(cuts, results)])
    for c, r in zip(cuts, results):
        print(f"{str(c):32s} ratio {r['ratio']:.10g}  mass factor {r['mass_factor']:.10g}  "
              f"{'PASS' if r['verdict'].passed else 'FAIL'}")
    fam = sc.family(cuts[0])
    write_json(out / "report.json", {
        "command": "prop41", "scenario": sc.to_dict(),
        "probes": [{k: (v.to_dict() if k == "verdict" else v) for k, v in r.items()}
                   for r in results],
        "provenance": _provenance(fam.provenance())})
    return EXIT_OK if all(r["verdict"].passed for r in results) else EXIT_VIOLATION


COMMANDS = {"lambda": cmd_lambda, "psh": cmd_psh, "curvature": cmd_curvature,
            "extrapolate": cmd_extrapolate, "extend": cmd_extend, "prop41": cmd_prop41}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_threads(args.threads)
    try:
        return COMMANDS[args.command](args)
    except ExtralabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
