"""Acceptance criteria 1-10.

Each test prints one ``criterion N: PASS|FAIL`` line (visible under plain
``pytest -v``) and then asserts.  Tolerances are pinned below and are never
loosened to make a criterion pass.  Run as a script for the summary alone:
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy import linalg

from extralab import cli
from extralab.certify import prop41_probe, run_extension_scenario
from extralab.cutoff import Cutoff, mass_factor
from extralab.metricfam import (catalog_family, chern_curvature, dual_metric, kobayashi_exact,
                                random_dual_positive_family)
from extralab.scalarfield import RadiusSchedule, catalog_field, lambda_estimate, subharmonic_verdict
from extralab.scenarios import CATALOG, with_overrides

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402

TOL_RHO_DISC = 1e-6
TOL_COEFFS = 1e-8
TOL_RHO_LINE = 1e-4
TOL_LINE_SIDES = 1e-4
TOL_MONOTONE = 1e-9
TOL_CLOSED_FORM = 1e-5
TOL_CONVEX = 1e-6
TOL_KOBAYASHI = 1e-6
TOL_FLAT = 1e-10
RATIO_WINDOW = (3.5, 4.5)
TOL_LEMMA = 1e-6
TOL_PROP41 = 1e-2
TOL_MASS = 1e-8
TOL_LAMBDA = 1e-3
TOL_DIAG_RHO = 1e-3
TOL_DIAG_STABILITY = 1e-4

RESULTS: dict[int, bool] = {}


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str):
        RESULTS[n] = bool(ok)
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return emit


def _run_cli(*argv) -> int:
    return cli.main([str(a) for a in argv])


def _read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(x) for x in r] for r in rows[1:]])


@pytest.fixture(scope="module")
def disc_point_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("criterion1")
    code = _run_cli("extend", "--scenario", "disc-point", "--out", out)
    return code, out


def test_criterion_01_disc_point_equality(report, disc_point_run):
    code, out = disc_point_run
    rep = json.loads((out / "report.json").read_text())
    coeffs = np.array(rep["extension"]["re"]) + 1j * np.array(rep["extension"]["im"])
    want = np.zeros_like(coeffs)
    want[0] = 1.0
    # oracle: rho = 2 int_D |g|^2 dA / (2 pi) with closed-form radial moments
    plain = 2 * sum(abs(c) ** 2 * oracles.disc_area_integral(k) for k, c in enumerate(coeffs))
    rho_oracle = plain / (2 * np.pi)
    ok = (code == 0 and abs(rep["rho"] - 1) <= TOL_RHO_DISC and abs(rho_oracle - 1) <= TOL_RHO_DISC
          and np.abs(coeffs - want).max() <= TOL_COEFFS)
    report(1, ok, f"rho={rep['rho']:.12g} oracle={rho_oracle:.12g} "
                  f"coeff err={np.abs(coeffs - want).max():.2e}")
    assert ok


def test_criterion_02_coordinate_line_equality(report):
    worst_rho, worst_side = 0.0, 0.0
    for k in range(6):
        f = np.eye(k + 1)[k]
        rep = run_extension_scenario(with_overrides(CATALOG["bidisc-line"], data=f))
        exact = oracles.line_boundary_norm(k)
        worst_rho = max(worst_rho, abs(rep.rho - 1))
        worst_side = max(worst_side, abs(rep.plain_norm_sq / exact - 1),
                         abs(rep.boundary_norm_sq / exact - 1))
        assert abs(exact - 4 * np.pi**2 / (k + 1)) <= 1e-12 * exact
    ok = worst_rho <= TOL_RHO_LINE and worst_side <= TOL_LINE_SIDES
    report(2, ok, f"max |rho-1|={worst_rho:.2e}, max side rel err={worst_side:.2e}")
    assert ok


@pytest.fixture(scope="module")
def disc_point_sweep():
    sc = CATALOG["disc-point"]
    assert sc.cutoff == Cutoff("hinge", 2.0) and sc.t_grid == tuple(np.arange(0, 8.01, 0.25))
    return run_extension_scenario(sc)


def test_criterion_03_monotone_and_closed_form(report, disc_point_sweep):
    rep = disc_point_sweep
    p = rep.p
    drop = max(0.0, float(-np.diff(p).min()))
    want = np.array([oracles.disc_point_p_sq(t) for t in rep.t])
    rel = float(np.max(np.abs(p**2 / want - 1)))
    ok = drop <= TOL_MONOTONE and rel <= TOL_CLOSED_FORM
    report(3, ok, f"max decrease={drop:.2e}, max rel err vs closed form={rel:.2e}")
    assert ok


def test_criterion_04_dual_convex_decreasing(report, disc_point_sweep):
    rep = disc_point_sweep
    t = rep.t
    logs = np.log(rep.p_dual[:, 0])
    d1 = np.diff(logs) / np.diff(t)
    d2 = np.diff(d1) / (t[2:] - t[:-2])
    first = float(np.diff(logs).max())
    ok = d2.min() >= -TOL_CONVEX and first <= TOL_MONOTONE
    report(4, ok, f"min second divided difference={d2.min():.2e}, max first difference={first:.2e}")
    assert ok


def test_criterion_05_curvature_oracle(report):
    rng = np.random.default_rng(5)
    pts = rng.uniform(-1.5, 1.5, (25, 2)) @ np.array([1, 1j])
    gauss, flat = catalog_family("gaussian"), catalog_family("flat")
    err = max(abs(kobayashi_exact(gauss, s, [1.0]) - 0.5) for s in pts)
    err_flat = max(abs(kobayashi_exact(flat, s, [1.0])) for s in pts)
    ratios = []
    for s in pts:
        k = [kobayashi_exact(gauss, s, [1.0], h) for h in (0.1, 0.05, 0.025)]
        ratios.append((k[0] - k[1]) / (k[1] - k[2]))
    lo, hi = RATIO_WINDOW
    ok = err <= TOL_KOBAYASHI and err_flat <= TOL_FLAT and all(lo <= r <= hi for r in ratios)
    report(5, ok, f"max |K-0.5|={err:.2e}, flat max={err_flat:.1e}, "
                  f"halving ratios in [{min(ratios):.3f}, {max(ratios):.3f}]")
    assert ok


def _curvature_extremes(fam, s):
    """(min K, argmin v, max K, argmax v) over all fiber vectors."""
    h = fam(s)
    ht = h @ chern_curvature(fam, s)
    ht = 0.5 * (ht + ht.conj().T)
    lam, vec = linalg.eigh(ht, 0.5 * (h + h.conj().T))
    # K(v) = -v^H (H Theta) v / (2 v^H H v)
    return -lam[-1] / 2, vec[:, -1], -lam[0] / 2, vec[:, 0]


def test_criterion_06_dual_positive_implies_primal_nonpositive(report):
    rng = np.random.default_rng(6)
    lattice = [complex(x, y) for x in np.linspace(-1, 1, 5) for y in np.linspace(-1, 1, 5)]
    certified, worst = 0, -np.inf
    for _ in range(20):
        fam = random_dual_positive_family(rng)
        dual = dual_metric(fam)
        dual_min = min(_curvature_extremes(dual, s)[0] for s in lattice)
        if dual_min < -TOL_LEMMA:
            continue
        certified += 1
        for s in lattice:
            _, _, kmax, v = _curvature_extremes(fam, s)
            k = kobayashi_exact(fam, s, v)
            worst = max(worst, k, kmax)
    ok = certified == 20 and worst <= TOL_LEMMA
    report(6, ok, f"{certified}/20 families certified K*>=0, max primal K={worst:.2e}")
    assert ok


def test_criterion_07_transverse_limit_ratios(report):
    rows = []
    point = CATALOG["disc-point"]
    for cut in (Cutoff("sharp"), Cutoff("hinge", 2.0), Cutoff("hinge", 4.0), Cutoff("hinge", 8.0)):
        r = prop41_probe(point, cutoff=cut)
        rows.append((1, str(cut), r["ratio"], r["mass_factor"]))
    origin = CATALOG["bidisc-origin"]
    for cut in (Cutoff("hinge", 4.0), Cutoff("hinge", 8.0)):
        r = prop41_probe(origin, cutoff=cut)
        rows.append((2, str(cut), r["ratio"], r["mass_factor"]))
    ratio_err = max(abs(r - c) for _, _, r, c in rows)
    mass_err = max(abs(mass_factor(Cutoff("sharp"), 1) - 1),
                   abs(mass_factor(Cutoff("hinge", 2.0), 1) - 2),
                   abs(mass_factor(Cutoff("hinge", 4.0), 1) - 4 / 3))
    ok = ratio_err <= TOL_PROP41 and mass_err <= TOL_MASS
    detail = ", ".join(f"d={d} {c}: {r:.6f}/{m:.6f}" for d, c, r, m in rows)
    report(7, ok, f"max |ratio - C|={ratio_err:.2e}, mass closed-form err={mass_err:.1e}; {detail}")
    assert ok


def test_criterion_08_lambda_estimator(report):
    errs = {}
    for name, center in (("zsq", 0), ("rez3", 0.3 + 0.2j), ("z4", 1.0), ("log1pz2", 0)):
        fld = catalog_field(name)
        h = fld.max_spacing
        sched = RadiusSchedule(tuple(m * h for m in (12.8, 9.6, 6.4, 3.2)), 64)
        errs[name] = abs(lambda_estimate(fld, center, sched) - oracles.symbolic_lambda(name, center))
    verdicts = {}
    for name, want in (("log_shifted", True), ("neg_zsq", False), ("max_log", True)):
        fld = catalog_field(name)
        h = fld.max_spacing
        sched = RadiusSchedule(tuple(m * h for m in (12.8, 9.6, 6.4, 3.2)), 64)
        verdicts[name] = subharmonic_verdict(fld, sched).passed == want
    ok = max(errs.values()) <= TOL_LAMBDA and all(verdicts.values())
    report(8, ok, "lambda errors " + ", ".join(f"{k}={v:.1e}" for k, v in errs.items())
           + f"; verdict catalog {sum(verdicts.values())}/3 correct")
    assert ok


def test_criterion_09_diagonal_bound(report):
    sc = CATALOG["bidisc-diagonal"]
    assert sc.degree == 4
    r4 = run_extension_scenario(sc)
    r6 = run_extension_scenario(with_overrides(sc, degree=6))
    growth = r6.rho - r4.rho
    ok = (r4.rho <= 1 + TOL_DIAG_RHO and r4.certificate.passed and growth <= TOL_DIAG_STABILITY)
    report(9, ok, f"rho(4)={r4.rho:.10f}, rho(6)={r6.rho:.10f}, growth={growth:.1e}, "
                  f"certificate {'passed' if r4.certificate.passed else 'failed'}")
    assert ok


def test_criterion_10_determinism(report, disc_point_run, tmp_path):
    _, first = disc_point_run
    second = tmp_path / "again"
    code = _run_cli("extend", "--scenario", "disc-point", "--out", second)
    names = sorted(p.relative_to(first) for p in first.rglob("*.csv"))
    same = [(first / n).read_bytes() == (second / n).read_bytes() for n in names]
    ok = code == 0 and bool(names) and all(same)
    report(10, ok, f"{sum(same)}/{len(names)} CSV files byte-identical")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
