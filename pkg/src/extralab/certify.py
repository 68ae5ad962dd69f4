"""Certificates built from the numerical verdicts.

A certificate lists hypothesis checks and conclusion checks separately.  A
conclusion is only *implied* when every hypothesis it depends on passed; if
not, it is still evaluated and recorded, but with status ``not implied`` so
a conclusion that happens to hold numerically is never credited to the
statement.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import bergman as bg
from ._parallel import ordered_map
from .cutoff import Cutoff, mass_factor
from .errors import ExtralabError, InputError, ResolutionError
from .metricfam import (HermitianMetricFamily, OperatorFamily, decreases_curvature_verdict,
                        dual_norm, kobayashi_exact, operator_norm)
from .scalarfield import (RadiusSchedule, ScalarField, convex_decreasing_verdict,
                          subharmonic_verdict)
from .verdict import Verdict

SIGMA0 = -1.0


@dataclass(frozen=True)
class Check:
    """One hypothesis or conclusion of a certificate.

    ``status`` is ``pass``/``fail`` for hypotheses and for implied
    conclusions, ``not implied`` for conclusions whose hypotheses failed, and
    ``skipped`` when the check does not apply.
    """

    name: str
    role: str
    status: str
    verdict: Verdict | None = None
    detail: str = ""

    @property
    def observed(self) -> bool | None:
        return None if self.verdict is None else self.verdict.passed

    def to_dict(self) -> dict:
        return {"name": self.name, "role": self.role, "status": self.status,
                "observed": self.observed, "detail": self.detail,
                "verdict": None if self.verdict is None else self.verdict.to_dict()}


@dataclass(frozen=True)
class Certificate:
    name: str
    checks: tuple[Check, ...]

    @property
    def hypotheses_met(self) -> bool:
        return all(c.status == "pass" for c in self.checks if c.role == "hypothesis")

    @property
    def conclusion_supported(self) -> bool:
        concl = [c for c in self.checks if c.role == "conclusion" and c.status != "skipped"]
        return self.hypotheses_met and all(c.status == "pass" for c in concl)

    @property
    def passed(self) -> bool:
        return all(c.status in ("pass", "skipped") for c in self.checks)

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"name": self.name, "hypotheses_met": self.hypotheses_met,
                "conclusion_supported": self.conclusion_supported, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}

    def summary(self) -> str:
        lines = [f"{self.name}: hypotheses {'met' if self.hypotheses_met else 'NOT met'}, "
                 f"conclusion {'supported' if self.conclusion_supported else 'unsupported'}"]
        for c in self.checks:
            v = "" if c.verdict is None else f" (max violation {c.verdict.max_violation:.3g})"
            lines.append(f"  [{c.status}] {c.role}: {c.name}{v}")
        return "\n".join(lines)


def _hyp(name, verdict, detail=""):
    return Check(name, "hypothesis", "pass" if verdict.passed else "fail", verdict, detail)


def _concl(name, verdict, implied, detail=""):
    if not implied:
        return Check(name, "conclusion", "not implied", verdict, detail)
    return Check(name, "conclusion", "pass" if verdict.passed else "fail", verdict, detail)


# --- operator families ------------------------------------------------------

@dataclass(frozen=True)
class HalfPlaneGrid:
    """Square lattice on ``[re_min, re_max] x [-half_width, half_width]``."""

    re_min: float = 0.25
    re_max: float = 2.25
    half_width: float = 1.0
    nodes_re: int = 33

    @property
    def spacing(self) -> float:
        return (self.re_max - self.re_min) / (self.nodes_re - 1)

    @property
    def shape(self) -> tuple[int, int]:
        n_im = 2 * int(round(self.half_width / self.spacing)) + 1
        return self.nodes_re, n_im

    @property
    def re_values(self) -> np.ndarray:
        return self.re_min + self.spacing * np.arange(self.nodes_re)

    def field(self, fn, name="") -> ScalarField:
        n_im = self.shape[1]
        origin = (self.re_min, -self.spacing * (n_im // 2))
        h = self.spacing
        return ScalarField.from_function(fn, origin, (h, h), self.shape, name=name)


def thm31_certificate(op: OperatorFamily, grid: HalfPlaneGrid = HalfPlaneGrid(),
                      probes=None, schedule: RadiusSchedule | None = None, tol: float = 1e-6,
                      bounded: bool | None = None, step: float = 1e-4) -> Certificate:
    """Curvature decrease implies ``log ||A||`` subharmonic and, on a half plane, decrease.

    ``bounded`` is the caller's claim that ``||A||`` is bounded on the half
    plane.  Without a claim, a far-field probe compares ``log ||A||`` at
    ``Re s = re_max + 2^k (re_max - re_min)``, k = 0..3, with its supremum on
    the grid; growth beyond ``tol`` counts as evidence of unboundedness.
    """
    if probes is None:
        rank = op(complex(grid.re_min)).shape[1]
        ss = [complex(x, y) for x in np.linspace(grid.re_min, grid.re_max, 3)
              for y in (-0.5 * grid.half_width, 0.0, 0.5 * grid.half_width)]
        vs = list(np.eye(rank)) + [np.ones(rank) / np.sqrt(rank)]
        probes = [(s, v) for s in ss for v in vs]
    if schedule is None:
        h = grid.spacing
        schedule = RadiusSchedule((4 * h, 3 * h, 2 * h), 32)
    checks = []
    decrease = decreases_curvature_verdict(op, probes, step, tol)
    checks.append(_hyp("A decreases curvature", decrease))
    hyp_i = decrease.passed

    log_norm = grid.field(lambda z: np.log(np.vectorize(lambda s: operator_norm(op, s))(z)),
                          name="log||A||")
    sub = subharmonic_verdict(log_norm, schedule, tol=tol * max(1.0, log_norm.value_scale))
    checks.append(_concl("log||A|| subharmonic", sub, hyp_i))

    if not op.re_invariant:
        checks.append(Check("||A||(t) decreasing", "conclusion", "skipped",
                            detail="family is not Re-invariant"))
        return Certificate("curvature transfer", tuple(checks))

    ts = grid.re_values
    norms = np.array([operator_norm(op, complex(t)) for t in ts])
    if bounded is None:
        width = grid.re_max - grid.re_min
        far_t = grid.re_max + width * 2.0 ** np.arange(4)
        notes = ()
        try:
            far = np.array([operator_norm(op, complex(t)) for t in far_t])
            with np.errstate(divide="ignore", over="ignore"):
                growth = float(np.max(np.log(far)) - np.log(norms.max()))
        except ExtralabError as exc:
            growth, notes = np.inf, (f"far-field evaluation failed: {exc}",)
        if not np.isfinite(growth) and growth < 0:
            growth = 0.0
        bverdict = Verdict(max(growth, 0.0), tol, tuple(far_t), "bounded (far-field probe)", notes)
        checks.append(_hyp("||A|| bounded", bverdict, "far-field probe"))
    else:
        bverdict = Verdict(0.0 if bounded else np.inf, tol, None, "bounded (claimed)")
        checks.append(_hyp("||A|| bounded", bverdict, "caller claim"))
    implied = hyp_i and bverdict.passed
    with np.errstate(divide="ignore"):
        logs = np.log(norms)
    checks.append(_concl("log||A||(t) convex", convex_decreasing_verdict(
        np.column_stack([ts, logs]), "convex", tol), implied))
    checks.append(_concl("||A||(t) decreasing", convex_decreasing_verdict(
        np.column_stack([ts, norms]), "decreasing", tol * max(1.0, norms.max())), implied))
    return Certificate("curvature transfer", tuple(checks))


# --- norm families ------------------------------------------------------------

def _as_metric(fam) -> HermitianMetricFamily:
    if isinstance(fam, bg.GramFamily):
        return fam.quotient_family()
    if isinstance(fam, HermitianMetricFamily):
        return fam
    raise InputError("thm32_certificate needs a GramFamily or a HermitianMetricFamily")


def _padded(vectors, rank):
    out = []
    for v in vectors:
        v = np.atleast_1d(np.asarray(v, dtype=complex)).reshape(-1)
        if v.size > rank or np.any(v[rank:] != 0):
            raise InputError(f"vector of length {v.size} does not fit a rank-{rank} fiber")
        out.append(np.pad(v[:rank], (0, rank - min(v.size, rank))))
    return out


def _curvature_times(t_grid, count=5):
    t_grid = np.asarray(t_grid, dtype=float)
    return np.unique(np.round(np.linspace(t_grid[0], t_grid[-1], count + 2)[1:-1], 12))


def thm32_certificate(fam, probes_v: Sequence, duals_l: Sequence, t_grid, tol: float = 1e-6,
                      convex_tol: float = 1e-6, monotone_tol: float = 1e-9,
                      curvature_times=None, step: float = 1e-3,
                      tables: dict | None = None) -> Certificate:
    """Semipositive curvature and bounded duals imply ``p_t(v)`` increasing.

    For a :class:`~extralab.bergman.GramFamily` the metric is the quotient
    norm ``p_t`` on the Y-basis.  ``tables`` may carry precomputed
    ``p``/``p_dual`` arrays (rows follow ``t_grid``) to avoid recomputation.
    """
    metric = _as_metric(fam)
    if not metric.re_invariant:
        raise InputError("the extrapolation certificate needs a Re-invariant family")
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size < 3 or np.any(np.diff(t_grid) <= 0):
        raise InputError("t-grid must be strictly increasing with at least 3 points")
    probes_v = _padded(probes_v, metric.rank)
    duals_l = _padded(duals_l, metric.rank)
    ct = _curvature_times(t_grid) if curvature_times is None else np.asarray(curvature_times)

    # (a) K >= 0 on the probe lattice, restricted to the exactly represented summand
    exact = getattr(fam, "exact_y_indices", tuple(range(metric.rank)))
    basis = [np.eye(metric.rank)[i] for i in exact]
    notes = []
    for v in probes_v:
        if np.any(np.delete(v, exact)):
            notes.append("probe vector leaves the exactly represented summand")
    worst, witness = 0.0, None
    for t in ct:
        for v in probes_v + basis:
            k = kobayashi_exact(metric, complex(t), v, step)
            if -k > worst or witness is None:
                worst, witness = max(-k, worst), (float(t), tuple(complex(x) for x in v))
    truncated = sorted(set(range(metric.rank)) - set(exact))
    if truncated:
        kt = min(kobayashi_exact(metric, complex(t), np.eye(metric.rank)[i], step)
                 for t in ct for i in truncated)
        notes.append(f"truncated Y-basis elements {truncated} (diagnostic only): min K = {kt:.3g}")
    semi = Verdict(worst, tol, witness, "K >= 0", tuple(notes))
    checks = [_hyp("semipositive curvature", semi, f"{len(ct)} times x {len(probes_v) + len(basis)} vectors")]

    tables = tables if tables is not None else sweep(metric, t_grid, probes_v, duals_l)
    dual_ok = True
    for i, l in enumerate(duals_l):
        logs = np.log(tables["p_dual"][:, i])
        cv = convex_decreasing_verdict(np.column_stack([t_grid, logs]), "convex", convex_tol)
        dv = convex_decreasing_verdict(np.column_stack([t_grid, logs]), "decreasing", monotone_tol)
        checks.append(_hyp(f"log p*_t(l{i}) convex", cv))
        checks.append(_hyp(f"p*_t(l{i}) bounded (decreasing)", dv))
        dual_ok = dual_ok and cv.passed and dv.passed
    implied = semi.passed and dual_ok
    for i, v in enumerate(probes_v):
        vals = tables["p"][:, i]
        iv = convex_decreasing_verdict(np.column_stack([t_grid, vals]), "increasing", monotone_tol)
        checks.append(_concl(f"p_t(v{i}) increasing", iv, implied))
    return Certificate("monotone extrapolation", tuple(checks))


def sweep(metric: HermitianMetricFamily, t_grid, probes_v, duals_l) -> dict:
    """``p_t(v)`` and ``p*_t(l)`` on the grid; rows follow ``t_grid``."""

    def row(t):
        p = [metric.norm(complex(t), v) for v in probes_v]
        d = [dual_norm(metric, complex(t), l) for l in duals_l]
        return p, d

    rows = ordered_map(row, list(t_grid))
    return {"p": np.array([r[0] for r in rows]).reshape(len(rows), -1),
            "p_dual": np.array([r[1] for r in rows]).reshape(len(rows), -1)}


# --- extension pipeline ------------------------------------------------------

@dataclass(frozen=True)
class Tolerances:
    rho: float = 1e-6
    curvature: float = 1e-6
    convex: float = 1e-6
    monotone: float = 1e-9
    duality: float = 1e-8
    limit: float = 1e-6
    prop41: float = 1e-2

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class ExtensionScenario:
    name: str
    domain: bg.ModelDomain
    submanifold: bg.SubmanifoldSpec
    cutoff: Cutoff
    degree: int
    f: tuple
    t_grid: tuple
    tolerances: Tolerances = field(default_factory=Tolerances)
    duals: tuple = ((1.0,),)
    k_sweep: bool = True
    sigma0: float = SIGMA0

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        if t.ndim != 1 or t.size < 3 or np.any(np.diff(t) <= 0):
            raise InputError("t-grid must be strictly increasing with at least 3 points")
        if t[0] <= self.sigma0:
            raise InputError(f"t-grid must lie in the half plane Re s > {self.sigma0:g}")
        if self.submanifold.domain_dim != self.domain.complex_dim:
            raise InputError(f"{self.submanifold.kind} does not live in the {self.domain.shape}")
        bg.y_coefficients(self.submanifold, self.degree, self.f)

    @property
    def t(self) -> np.ndarray:
        return np.asarray(self.t_grid, dtype=float)

    def family(self, cutoff: Cutoff | None = None) -> bg.GramFamily:
        return bg.GramFamily(self.domain, self.submanifold, cutoff or self.cutoff, self.degree)

    def boundary_method(self) -> str:
        return "sharpLimit" if self.submanifold.kind == "diagonal" else "closedForm"

    def to_dict(self) -> dict:
        return {"name": self.name, "domain": self.domain.to_dict(),
                "submanifold": self.submanifold.to_dict(), "cutoff": self.cutoff.to_dict(),
                "degree": self.degree, "f": [_cjson(x) for x in np.atleast_1d(self.f)],
                "t_grid": [float(x) for x in self.t], "sigma0": self.sigma0,
                "duals": [[_cjson(x) for x in np.atleast_1d(l)] for l in self.duals],
                "tolerances": self.tolerances.to_dict()}


def _cjson(x):
    x = complex(x)
    return x.real if x.imag == 0 else [x.real, x.imag]


@dataclass
class ExtensionReport:
    scenario: ExtensionScenario
    t: np.ndarray
    p: np.ndarray
    p_dual: np.ndarray
    certificate: Certificate
    extension: bg.CoefficientVector
    plain_norm_sq: float
    boundary_norm_sq: float
    boundary_method: str
    rho: float
    mass_factor: float
    limit_bracket: tuple[float, float]
    verdicts: dict
    k_sweep: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.certificate.passed and all(v.passed for v in self.verdicts.values())

    def to_dict(self) -> dict:
        c = self.mass_factor * self.boundary_norm_sq
        return {
            "scenario": self.scenario.to_dict(),
            "passed": self.passed,
            "rho": self.rho,
            "plain_norm_sq": self.plain_norm_sq,
            "boundary_norm_sq": self.boundary_norm_sq,
            "boundary_method": self.boundary_method,
            "mass_factor": self.mass_factor,
            "limit_p_sq_bracket": list(self.limit_bracket),
            "limit_over_C_norm": [b / c for b in self.limit_bracket],
            "limit_over_norm": [b / self.boundary_norm_sq for b in self.limit_bracket],
            "extension": self.extension.to_dict(),
            "verdicts": {k: v.to_dict() for k, v in self.verdicts.items()},
            "extrapolation_certificate": self.certificate.to_dict(),
            "k_sweep": self.k_sweep,
            "provenance": self.provenance,
        }

    def summary(self) -> str:
        lo, hi = self.limit_bracket
        lines = [f"scenario {self.scenario.name}: {'PASS' if self.passed else 'FAIL'}",
                 f"  rho = {self.rho:.12g}   (plain {self.plain_norm_sq:.10g} / "
                 f"||f||_Y^2 {self.boundary_norm_sq:.10g}, {self.boundary_method})",
                 f"  lim p_t^2 in [{lo:.10g}, {hi:.10g}],  C_chi = {self.mass_factor:.10g}"]
        for row in self.k_sweep:
            lines.append(f"  K={row['K']:g}: p_top^2/||f||^2 = {row['ratio_to_norm']:.8g}, "
                         f"C_chi = {row['mass_factor']:.8g}")
        lines += [f"  {v}" for v in self.verdicts.values()]
        lines.append("  " + self.certificate.summary().replace("\n", "\n  "))
        return "\n".join(lines)


def _check_t_range(sc: ExtensionScenario, fam: bg.GramFamily):
    top = float(sc.t[-1])
    if top > fam.t_max:
        raise ResolutionError(f"t={top:g} exceeds t_max={fam.t_max:g}", limit=fam.t_max)


def _duality_verdict(metric, t_grid, v, t_star, tol) -> Verdict:
    """Riesz functional of ``v`` at ``t_star``: equality there, inequality elsewhere."""
    h = metric(complex(t_star))
    l = v.conj() @ h
    pair = abs(l @ v)
    worst, witness = 0.0, None
    for t in t_grid:
        bound = dual_norm(metric, complex(t), l) * metric.norm(complex(t), v)
        gap = (pair - bound) / pair
        if t == t_star:
            gap = abs(gap)
        if gap > worst or witness is None:
            worst, witness = max(gap, worst), float(t)
    return Verdict(worst, tol, witness, f"duality chain (Riesz functional at t={t_star:g})")


def run_extension_scenario(sc: ExtensionScenario) -> ExtensionReport:
    """Gram family, extrapolation certificate, minimal extension and sharp bound."""
    fam = sc.family()
    _check_t_range(sc, fam)
    tol = sc.tolerances
    f = bg.y_coefficients(sc.submanifold, sc.degree, sc.f)
    metric = fam.quotient_family()
    duals = _padded(sc.duals, metric.rank)
    tables = sweep(metric, sc.t, [f], duals)
    cert = thm32_certificate(fam, [f], duals, sc.t, tol.curvature, tol.convex, tol.monotone,
                             tables=tables)

    g = bg.minimal_extension(fam, 0.0, f)
    plain = float(np.real(np.vdot(g.coeffs, bg.plain_gram(sc.domain, sc.degree) @ g.coeffs)))
    method = sc.boundary_method()
    norm_y = bg.boundary_norm_sq(f, sc.submanifold, sc.domain, method, degree=sc.degree)
    rho = plain / norm_y
    c_chi = mass_factor(sc.cutoff, sc.submanifold.codim)
    p_sq = tables["p"][:, 0] ** 2
    bracket = (float(p_sq[-1]), float(p_sq[-1] + max(p_sq[-1] - p_sq[-2], 0.0)))
    p0_sq = bg.quotient_norm(fam, 0.0, f) ** 2

    verdicts = {
        "rho": Verdict(rho - 1.0, tol.rho, None, "rho <= 1 (sharp extension bound)"),
        "p0_is_plain": Verdict(abs(p0_sq - plain) / plain, tol.duality, None,
                               "p_0(v)^2 = plain norm of the minimal extension"),
        "limit": Verdict(p_sq[-1] / (c_chi * norm_y) - 1.0, tol.limit, float(sc.t[-1]),
                         "p_t^2 <= C_chi ||f||_Y^2 on the grid"),
        "restriction": Verdict(float(np.abs(fam.restriction @ g.coeffs - f).max()), 1e-10, None,
                               "minimal extension restricts to f"),
        "duality_0": _duality_verdict(metric, sc.t, f, float(sc.t[0]), tol.duality),
        "duality_top": _duality_verdict(metric, sc.t, f, float(sc.t[-1]), tol.duality),
    }
    ideal = fam.graded_ideal
    if ideal.shape[1]:
        a = np.linalg.solve(fam.basis_change, g.coeffs)
        gg = fam.graded_gram(0.0)
        scale = np.sqrt(np.real(np.vdot(a, gg @ a)) * np.real(np.diag(ideal.T @ gg @ ideal)))
        ortho = float(np.max(np.abs(ideal.T @ gg @ a) / scale))
        verdicts["orthogonal_to_ideal"] = Verdict(ortho, 1e-8, None,
                                                  "minimal extension G-orthogonal to the ideal")

    k_rows = []
    if sc.k_sweep:
        d = sc.submanifold.codim
        for k in (2 * d, 4 * d, 8 * d):
            cut = Cutoff("hinge", float(k))
            fk = sc.family(cut)
            top = float(sc.t[-1])
            vals = [bg.quotient_norm(fk, t, f) ** 2 for t in (float(sc.t[-2]), top)]
            ck = mass_factor(cut, d)
            k_rows.append({"K": float(k), "t": top, "p_sq": vals[1],
                           "bracket": [vals[1], vals[1] + max(vals[1] - vals[0], 0.0)],
                           "ratio_to_norm": vals[1] / norm_y, "mass_factor": ck,
                           "ratio_to_C_norm": vals[1] / (ck * norm_y)})
        ratios = [r["ratio_to_norm"] for r in k_rows]
        worst = max([0.0] + [b - a for a, b in zip(ratios[:-1], ratios[1:])])
        verdicts["k_sweep_tightens"] = Verdict(worst, tol.monotone * max(ratios), None,
                                               "p_top^2/||f||^2 nonincreasing in K")
        bound = max(r["ratio_to_C_norm"] for r in k_rows) - 1.0
        verdicts["k_sweep_bound"] = Verdict(bound, tol.limit, None,
                                            "p_top^2 <= C_chi ||f||^2 for every K")

    prov = fam.provenance()
    prov["jitter"] = max(prov["jitter"], metric.provenance.get("jitter", 0.0))
    return ExtensionReport(sc, sc.t, tables["p"][:, 0], tables["p_dual"], cert, g, plain, norm_y,
                           method, rho, c_chi, bracket, verdicts, k_rows, prov)


def _aitken_limit(vals) -> float:
    return bg._aitken(np.asarray(vals, dtype=float))


def prop41_probe(sc: ExtensionScenario, psi: bg.CoefficientVector | None = None, t_grid=None,
                 cutoff: Cutoff | None = None) -> dict:
    """Soft transverse limit of ``q_t(psi)^2`` against the sharp boundary norm.

    ``psi`` defaults to the even lift of the scenario data.  The ratio of the
    extrapolated limit to the sharp value is compared with ``mass_factor``.
    """
    cut = cutoff or sc.cutoff
    fam = sc.family(cut)
    t_grid = np.arange(0.0, 16.5, 1.0) if t_grid is None else np.asarray(t_grid, dtype=float)
    if t_grid[-1] > fam.t_max:
        raise ResolutionError(f"t={t_grid[-1]:g} exceeds t_max={fam.t_max:g}", limit=fam.t_max)
    if psi is None:
        f = bg.y_coefficients(sc.submanifold, sc.degree, sc.f)
        psi = bg.CoefficientVector(fam.m, sc.degree, fam.lift @ f)
    vals = np.array(ordered_map(lambda t: fam.norm_sq(t, psi), list(t_grid)))
    limit = _aitken_limit(vals)
    restricted = fam.restriction @ psi.coeffs
    sharp = bg.boundary_norm_sq(restricted, sc.submanifold, sc.domain, "sharpLimit",
                                degree=sc.degree)
    c = mass_factor(cut, sc.submanifold.codim)
    ratio = limit / sharp
    verdict = Verdict(abs(ratio - c), sc.tolerances.prop41, float(t_grid[-1]),
                      f"soft/sharp ratio = mass factor ({cut})")
    return {"cutoff": cut.to_dict(), "codim": sc.submanifold.codim, "t": t_grid, "value": vals,
            "limit": limit, "sharp": sharp, "ratio": ratio, "mass_factor": c,
            "verdict": verdict}


# --- operator catalog ----------------------------------------------------------

def _weight_re(s):
    return np.array([[np.exp(-complex(s).real ** 2)]])


OPERATOR_CATALOG = {
    # identity from a positively curved domain metric into a flat codomain
    "weight_domain": lambda: OperatorFamily(
        [np.eye(1)], HermitianMetricFamily(1, _weight_re, True, "exp(-x^2)"),
        HermitianMetricFamily.constant(np.eye(1), "flat")),
    # identity from a flat domain into a positively curved codomain
    "weight_codomain": lambda: OperatorFamily(
        [np.eye(1)], HermitianMetricFamily.constant(np.eye(1), "flat"),
        HermitianMetricFamily(1, _weight_re, True, "exp(-x^2)")),
    # C -> C^2, v -> (v, 0) between flat metrics
    "padded_flat": lambda: OperatorFamily(
        [np.array([[1.0], [0.0]])], HermitianMetricFamily.constant(np.eye(1), "flat"),
        HermitianMetricFamily.constant(np.eye(2), "flat")),
}


def catalog_operator(name: str) -> OperatorFamily:
    try:
        return OPERATOR_CATALOG[name]()
    except KeyError:
        raise InputError(f"unknown operator {name!r}; known: {sorted(OPERATOR_CATALOG)}") from None
