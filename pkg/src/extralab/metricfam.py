"""Finite-rank hermitian metric families over a planar parameter.

A family assigns to each ``s`` in C a positive definite Hermitian matrix
``H(s)``; the norm of a fiber vector is ``sqrt(v^H H(s) v)``.  Curvature is
computed from central differences in ``Re s`` and ``Im s``:

    Theta = H^{-1} (d_sbar d_s H) - H^{-1} (d_sbar H) H^{-1} (d_s H)

and the Kobayashi curvature of ``v`` is ``-(v^H H Theta v) / (2 v^H H v)``,
normalized so that ``H = exp(-phi)`` has curvature ``phi_{s sbar} / 2``.
"""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import linalg
from scipy.interpolate import RectBivariateSpline

from .errors import (ConditioningError, InputError, PositivityError, RankError,
                     ResolutionError)
from .scalarfield import RadiusSchedule, ScalarField, lambda_estimate
from .verdict import Verdict

COND_WARN = 1e12


class ConditioningWarning(UserWarning):
    pass


@dataclass(frozen=True)
class HermitianMetricFamily:
    """``s -> H(s)``; ``re_invariant`` asserts ``H(s) == H(Re s)``."""

    rank: int
    evaluator: Callable[[complex], np.ndarray]
    re_invariant: bool = False
    name: str = ""
    spacing: float | None = None
    provenance: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, s) -> np.ndarray:
        h = np.asarray(self.evaluator(complex(s)), dtype=complex)
        if h.shape != (self.rank, self.rank):
            raise InputError(f"evaluator returned shape {h.shape}, expected rank {self.rank}")
        return h

    def norm(self, s, v) -> float:
        v = np.asarray(v, dtype=complex)
        return float(np.sqrt(max(np.real(np.vdot(v, self(s) @ v)), 0.0)))

    def check(self, points, tol: float = 1e-10) -> None:
        """Spot-check the type invariants at the given parameters."""
        for s in points:
            h = self(s)
            scale = max(np.abs(h).max(), 1e-300)
            if np.abs(h - h.conj().T).max() > tol * scale:
                raise InputError(f"H({s}) is not Hermitian")
            if np.linalg.eigvalsh(0.5 * (h + h.conj().T)).min() <= 0:
                raise PositivityError(f"H({s}) is not positive definite")
            if self.re_invariant and np.abs(h - self(complex(s).real)).max() > tol * scale:
                raise InputError(f"family flagged Re-invariant but H({s}) != H(Re s)")

    @classmethod
    def constant(cls, h, name="constant"):
        h = np.asarray(h, dtype=complex)
        return cls(h.shape[0], lambda s: h, True, name)

    @classmethod
    def scalar_weight(cls, phi, rank=1, name=""):
        """``exp(-phi(s)) * I``."""
        eye = np.eye(rank)
        return cls(rank, lambda s: np.exp(-phi(s)) * eye, False, name)

    @classmethod
    def from_csv(cls, path, name=None) -> "HermitianMetricFamily":
        """Grid-sampled family.

        Columns: ``re_s, im_s`` followed by ``re, im`` pairs of the row-major
        matrix entries.  The nodes must form a full rectangular grid; values in
        between come from bicubic splines of each real component.
        """
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
        try:
            data = np.array([[float(x) for x in r] for r in rows if r[0] not in ("re_s",)])
        except ValueError as exc:
            raise InputError(f"malformed metric file {path}: {exc}") from None
        k = int(round(np.sqrt((data.shape[1] - 2) / 2)))
        if 2 + 2 * k * k != data.shape[1]:
            raise InputError("column count does not match a square matrix")
        xs, ys = np.unique(data[:, 0]), np.unique(data[:, 1])
        if len(xs) * len(ys) != len(data) or min(len(xs), len(ys)) < 4:
            raise InputError("nodes must form a rectangular grid with >= 4 nodes per axis")
        order = np.lexsort((data[:, 1], data[:, 0]))
        entries = data[order, 2:].reshape(len(xs), len(ys), k * k, 2)
        splines = [[RectBivariateSpline(xs, ys, entries[:, :, e, c], kx=3, ky=3, s=0)
                    for c in range(2)] for e in range(k * k)]
        spacing = float(max(np.diff(xs).max(), np.diff(ys).max()))

        def ev(s):
            if not (xs[0] <= s.real <= xs[-1] and ys[0] <= s.imag <= ys[-1]):
                raise ResolutionError(f"s={s} outside the sampled parameter grid")
            vals = [sp[0].ev(s.real, s.imag) + 1j * sp[1].ev(s.real, s.imag) for sp in splines]
            m = np.array(vals).reshape(k, k)
            return 0.5 * (m + m.conj().T)

        return cls(k, ev, False, name or str(path), spacing)


@dataclass(frozen=True)
class OperatorFamily:
    """``A(s) = sum_k coeffs[k] * s**k`` between two metric families."""

    coeffs: tuple
    domain_metric: HermitianMetricFamily
    codomain_metric: HermitianMetricFamily

    def __post_init__(self):
        cs = tuple(np.atleast_2d(np.asarray(c, dtype=complex)) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        if not cs:
            raise InputError("need at least one coefficient")
        shape = (self.codomain_metric.rank, self.domain_metric.rank)
        if any(c.shape != shape for c in cs):
            raise InputError(f"coefficient shapes must all be {shape}")

    def __call__(self, s) -> np.ndarray:
        s = complex(s)
        out = np.zeros_like(self.coeffs[0])
        for c in reversed(self.coeffs):
            out = out * s + c
        return out

    @property
    def re_invariant(self) -> bool:
        return (len(self.coeffs) == 1 and self.domain_metric.re_invariant
                and self.codomain_metric.re_invariant)


@dataclass(frozen=True)
class SectionDictionary:
    """Polynomial sections ``phi(s) = sum_k c_k (s - base)**k`` with ``phi(base) = value``."""

    base: complex
    value: np.ndarray
    entries: tuple

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.value, dtype=complex))
        object.__setattr__(self, "value", v)
        ents = tuple(np.atleast_2d(np.asarray(e, dtype=complex)) for e in self.entries)
        object.__setattr__(self, "entries", ents)
        for e in ents:
            if e.shape[1] != v.size:
                raise InputError("section coefficients must have the fiber dimension")
            if np.abs(e[0] - v).max() > 1e-12 * max(1.0, np.abs(v).max()):
                raise InputError("every dictionary section must pass through the value at the base")

    def section(self, k: int):
        c = self.entries[k]
        s0 = complex(self.base)

        def phi(s):
            ds = np.asarray(s, dtype=complex)[..., None] - s0
            powers = ds[..., None] ** np.arange(c.shape[0])
            return np.einsum("...d,dk->...k", powers[..., 0, :], c)

        return phi


# curvature -----------------------------------------------------------------------------


def _derivatives(fam: HermitianMetricFamily, s: complex, step: float):
    if step <= 0:
        raise InputError("step must be positive")
    if fam.spacing is not None and step < fam.spacing:
        raise ResolutionError(
            f"step {step:g} is below the sampling spacing {fam.spacing:g} of the family",
            limit=fam.spacing,
        )
    s = complex(s)
    stencil = {k: fam(s + d) for k, d in
               (("0", 0), ("x+", step), ("x-", -step), ("y+", 1j * step), ("y-", -1j * step))}
    for key, h in stencil.items():
        try:
            np.linalg.cholesky(0.5 * (h + h.conj().T))
        except np.linalg.LinAlgError:
            raise PositivityError(f"H is not positive definite near s={s} (stencil {key})") from None
    h0 = stencil["0"]
    dx = (stencil["x+"] - stencil["x-"]) / (2 * step)
    dy = (stencil["y+"] - stencil["y-"]) / (2 * step)
    lap = (stencil["x+"] + stencil["x-"] + stencil["y+"] + stencil["y-"] - 4 * h0) / step**2
    d_s = 0.5 * (dx - 1j * dy)
    d_sbar = 0.5 * (dx + 1j * dy)
    return h0, d_s, d_sbar, 0.25 * lap


def _h_theta(fam, s, step):
    """``H @ Theta``, which is Hermitian."""
    h0, d_s, d_sbar, dd = _derivatives(fam, s, step)
    ht = dd - d_sbar @ np.linalg.solve(h0, d_s)
    return h0, 0.5 * (ht + ht.conj().T)


def chern_curvature(fam: HermitianMetricFamily, s, step: float = 1e-4) -> np.ndarray:
    """Curvature endomorphism ``Theta(s)``."""
    h0, ht = _h_theta(fam, s, step)
    return np.linalg.solve(h0, ht)


def kobayashi_exact(fam: HermitianMetricFamily, s, v, step: float = 1e-4) -> float:
    """Kobayashi curvature of ``v`` in the direction d/ds."""
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    if not np.any(v):
        raise InputError("v must be nonzero")
    h0, ht = _h_theta(fam, s, step)
    return float(-np.real(np.vdot(v, ht @ v)) / (2 * np.real(np.vdot(v, h0 @ v))))


def kobayashi_dictionary(norm_family, dictionary: SectionDictionary, schedule: RadiusSchedule,
                         spacing: float | None = None) -> float:
    """``-min`` over dictionary sections of Lambda(log p(phi)) at the base point.

    ``norm_family`` is a :class:`HermitianMetricFamily` or any callable
    ``(s, v) -> norm``.  Because only finitely many sections are tried, the
    result is a lower bound for the Kobayashi curvature.
    """
    if not dictionary.entries:
        raise InputError("empty dictionary")
    if isinstance(norm_family, HermitianMetricFamily):
        norm = norm_family.norm
    else:
        norm = norm_family
    h = spacing or schedule.radii[-1] / 4
    reach = schedule.radii[0] + 3 * h
    n = int(np.ceil(2 * reach / h)) + 1
    s0 = complex(dictionary.base)
    lower = (s0.real - reach, s0.imag - reach)
    best = np.inf
    for k in range(len(dictionary.entries)):
        phi = dictionary.section(k)

        def log_norm(z, phi=phi):
            flat = z.ravel()
            vecs = phi(flat)
            return np.log([norm(sv, vv) for sv, vv in zip(flat, vecs)]).reshape(z.shape)

        f = ScalarField.on_box(log_norm, lower, (lower[0] + 2 * reach, lower[1] + 2 * reach), n)
        best = min(best, lambda_estimate(f, s0, schedule))
    return -best


# dual, quotient, operator norm -----------------------------------------------------------


def dual_metric(fam: HermitianMetricFamily) -> HermitianMetricFamily:
    """Dual family: ``p*(l)^2 = l H^{-1} l^H`` for a row functional ``l``.

    In coordinates ``x = l^T`` this is the family ``(H^{-1})^T``.
    """

    def ev(s):
        h = fam(s)
        c = np.linalg.cond(h)
        if c > COND_WARN:
            warnings.warn(f"H({s}) has condition number {c:.2e}", ConditioningWarning, stacklevel=2)
        return np.linalg.inv(h).T

    return HermitianMetricFamily(fam.rank, ev, fam.re_invariant, f"dual({fam.name})", fam.spacing)


def dual_norm(fam: HermitianMetricFamily, s, functional) -> float:
    l = np.atleast_1d(np.asarray(functional, dtype=complex))
    return float(np.sqrt(np.real(l @ np.linalg.solve(fam(s), l.conj()))))


def _schur_quotient(h, complement, ideal, jitter_rel=1e-12):
    """Quotient Gram on ``span(complement)`` modulo ``span(ideal)``.

    Returns the Schur complement and the jitter that was added to the ideal
    block (0 when none was needed).
    """
    a = complement.conj().T @ h @ complement
    if ideal.shape[1] == 0:
        return 0.5 * (a + a.conj().T), 0.0
    x = complement.conj().T @ h @ ideal
    d = ideal.conj().T @ h @ ideal
    d = 0.5 * (d + d.conj().T)
    jitter = 0.0
    try:
        factor = linalg.cho_factor(d)
        sol = linalg.cho_solve(factor, x.conj().T)
    except linalg.LinAlgError:
        jitter = jitter_rel * float(np.real(np.trace(d)))
        try:
            factor = linalg.cho_factor(d + jitter * np.eye(d.shape[0]))
        except linalg.LinAlgError:
            raise ConditioningError("ideal block not positive even after jitter") from None
        sol = linalg.cho_solve(factor, x.conj().T)
    q = a - x @ sol
    q = 0.5 * (q + q.conj().T)
    if np.linalg.eigvalsh(q).min() <= 0:
        raise ConditioningError("quotient Gram lost positivity")
    return q, jitter


def quotient_metric(fam: HermitianMetricFamily, ideal_basis, complement=None) -> HermitianMetricFamily:
    """Metric induced on ``C^k / span(ideal_basis)`` by minimizing over cosets.

    The quotient is represented on ``complement`` (columns; default: the
    orthogonal complement of the ideal in the standard inner product).  The
    largest jitter used is recorded under ``provenance['jitter']``.
    """
    ideal = np.asarray(ideal_basis, dtype=complex).reshape(fam.rank, -1) if len(ideal_basis) else \
        np.zeros((fam.rank, 0), dtype=complex)
    if ideal.shape[1] and np.linalg.matrix_rank(ideal) < ideal.shape[1]:
        raise RankError("ideal basis is linearly dependent")
    if complement is None:
        if ideal.shape[1]:
            u, _, _ = np.linalg.svd(ideal, full_matrices=True)
            complement = u[:, ideal.shape[1]:]
        else:
            complement = np.eye(fam.rank, dtype=complex)
    complement = np.asarray(complement, dtype=complex)
    if np.linalg.matrix_rank(np.hstack([complement, ideal])) < complement.shape[1] + ideal.shape[1]:
        raise RankError("complement and ideal do not span a direct sum")
    prov = {"jitter": 0.0}

    def ev(s):
        q, jit = _schur_quotient(fam(s), complement, ideal)
        prov["jitter"] = max(prov["jitter"], jit)
        return q

    out = HermitianMetricFamily(complement.shape[1], ev, fam.re_invariant,
                                f"quotient({fam.name})", fam.spacing, prov)
    return out


def operator_norm(op: OperatorFamily, s) -> float:
    """Largest generalized singular value of ``A(s)`` between the two metrics."""
    a = op(s)
    hf = op.codomain_metric(s)
    he = op.domain_metric(s)
    m = a.conj().T @ hf @ a
    try:
        lam = linalg.eigh(0.5 * (m + m.conj().T), 0.5 * (he + he.conj().T), eigvals_only=True)
    except linalg.LinAlgError:
        raise PositivityError(f"domain metric is not positive definite at s={s}") from None
    return float(np.sqrt(max(lam[-1], 0.0)))


def decreases_curvature_verdict(op: OperatorFamily, probes, step: float = 1e-4,
                                tol: float = 1e-6) -> Verdict:
    """Check ``K_codomain(A v) <= K_domain(v)`` at each ``(s, v)`` probe."""
    worst, witness, notes = 0.0, None, []
    for s, v in probes:
        v = np.atleast_1d(np.asarray(v, dtype=complex))
        av = op(s) @ v
        if np.linalg.norm(av) <= 1e-14 * max(np.linalg.norm(v), 1e-300):
            notes.append(f"skipped s={complex(s)}: A v = 0")
            continue
        gap = kobayashi_exact(op.codomain_metric, s, av, step) - kobayashi_exact(op.domain_metric, s, v, step)
        if gap > worst or witness is None:
            worst, witness = max(gap, worst), (complex(s), tuple(complex(x) for x in v))
    return Verdict(worst, tol, witness, "decreases_curvature", tuple(notes))


# non-Hilbertian norms ----------------------------------------------------------------------


def sampled_dual_norm(norm: Callable, s, functional, samples: int = 4000, seed: int = 0) -> float:
    """``sup |l(v)| / p(v)`` over sampled directions; fiber dimension <= 3.

    Approximate from below; used only for qualitative evidence.
    """
    l = np.atleast_1d(np.asarray(functional, dtype=complex))
    if l.size > 3:
        raise InputError("sampled dual norms are limited to fiber dimension <= 3")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((samples, l.size)) + 1j * rng.standard_normal((samples, l.size))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    # include the coordinate axes and the conjugate direction of l
    extra = np.vstack([np.eye(l.size), l.conj()[None, :] / np.linalg.norm(l)])
    v = np.vstack([v, extra])
    ratios = np.abs(v @ l) / np.array([norm(s, x) for x in v])
    return float(ratios.max())


def lemma21_evidence(norm: Callable, probes: Sequence, dictionaries_primal, dictionaries_dual,
                     schedule: RadiusSchedule, samples: int = 2000) -> list[dict]:
    """Dictionary curvature estimates of a norm family and its sampled dual.

    Returned as a table with no verdict attached: for non-Hilbertian norms the
    relation between the two signs is an open question.
    """
    dual = lambda s, l: sampled_dual_norm(norm, s, l, samples)
    rows = []
    for s, dp, dd in zip(probes, dictionaries_primal, dictionaries_dual):
        rows.append({
            "s": complex(s),
            "K_primal_lower": kobayashi_dictionary(norm, dp, schedule),
            "K_dual_lower": kobayashi_dictionary(dual, dd, schedule),
        })
    return rows


# catalog -----------------------------------------------------------------------------------

def _gauss(s):
    return abs(s) ** 2


FAMILY_CATALOG = {
    "flat": lambda: HermitianMetricFamily.constant(np.eye(1), "flat"),
    "gaussian": lambda: HermitianMetricFamily.scalar_weight(_gauss, name="gaussian"),
    "gaussian_re": lambda: HermitianMetricFamily(
        1, lambda s: np.array([[np.exp(-s.real**2)]]), True, "gaussian_re"),
    "diag_gauss": lambda: HermitianMetricFamily(
        2, lambda s: np.diag([np.exp(-abs(s) ** 2), np.exp(-2 * abs(s) ** 2)]), False, "diag_gauss"),
    "gauss_flat": lambda: HermitianMetricFamily(
        2, lambda s: np.diag([np.exp(-abs(s) ** 2), 1.0]), False, "gauss_flat"),
    "anti_gauss_re": lambda: HermitianMetricFamily(
        1, lambda s: np.array([[np.exp(s.real**2)]]), True, "anti_gauss_re"),
}


def catalog_family(name: str) -> HermitianMetricFamily:
    try:
        return FAMILY_CATALOG[name]()
    except KeyError:
        raise InputError(f"unknown family {name!r}; known: {sorted(FAMILY_CATALOG)}") from None


def random_dual_positive_family(rng: np.random.Generator, rank: int = 3, strength: float = 0.3):
    """Random analytic family whose dual has semipositive curvature by construction.

    The dual Gram is ``M = A^H D A`` with ``A(s)`` holomorphic and
    ``D = diag(exp(-phi_j))`` for subharmonic ``phi_j``; the primal is
    ``conj(M)^{-1}``.
    """
    a0 = np.eye(rank) + strength * (rng.standard_normal((rank, rank)) + 1j * rng.standard_normal((rank, rank))) / rank
    a1 = strength * (rng.standard_normal((rank, rank)) + 1j * rng.standard_normal((rank, rank))) / rank
    lap = rng.uniform(0.0, 1.5, size=(rank, 2))
    harm = rng.standard_normal((rank, 2)) + 1j * rng.standard_normal((rank, 2))

    def dual_gram(s):
        a = a0 + a1 * s
        phi = lap[:, 0] * abs(s) ** 2 + lap[:, 1] * s.real**2 + (harm[:, 0] * s + harm[:, 1] * s * s).real
        return a.conj().T @ np.diag(np.exp(-phi)) @ a

    def primal(s):
        return np.linalg.inv(dual_gram(s).conj())

    return HermitianMetricFamily(rank, primal, False, "random_dual_positive")
