"""Weighted Bergman spaces on the unit disc and bidisc.

Sections of the canonical bundle are trivialized by ``dz_1 ^ ... ^ dz_m`` and
truncated to coefficient polynomials ``sum_alpha c_alpha z^alpha`` with
``|alpha|_inf <= degree``.  The Gram matrix of the weighted norm

    q_t(psi)^2 = e^{(m-n) t} c_m integral exp(-chi(t + log r)) |psi|^2 dV

is ``G[a, b] = e^{(m-n) t} c_m integral conj(z^a) z^b w dV`` so that
``q_t(psi)^2 = psi^H G psi``.  All integrals are reduced to the value ``tau``
of the defining function ``r`` and evaluated with the rules of
:mod:`extralab.quadrature`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy import linalg

from . import quadrature as quad
from ._parallel import ordered_map
from .cutoff import Cutoff, mass_factor
from .errors import (ConditioningError, DivergenceError, FeasibilityError, InputError,
                     ResolutionError, UnsupportedError)
from .metricfam import HermitianMetricFamily, _schur_quotient

KINDS = ("point0", "coordinate_line", "diagonal", "origin")
_ALIASES = {"coordinateLine": "coordinate_line", "line": "coordinate_line", "point": "point0",
            "diag": "diagonal"}
_DOMAIN_DIM = {"point0": 1, "coordinate_line": 2, "diagonal": 2, "origin": 2}
_Y_DIM = {"point0": 0, "coordinate_line": 1, "diagonal": 1, "origin": 0}


def volume_density(m: int) -> float:
    """``c_m`` with ``|i^{m^2} dz ^ dzbar| = c_m dV``."""
    if m not in (1, 2):
        raise UnsupportedError(f"model domains have complex dimension 1 or 2, got {m}")
    return float(2**m)


def unit_ball_volume(k: int) -> float:
    """Volume of the unit ball in R^k."""
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1)


@dataclass(frozen=True)
class ModelDomain:
    """Unit disc (``m = 1``) or unit bidisc (``m = 2``) with its quadrature sizes."""

    complex_dim: int = 1
    n_radial: int = 32
    n_angular: int = 32

    def __post_init__(self):
        if self.complex_dim not in (1, 2):
            raise UnsupportedError("model domains are the disc (m=1) and bidisc (m=2)")
        if self.n_radial < 32 or self.n_angular < 32:
            raise InputError("quadrature needs at least 32 radial and 32 angular nodes")

    @property
    def shape(self) -> str:
        return "disc" if self.complex_dim == 1 else "bidisc"

    @property
    def t_max(self) -> float:
        return quad.t_max(self.n_radial)

    def with_nodes(self, n_radial: int, n_angular: int) -> "ModelDomain":
        return ModelDomain(self.complex_dim, n_radial, n_angular)

    def to_dict(self) -> dict:
        return {"shape": self.shape, "m": self.complex_dim, "n_radial": self.n_radial,
                "n_angular": self.n_angular, "t_max": self.t_max}


@dataclass(frozen=True)
class SubmanifoldSpec:
    """A submanifold ``Y`` of a model domain and its defining function ``r``.

    ``point0``           origin of the disc, ``r = |z|^2``
    ``coordinate_line``  ``z2 = 0`` in the bidisc, ``r = |z2|^2``
    ``diagonal``         ``z1 = z2`` in the bidisc, ``r = |z1 - z2|^2 / 4``
    ``origin``           origin of the bidisc, ``r = (|z1|^2 + |z2|^2) / 2``
    """

    kind: str

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise InputError(f"unknown submanifold {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)

    @property
    def domain_dim(self) -> int:
        return _DOMAIN_DIM[self.kind]

    @property
    def complex_dim(self) -> int:
        return _Y_DIM[self.kind]

    @property
    def codim(self) -> int:
        return self.domain_dim - self.complex_dim

    @property
    def r_max(self) -> float:
        return 1.0

    @property
    def breaks(self) -> tuple[float, ...]:
        """Values of ``tau`` where the level-set moments fail to be smooth."""
        return (0.5,) if self.kind == "origin" else ()

    def defining_function(self, *z):
        z = [np.asarray(c, dtype=complex) for c in z]
        if len(z) != self.domain_dim:
            raise InputError(f"{self.kind} lives in C^{self.domain_dim}")
        if self.kind == "point0":
            return np.abs(z[0]) ** 2
        if self.kind == "coordinate_line":
            return np.abs(z[1]) ** 2
        if self.kind == "diagonal":
            return np.abs(z[0] - z[1]) ** 2 / 4.0
        return (np.abs(z[0]) ** 2 + np.abs(z[1]) ** 2) / 2.0

    def y_size(self, degree: int) -> int:
        """Dimension of the restricted space at the given truncation degree."""
        if self.complex_dim == 0:
            return 1
        return degree + 1 if self.kind == "coordinate_line" else 2 * degree + 1

    def y_degree_needed(self, j: int) -> int:
        """Smallest truncation degree whose restrictions contain ``w^j``."""
        if self.complex_dim == 0:
            return 0
        return j if self.kind == "coordinate_line" else (j + 1) // 2

    def log_r_verdict(self, nodes: int = 17):
        """Sub-mean-value evidence that ``log r`` is plurisubharmonic off ``Y``."""
        from .scalarfield import RadiusSchedule, ScalarField, psh_verdict, subharmonic_verdict

        f = lambda *z: np.log(self.defining_function(*z))  # noqa: E731
        if self.domain_dim == 1:
            fld = ScalarField.on_box(f, (0.25, -0.5), (1.25, 0.5), 4 * nodes, name="log r")
            return subharmonic_verdict(fld, RadiusSchedule((0.2, 0.15, 0.1, 0.05), 32))
        lo, hi = (0.5, -0.5, -0.5, -0.5), (1.0, 0.0, 0.0, 0.0)
        if self.kind == "diagonal":
            lo, hi = (0.25, -0.25, -0.75, -0.25), (0.75, 0.25, -0.25, 0.25)
        fld = ScalarField.on_box(f, lo, hi, nodes, name="log r")
        sched = RadiusSchedule((0.125, 0.09375, 0.0625), 32)
        dirs = [(1, 0), (0, 1), (1, 1), (1, 1j), (1, -1)]
        return psh_verdict(fld, dirs, sched, stride=2)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "m": self.domain_dim, "n": self.complex_dim}


def multi_indices(m: int, degree: int) -> list[tuple[int, ...]]:
    """Monomial basis ``z^alpha`` with ``|alpha|_inf <= degree`` in lexicographic order."""
    return list(itertools.product(range(degree + 1), repeat=m))


@dataclass(frozen=True)
class CoefficientVector:
    """A polynomial section ``sum c_alpha z^alpha dz_1 ^ ... ^ dz_m``."""

    complex_dim: int
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if self.degree < 0:
            raise InputError("degree must be >= 0")
        if c.size != (self.degree + 1) ** self.complex_dim:
            raise InputError(f"expected {(self.degree + 1) ** self.complex_dim} coefficients, "
                             f"got {c.size}")
        if not np.all(np.isfinite(c)):
            raise InputError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, alpha, degree: int) -> "CoefficientVector":
        alpha = tuple(alpha)
        c = np.zeros((degree + 1) ** len(alpha), dtype=complex)
        c[multi_indices(len(alpha), degree).index(alpha)] = 1.0
        return cls(len(alpha), degree, c)

    @property
    def basis(self) -> list[tuple[int, ...]]:
        return multi_indices(self.complex_dim, self.degree)

    def __call__(self, *z):
        z = [np.asarray(c, dtype=complex) for c in z]
        out = np.zeros(np.broadcast(*z).shape, dtype=complex)
        for c, alpha in zip(self.coeffs, self.basis):
            if c != 0:
                out = out + c * np.prod([zi**a for zi, a in zip(z, alpha)], axis=0)
        return out

    def to_dict(self) -> dict:
        return {"degree": self.degree, "basis": [list(a) for a in self.basis],
                "re": self.coeffs.real.tolist(), "im": self.coeffs.imag.tolist()}


# --- restriction to Y -------------------------------------------------------

def restriction_constraints(sub: SubmanifoldSpec, degree: int) -> np.ndarray:
    """Matrix of ``psi -> psi|_Y`` from monomials to the Y-basis.

    The Y-basis is the constant for points and ``w^j`` on a line, where ``w``
    is ``z1`` on the coordinate line and the common value on the diagonal.
    """
    idx = multi_indices(sub.domain_dim, degree)
    rows = sub.y_size(degree)
    out = np.zeros((rows, len(idx)))
    for col, alpha in enumerate(idx):
        if sub.complex_dim == 0:
            if not any(alpha):
                out[0, col] = 1.0
        elif sub.kind == "coordinate_line":
            if alpha[1] == 0:
                out[alpha[0], col] = 1.0
        else:
            out[sum(alpha), col] = 1.0
    return out


def ideal_basis(sub: SubmanifoldSpec, degree: int) -> np.ndarray:
    """Columns spanning the kernel of the restriction (sections vanishing on Y)."""
    rmat = restriction_constraints(sub, degree)
    cols = []
    for row in rmat:
        support = np.flatnonzero(row)
        for j in support[1:]:
            v = np.zeros(rmat.shape[1])
            v[j], v[support[0]] = 1.0, -1.0
            cols.append(v)
    free = np.flatnonzero(~rmat.any(axis=0))
    for j in free:
        v = np.zeros(rmat.shape[1])
        v[j] = 1.0
        cols.append(v)
    cols.sort(key=lambda v: int(np.flatnonzero(v > 0)[0]))
    return np.array(cols).T if cols else np.zeros((rmat.shape[1], 0))


def lift_matrix(sub: SubmanifoldSpec, degree: int) -> np.ndarray:
    """A right inverse of the restriction: ``R @ S = I`` (minimum coefficient norm)."""
    rmat = restriction_constraints(sub, degree)
    return rmat.T / rmat.sum(axis=1)


def y_coefficients(sub: SubmanifoldSpec, degree: int, f) -> np.ndarray:
    """Pad or check boundary data against the Y-basis at ``degree``."""
    f = np.atleast_1d(np.asarray(f, dtype=complex)).reshape(-1)
    size = sub.y_size(degree)
    if f.size > size:
        extra = np.flatnonzero(f[size:] != 0)
        if extra.size:
            j = size + int(extra[-1])
            if sub.complex_dim == 0:
                raise FeasibilityError(f"{sub.kind} is a point: boundary data is a single value, "
                                       f"got {f.size} coefficients")
            raise FeasibilityError(
                f"boundary data has a w^{j} term; {sub.kind} needs degree >= "
                f"{sub.y_degree_needed(j)} (configured {degree})"
            )
        f = f[:size]
    out = np.zeros(size, dtype=complex)
    out[: f.size] = f
    return out


# --- level-set moments ------------------------------------------------------

def _circle_moments(rho, degree, n_theta):
    """``sum_theta (2 pi / N) conj(z^a) z^b`` at ``z = rho e^{i theta}``; shape (len(rho), k, k)."""
    th = quad.angular_nodes(n_theta)
    z = np.multiply.outer(np.asarray(rho, dtype=float), np.exp(1j * th))
    pw = z[..., None] ** np.arange(degree + 1)
    return np.einsum("pta,ptb->pab", pw.conj(), pw) * (2.0 * np.pi / n_theta)


def _disc_density_sum(tau, wts, degree, n_theta):
    """``sum_i w_i M(tau_i)`` for ``r = |z|^2`` on the disc (``dA = dtau dtheta / 2``)."""
    mom = _circle_moments(np.sqrt(tau), degree, n_theta)
    return 0.5 * np.tensordot(wts, mom, axes=1)


def plain_disc_gram(degree: int, n_radial: int, n_angular: int) -> np.ndarray:
    """``integral_D conj(z^a) z^b dA`` by polar tensor quadrature."""
    rho, w = quad.gl_interval(n_radial, 0.0, 1.0)
    mom = _circle_moments(rho, degree, n_angular)
    return np.tensordot(w * rho, mom, axes=1)


def plain_gram(domain: ModelDomain, degree: int) -> np.ndarray:
    """Unweighted ``c_m integral conj(z^a) z^b dV`` over the disc or bidisc."""
    p = plain_disc_gram(degree, domain.n_radial, domain.n_angular)
    c = volume_density(domain.complex_dim)
    return c * (p if domain.complex_dim == 1 else np.kron(p, p))


def _origin_density_sum(tau, wts, degree, n_r, n_theta):
    """Level sets of ``(|z1|^2+|z2|^2)/2``; inner GL over ``a = |z1|^2``."""
    total = 0.0
    for ti, wi in zip(tau, wts):
        a, wa = quad.gl_interval(n_r, max(0.0, 2 * ti - 1.0), min(1.0, 2 * ti))
        m1 = _circle_moments(np.sqrt(a), degree, n_theta)
        m2 = _circle_moments(np.sqrt(np.maximum(2 * ti - a, 0.0)), degree, n_theta)
        blk = np.einsum("p,pac,pbd->abcd", wa, m1, m2)
        k = degree + 1
        total = total + wi * 0.5 * blk.reshape(k * k, k * k)
    return total


def _powers(z, n):
    """Columns ``z^0 .. z^n`` by repeated multiplication."""
    out = np.empty((z.size, n + 1), dtype=complex)
    out[:, 0] = 1.0
    for k in range(1, n + 1):
        out[:, k] = out[:, k - 1] * z
    return out


def _lens_points(rho, n_psi, n_xi):
    """Nodes/weights on ``{u : |u + rho| < 1, |u - rho| < 1}`` for each ``rho``.

    With ``y = sin(psi)``, ``|psi| < arccos(rho)``, the lens is
    ``|x| < cos(psi) - rho``; the integrand is then entire in ``psi``.
    """
    rho = np.asarray(rho, dtype=float)[:, None]
    g, wg = quad.gauss_legendre(n_psi)
    half = np.arccos(np.clip(rho, 0.0, 1.0))
    psi = half * g
    xi, wx = quad.gauss_legendre(n_xi)
    h = np.cos(psi) - rho
    wy = half * wg * np.cos(psi) * h
    u = h[..., None] * xi + 1j * np.sin(psi)[..., None]
    w = wy[..., None] * wx
    return u.reshape(len(rho), -1), w.reshape(len(rho), -1)


def _diagonal_density_sum(tau, wts, degree, n_r, n_theta, blocks):
    """Level sets of ``|z1 - z2|^2 / 4`` in coordinates ``u, v = (z1 +- z2) / 2``.

    ``dV(z) = 4 dV(u, v)`` and ``r = |v|^2``; rotating ``v`` multiplies the
    moment of ``(alpha, beta)`` by ``e^{i(|beta| - |alpha|) theta}``, so the
    circle average keeps only equal-total-degree pairs and equals ``2 pi``
    times the moment at real ``v = rho``.  Each block is evaluated in its
    vanishing-order basis (see :func:`_adapted_block`).
    """
    k = (degree + 1) ** 2
    rho = np.sqrt(tau)
    # the integrand is a polynomial of degree <= 4 degree in x: Gauss is exact
    u, w = _lens_points(rho, n_theta, min(n_r, 2 * degree + 1))
    w = (w * (wts * 4.0 * 0.5 * 2.0 * np.pi)[:, None]).reshape(-1, 1)
    pu = _powers(u.reshape(-1), 2 * degree)
    pv = np.repeat(rho[:, None] ** np.arange(2 * degree + 1), u.shape[1], axis=0)
    out = np.zeros((k, k), dtype=complex)
    for j, (pos, coef, _) in enumerate(blocks):
        mono = pu[:, j::-1] * pv[:, : j + 1]  # u^{j-b} v^b, b = 0..j
        ev = mono @ coef
        out[np.ix_(pos, pos)] = (ev.conj() * w).T @ ev
    return out


def _adapted_block(j: int, degree: int):
    """Basis of total-degree-``j`` sections graded by vanishing order on the diagonal.

    Returns the monomial positions of the block, the coefficients of the new
    basis in ``u^{j-b} v^b`` (rows ``b``), the monomial coefficients of the new
    basis, and the vanishing order of each element.  The reduced column echelon
    form is computed in exact rational arithmetic.
    """
    idx = multi_indices(2, degree)
    pos = [i for i, a in enumerate(idx) if a[0] + a[1] == j]
    s = len(pos)
    t = [[Fraction(0)] * s for _ in range(j + 1)]
    for col, i in enumerate(pos):
        a, c = idx[i]
        for p in range(a + 1):
            for q in range(c + 1):
                t[p + q][col] += math.comb(a, p) * math.comb(c, q) * (-1) ** q
    m = [[Fraction(int(r == c)) for c in range(s)] for r in range(s)]
    cols, orders = list(range(s)), []
    pivots = []
    for b in range(j + 1):
        live = [c for c in cols if c not in pivots]
        pc = next((c for c in live if t[b][c] != 0), None)
        if pc is None:
            continue
        scale = t[b][pc]
        for mat in (t, m):
            for r in range(len(mat)):
                mat[r][pc] /= scale
        for c in range(s):
            if c != pc and t[b][c] != 0:
                f = t[b][c]
                for mat in (t, m):
                    for r in range(len(mat)):
                        mat[r][c] -= f * mat[r][pc]
        pivots.append(pc)
        orders.append(b)
    coef = np.array([[float(t[r][c]) for c in pivots] for r in range(j + 1)])
    mono = np.array([[float(m[r][c]) for c in pivots] for r in range(s)])
    return pos, coef, mono, orders


def _density_sum(sub, degree, n_r, n_theta, tau, wts, blocks=None):
    if sub.kind == "point0":
        return _disc_density_sum(tau, wts, degree, n_theta)
    if sub.kind == "coordinate_line":
        plain = plain_disc_gram(degree, n_r, n_theta)
        return np.kron(plain, _disc_density_sum(tau, wts, degree, n_theta))
    if sub.kind == "origin":
        return _origin_density_sum(tau, wts, degree, n_r, n_theta)
    return _diagonal_density_sum(tau, wts, degree, n_r, n_theta, blocks)


# --- Gram families ----------------------------------------------------------

@dataclass(frozen=True)
class GramFamily:
    """``t -> G(t)``, the Gram matrix of ``q_t`` in the monomial basis.

    Internally the Gram is assembled in a basis graded by the order of
    vanishing along ``Y`` (monomials themselves except on the diagonal),
    where it is well scaled even when ``G(t)`` in monomials has condition
    number ``~ e^{2 degree t}``.  Solves use the graded Gram.
    """

    domain: ModelDomain
    submanifold: SubmanifoldSpec
    cutoff: Cutoff = field(default_factory=Cutoff)
    degree: int = 4
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.submanifold.domain_dim != self.domain.complex_dim:
            raise InputError(f"{self.submanifold.kind} does not live in the {self.domain.shape}")
        if self.degree < 0:
            raise InputError("degree must be >= 0")
        d = self.submanifold.codim
        if not self.cutoff.is_sharp and self.cutoff.slope <= d:
            raise DivergenceError(f"cutoff slope K={self.cutoff.slope:g} must exceed the "
                                  f"codimension {d}")

    @property
    def m(self) -> int:
        return self.domain.complex_dim

    @property
    def codim(self) -> int:
        return self.submanifold.codim

    @property
    def size(self) -> int:
        return (self.degree + 1) ** self.m

    @property
    def y_size(self) -> int:
        return self.submanifold.y_size(self.degree)

    @property
    def t_max(self) -> float:
        return self.domain.t_max

    @property
    def exact_y_indices(self) -> tuple[int, ...]:
        """Y-basis elements whose quotient norm is untouched by truncation.

        On the diagonal the total-degree blocks are orthogonal for every ``t``;
        a block ``j <= degree`` holds all homogeneous polynomials of degree
        ``j``, so ``p_t(w^j)`` is exact there.  Blocks ``j > degree`` are
        truncated and only give upper bounds.
        """
        if self.submanifold.kind == "diagonal":
            return tuple(range(self.degree + 1))
        return tuple(range(self.y_size))

    @cached_property
    def restriction(self) -> np.ndarray:
        return restriction_constraints(self.submanifold, self.degree)

    @cached_property
    def ideal(self) -> np.ndarray:
        return ideal_basis(self.submanifold, self.degree)

    @cached_property
    def lift(self) -> np.ndarray:
        return lift_matrix(self.submanifold, self.degree)

    @cached_property
    def _graded(self):
        """(blocks, basis change ``M``, positions of order-0 elements per Y-index)."""
        size = self.size
        if self.submanifold.kind != "diagonal":
            rmat = self.restriction
            lift_pos = [int(np.flatnonzero(row)[0]) for row in rmat]
            return None, np.eye(size), lift_pos
        blocks, basis = [], np.zeros((size, size))
        lift_pos = []
        for j in range(2 * self.degree + 1):
            pos, coef, mono, orders = _adapted_block(j, self.degree)
            blocks.append((pos, coef, orders))
            basis[np.ix_(pos, pos)] = mono
            lift_pos.append(pos[orders.index(0)])
        return blocks, basis, lift_pos

    @property
    def basis_change(self) -> np.ndarray:
        """Monomial coefficients (columns) of the graded basis."""
        return self._graded[1]

    @cached_property
    def graded_lift(self) -> np.ndarray:
        out = np.zeros((self.size, self.y_size))
        out[self._graded[2], np.arange(self.y_size)] = 1.0
        return out

    @cached_property
    def graded_ideal(self) -> np.ndarray:
        rest = sorted(set(range(self.size)) - set(self._graded[2]))
        out = np.zeros((self.size, len(rest)))
        out[rest, np.arange(len(rest))] = 1.0
        return out

    def graded_gram(self, t: float) -> np.ndarray:
        """Gram matrix in the graded basis."""
        t = float(t)
        if t in self._cache:
            return self._cache[t]
        n_r, n_th = self.domain.n_radial, self.domain.n_angular
        tau, wts = quad.transverse_rule(self.cutoff, t, n_r, self.submanifold.r_max,
                                        self.submanifold.breaks)
        keep = wts > 0
        tau, wts = tau[keep], wts[keep]
        blocks = self._graded[0]
        chunks = [slice(i, i + n_r) for i in range(0, tau.size, n_r)]
        parts = ordered_map(
            lambda s: _density_sum(self.submanifold, self.degree, n_r, n_th, tau[s], wts[s],
                                   blocks),
            chunks,
        )
        g = np.zeros((self.size, self.size), dtype=complex)
        for p in parts:
            g = g + p
        g *= math.exp(self.codim * t) * volume_density(self.m)
        g = 0.5 * (g + g.conj().T)
        g.flags.writeable = False
        self._cache[t] = g
        return g

    def gram(self, t: float) -> np.ndarray:
        """Gram matrix in the monomial basis."""
        g = self.graded_gram(t)
        if self._graded[0] is None:
            return g
        inv = linalg.inv(self.basis_change)
        out = inv.conj().T @ g @ inv
        return 0.5 * (out + out.conj().T)

    def as_metric_family(self) -> HermitianMetricFamily:
        return HermitianMetricFamily(self.size, lambda s: self.gram(complex(s).real), True,
                                     f"q[{self.submanifold.kind}]", None, self.provenance())

    def quotient_gram(self, t: float) -> tuple[np.ndarray, float]:
        """Gram of ``p_t`` on the Y-basis and the jitter used."""
        return _schur_quotient(self.graded_gram(t), self.graded_lift.astype(complex),
                               self.graded_ideal.astype(complex))

    def quotient_family(self) -> HermitianMetricFamily:
        prov = self.provenance()

        def ev(s):
            q, jit = self.quotient_gram(complex(s).real)
            prov["jitter"] = max(prov["jitter"], jit)
            return q

        return HermitianMetricFamily(self.y_size, ev, True, f"p[{self.submanifold.kind}]",
                                     None, prov)

    def norm_sq(self, t: float, psi) -> float:
        """``q_t(psi)^2`` for monomial coefficients ``psi``."""
        psi = psi.coeffs if isinstance(psi, CoefficientVector) else np.asarray(psi, complex)
        a = linalg.solve(self.basis_change, psi)
        return float(np.real(np.vdot(a, self.graded_gram(t) @ a)))

    def provenance(self) -> dict:
        return {"n_radial": self.domain.n_radial, "n_angular": self.domain.n_angular,
                "degree": self.degree, "t_max": self.t_max, "jitter": 0.0,
                "cutoff": self.cutoff.to_dict(), "submanifold": self.submanifold.kind}


def gram_matrix(fam: GramFamily, t: float) -> np.ndarray:
    return fam.gram(t)


def quotient_norm(fam: GramFamily, t: float, f) -> float:
    """``p_t(f) = min{q_t(psi) : psi|_Y = f}``."""
    f = y_coefficients(fam.submanifold, fam.degree, f)
    q, _ = fam.quotient_gram(t)
    return float(np.sqrt(max(np.real(np.vdot(f, q @ f)), 0.0)))


def _cho_solve_jitter(d, rhs):
    try:
        return linalg.cho_solve(linalg.cho_factor(d), rhs), 0.0
    except linalg.LinAlgError:
        jitter = 1e-12 * float(np.real(np.trace(d)))
        try:
            return linalg.cho_solve(linalg.cho_factor(d + jitter * np.eye(d.shape[0])), rhs), jitter
        except linalg.LinAlgError:
            raise ConditioningError("Gram block is not positive even after jitter") from None


def minimal_extension(fam: GramFamily, t: float, f) -> CoefficientVector:
    """The ``q_t``-minimal ``g`` with ``g|_Y = f`` (G-orthogonal to the ideal)."""
    f = y_coefficients(fam.submanifold, fam.degree, f)
    g = fam.graded_gram(t)
    base = fam.graded_lift @ f
    ideal = fam.graded_ideal
    if ideal.shape[1]:
        d = ideal.T @ g @ ideal
        y, _ = _cho_solve_jitter(0.5 * (d + d.conj().T), -(ideal.T @ g @ base))
        base = base + ideal @ y
    return CoefficientVector(fam.m, fam.degree, fam.basis_change @ base)


def dual_functional_norm(fam: GramFamily, t: float, functional) -> float:
    """``q*_t(L)`` of the lifted functional ``L = l o restriction``.

    ``q*_t(L)^2 = L G^{-1} L^H``; this equals the dual quotient norm
    ``p*_t(l)`` because ``L`` vanishes on the ideal.
    """
    l = np.atleast_1d(np.asarray(functional, dtype=complex)).reshape(-1)
    if l.size > fam.y_size:
        raise FeasibilityError(f"functional has {l.size} entries, Y-basis has {fam.y_size}")
    l = np.pad(l, (0, fam.y_size - l.size))
    big = l @ fam.graded_lift.T
    try:
        sol = linalg.cho_solve(linalg.cho_factor(fam.graded_gram(t)), big.conj())
    except linalg.LinAlgError:
        raise ConditioningError(f"Gram matrix at t={t:g} is numerically singular") from None
    return float(np.sqrt(max(np.real(big @ sol), 0.0)))


def quotient_dual_norm(fam: GramFamily, t: float, functional) -> float:
    """``p*_t(l)`` from the quotient Gram."""
    l = np.atleast_1d(np.asarray(functional, dtype=complex)).reshape(-1)
    l = np.pad(l, (0, fam.y_size - l.size))
    q, _ = fam.quotient_gram(t)
    return float(np.sqrt(max(np.real(l @ linalg.solve(q, l.conj(), assume_a="her")), 0.0)))


# --- boundary norms ---------------------------------------------------------

def _closed_form(f, sub: SubmanifoldSpec) -> float:
    c = volume_density(sub.domain_dim)
    if sub.kind == "point0":
        return unit_ball_volume(2) * c * abs(f[0]) ** 2
    if sub.kind == "origin":
        # x' = x / sqrt(2) makes r the standard square norm; dV = 4 dV'
        return unit_ball_volume(4) * 4.0 * c * abs(f[0]) ** 2
    if sub.kind == "coordinate_line":
        k = np.arange(f.size)
        return unit_ball_volume(2) * c * float(np.sum(np.abs(f) ** 2 * np.pi / (k + 1)))
    raise UnsupportedError("no closed form is shipped for the diagonal; use sharpLimit")


def _richardson(eps, vals, order):
    """Intercept of a least-squares polynomial fit in ``eps``."""
    a = np.vander(np.asarray(eps), order + 1, increasing=True)
    coef, *_ = np.linalg.lstsq(a, np.asarray(vals), rcond=None)
    return float(coef[0])


def _aitken(vals):
    """Aitken's delta-squared on the last three entries, or the last entry."""
    a, b, c = vals[-3:]
    den = (c - b) - (b - a)
    if den == 0 or not np.isfinite(den) or abs(den) < 1e-14 * abs(c):
        return float(c)
    est = c - (c - b) ** 2 / den
    return float(est) if abs(est - c) <= 10 * abs(c - b) + 1e-300 else float(c)


def boundary_norm_sq(f, sub: SubmanifoldSpec, domain: ModelDomain, method="closedForm",
                     degree: int | None = None, eps0: float = 0.25, levels: int = 6,
                     order: int = 4, t_soft=(12.0, 13.0, 14.0)) -> float:
    """``||f||_Y^2`` by closed form, by the sharp transverse limit, or by a soft limit.

    ``method`` is ``"closedForm"``, ``"sharpLimit"``, ``"softLimit"`` (default
    cutoff) or a :class:`~extralab.cutoff.Cutoff` for the soft limit with that
    cutoff.  The limits use the lift of ``f`` that spreads each Y-coefficient
    evenly over its preimage monomials; any extension gives the same limit.
    """
    f = np.atleast_1d(np.asarray(f, dtype=complex)).reshape(-1)
    if degree is None:
        last = np.flatnonzero(f)
        j = int(last[-1]) if last.size else 0
        degree = max(sub.y_degree_needed(j), 0)
    f = y_coefficients(sub, degree, f)
    if method in ("closedForm", "closed_form"):
        return _closed_form(f, sub)
    if method in ("sharpLimit", "sharp_limit"):
        fam = GramFamily(domain, sub, Cutoff("sharp"), degree)
        psi = fam.lift @ f
        eps = eps0 * 0.5 ** np.arange(levels)
        ts = -2.0 * np.log(eps)
        if ts[-1] > fam.t_max:
            raise ResolutionError(f"eps={eps[-1]:g} needs t={ts[-1]:g} > t_max={fam.t_max:g}",
                                  limit=fam.t_max)
        vals = [fam.norm_sq(t, psi) for t in ts]
        return _richardson(eps, vals, min(order, levels - 1))
    cut = method if isinstance(method, Cutoff) else Cutoff()
    if not isinstance(method, Cutoff) and method not in ("softLimit", "soft_limit"):
        raise InputError(f"unknown boundary norm method {method!r}")
    fam = GramFamily(domain, sub, cut, degree)
    psi = fam.lift @ f
    vals = [fam.norm_sq(t, psi) for t in t_soft]
    return _aitken(vals) / mass_factor(cut, sub.codim)
