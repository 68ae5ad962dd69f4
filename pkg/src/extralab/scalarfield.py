"""Discrete potential theory on sampled fields in C and C^2.

A :class:`ScalarField` stores real samples on a rectangular lattice whose
real axes are ``(x, y)`` for one complex variable and ``(x1, y1, x2, y2)``
for two.  Values may be ``-inf`` to model upper semicontinuous functions
with poles of ``log``-type.

Circle means use the trapezoid rule over equispaced angles on top of a
grid interpolant.  The Laplacian-type operator ``Lambda`` is estimated from
the normalized circle-mean defect ``q(r) = (mean_r - u(c)) / r**2`` by a
least-squares fit ``q(r) = L + c r**2`` over a schedule of radii.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import (NdBSpline, RectBivariateSpline, RegularGridInterpolator,
                               make_interp_spline)
from scipy.ndimage import maximum_filter

from .errors import InputError, OutOfDomainError, ScheduleError
from .verdict import Verdict

_EDGE_SLACK = 1e-9


@dataclass(frozen=True)
class RadiusSchedule:
    radii: tuple[float, ...]
    angular_nodes: int = 64

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii or any(r <= 0 for r in radii):
            raise ScheduleError("radii must be positive")
        if any(a <= b for a, b in zip(radii[:-1], radii[1:])):
            raise ScheduleError("radii must be strictly decreasing")
        if self.angular_nodes < 16:
            raise ScheduleError("need at least 16 angular nodes")

    @classmethod
    def geometric(cls, r_max: float, count: int = 4, ratio: float = 0.75, angular_nodes: int = 64):
        return cls(tuple(r_max * ratio**k for k in range(count)), angular_nodes)

    def check_against(self, spacing: float) -> None:
        if self.radii[-1] < 2 * spacing * (1 - 1e-12):
            raise ScheduleError(
                f"smallest radius {self.radii[-1]:g} is below twice the grid spacing {spacing:g}"
            )


@dataclass(frozen=True)
class ScalarField:
    """Real samples on a lattice in C (2 real axes) or C^2 (4 real axes)."""

    values: np.ndarray
    origin: tuple[float, ...]
    spacing: tuple[float, ...]
    interpolation: str = "cubic"
    name: str = ""

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "origin", tuple(float(o) for o in self.origin))
        object.__setattr__(self, "spacing", tuple(float(h) for h in self.spacing))
        if vals.ndim not in (2, 4):
            raise InputError("values must have 2 (C) or 4 (C^2) real axes")
        if len(self.origin) != vals.ndim or len(self.spacing) != vals.ndim:
            raise InputError("origin/spacing length must match the number of real axes")
        if any(h <= 0 for h in self.spacing):
            raise InputError("grid spacing must be positive on every axis")
        if any(n < 8 for n in vals.shape):
            raise InputError("need at least 8 nodes per axis")
        if np.isnan(vals).any() or np.isposinf(vals).any():
            raise InputError("values must be finite or -inf")
        if not np.isfinite(vals).any():
            raise InputError("need at least one finite value")
        if self.interpolation not in ("cubic", "linear"):
            raise InputError("interpolation must be 'cubic' or 'linear'")

    # construction -----------------------------------------------------------------

    @classmethod
    def from_function(cls, fn: Callable, origin, spacing, shape, interpolation="cubic", name=""):
        """Sample ``fn`` (taking one or two complex arrays) on a lattice."""
        axes = [o + h * np.arange(n) for o, h, n in zip(origin, spacing, shape)]
        mesh = np.meshgrid(*axes, indexing="ij")
        with np.errstate(divide="ignore", invalid="ignore"):
            if len(shape) == 2:
                vals = fn(mesh[0] + 1j * mesh[1])
            else:
                vals = fn(mesh[0] + 1j * mesh[1], mesh[2] + 1j * mesh[3])
        vals = np.where(np.isnan(vals), -np.inf, np.asarray(vals, dtype=float))
        return cls(vals, tuple(origin), tuple(spacing), interpolation, name)

    @classmethod
    def on_box(cls, fn, lower, upper, nodes, interpolation="cubic", name=""):
        """Sample on the box ``[lower, upper]`` (per real axis) with ``nodes`` per axis."""
        lower = np.atleast_1d(np.asarray(lower, dtype=float))
        upper = np.atleast_1d(np.asarray(upper, dtype=float))
        nodes = np.broadcast_to(np.asarray(nodes), lower.shape)
        spacing = (upper - lower) / (nodes - 1)
        return cls.from_function(fn, tuple(lower), tuple(spacing), tuple(int(n) for n in nodes),
                                 interpolation, name)

    # geometry ------------------------------------------------------------------------

    @property
    def dims(self) -> int:
        return self.values.ndim // 2

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape

    @property
    def max_spacing(self) -> float:
        return max(self.spacing)

    @cached_property
    def axes(self) -> list[np.ndarray]:
        return [o + h * np.arange(n) for o, h, n in zip(self.origin, self.spacing, self.shape)]

    @property
    def upper(self) -> tuple[float, ...]:
        return tuple(o + h * (n - 1) for o, h, n in zip(self.origin, self.spacing, self.shape))

    @cached_property
    def value_scale(self) -> float:
        finite = self.values[np.isfinite(self.values)]
        scale = float(np.max(np.abs(finite))) if finite.size else 0.0
        return scale if scale > 0 else 1.0

    def default_tol(self) -> float:
        return 1e-6 * self.value_scale

    def node_point(self, index) -> tuple:
        """Complex coordinates of a lattice node."""
        real = [self.axes[k][i] for k, i in enumerate(index)]
        return tuple(complex(real[2 * j], real[2 * j + 1]) for j in range(self.dims))

    # interpolation -----------------------------------------------------------------------

    @cached_property
    def _interpolant(self):
        vals = self.values
        neg = np.isneginf(vals)
        if neg.any():
            finite = vals[~neg]
            vals = np.where(neg, finite.min() - 1.0, vals)
        if self.interpolation == "cubic":
            if self.dims == 1:
                spl = RectBivariateSpline(self.axes[0], self.axes[1], vals, kx=3, ky=3, s=0)
                return lambda p: spl.ev(p[:, 0], p[:, 1])
            # tensor-product not-a-knot spline; RegularGridInterpolator's "cubic"
            # is not exact on quadratics
            coef, knots = vals, []
            for k, ax in enumerate(self.axes):
                spl = make_interp_spline(ax, coef, k=3, axis=k)
                coef = np.moveaxis(spl.c, 0, k)
                knots.append(spl.t)
            return NdBSpline(tuple(knots), coef, 3)
        rgi = RegularGridInterpolator(self.axes, vals, method="linear")
        return rgi

    def _real_points(self, pts: np.ndarray) -> np.ndarray:
        """Complex points of shape (..., dims) -> real array (N, 2*dims)."""
        pts = np.asarray(pts, dtype=complex).reshape(-1, self.dims)
        real = np.empty((pts.shape[0], 2 * self.dims))
        real[:, 0::2] = pts.real
        real[:, 1::2] = pts.imag
        return real

    def evaluate(self, points) -> np.ndarray:
        """Interpolated values at complex points (array of shape (..., dims))."""
        points = np.asarray(points, dtype=complex)
        out_shape = points.shape[:-1] if self.dims == 2 else points.shape
        real = self._real_points(points)
        lo = np.asarray(self.origin)
        hi = np.asarray(self.upper)
        h = np.asarray(self.spacing)
        slack = _EDGE_SLACK * h
        if np.any(real < lo - slack) or np.any(real > hi + slack):
            bad = np.nonzero(np.any((real < lo - slack) | (real > hi + slack), axis=1))[0][0]
            raise OutOfDomainError(f"point {real[bad]} lies outside the grid box {lo}..{hi}")
        real = np.clip(real, lo, hi)
        out = np.asarray(self._interpolant(real), dtype=float)
        neg = np.isneginf(self.values)
        if neg.any():
            # a -inf corner in the enclosing cell makes the interpolated value -inf
            frac = (real - lo) / h
            base = np.minimum(np.floor(frac).astype(int), np.array(self.shape) - 2)
            on_node = np.isclose(frac, np.rint(frac), atol=1e-9, rtol=0)
            hit = np.zeros(len(real), dtype=bool)
            ndim = real.shape[1]
            for corner in range(2**ndim):
                offs = np.array([(corner >> k) & 1 for k in range(ndim)])
                idx = base + offs
                # a corner only counts if it has positive interpolation weight
                w_pos = np.all(~on_node | (idx == np.rint(frac).astype(int)), axis=1)
                hit |= w_pos & neg[tuple(idx.T)]
            out[hit] = -np.inf
        return out.reshape(out_shape)

    def with_interpolation(self, kind: str) -> "ScalarField":
        if kind == self.interpolation:
            return self
        return replace(self, interpolation=kind)

    @cached_property
    def interpolation_bound(self) -> "ScalarField":
        """Nodewise bound on the multilinear interpolation error.

        Uses ``sum_k h_k**2 / 8 * max |second difference along axis k|`` with the
        maximum taken over the neighbouring cells.  Across a kink the second
        difference behaves like (slope jump) / h, so the bound stays O(h).
        """
        vals = self.values
        neg = np.isneginf(vals)
        if neg.any():
            vals = np.where(neg, vals[~neg].min() - 1.0, vals)
        bound = np.zeros_like(vals)
        for k, h in enumerate(self.spacing):
            d2 = np.zeros_like(vals)
            sl = [slice(None)] * vals.ndim
            mid = list(sl); mid[k] = slice(1, -1)
            lo = list(sl); lo[k] = slice(0, -2)
            hi = list(sl); hi[k] = slice(2, None)
            d2[tuple(mid)] = np.abs(vals[tuple(hi)] - 2 * vals[tuple(mid)] + vals[tuple(lo)])
            # edge nodes borrow from their inner neighbour
            first = list(sl); first[k] = 0
            second = list(sl); second[k] = 1
            last = list(sl); last[k] = -1
            penult = list(sl); penult[k] = -2
            d2[tuple(first)] = d2[tuple(second)]
            d2[tuple(last)] = d2[tuple(penult)]
            bound += d2 / 8.0  # h^2/8 * (d2 / h^2)
        bound = maximum_filter(bound, size=3, mode="nearest")
        return ScalarField(bound, self.origin, self.spacing, "linear", self.name + ":bound")

    # serialization ------------------------------------------------------------------

    def to_csv(self, path) -> None:
        labels = ["x", "y"] if self.dims == 1 else ["x1", "y1", "x2", "y2"]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["dims", self.dims])
            for lab, o, h, n in zip(labels, self.origin, self.spacing, self.shape):
                w.writerow(["axis", lab, repr(o), repr(h), n])
            w.writerow(["values"])
            rows = self.values.reshape(-1, self.shape[-1])
            for row in rows:
                w.writerow(["-inf" if np.isneginf(v) else repr(float(v)) for v in row])

    @classmethod
    def from_csv(cls, path, interpolation="cubic") -> "ScalarField":
        """Read the grid format written by :meth:`to_csv`.

        Layout: ``dims,<1|2>``; one ``axis,<label>,<origin>,<spacing>,<count>``
        line per real axis; a ``values`` line; then the samples in C order, one
        line per run of the last axis.  ``-inf`` is accepted as a literal.
        """
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
        try:
            if rows[0][0] != "dims":
                raise InputError("first line must be 'dims,<1|2>'")
            dims = int(rows[0][1])
            ax = rows[1 : 1 + 2 * dims]
            if any(r[0] != "axis" for r in ax) or rows[1 + 2 * dims][0] != "values":
                raise InputError("expected axis lines followed by 'values'")
            origin = [float(r[2]) for r in ax]
            spacing = [float(r[3]) for r in ax]
            shape = [int(r[4]) for r in ax]
            data = [float(v) for r in rows[2 + 2 * dims :] for v in r]
        except (IndexError, ValueError) as exc:
            raise InputError(f"malformed field file {path}: {exc}") from None
        if len(data) != math.prod(shape):
            raise InputError(f"expected {math.prod(shape)} values, found {len(data)}")
        return cls(np.array(data).reshape(shape), tuple(origin), tuple(spacing), interpolation,
                   str(path))


# circle means and Lambda ----------------------------------------------------------------


def _circle_points(center, radius, n, direction=None):
    theta = 2 * np.pi * np.arange(n) / n
    ring = radius * np.exp(1j * theta)
    if direction is None:
        return np.asarray(center, dtype=complex)[..., None] + ring
    center = np.asarray(center, dtype=complex)
    direction = np.asarray(direction, dtype=complex)
    return center[..., None, :] + ring[:, None] * direction


def _means(field: ScalarField, centers, radius, n, direction=None) -> np.ndarray:
    pts = _circle_points(centers, radius, n, direction)
    vals = field.evaluate(pts)
    with np.errstate(invalid="ignore"):
        m = vals.mean(axis=-1)
    return np.where(np.isneginf(vals).any(axis=-1), -np.inf, m)


def _as_center(field: ScalarField, center):
    if field.dims == 1:
        c = complex(center if not isinstance(center, (tuple, list, np.ndarray)) else center[0])
        return c
    return np.asarray(center, dtype=complex).reshape(2)


def circle_mean(field: ScalarField, center, radius: float, angular_nodes: int = 64,
                direction=None) -> float:
    """Trapezoid average of interpolated values on a circle.

    For a field on C^2 pass ``direction`` to select the complex line
    ``center + zeta * direction``.
    """
    if field.dims == 2 and direction is None:
        raise InputError("a C^2 field needs a complex direction to define the circle")
    c = _as_center(field, center)
    return float(_means(field, c, radius, angular_nodes, direction))


def _fit_limit(radii, q) -> float:
    """Least-squares intercept of q(r) = L + c r^2."""
    r2 = np.asarray(radii) ** 2
    a = np.column_stack([np.ones_like(r2), r2])
    coef, *_ = np.linalg.lstsq(a, np.asarray(q), rcond=None)
    return float(coef[0])


def lambda_estimate(field: ScalarField, center, schedule: RadiusSchedule, direction=None) -> float:
    """Estimate the normalized circle-mean defect limit at ``center``.

    Equals d^2u/dz dzbar for C^2 data.  Returns ``+inf`` when the center value
    is ``-inf`` and ``-inf`` when some circle meets a ``-inf`` value.
    """
    if len(schedule.radii) < 3:
        raise ScheduleError("lambda_estimate needs at least 3 radii")
    if field.dims == 2 and direction is None:
        raise InputError("a C^2 field needs a complex direction")
    scale = 1.0 if direction is None else float(np.linalg.norm(direction, ord=np.inf))
    schedule.check_against(field.max_spacing / max(scale, 1e-300))
    c = _as_center(field, center)
    u0 = float(field.evaluate(np.asarray(c)[None] if field.dims == 2 else np.array([c]))[0])
    if np.isneginf(u0):
        return np.inf
    means = np.array([float(_means(field, c, r, schedule.angular_nodes, direction))
                      for r in schedule.radii])
    if np.isneginf(means).any():
        return -np.inf
    q = (means - u0) / np.asarray(schedule.radii) ** 2
    return _fit_limit(schedule.radii, q)


def directional_lambda(field2d: ScalarField, disc_map, schedule: RadiusSchedule) -> float:
    """Lambda of the pullback ``u(a + zeta b)`` at ``zeta = 0``.

    ``disc_map`` is the pair ``(a, b)`` of vectors in C^2.
    """
    if field2d.dims != 2:
        raise InputError("directional_lambda needs a field on C^2")
    a, b = (np.asarray(v, dtype=complex).reshape(2) for v in disc_map)
    if not np.any(b):
        raise InputError("disc direction must be nonzero")
    return lambda_estimate(field2d, a, schedule, direction=b)


# verdicts ---------------------------------------------------------------------------------


def _fitting_nodes(field: ScalarField, reach) -> list[np.ndarray]:
    """Per real axis, indices of nodes at distance >= reach[axis] from the box edge."""
    out = []
    for ax, r in zip(field.axes, reach):
        lo, hi = ax[0] + r - 1e-12, ax[-1] - r + 1e-12
        out.append(np.nonzero((ax >= lo) & (ax <= hi))[0])
    return out


def _sub_mean_scan(field, centers_idx, schedule, direction, tol, label, allowance):
    """Worst sub-mean-value defect over the given nodes and all radii.

    With ``allowance`` the circle means use the multilinear interpolant and each
    defect is reduced by the mean interpolation-error bound on that circle.
    """
    grid_idx = np.array(centers_idx)
    values = field.values[tuple(grid_idx.T)]
    pts = np.array([field.node_point(i) for i in grid_idx])
    if field.dims == 1:
        pts = pts[:, 0]
    lin = field.with_interpolation("linear") if allowance else field
    worst, witness = 0.0, None
    active = ~np.isneginf(values)
    for r in schedule.radii:
        m = _means(lin, pts[active], r, schedule.angular_nodes, direction)
        with np.errstate(invalid="ignore"):
            defect = values[active] - m
        if allowance:
            defect = defect - _means(field.interpolation_bound, pts[active], r,
                                     schedule.angular_nodes, direction)
        defect = np.where(np.isnan(defect), 0.0, defect)
        if defect.size:
            k = int(np.argmax(defect))
            if defect[k] > worst:
                worst = float(defect[k])
                p = pts[active][k]
                witness = (complex(p), r) if field.dims == 1 else (tuple(complex(x) for x in p), r)
    notes = ("defects net of multilinear interpolation bound",) if allowance else ()
    return Verdict(worst, tol, witness, label, notes)


def subharmonic_verdict(field: ScalarField, schedule: RadiusSchedule, tol: float | None = None,
                        allowance: bool = True) -> Verdict:
    """Sub-mean-value check at every node whose largest circle fits the grid.

    ``tol`` defaults to ``1e-6`` times the value scale of the field.  With
    ``allowance`` (default) each circle's defect is first reduced by the
    interpolation-error bound, so grid resolution alone cannot fail the check.
    """
    if field.dims != 1:
        raise InputError("subharmonic_verdict needs a field on C; use psh_verdict on C^2")
    schedule.check_against(field.max_spacing)
    tol = field.default_tol() if tol is None else tol
    r = schedule.radii[0]
    ix, iy = _fitting_nodes(field, (r, r))
    if ix.size == 0 or iy.size == 0:
        raise ScheduleError("grid too small: no node admits the largest circle")
    idx = np.array(np.meshgrid(ix, iy, indexing="ij")).reshape(2, -1).T
    return _sub_mean_scan(field, idx, schedule, None, tol, "subharmonic", allowance)


def psh_verdict(field2d: ScalarField, directions: Sequence, schedule: RadiusSchedule,
                tol: float | None = None, stride: int = 1, allowance: bool = True) -> Verdict:
    """Sub-mean-value check along complex lines through a lattice of base nodes.

    ``stride`` thins the base lattice (every ``stride``-th eligible node per axis).
    """
    if field2d.dims != 2:
        raise InputError("psh_verdict needs a field on C^2")
    if not directions:
        raise InputError("need at least one direction")
    tol = field2d.default_tol() if tol is None else tol
    worst = Verdict(0.0, tol, None, "psh")
    for d in directions:
        d = np.asarray(d, dtype=complex).reshape(2)
        norm = float(np.linalg.norm(d))
        if norm == 0:
            raise InputError("directions must be nonzero")
        d = d / norm
        schedule.check_against(field2d.max_spacing)
        r = schedule.radii[0]
        reach = (r * abs(d[0]), r * abs(d[0]), r * abs(d[1]), r * abs(d[1]))
        sel = [s[::stride] for s in _fitting_nodes(field2d, reach)]
        if any(s.size == 0 for s in sel):
            raise ScheduleError("grid too small: no base node admits the largest circle")
        idx = np.array(np.meshgrid(*sel, indexing="ij")).reshape(4, -1).T
        v = _sub_mean_scan(field2d, idx, schedule, d, tol, "psh", allowance)
        if v.max_violation > worst.max_violation or worst.witness is None:
            wit = None if v.witness is None else (v.witness, tuple(complex(x) for x in d))
            worst = Verdict(v.max_violation, tol, wit, "psh", v.notes)
    return worst


def convex_decreasing_verdict(samples, mode: str = "convex", tol: float = 1e-9) -> Verdict:
    """Check convexity / monotonicity of sampled ``(t, value)`` pairs.

    ``convex`` uses second divided differences ``f[t0, t1, t2] >= -tol``;
    ``decreasing`` / ``increasing`` compare consecutive differences with ``tol``.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError("samples must be (t, value) pairs")
    t, v = arr[:, 0], arr[:, 1]
    if np.any(np.diff(t) <= 0):
        raise InputError("t must be strictly increasing")
    if mode == "convex":
        if len(t) < 3:
            raise InputError("convexity needs at least 3 samples")
        d1 = np.diff(v) / np.diff(t)
        d2 = np.diff(d1) / (t[2:] - t[:-2])
        viol = -d2
        k = int(np.argmax(viol))
        return Verdict(max(0.0, float(viol[k])), tol, float(t[k + 1]), "convex")
    if mode in ("decreasing", "increasing"):
        if len(t) < 2:
            raise InputError("monotonicity needs at least 2 samples")
        d = np.diff(v)
        viol = d if mode == "decreasing" else -d
        k = int(np.argmax(viol))
        return Verdict(max(0.0, float(viol[k])), tol, float(t[k + 1]), mode)
    raise InputError(f"unknown mode {mode!r}")


# analytic catalog ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    fn: Callable
    dims: int
    lower: tuple
    upper: tuple
    nodes: int
    exact_lambda: Callable | None = None
    description: str = ""

    def sample(self, nodes: int | None = None, interpolation="cubic", name="") -> ScalarField:
        return ScalarField.on_box(self.fn, self.lower, self.upper, nodes or self.nodes,
                                  interpolation, name)


_SQ = (-1.0, -1.0), (1.0, 1.0)
_BOX2 = (0.5, -0.5, -0.5, -0.5), (1.5, 0.5, 0.5, 0.5)

FIELD_CATALOG: dict[str, CatalogEntry] = {
    "zsq": CatalogEntry(lambda z: np.abs(z) ** 2, 1, *_SQ, 129, lambda z: 1.0, "|z|^2"),
    "rez3": CatalogEntry(lambda z: (z**3).real, 1, *_SQ, 129, lambda z: 0.0, "Re z^3"),
    "z4": CatalogEntry(lambda z: np.abs(z) ** 4, 1, (0.5, -0.5), (1.5, 0.5), 129,
                       lambda z: 4 * abs(z) ** 2, "|z|^4"),
    "log1pz2": CatalogEntry(lambda z: np.log1p(np.abs(z) ** 2), 1, *_SQ, 129,
                            lambda z: 1.0 / (1 + abs(z) ** 2) ** 2, "log(1+|z|^2)"),
    "neg_zsq": CatalogEntry(lambda z: -np.abs(z) ** 2, 1, *_SQ, 129, lambda z: -1.0, "-|z|^2"),
    "log_shifted": CatalogEntry(lambda z: np.log(np.abs(z - (2 + 2j))), 1, (0.0, 0.0), (1.0, 1.0),
                                65, lambda z: 0.0, "log|z-(2+2i)|"),
    "max_log": CatalogEntry(lambda z: np.maximum(np.log(np.abs(z)), -3.0), 1, *_SQ, 129, None,
                            "max(log|z|, -3)"),
    "log_norm2": CatalogEntry(lambda z1, z2: np.log(np.abs(z1) ** 2 + np.abs(z2) ** 2), 2, *_BOX2,
                              17, None, "log(|z1|^2+|z2|^2)"),
    "neg_z1sq": CatalogEntry(lambda z1, z2: -np.abs(z1) ** 2, 2, *_BOX2, 17, None, "-|z1|^2"),
    "log_diff": CatalogEntry(lambda z1, z2: np.log(np.abs(z1 - z2) ** 2), 2,
                             (0.5, -0.5, -1.5, -0.5), (1.5, 0.5, -0.5, 0.5), 17, None,
                             "log|z1-z2|^2"),
    "z1sq": CatalogEntry(lambda z1, z2: np.abs(z1) ** 2, 2, *_BOX2, 17, None, "|z1|^2"),
    "sum_sq": CatalogEntry(lambda z1, z2: np.abs(z1 + z2) ** 2, 2, (-0.5,) * 4, (0.5,) * 4, 17,
                           None, "|z1+z2|^2"),
}


def catalog_field(name: str, nodes: int | None = None, interpolation="cubic") -> ScalarField:
    try:
        entry = FIELD_CATALOG[name]
    except KeyError:
        raise InputError(f"unknown catalog field {name!r}; known: {sorted(FIELD_CATALOG)}") from None
    return entry.sample(nodes, interpolation, name)
