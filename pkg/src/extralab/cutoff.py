"""Convex cutoff functions and their mass factor.

A cutoff ``chi`` vanishes on ``(-inf, 0]``, is convex and nondecreasing,
and grows at least linearly with slope ``K``.  The weight used by the
Bergman norms is ``exp(-chi(t + log r))``.

Three kinds are provided:

* ``sharp``           chi = 0 for x <= 0 and +inf for x > 0 (the indicator limit)
* ``hinge``           chi = K * max(x, 0)
* ``smoothed_hinge``  C^1 version of the hinge, quadratic on (0, w)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DivergenceError, InputError

KINDS = ("sharp", "hinge", "smoothed_hinge")


@dataclass(frozen=True)
class Cutoff:
    kind: str = "smoothed_hinge"
    slope: float = 4.0
    width: float = 0.1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown cutoff kind {self.kind!r}; expected one of {KINDS}")
        if self.kind != "sharp" and not self.slope > 0:
            raise InputError("cutoff slope must be positive")
        if self.kind == "smoothed_hinge" and not self.width > 0:
            raise InputError("smoothed_hinge needs a positive width")

    @classmethod
    def from_triple(cls, text: str) -> "Cutoff":
        """Parse ``kind,K,w`` (``w`` optional), as used in configs and on the CLI."""
        parts = [p.strip() for p in str(text).split(",") if p.strip()]
        if not parts:
            raise InputError("empty cutoff specification")
        kind = parts[0].replace("-", "_")
        if kind in ("smoothedHinge", "smoothedhinge"):
            kind = "smoothed_hinge"
        try:
            slope = float(parts[1]) if len(parts) > 1 else (np.inf if kind == "sharp" else 4.0)
            width = float(parts[2]) if len(parts) > 2 else (0.1 if kind == "smoothed_hinge" else 0.0)
        except ValueError as exc:
            raise InputError(f"bad cutoff specification {text!r}: {exc}") from None
        if kind == "sharp":
            slope, width = np.inf, 0.0
        return cls(kind, slope, width)

    @property
    def is_sharp(self) -> bool:
        return self.kind == "sharp"

    @property
    def effective_slope(self) -> float:
        return np.inf if self.is_sharp else float(self.slope)

    def breakpoints(self) -> tuple[float, ...]:
        """Points where chi fails to be smooth."""
        if self.kind == "smoothed_hinge":
            return (0.0, float(self.width))
        return (0.0,)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "K": float(self.effective_slope), "w": float(self.width)}

    def __str__(self):
        if self.is_sharp:
            return "sharp"
        if self.kind == "hinge":
            return f"hinge(K={self.slope:g})"
        return f"smoothed_hinge(K={self.slope:g}, w={self.width:g})"


def chi_eval(c: Cutoff, x):
    """Evaluate chi on scalars or arrays; ``-inf`` maps to 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    if c.kind == "sharp":
        out[pos] = np.inf
    elif c.kind == "hinge":
        out[pos] = c.slope * x[pos]
    else:
        w, k = c.width, c.slope
        inner = pos & (x < w)
        outer = x >= w
        out[inner] = k * x[inner] ** 2 / (2.0 * w)
        out[outer] = k * (x[outer] - 0.5 * w)
    return out if out.ndim else float(out)


def weight(c: Cutoff, x):
    """``exp(-chi(x))``; equals 1 at ``x = -inf``."""
    return np.exp(-np.asarray(chi_eval(c, x)))


def mass_factor(c: Cutoff, d: int) -> float:
    """``d * integral over R of exp(d x - chi(x)) dx``.

    Equals 1 for the sharp cutoff and exceeds 1 otherwise.  The integral
    converges only when the slope exceeds ``d``.
    """
    if d < 1:
        raise InputError("codimension must be >= 1")
    if c.is_sharp:
        return 1.0
    if c.slope <= d:
        raise DivergenceError(
            f"slope K={c.slope:g} <= codimension d={d}: exp(d x - chi(x)) grows like "
            f"exp((d - K) x) and is not integrable at +inf"
        )

    def f(x):
        return np.exp(d * x - chi_eval(c, x))

    # the left tail is exactly 1/d since chi vanishes there
    total = 1.0 / d
    edges = list(c.breakpoints()) + [np.inf]
    for a, b in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-13, limit=200)
        total += val
    return d * total
