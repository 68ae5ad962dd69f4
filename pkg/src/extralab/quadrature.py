"""Gauss-Legendre rules for the weighted integrals over model domains.

Every Gram entry is reduced to a one-dimensional integral in the value
``tau`` of the defining function,

    integral_0^{r_max} exp(-chi(t + log tau)) M(tau) dtau,

where ``M`` is the moment density of the level sets of ``r``.  The weight is
identically one for ``tau <= exp(-t)`` and decays beyond, so the rule uses

* Gauss-Legendre in ``rho = sqrt(tau)`` on ``[0, tau_in / 4]``,
* Gauss-Legendre in ``x = log tau`` on unit-length panels through the
  transition layer, split at every kink of ``chi`` and of ``M``,
* the substitution ``x = log r_max - sigma**2`` on the panel that touches
  ``r_max``, which absorbs half-integer endpoint behaviour of ``M``.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .cutoff import Cutoff, weight
from .errors import ResolutionError

PANEL_LENGTH = 1.0


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gl_interval(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = gauss_legendre(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def angular_nodes(n: int) -> np.ndarray:
    """Equispaced trapezoid nodes on the circle; each carries weight 2*pi/n."""
    return 2.0 * np.pi * np.arange(n) / n


def t_max(n_radial: int) -> float:
    """Largest cutoff parameter the rules are certified for."""
    return 2.0 * n_radial


def transverse_rule(cutoff: Cutoff, t: float, n: int, r_max: float = 1.0,
                    breaks: tuple[float, ...] = ()) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights (weight function included) in ``tau`` on ``(0, r_max]``."""
    if t > t_max(n):
        raise ResolutionError(
            f"t={t:g} exceeds t_max={t_max(n):g} for {n} radial nodes", limit=t_max(n)
        )
    log_rmax = np.log(r_max)
    x_end = min(-t, log_rmax) if cutoff.is_sharp else log_rmax
    x_in = min(-t, log_rmax)
    x0 = x_in - np.log(4.0)

    nodes, weights = [], []
    rho, w = gl_interval(n, 0.0, np.exp(0.5 * x0))
    nodes.append(rho**2)
    weights.append(2.0 * rho * w)

    cuts = {x0, x_end, x_in}
    for k in cutoff.breakpoints():
        cuts.add(k - t)
    for b in breaks:
        if b > 0:
            cuts.add(np.log(b))
    cuts = sorted(c for c in cuts if x0 <= c <= x_end)
    edges = [cuts[0]]
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a <= 1e-14:
            continue
        m = int(np.ceil((b - a) / PANEL_LENGTH))
        edges.extend(np.linspace(a, b, m + 1)[1:])
    for a, b in zip(edges[:-1], edges[1:]):
        if b >= log_rmax - 1e-15 and not (cutoff.is_sharp and x_end < log_rmax):
            sig, ws = gl_interval(n, 0.0, np.sqrt(log_rmax - a))
            x = log_rmax - sig**2
            jac = 2.0 * sig * ws
        else:
            x, jac = gl_interval(n, a, b)
        tau = np.exp(x)
        nodes.append(tau)
        weights.append(tau * jac)
    tau = np.concatenate(nodes)
    wts = np.concatenate(weights) * weight(cutoff, t + np.log(tau))
    return tau, wts
