"""Numerical laboratory for curvature, extrapolation and sharp L2 extension.

Modules
-------
scalarfield
    Sampled fields, the circle-mean Lambda operator and psh verdicts.
metricfam
    Hermitian metric families, Chern/Kobayashi curvature, dual and quotient metrics.
cutoff
    Convex cutoffs and their mass factors.
bergman
    Weighted Bergman Gram matrices on the disc and bidisc and minimal extensions.
certify
    Curvature-monotonicity certificates and extension scenarios.
cli
    Command-line front end.
"""
__version__ = "0.1.0"

from .errors import ExtralabError  # noqa: E402,F401
