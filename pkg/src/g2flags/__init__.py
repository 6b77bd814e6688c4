"""Exact Lie-theoretic and dynamical computations on the real flag manifolds
of the split real form of g2."""

from .exactfield import ALPHA, BETA, QF13, SQRT13, parse_qf13

__version__ = "0.1.0"

__all__ = ["QF13", "SQRT13", "ALPHA", "BETA", "parse_qf13", "__version__"]
