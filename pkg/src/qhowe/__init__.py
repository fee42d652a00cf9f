"""Exact fermionic R-matrices, commuting gl_N x gl_M actions and A operators."""

from .scalars import (
    EvalPoint,
    LaurentPoly,
    PoleError,
    TrackedFraction,
    q_binomial,
    q_factorial,
    q_int,
)

__version__ = "0.1.0"
