"""Numerical laboratory for products of |zeta(1/2+it)| ratios.

The compiled core evaluates Z(t), the second-moment integral and its
inverse, reversely iterated segment chains, and the factorization
pipeline; this wrapper adds dict-returning conveniences on top of the
JSON emitted by the core.
"""

import json as _json

from ._zladder import (
    Error,
    Model as _Model,
    arctan_factor,
    chi_mod,
    closed_integral,
    prime_pi,
    quad_integral,
    signal_factor,
    theta,
    z,
)


class Model(_Model):
    """Ladder model owning its checkpoint table.

    Quadrature backend builds checkpoints up to t_max at construction;
    the asymptotic backend needs no table.
    """

    def theorem(self, L, U, k=1, a=2.0, b=1.0):
        """Run the factorization pipeline and return the report as a dict."""
        return _json.loads(self.theorem_json(L, U, k, a, b))

    def chain(self, L, U, k=1):
        """Reversely iterated segment chain as a dict."""
        return _json.loads(self.chain_json(L, U, k))


__all__ = [
    "Error",
    "Model",
    "arctan_factor",
    "chi_mod",
    "closed_integral",
    "prime_pi",
    "quad_integral",
    "signal_factor",
    "theta",
    "z",
]
