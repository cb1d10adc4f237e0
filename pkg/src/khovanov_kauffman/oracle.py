"""Jones polynomial by the Kauffman-bracket state sum.

This deliberately shares only circle counting with the chain-complex route:
no generators, signs, saddle maps or linear algebra.  The result is the
unnormalized Jones polynomial in ``q``, with the unknot at ``q + q^-1``.
"""

from __future__ import annotations

from typing import Mapping

from .cube import DEFAULT_CAP, _Resolver
from .diagram import LinkDiagram
from .errors import CapExceededError
from .polynomial import LaurentPolynomial

__all__ = ["LaurentPolynomial", "state_sum_jones", "euler_characteristic"]

_Q_PLUS_QINV = LaurentPolynomial({1: 1, -1: 1})


def state_sum_jones(d: LinkDiagram, cap: int = DEFAULT_CAP) -> LaurentPolynomial:
    """Sum over states of (-1)^(r-n-) q^(r+n+-2n-) (q+q^-1)^c, r = |alpha|."""
    n = d.n_crossings
    if n > cap:
        raise CapExceededError(n, cap)
    n_plus, n_minus = d.n_plus, d.n_minus
    res = _Resolver(d)
    # bucket states by (weight, circle count) first; the powers are shared
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << n):
        key = (bin(mask).count("1"), res.circles(mask)[0])
        counts[key] = counts.get(key, 0) + 1
    total = LaurentPolynomial()
    for (r, c), mult in sorted(counts.items()):
        sign = -1 if (r - n_minus) % 2 else 1
        term = LaurentPolynomial.monomial(r + n_plus - 2 * n_minus, sign * mult)
        total = total + term * _Q_PLUS_QINV**c
    return total


def euler_characteristic(g: Mapping[tuple[int, int], int]) -> LaurentPolynomial:
    """Sum of (-1)^i q^j dim(i, j)."""
    return LaurentPolynomial([(j, (-1) ** (i % 2) * v) for (i, j), v in g.items()])
