"""Laurent polynomials with integer coefficients.

Two flavours are needed: one-variable polynomials in ``q`` (Jones polynomials
and graded Euler characteristics) and two-variable ones in ``t, q``
(Poincaré polynomials of bigraded homology).  Both store only nonzero
coefficients, keyed by the exponent (an ``int`` or an ``(i, j)`` pair).
"""

from __future__ import annotations

from typing import Iterable, Mapping


def _superscript(e: int) -> str:
    return "" if e == 1 else f"^{e}"


class LaurentPolynomial:
    """A Laurent polynomial in one variable ``q`` with integer coefficients.

    >>> q = LaurentPolynomial.monomial(1)
    >>> str(q + q**-1)
    'q^-1 + q'
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._coeffs = {e: c for e, c in sorted(acc.items()) if c}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPolynomial:
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPolynomial:
        return cls({0: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def __getitem__(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def __iter__(self):
        return iter(self._coeffs.items())

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return LaurentPolynomial(list(self._coeffs.items()) + list(other._coeffs.items()))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._coeffs) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((e, c),) = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPolynomial({e * n: c ** (-n)})
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reflect(self) -> LaurentPolynomial:
        """Substitute q -> q^-1."""
        return LaurentPolynomial({-e: c for e, c in self._coeffs.items()})

    def __call__(self, q):
        return sum(c * q**e for e, c in self._coeffs.items())

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self._coeffs.items():
            mono = "" if e == 0 else f"q{_superscript(e)}"
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPolynomial({self._coeffs!r})"

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self._coeffs.items()}


class BivariateLaurentPolynomial:
    """Integer Laurent polynomial in ``t`` and ``q``; keys are ``(i, j)``.

    Terms print in ascending ``i`` then ascending ``j``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] = None):
        acc: dict[tuple[int, int], int] = {}
        for (i, j), c in (coeffs or {}).items():
            acc[(i, j)] = acc.get((i, j), 0) + c
        self._coeffs = {k: c for k, c in sorted(acc.items()) if c}

    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._coeffs)

    def __getitem__(self, key):
        return self._coeffs.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, BivariateLaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __bool__(self):
        return bool(self._coeffs)

    def specialize_t(self, t: int) -> LaurentPolynomial:
        """Set t to ``1`` or ``-1`` (``-1`` gives the graded Euler characteristic)."""
        if t not in (1, -1):
            raise ValueError("t must be a unit")
        return LaurentPolynomial([(j, c * t ** abs(i)) for (i, j), c in self._coeffs.items()])

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for (i, j), c in self._coeffs.items():
            mono = "*".join(
                s for s in (
                    f"t{_superscript(i)}" if i else "",
                    f"q{_superscript(j)}" if j else "",
                ) if s
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"BivariateLaurentPolynomial({self._coeffs!r})"
