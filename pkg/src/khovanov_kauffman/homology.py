"""Exact rational linear algebra and graded Betti numbers.

Ranks are computed by sparse fraction-free elimination on integer rows:
rational input rows are cleared of denominators, each reduction step is
``row <- p*row - r*pivot_row`` and rows are divided by the gcd of their
entries afterwards.  Nothing here touches floating point.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from math import gcd, lcm
from typing import TYPE_CHECKING, Iterable, Iterator

from .errors import InvariantViolation
from .polynomial import BivariateLaurentPolynomial

if TYPE_CHECKING:
    from .cube import GradedChainComplex

__all__ = [
    "SparseRationalMatrix",
    "GradedDims",
    "rank_exact",
    "homology_dims",
    "poincare_polynomial",
]


class SparseRationalMatrix:
    """A ``rows x cols`` matrix holding only its nonzero entries.

    Entries are ``int`` or ``Fraction``; zeros are dropped on construction.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], int | Fraction] = None):
        self.rows = rows
        self.cols = cols
        data: dict[int, dict[int, int | Fraction]] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            if v:
                data.setdefault(r, {})[c] = _tidy(v)
        self._data = data

    @classmethod
    def from_rows(cls, rows: int, cols: int, row_dicts: Mapping[int, Mapping[int, int | Fraction]]):
        m = cls(rows, cols)
        for r, row in row_dicts.items():
            clean = {c: _tidy(v) for c, v in row.items() if v}
            if clean:
                if not 0 <= r < rows or not all(0 <= c < cols for c in clean):
                    raise IndexError("row dictionary outside matrix bounds")
                m._data[r] = clean
        return m

    @classmethod
    def from_dense(cls, dense: list[list]):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls(rows, cols, {(r, c): v for r, row in enumerate(dense) for c, v in enumerate(row)})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> dict[tuple[int, int], int | Fraction]:
        return {(r, c): v for r, row in self._data.items() for c, v in row.items()}

    def row_dicts(self) -> Iterator[dict[int, int | Fraction]]:
        return iter(self._data.values())

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def __getitem__(self, key):
        r, c = key
        return self._data.get(r, {}).get(c, 0)

    def __matmul__(self, other: SparseRationalMatrix) -> SparseRationalMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        out: dict[int, dict[int, int | Fraction]] = {}
        for r, row in self._data.items():
            acc: dict[int, int | Fraction] = {}
            for k, v in row.items():
                for c, w in other._data.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return SparseRationalMatrix.from_rows(self.rows, other.cols, out)

    def transpose(self) -> SparseRationalMatrix:
        return SparseRationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def to_dense(self) -> list[list]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense

    def __eq__(self, other):
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self):
        return f"SparseRationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _tidy(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _integer_row(row: Mapping[int, int | Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den == 1:
        return {c: int(v) for c, v in row.items() if v}
    return {c: int(v * den) for c, v in row.items() if v}


def _normalize(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()}


def rank_exact(m: SparseRationalMatrix) -> int:
    """Exact rank over the rationals.

    Rows are inserted one by one into an echelon basis keyed by leading
    column; pivots of absolute value one avoid any coefficient growth, which
    is the common case for Khovanov differentials.
    """
    rows = sorted((_integer_row(r) for r in m.row_dicts()), key=len)
    basis: dict[int, dict[int, int]] = {}
    for row in rows:
        while row:
            lead = min(row)
            piv = basis.get(lead)
            if piv is None:
                basis[lead] = row
                break
            pv, rv = piv[lead], row[lead]
            if pv == 1 or pv == -1:
                f = rv * pv
                new = dict(row)
                for c, v in piv.items():
                    nv = new.get(c, 0) - f * v
                    if nv:
                        new[c] = nv
                    else:
                        new.pop(c, None)
            else:
                g = gcd(pv, rv)
                a, b = pv // g, rv // g
                new = {c: a * v for c, v in row.items()}
                for c, v in piv.items():
                    nv = new.get(c, 0) - b * v
                    if nv:
                        new[c] = nv
                    else:
                        new.pop(c, None)
                new = _normalize(new)
            row = new
    return len(basis)


class GradedDims(Mapping):
    """Bigraded dimensions ``(i, j) -> dim``; zero entries are not stored."""

    __slots__ = ("_d",)

    def __init__(self, data: Mapping[tuple[int, int], int] | Iterable[tuple[tuple[int, int], int]] = ()):
        items = data.items() if isinstance(data, Mapping) else data
        acc: dict[tuple[int, int], int] = {}
        for (i, j), v in items:
            if v < 0:
                raise ValueError(f"negative dimension {v} at ({i}, {j})")
            acc[(int(i), int(j))] = acc.get((int(i), int(j)), 0) + int(v)
        self._d = {k: v for k, v in sorted(acc.items()) if v}

    def __getitem__(self, key):
        return self._d.get(tuple(key), 0)

    def __contains__(self, key):
        return tuple(key) in self._d

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        if isinstance(other, GradedDims):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._d.items()))

    def __add__(self, other: GradedDims) -> GradedDims:
        """Direct sum."""
        return GradedDims(list(self._d.items()) + list(other.items()))

    def tensor(self, other: GradedDims) -> GradedDims:
        """Convolution over (i, j): dims of a tensor product over Q."""
        acc: dict[tuple[int, int], int] = {}
        for (i1, j1), a in self._d.items():
            for (i2, j2), b in other.items():
                k = (i1 + i2, j1 + j2)
                acc[k] = acc.get(k, 0) + a * b
        return GradedDims(acc)

    def reflected(self) -> GradedDims:
        return GradedDims({(-i, -j): v for (i, j), v in self._d.items()})

    def shifted(self, di: int = 0, dj: int = 0) -> GradedDims:
        return GradedDims({(i + di, j + dj): v for (i, j), v in self._d.items()})

    @property
    def total(self) -> int:
        return sum(self._d.values())

    def to_json(self) -> list[dict[str, int]]:
        return [{"i": i, "j": j, "dim": v} for (i, j), v in self._d.items()]

    @classmethod
    def from_json(cls, rows) -> GradedDims:
        return cls({(r["i"], r["j"]): r["dim"] for r in rows})

    def digest(self) -> str:
        return ";".join(f"{i},{j}:{v}" for (i, j), v in self._d.items())

    def __repr__(self):
        return f"GradedDims({self._d!r})"


def homology_dims(c: GradedChainComplex) -> GradedDims:
    """dim Kh^{i,j} = dim C^{i,j} - rank d^{i,j} - rank d^{i-1,j}, block by block."""
    ranks = {}
    for (i, j), mat in c.differentials.items():
        src = len(c.generators.get((i, j), ()))
        tgt = len(c.generators.get((i + 1, j), ()))
        if mat.shape != (tgt, src):
            raise InvariantViolation(
                f"differential at ({i}, {j}) has shape {mat.shape}, expected {(tgt, src)}"
            )
        ranks[(i, j)] = rank_exact(mat)
    out = {}
    for (i, j), gens in c.generators.items():
        dim = len(gens) - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        if dim < 0:
            raise InvariantViolation(f"negative homology dimension at ({i}, {j})")
        out[(i, j)] = dim
    return GradedDims(out)


def poincare_polynomial(g: Mapping[tuple[int, int], int]) -> BivariateLaurentPolynomial:
    """Sum of dim * t^i q^j."""
    return BivariateLaurentPolynomial(dict(g.items()))
