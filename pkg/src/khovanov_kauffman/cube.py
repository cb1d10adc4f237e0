"""The cube of resolutions and the bigraded Khovanov chain complex.

States are bit masks: bit ``k`` is the resolution of crossing ``k`` (0 joins
a-b and c-d, 1 joins a-d and b-c).  A generator of ``V_alpha`` is a state
plus an "x-mask" over its circles: circles whose bit is set carry ``x``
(degree -1), the others carry ``1`` (degree +1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .diagram import LinkDiagram
from .errors import CapExceededError, InvariantViolation
from .homology import GradedDims, SparseRationalMatrix, homology_dims

__all__ = [
    "DEFAULT_CAP",
    "State",
    "Smoothing",
    "Generator",
    "CubeEdge",
    "GradedChainComplex",
    "resolve",
    "edge_sign",
    "make_edge",
    "edge_map",
    "build_complex",
    "khovanov_dims",
]

DEFAULT_CAP = 14


@dataclass(frozen=True)
class State:
    """A vertex of the cube; ``alpha[k]`` is the resolution of crossing k."""

    alpha: tuple[int, ...]

    @classmethod
    def from_mask(cls, mask: int, n: int) -> State:
        return cls(tuple((mask >> k) & 1 for k in range(n)))

    @property
    def mask(self) -> int:
        return sum(bit << k for k, bit in enumerate(self.alpha))

    @property
    def weight(self) -> int:
        return sum(self.alpha)

    def __len__(self):
        return len(self.alpha)


@dataclass(frozen=True)
class Smoothing:
    state: State
    circles: tuple[tuple[int, ...], ...]  # arc labels per circle, ordered by least label

    @property
    def n_circles(self) -> int:
        return len(self.circles)

    def circle_of(self, arc: int) -> int:
        for idx, circle in enumerate(self.circles):
            if arc in circle:
                return idx
        raise KeyError(arc)


@dataclass(frozen=True)
class Generator:
    state: State
    labeling: tuple[str, ...]  # "1" or "x" per circle
    n_plus: int = field(default=0, compare=False)
    n_minus: int = field(default=0, compare=False)

    @property
    def degree(self) -> int:
        return sum(1 if s == "1" else -1 for s in self.labeling)

    @property
    def i(self) -> int:
        return self.state.weight - self.n_minus

    @property
    def j(self) -> int:
        return self.degree + self.i + self.n_plus - self.n_minus


@dataclass(frozen=True)
class CubeEdge:
    source: Smoothing
    target: Smoothing
    position: int
    kind: str  # "merge" or "split"
    sign: int
    circle_map: tuple[int, ...]  # source circle -> target circle
    crossing_arcs: tuple[int, int, int, int] = ()


class _Resolver:
    """Fast circle tracing over all states of one diagram."""

    def __init__(self, d: LinkDiagram):
        self.diagram = d
        arcs = d.arcs
        self.arcs = arcs
        self.index = {lab: k for k, lab in enumerate(arcs)}
        self.quads = [tuple(self.index[lab] for lab in x.labels) for x in d.crossings]

    def circles(self, mask: int) -> tuple[int, list[int]]:
        """Return (circle count, circle id per arc index), ids ordered by least arc."""
        m = len(self.arcs)
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k, (a, b, c, d) in enumerate(self.quads):
            if (mask >> k) & 1:
                pairs = ((a, d), (b, c))
            else:
                pairs = ((a, b), (c, d))
            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    if rv < ru:
                        ru, rv = rv, ru
                    parent[rv] = ru
        ids: dict[int, int] = {}
        out = [0] * m
        for x in range(m):
            r = find(x)
            if r not in ids:
                ids[r] = len(ids)
            out[x] = ids[r]
        return len(ids), out


def resolve(d: LinkDiagram, s: State | Sequence[int]) -> Smoothing:
    """Smooth every crossing of ``d`` according to ``s`` and trace the circles."""
    if not isinstance(s, State):
        s = State(tuple(s))
    if len(s) != d.n_crossings:
        raise ValueError(f"state has length {len(s)} but the diagram has {d.n_crossings} crossings")
    res = _Resolver(d)
    count, ids = res.circles(s.mask)
    circles = [[] for _ in range(count)]
    for k, lab in enumerate(res.arcs):
        circles[ids[k]].append(lab)
    return Smoothing(s, tuple(tuple(c) for c in circles))


def edge_sign(s: State | Sequence[int], k: int) -> int:
    """(-1) to the number of 1s strictly before position ``k`` (0-based)."""
    alpha = s.alpha if isinstance(s, State) else tuple(s)
    if alpha[k]:
        raise ValueError(f"bit {k} of the state is already 1")
    return -1 if sum(alpha[:k]) % 2 else 1


def make_edge(d: LinkDiagram, s: State | Sequence[int], k: int) -> CubeEdge:
    if not isinstance(s, State):
        s = State(tuple(s))
    sign = edge_sign(s, k)
    target_state = State(s.alpha[:k] + (1,) + s.alpha[k + 1:])
    src, tgt = resolve(d, s), resolve(d, target_state)
    cmap = tuple(tgt.circle_of(circle[0]) for circle in src.circles)
    kind = "merge" if tgt.n_circles < src.n_circles else "split"
    return CubeEdge(src, tgt, k, kind, sign, cmap, d.crossings[k].labels)


def edge_map(e: CubeEdge, v: Generator) -> dict[Generator, int]:
    """Apply the signed saddle map of ``e`` to ``v``; returns {generator: coeff}."""
    if v.state != e.source.state:
        raise ValueError("generator does not live on the edge's source state")
    crossing_arcs = e.crossing_arcs
    tgt_n = e.target.n_circles
    base = [None] * tgt_n
    touched_src = {e.source.circle_of(a) for a in crossing_arcs}
    for idx, label in enumerate(v.labeling):
        if idx not in touched_src:
            base[e.circle_map[idx]] = label
    results: list[tuple[str, ...]] = []
    if e.kind == "merge":
        p, r = sorted(touched_src)
        lp, lr = v.labeling[p], v.labeling[r]
        t = e.circle_map[p]
        if lp == "x" and lr == "x":
            return {}
        base[t] = "x" if "x" in (lp, lr) else "1"
        results.append(tuple(base))
    else:
        (p,) = touched_src
        a, b, _, _ = crossing_arcs
        t1, t2 = e.target.circle_of(a), e.target.circle_of(b)
        if v.labeling[p] == "1":
            for l1, l2 in (("1", "x"), ("x", "1")):
                out = list(base)
                out[t1], out[t2] = l1, l2
                results.append(tuple(out))
        else:
            out = list(base)
            out[t1] = out[t2] = "x"
            results.append(tuple(out))
    return {
        Generator(e.target.state, lab, v.n_plus, v.n_minus): e.sign for lab in results
    }


@dataclass
class GradedChainComplex:
    """CKh(D): generators per (i, j) and differentials d^{i,j}: C^{i,j} -> C^{i+1,j}.

    Generators are stored compactly as ``(state mask, x-mask)`` pairs.
    """

    n_crossings: int
    n_plus: int
    n_minus: int
    generators: dict[tuple[int, int], list[tuple[int, int]]]
    differentials: dict[tuple[int, int], SparseRationalMatrix]

    def chain_dims(self) -> GradedDims:
        return GradedDims({k: len(v) for k, v in self.generators.items()})

    def gradings(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.generators))

    def check_d_squared(self) -> None:
        """Raise InvariantViolation unless every composite d^{i+1,j} d^{i,j} vanishes."""
        for (i, j), first in self.differentials.items():
            second = self.differentials.get((i + 1, j))
            if second is None:
                continue
            if not (second @ first).is_zero():
                raise InvariantViolation(f"d∘d != 0 starting in grading ({i}, {j})")

    def d_squared_is_zero(self) -> bool:
        try:
            self.check_d_squared()
        except InvariantViolation:
            return False
        return True


def _popcount(x: int) -> int:
    return bin(x).count("1")


def build_complex(d: LinkDiagram, cap: int = DEFAULT_CAP) -> GradedChainComplex:
    """Assemble CKh(D) over the rationals, grading block by grading block."""
    n = d.n_crossings
    if n > cap:
        raise CapExceededError(n, cap)
    n_plus, n_minus = d.n_plus, d.n_minus
    res = _Resolver(d)
    smoothings = [res.circles(mask) for mask in range(1 << n)]

    generators: dict[tuple[int, int], list[tuple[int, int]]] = {}
    position: dict[tuple[int, int], int] = {}
    for mask, (count, _) in enumerate(smoothings):
        i = _popcount(mask) - n_minus
        shift = i + n_plus - n_minus + count
        for x in range(1 << count):
            key = (i, shift - 2 * _popcount(x))
            block = generators.setdefault(key, [])
            position[(mask, x)] = len(block)
            block.append((mask, x))

    entries: dict[tuple[int, int], dict[int, dict[int, int]]] = {}
    for mask, (count, ids) in enumerate(smoothings):
        i = _popcount(mask) - n_minus
        shift = i + n_plus - n_minus + count
        for k in range(n):
            if (mask >> k) & 1:
                continue
            sign = -1 if _popcount(mask & ((1 << k) - 1)) % 2 else 1
            tmask = mask | (1 << k)
            tcount, tids = smoothings[tmask]
            a, b, c, _ = res.quads[k]
            # first arc of each source circle decides where it lands
            rep = [-1] * count
            for arc, cid in enumerate(ids):
                if rep[cid] < 0:
                    rep[cid] = arc
            cmap = [tids[rep[cid]] for cid in range(count)]
            ca, cc = ids[a], ids[c]
            merge = ca != cc
            touched = {ca, cc}
            movers = [(1 << s, 1 << cmap[s]) for s in range(count) if s not in touched]
            if merge:
                bit_p, bit_r, bit_t = 1 << ca, 1 << cc, 1 << cmap[ca]
            else:
                bit_p = 1 << ca
                bit_t1, bit_t2 = 1 << tids[a], 1 << tids[b]
            for x in range(1 << count):
                j = shift - 2 * _popcount(x)
                base = 0
                for sb, tb in movers:
                    if x & sb:
                        base |= tb
                if merge:
                    xp, xr = x & bit_p, x & bit_r
                    if xp and xr:
                        continue
                    images = (base | bit_t if (xp or xr) else base,)
                elif x & bit_p:
                    images = (base | bit_t1 | bit_t2,)
                else:
                    images = (base | bit_t2, base | bit_t1)
                col = position[(mask, x)]
                rows = entries.setdefault((i, j), {})
                for y in images:
                    r = position[(tmask, y)]
                    row = rows.setdefault(r, {})
                    val = row.get(col, 0) + sign
                    if val:
                        row[col] = val
                    else:
                        del row[col]
    differentials = {}
    for (i, j), rows in entries.items():
        src = len(generators[(i, j)])
        tgt = len(generators.get((i + 1, j), ()))
        differentials[(i, j)] = SparseRationalMatrix.from_rows(tgt, src, rows)
    return GradedChainComplex(n, n_plus, n_minus, generators, differentials)


@lru_cache(maxsize=512)
def khovanov_dims(d: LinkDiagram, cap: int = DEFAULT_CAP) -> GradedDims:
    """Kh^{*,*}(D) over Q: build the complex and take homology."""
    return homology_dims(build_complex(d, cap))
