"""Slow reference implementations used as test oracles."""

from fractions import Fraction
from itertools import product

from khovanov_kauffman.cube import Generator, State, make_edge, resolve, edge_map


def dense_rank(rows):
    """Rank of a list-of-lists matrix by plain Gaussian elimination over Q."""
    m = [[Fraction(v) for v in row] for row in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def generators(d):
    n = d.n_crossings
    out = []
    for alpha in product((0, 1), repeat=n):
        s = State(alpha)
        c = resolve(d, s).n_circles
        for lab in product("1x", repeat=c):
            out.append(Generator(s, lab, d.n_plus, d.n_minus))
    return out


def differential(d, v):
    """d(v) as {generator: coefficient}, summing over every outgoing edge."""
    total = {}
    for k, bit in enumerate(v.state.alpha):
        if bit:
            continue
        for w, c in edge_map(make_edge(d, v.state, k), v).items():
            total[w] = total.get(w, 0) + c
    return {w: c for w, c in total.items() if c}


def reference_dims(d, grading=lambda g: (g.i, g.j)):
    """Khovanov dims from the generator-level cube and dense rank.

    ``grading`` maps a generator to its ``(i, j)``; the differential must
    raise i by one and keep j.
    """
    gens = generators(d)
    by_grading = {}
    for g in gens:
        by_grading.setdefault(grading(g), []).append(g)
    index = {key: {g: k for k, g in enumerate(gs)} for key, gs in by_grading.items()}
    ranks = {}
    for (i, j), gs in by_grading.items():
        tgt = index.get((i + 1, j), {})
        if not tgt:
            ranks[(i, j)] = 0
            continue
        rows = [[0] * len(gs) for _ in tgt]
        for col, g in enumerate(gs):
            for w, c in differential(d, g).items():
                rows[tgt[w]][col] += c
        ranks[(i, j)] = dense_rank(rows)
    dims = {}
    for (i, j), gs in by_grading.items():
        h = len(gs) - ranks[(i, j)] - ranks.get((i - 1, j), 0)
        if h:
            dims[(i, j)] = h
    return dims
