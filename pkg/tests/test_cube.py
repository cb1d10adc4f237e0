import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khovanov_kauffman import build_complex, khovanov_dims, parse_pd
from khovanov_kauffman.cube import (
    CubeEdge,
    Generator,
    State,
    edge_map,
    edge_sign,
    make_edge,
    resolve,
)
from khovanov_kauffman.errors import CapExceededError, InvariantViolation
from khovanov_kauffman.homology import SparseRationalMatrix

from conftest import random_braid
from reference import differential, generators, reference_dims

HOPF = "X(1,3,2,4) X(3,1,4,2)"
KINK = "X(1,1,2,2)"


def compose(d, v, k1, k2):
    """Apply the edge at k1 then the edge at k2 to generator v."""
    out = {}
    for w, c in edge_map(make_edge(d, v.state, k1), v).items():
        for u, c2 in edge_map(make_edge(d, w.state, k2), w).items():
            out[u] = out.get(u, 0) + c * c2
    return {u: c for u, c in out.items() if c}


def test_state_mask_roundtrip():
    for mask in range(16):
        s = State.from_mask(mask, 4)
        assert s.mask == mask and len(s) == 4
        assert s.weight == bin(mask).count("1")


def test_resolve_hopf():
    d = parse_pd(HOPF)
    counts = {alpha: resolve(d, alpha).n_circles for alpha in product((0, 1), repeat=2)}
    # a 2-crossing Hopf diagram: the all-0 and all-1 states give two circles
    assert counts == {(0, 0): 2, (0, 1): 1, (1, 0): 1, (1, 1): 2}


def test_resolve_kink():
    d = parse_pd(KINK)
    # 0-smoothing joins a-b, c-d; here that separates the curl
    assert resolve(d, (0,)).n_circles + resolve(d, (1,)).n_circles == 3


def test_resolve_length_checked():
    with pytest.raises(ValueError):
        resolve(parse_pd(HOPF), (0,))


def test_every_arc_in_one_circle(diagrams):
    for d in diagrams.values():
        if d.n_crossings > 6:
            continue
        for mask in range(1 << d.n_crossings):
            sm = resolve(d, State.from_mask(mask, d.n_crossings))
            arcs = sorted(a for c in sm.circles for a in c)
            assert arcs == sorted(d.arcs)
            assert sm.n_circles >= 1


def test_circle_count_changes_by_one_along_edges(diagrams):
    for d in diagrams.values():
        n = d.n_crossings
        if n > 6:
            continue
        for mask in range(1 << n):
            c0 = resolve(d, State.from_mask(mask, n)).n_circles
            for k in range(n):
                if not (mask >> k) & 1:
                    c1 = resolve(d, State.from_mask(mask | 1 << k, n)).n_circles
                    assert abs(c1 - c0) == 1


def test_edge_sign_examples():
    # (-1)^(number of 1s before position k), positions counted from 0
    assert edge_sign((0, 0, 0), 0) == 1
    assert edge_sign((1, 0, 0), 1) == -1
    assert edge_sign((1, 1, 0), 2) == 1
    assert edge_sign((0, 1, 0), 2) == -1
    assert edge_sign((1, 0, 1), 1) == -1
    with pytest.raises(ValueError):
        edge_sign((1, 0), 0)


@pytest.mark.parametrize("n", range(2, 11))
def test_squares_anticommute(n):
    for mask in range(1 << n):
        alpha = State.from_mask(mask, n).alpha
        zeros = [k for k in range(n) if not alpha[k]]
        for a in zeros:
            for b in zeros:
                if a < b:
                    via_a = edge_sign(alpha, a) * edge_sign(alpha[:a] + (1,) + alpha[a + 1:], b)
                    via_b = edge_sign(alpha, b) * edge_sign(alpha[:b] + (1,) + alpha[b + 1:], a)
                    assert via_a == -via_b


def test_make_edge_shape(hopf):
    e = make_edge(hopf, (0, 0), 1)
    assert isinstance(e, CubeEdge)
    assert e.target.state.alpha == (0, 1)
    assert e.kind == "merge" and e.sign == 1
    e = make_edge(hopf, (1, 0), 1)
    assert e.kind == "split" and e.sign == -1


def test_merge_is_multiplication(hopf):
    e = make_edge(hopf, (0, 0), 0)
    s = e.source.state
    expect = {("1", "1"): "1", ("1", "x"): "x", ("x", "1"): "x"}
    for lab, out in expect.items():
        res = edge_map(e, Generator(s, lab))
        assert res == {Generator(e.target.state, (out,)): 1}
    assert edge_map(e, Generator(s, ("x", "x"))) == {}


def test_split_is_comultiplication(hopf):
    e = make_edge(hopf, (1, 0), 1)
    s = e.source.state
    res = edge_map(e, Generator(s, ("1",)))
    assert {w.labeling for w in res} == {("1", "x"), ("x", "1")}
    assert set(res.values()) == {-1}
    res = edge_map(e, Generator(s, ("x",)))
    assert {w.labeling for w in res} == {("x", "x")}


def test_edge_map_rejects_foreign_generator(hopf):
    e = make_edge(hopf, (0, 0), 0)
    with pytest.raises(ValueError):
        edge_map(e, Generator(State((1, 1)), ("1", "1")))


def test_hopf_has_twelve_generators(hopf):
    assert len(generators(hopf)) == 12
    assert build_complex(hopf).chain_dims().total == 12


def test_generator_count_is_sum_of_powers(diagrams):
    for d in diagrams.values():
        n = d.n_crossings
        expected = sum(2 ** resolve(d, State.from_mask(m, n)).n_circles for m in range(1 << n))
        assert build_complex(d).chain_dims().total == expected


def test_differential_preserves_j_and_raises_i(diagrams):
    for name in ["trefoil_left", "figure_eight", "hopf_kinked", "unlink2_r2"]:
        d = diagrams[name]
        for v in generators(d):
            for w in differential(d, v):
                assert (w.i, w.j) == (v.i + 1, v.j)


def test_generator_level_d_squared(diagrams):
    for name in ["trefoil_right", "figure_eight", "hopf_kinked"]:
        d = diagrams[name]
        n = d.n_crossings
        for v in generators(d):
            zeros = [k for k in range(n) if not v.state.alpha[k]]
            for a in zeros:
                for b in zeros:
                    if a < b:
                        total = compose(d, v, a, b)
                        for u, c in compose(d, v, b, a).items():
                            total[u] = total.get(u, 0) + c
                        assert not any(total.values())


def test_fast_complex_matches_reference(diagrams):
    for d in diagrams.values():
        if d.n_crossings <= 5:
            assert dict(khovanov_dims(d)) == reference_dims(d)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_fast_complex_matches_reference_on_random_braids(seed):
    d = random_braid(random.Random(seed), max_crossings=5)
    assert dict(khovanov_dims(d)) == reference_dims(d)


def test_chain_gradings_respect_formula(hopf):
    c = build_complex(hopf)
    assert set(c.chain_dims()) == {(i, j) for i, j in c.gradings()}
    assert min(i for i, _ in c.gradings()) == -hopf.n_minus
    assert max(i for i, _ in c.gradings()) == hopf.n_crossings - hopf.n_minus


def test_differential_shapes(diagrams):
    c = build_complex(diagrams["figure_eight"])
    for (i, j), m in c.differentials.items():
        assert m.shape == (len(c.generators.get((i + 1, j), [])), len(c.generators[(i, j)]))
    assert c.d_squared_is_zero()


def test_corrupted_differential_detected(hopf):
    c = build_complex(hopf)
    # route a source generator onto a column the next map does not kill
    for (i, j), m in c.differentials.items():
        nxt = c.differentials.get((i + 1, j))
        if nxt is not None and not nxt.is_zero():
            (_, col), _ = next(iter(nxt.entries.items()))
            c.differentials[(i, j)] = SparseRationalMatrix(*m.shape, {(col, 0): 1})
            break
    else:
        pytest.skip("no composable pair")
    assert not c.d_squared_is_zero()
    with pytest.raises(InvariantViolation):
        c.check_d_squared()


def test_cap():
    d = parse_pd(HOPF)
    with pytest.raises(CapExceededError) as err:
        build_complex(d, cap=1)
    assert err.value.crossings == 2 and err.value.cap == 1
