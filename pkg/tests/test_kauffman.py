import pytest

from khovanov_kauffman import khovanov_dims, kkh, parse_pd
from khovanov_kauffman.errors import DiagramSyntaxError, InvalidChoiceError, MalformedDiagramError
from khovanov_kauffman.homology import GradedDims
from khovanov_kauffman.kauffman import (
    ReplacementChoice,
    VertexStar,
    apply_replacement,
    choice_count,
    close_and_prune,
    enumerate_choices,
    family,
    family_members,
    graph_add_r1_kink,
    graph_add_r2_fingers,
    graph_face_adjacent_pairs,
    graph_is_planar,
    member_id,
    orient_member,
    parse_graph,
)

UNKNOT = GradedDims({(0, 1): 1, (0, -1): 1})
HOPF = GradedDims({(0, 0): 1, (0, -2): 1, (-2, -4): 1, (-2, -6): 1})
SQUARE = "V(1,2,3,4) V(4,3,2,1)"


def family_signature(g):
    """Multiset of member dims, one entry per choice."""
    return sorted(m.dims.digest() for m in family_members(g, dedupe=False, compute_dims=True))


def deduped_total(g):
    return kkh(g).total


def all_graphs(g1, g2, theta):
    return {"g1": g1, "g2": g2, "theta": theta, "square": parse_graph(SQUARE)}


# --- parsing and validation --------------------------------------------------


def test_parse_graph(g2):
    assert len(g2.crossings) == 2
    assert [v.id for v in g2.vertices] == [1, 2]
    assert g2.vertex(2).halfedges == (6, 7, 3)
    assert parse_graph(g2.to_pd()) == g2
    with pytest.raises(KeyError):
        g2.vertex(3)


@pytest.mark.parametrize("text", ["V()", "V(1,1) V(1,2)", "V(1,2)"])
def test_malformed_graphs(text):
    with pytest.raises(MalformedDiagramError):
        parse_graph(text)


def test_graph_syntax_error():
    with pytest.raises(DiagramSyntaxError):
        parse_graph("V(1,2,")


def test_graphs_are_planar(g1, g2, theta):
    for g in all_graphs(g1, g2, theta).values():
        assert graph_is_planar(g)
    assert not graph_is_planar(parse_graph("V(1,2,3) V(1,2,3)"))


# --- choices -----------------------------------------------------------------


def test_star_pairs():
    v = VertexStar(1, (1, 2, 3, 4))
    assert len(v.pairs()) == 6
    assert v.pairs(adjacent_only=True) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert VertexStar(2, (5,)).pairs() == [None]


def test_choice_counts(g1, g2, theta):
    for g in (g1, g2, theta):
        assert choice_count(g) == 9 == len(enumerate_choices(g))
    sq = parse_graph(SQUARE)
    assert choice_count(sq) == 36 == len(enumerate_choices(sq))
    assert choice_count(sq, adjacent_only=True) == 16 == len(enumerate_choices(sq, True))


def test_leaf_counts_once():
    g = parse_graph("V(1,2,3) V(1) V(2,3)")
    assert choice_count(g) == 3 * 1 * 1
    assert len(enumerate_choices(g)) == 3


def test_choice_formatting():
    c = ReplacementChoice.from_mapping({2: (2, 1), 1: (0, 1)})
    assert str(c) == "v1:01 v2:12"
    assert c[2] == (1, 2)
    assert c.as_dict() == {1: (0, 1), 2: (1, 2)}


def test_invalid_choices(g2):
    with pytest.raises(InvalidChoiceError):
        apply_replacement(g2, ReplacementChoice.from_mapping({1: (0, 1)}))
    with pytest.raises(InvalidChoiceError):
        apply_replacement(g2, ReplacementChoice.from_mapping({1: (0, 0), 2: (0, 1)}))
    with pytest.raises(InvalidChoiceError):
        apply_replacement(g2, ReplacementChoice.from_mapping({1: (0, 5), 2: (0, 1)}))
    with pytest.raises(InvalidChoiceError):
        apply_replacement(g2, ReplacementChoice.from_mapping({1: None, 2: (0, 1)}))


def test_tangle_free_ends(g1, g2, theta):
    for g in all_graphs(g1, g2, theta).values():
        for c in enumerate_choices(g):
            t = apply_replacement(g, c)
            for v in g.vertices:
                assert t.free_ends_at(v.id) == v.degree - 2


# --- family ------------------------------------------------------------------


def test_every_member_is_a_valid_diagram(g1, g2, theta):
    for g in all_graphs(g1, g2, theta).values():
        for c in enumerate_choices(g):
            link = close_and_prune(apply_replacement(g, c))
            assert parse_pd(link.to_pd()) == link


def test_g1_family(g1):
    members = family_members(g1)
    assert sorted(m.dims.total for m in members) == [2, 4]
    assert {m.dims for m in members} == {UNKNOT, UNKNOT.tensor(UNKNOT)}
    # one unlink choice, four unknot choices, four empty choices dropped
    assert sorted(m.multiplicity for m in members) == [1, 4]


def test_g2_family(g2):
    members = family_members(g2)
    assert {m.dims for m in members} == {UNKNOT, HOPF}
    hopf = next(m for m in members if m.dims == HOPF)
    assert hopf.diagram.n_components == 2 and hopf.multiplicity == 1
    assert [str(c) for c in hopf.choices] == ["v1:02 v2:02"]


def test_theta_family(theta):
    assert [khovanov_dims(d) for d in family(theta)] == [UNKNOT]
    multiset = family_members(theta, dedupe=False)
    assert len(multiset) == 9
    assert sum(1 for m in multiset if not m.is_empty) == 3


def test_multiset_keeps_one_member_per_choice(g1, g2, theta):
    for g in all_graphs(g1, g2, theta).values():
        assert len(family_members(g, dedupe=False)) == choice_count(g)


def test_adjacent_only_is_a_subfamily(g1, g2, theta):
    sq = parse_graph(SQUARE)
    full = {m.dims for m in family_members(sq)}
    adjacent = {m.dims for m in family_members(sq, adjacent_only=True)}
    assert adjacent <= full
    assert sum(m.multiplicity for m in family_members(sq, adjacent_only=True)) <= 16


def test_member_ids_are_stable(g2):
    a = [m.id for m in family_members(g2)]
    b = [m.id for m in family_members(g2)]
    assert a == b
    assert member_id(parse_pd("U")) == member_id(parse_pd("U"))
    assert len(a[0]) == 12


# --- invariance under moves on edges -----------------------------------------


@pytest.mark.parametrize("name", ["g1", "g2", "theta", "square"])
def test_family_invariant_under_edge_kinks(name, g1, g2, theta):
    g = all_graphs(g1, g2, theta)[name]
    base = family_signature(g)
    labels = {lab for v in g.vertices for lab in v.halfedges}
    for arc in sorted(labels):
        for handedness in (1, -1):
            moved = graph_add_r1_kink(g, arc, handedness)
            assert graph_is_planar(moved)
            assert family_signature(moved) == base, (arc, handedness)
            assert deduped_total(moved) == deduped_total(g)


@pytest.mark.parametrize("name", ["g1", "g2", "theta", "square"])
def test_family_invariant_under_edge_fingers(name, g1, g2, theta):
    g = all_graphs(g1, g2, theta)[name]
    base = family_signature(g)
    pairs = graph_face_adjacent_pairs(g)
    assert pairs
    for a, b in pairs:
        for over in (True, False):
            moved = graph_add_r2_fingers(g, a, b, over)
            assert graph_is_planar(moved)
            assert family_signature(moved) == base, (a, b, over)
            assert deduped_total(moved) == deduped_total(g)


def test_member_orientation_maximizes_negative_crossings():
    from khovanov_kauffman.diagram import reverse_components

    positive = parse_pd("X(4,1,3,2) X(2,3,1,4)")
    assert positive.signs == (1, 1)
    assert orient_member(positive).signs == (-1, -1)
    negative = parse_pd("X(1,3,2,4) X(3,1,4,2)")
    assert orient_member(negative) == negative
    assert orient_member(reverse_components(negative, [1])) == orient_member(negative)
