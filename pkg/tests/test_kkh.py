from khovanov_kauffman import LaurentPolynomial, kkh
from khovanov_kauffman.homology import GradedDims
from khovanov_kauffman.kauffman import family_members
from khovanov_kauffman.oracle import euler_characteristic, state_sum_jones

q = LaurentPolynomial.monomial(1)
qi = LaurentPolynomial.monomial(-1)
UNKNOT = GradedDims({(0, 1): 1, (0, -1): 1})
HOPF = GradedDims({(0, 0): 1, (0, -2): 1, (-2, -4): 1, (-2, -6): 1})


def test_g2_total(g2):
    r = kkh(g2)
    assert r.total == HOPF + UNKNOT
    assert r.total_euler == (1 + qi**2 + qi**4 + qi**6) + (q + qi)


def test_total_is_sum_of_members(g1, g2, theta):
    for g in (g1, g2, theta):
        for dedupe in (True, False):
            r = kkh(g, dedupe=dedupe)
            acc = GradedDims()
            for m in r.members:
                acc = acc + m.dims
            assert r.total == acc
            assert r.total_euler == euler_characteristic(r.total)


def test_member_euler_is_jones(g1, g2, theta):
    for g in (g1, g2, theta):
        by_id = {m.id: m.diagram for m in family_members(g, dedupe=False)}
        for m in kkh(g, dedupe=False).members:
            assert m.euler == state_sum_jones(by_id[m.id])


def test_g1_unreduced_delta(g1):
    # with the unknot carrying Q(1) + Q(-1), the two summands have ranks 4 and 2
    r = kkh(g1)
    assert r.total.total == 6
    # a bare "one copy of Q per member" count would give 2; the difference is 4
    assert r.total.total - len(r.members) == 4
    assert r.total == UNKNOT.tensor(UNKNOT) + UNKNOT


def test_multiset_counts_repeats(g2):
    r = kkh(g2, dedupe=False)
    assert len(r.members) == 5
    assert r.total == HOPF + UNKNOT + UNKNOT + UNKNOT + UNKNOT


def test_empty_members_contribute_nothing(theta):
    r = kkh(theta, dedupe=False)
    assert len(r.members) == 3
    assert r.total == UNKNOT + UNKNOT + UNKNOT
    assert all(m.choices for m in r.members)
