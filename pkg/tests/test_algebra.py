import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from palg.algebra import (
    FinitePAlgebra,
    Homomorphism,
    closure,
    heyting_implication,
    identity,
    is_closed,
    make_bnalg,
    power,
    powerset_algebra,
    product,
    pseudocomplements_from_order,
    stacked_algebra,
    subalgebra,
    verify_p_algebra,
)
from palg.duality import upset_algebra
from palg.errors import CapExceeded, NotALattice, NotBoolean
from palg.poset import FinitePoset


# -- oracles computed straight from the order relation --------------------------------

def glb(leq, x, y):
    lower = [z for z in range(len(leq)) if leq[z][x] and leq[z][y]]
    best = [z for z in lower if all(leq[w][z] for w in lower)]
    return best[0] if len(best) == 1 else None


def lub(leq, x, y):
    upper = [z for z in range(len(leq)) if leq[x][z] and leq[y][z]]
    best = [z for z in upper if all(leq[z][w] for w in upper)]
    return best[0] if len(best) == 1 else None


def pseudo(leq, zero, x):
    cands = [y for y in range(len(leq)) if glb(leq, x, y) == zero]
    best = [y for y in cands if all(leq[z][y] for z in cands)]
    return best[0] if len(best) == 1 else None


def order_from_covers(n, covers):
    return FinitePoset.from_pairs(n, covers).matrix


def lattice_algebra(n, covers, zero, one):
    leq = order_from_covers(n, covers)
    star = pseudocomplements_from_order(leq, zero)
    return FinitePAlgebra(leq, star if star is not None else [zero] * n, zero, one)


def test_bnalg_sizes_and_star():
    for i in range(5):
        a = make_bnalg(i)
        assert a.size == 2 ** i + 1
        assert verify_p_algebra(a)
        assert a.star_list[a.zero] == a.one and a.star_list[a.one] == a.zero
    b1 = make_bnalg(1)
    assert b1.labels == ("0", "e", "1")
    assert b1.star_list == [2, 0, 0]
    assert not b1.is_boolean()
    assert make_bnalg(0).is_boolean()


def test_stacked_star_is_boolean_complement_below_the_new_top():
    b = powerset_algebra(2)
    s = stacked_algebra(b)
    # elements 0, {1}, {2}, e, 1; {1}* = {2}
    assert s.labels == ("0", "{1}", "{2}", "e", "1")
    assert s.star_list == [4, 2, 1, 0, 0]
    with pytest.raises(NotBoolean):
        stacked_algebra(make_bnalg(1))


def test_powerset_algebra():
    a = powerset_algebra(3)
    assert a.size == 8 and a.is_boolean() and verify_p_algebra(a)
    assert a.labels[:4] == ("0", "{1}", "{2}", "{3}")
    assert a.labels[-1] == "e"
    assert powerset_algebra(0).size == 1


def test_tables_match_order_oracle():
    for a in (make_bnalg(2), product([make_bnalg(1), make_bnalg(1)]), upset_algebra(FinitePoset.chain(3))):
        leq = a.leq_list
        for x in range(a.size):
            assert a.star_list[x] == pseudo(leq, a.zero, x)
            for y in range(a.size):
                assert a.meet_list[x][y] == glb(leq, x, y)
                assert a.join_list[x][y] == lub(leq, x, y)


def test_non_distributive_lattices_fail():
    # M3: 0 < a, b, c < 1
    m3 = lattice_algebra(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], 0, 4)
    rep = verify_p_algebra(m3)
    assert not rep and rep.condition == "distributivity"
    # N5: 0 < a < b < 1, 0 < c < 1
    n5 = lattice_algebra(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], 0, 4)
    assert verify_p_algebra(n5).condition == "distributivity"


def test_non_lattice_fails():
    # two incomparable middle pairs: no join of a, b
    leq = order_from_covers(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)])
    a = FinitePAlgebra(leq, [5, 0, 0, 0, 0, 0], 0, 5)
    rep = verify_p_algebra(a)
    assert not rep and ("meet" in rep.condition or "join" in rep.condition)
    with pytest.raises(NotALattice):
        a.join


def test_wrong_star_fails():
    b1 = make_bnalg(1)
    bad = FinitePAlgebra(b1.leq, [2, 1, 0], 0, 2)
    rep = verify_p_algebra(bad)
    assert not rep and rep.condition == "pseudocomplement law"


def test_wrong_supplied_table_fails():
    b1 = make_bnalg(1)
    meet = np.array(b1.meet).copy()
    meet[1, 2] = meet[2, 1] = 2
    bad = FinitePAlgebra(b1.leq, b1.star, 0, 2, meet=meet)
    assert not verify_p_algebra(bad)


def test_product_and_power():
    b1 = make_bnalg(1)
    p = product([b1, b1])
    assert p.size == 9 and verify_p_algebra(p)
    assert p.labels[p.zero] == "(0,0)" and p.labels[p.one] == "(1,1)"
    assert power(b1, 3).size == 27
    with pytest.raises(CapExceeded):
        power(make_bnalg(3), 4)


def test_homomorphism_checks():
    b1 = make_bnalg(1)
    assert identity(b1).check()
    squash = Homomorphism(b1, make_bnalg(0), [0, 1, 1])
    assert squash.check() and squash.is_surjective and not squash.is_injective
    assert Homomorphism(b1, b1, [0, 2, 2]).check()  # factors through the two-element algebra
    bad = Homomorphism(b1, b1, [0, 0, 2])
    assert bad.check().condition == "preserves star"


def test_subalgebra_and_closure():
    b2 = make_bnalg(2)
    ok, _ = is_closed(b2, [0, 3, 4])  # 0, e, 1
    assert ok
    ok, witness = is_closed(b2, [0, 1, 4])
    assert not ok
    sub, inc = subalgebra(b2, [0, 3, 4])
    assert sub.size == 3 and inc.check()
    assert closure(b2, [1]) == [0, 1, 2, 3, 4]


def test_heyting_implication_b1():
    # in the chain 0 < e < 1: x -> y is 1 if x <= y else y
    assert heyting_implication(make_bnalg(1)).tolist() == [[2, 2, 2], [0, 2, 2], [0, 1, 2]]


@st.composite
def upset_algebras(draw):
    n = draw(st.integers(1, 5))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    return upset_algebra(FinitePoset.from_pairs(n, [(i, j) for i, j in pairs if i < j]))


@settings(max_examples=40, deadline=None)
@given(upset_algebras())
def test_upset_algebras_satisfy_the_axioms(a):
    assert verify_p_algebra(a)
    leq = a.leq_list
    for x in range(a.size):
        assert a.star_list[x] == pseudo(leq, a.zero, x)
    imp = heyting_implication(a)
    for x in range(a.size):
        for y in range(a.size):
            z = int(imp[x, y])
            assert leq[a.meet_list[x][z]][y]
            assert all(leq[w][z] for w in range(a.size) if leq[a.meet_list[x][w]][y])
