from itertools import permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from palg.errors import CapExceeded
from palg.poset import (
    POSET_COUNTS,
    FinitePoset,
    canonical_form,
    check_partial_order,
    disjoint_union,
    enumerate_posets,
    poset_isomorphism,
    product_poset,
)


# -- oracles: plain relation matrices, no bitmasks -----------------------------------

def is_order(rel, n):
    for i in range(n):
        if not rel[i][i]:
            return False
    for i, j in product(range(n), repeat=2):
        if i != j and rel[i][j] and rel[j][i]:
            return False
    for i, j, k in product(range(n), repeat=3):
        if rel[i][j] and rel[j][k] and not rel[i][k]:
            return False
    return True


def canon(rel, n):
    return min(tuple(rel[p[i]][p[j]] for i in range(n) for j in range(n)) for p in permutations(range(n)))


def brute_count(n):
    """Isomorphism classes of partial orders among all reflexive relations."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    classes = set()
    for bits in product((0, 1), repeat=len(off)):
        rel = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), b in zip(off, bits):
            rel[i][j] = b
        if is_order(rel, n):
            classes.add(canon(rel, n))
    return len(classes)


def natural_count(n):
    """Same count using only naturally labeled orders (i <= j implies i <= j as ints)."""
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    classes = set()
    for bits in product((0, 1), repeat=len(upper)):
        rel = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), b in zip(upper, bits):
            rel[i][j] = b
        if is_order(rel, n):
            classes.add(canon(rel, n))
    return len(classes)


def to_rel(p):
    return [[int(p.leq(i, j)) for j in range(p.size)] for i in range(p.size)]


@pytest.mark.parametrize("n", range(5))
def test_enumeration_matches_all_relations(n):
    posets = enumerate_posets(n)
    assert len(posets) == brute_count(n) == POSET_COUNTS[n]
    assert len({canon(to_rel(p), n) for p in posets}) == len(posets)


def test_enumeration_five_against_natural_labelings():
    posets = enumerate_posets(5)
    assert len(posets) == natural_count(5) == 63
    assert len({canon(to_rel(p), 5) for p in posets}) == 63


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_posets(7)


def test_from_pairs_closure_and_cycles():
    p = FinitePoset.from_pairs(3, [(0, 1), (1, 2)])
    assert p.leq(0, 2) and not p.leq(2, 0)
    assert p.covers() == [(0, 1), (1, 2)]
    with pytest.raises(ValueError):
        FinitePoset.from_pairs(2, [(0, 1), (1, 0)])


def test_chain_antichain():
    c = FinitePoset.chain(4)
    assert c.pairs() == [(i, j) for i in range(4) for j in range(i + 1, 4)]
    a = FinitePoset.antichain(3)
    assert a.pairs() == [] and a.maximal(a.full_mask) == 0b111


def test_check_partial_order_witnesses():
    assert check_partial_order([[1, 0], [0, 1]]) is None
    assert check_partial_order([[0, 0], [0, 1]])[0] == "reflexivity"
    assert check_partial_order([[1, 1], [1, 1]])[0] == "antisymmetry"
    assert check_partial_order([[1, 1, 0], [0, 1, 1], [0, 0, 1]])[0] == "transitivity"


def test_isomorphism_and_canonical_form():
    v = FinitePoset.from_pairs(3, [(0, 2), (1, 2)])
    v2 = FinitePoset.from_pairs(3, [(1, 0), (2, 0)])
    lam = FinitePoset.from_pairs(3, [(0, 1), (0, 2)])
    iso = poset_isomorphism(v, v2)
    assert iso is not None
    assert all(v.leq(i, j) == v2.leq(iso[i], iso[j]) for i in range(3) for j in range(3))
    assert poset_isomorphism(v, lam) is None
    assert canonical_form(v) == canonical_form(v2) != canonical_form(lam)
    assert poset_isomorphism(v.dual(), lam) is not None


def test_disjoint_union_and_product():
    u = disjoint_union([FinitePoset.chain(2), FinitePoset.chain(2)])
    assert u.size == 4 and u.covers() == [(0, 1), (2, 3)]
    assert u.labels == ("0:0", "0:1", "1:0", "1:1")
    sq = product_poset(FinitePoset.chain(2), FinitePoset.chain(2))
    assert sq.size == 4 and len(sq.covers()) == 4


def test_max_above():
    v = FinitePoset.from_pairs(3, [(0, 1), (0, 2)])
    assert v.max_above[0] == 0b110
    assert v.max_above[1] == 0b010


@st.composite
def random_orders(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=10))
    pairs = [(i, j) for i, j in pairs if i < j and n]  # acyclic by construction
    return FinitePoset.from_pairs(n, pairs)


@settings(max_examples=60, deadline=None)
@given(random_orders())
def test_closure_is_a_partial_order(p):
    rel = to_rel(p)
    assert is_order(rel, p.size)
    assert p.up == p.dual().down


@settings(max_examples=40, deadline=None)
@given(random_orders(max_n=5), st.randoms(use_true_random=False))
def test_isomorphism_finds_relabelings(p, rnd):
    perm = list(range(p.size))
    rnd.shuffle(perm)
    q = FinitePoset.from_pairs(p.size, [(perm[i], perm[j]) for i, j in p.pairs()])
    iso = poset_isomorphism(p, q)
    assert iso is not None
    assert canonical_form(p) == canonical_form(q)
