import numpy as np
import pytest

from palg.algebra import heyting_implication, make_bnalg, powerset_algebra, product
from palg.congruence import (
    Congruence,
    all_congruences,
    full_congruence,
    identity_congruence,
    is_subdirectly_irreducible,
    principal_congruence,
)
from palg.duality import upset_algebra
from palg.encodings import make_N, set_partitions
from palg.errors import CapExceeded
from palg.poset import FinitePoset


def compatible(a, blocks):
    """Oracle: check every operation on every related pair."""
    cls = {}
    for k, b in enumerate(blocks):
        for x in b:
            cls[x] = k
    n = a.size
    for x in range(n):
        for y in range(n):
            if cls[x] != cls[y]:
                continue
            if cls[a.star_list[x]] != cls[a.star_list[y]]:
                return False
            for z in range(n):
                if cls[a.meet_list[x][z]] != cls[a.meet_list[y][z]]:
                    return False
                if cls[a.join_list[x][z]] != cls[a.join_list[y][z]]:
                    return False
    return True


def brute_congruences(a):
    return {tuple(sorted(tuple(sorted(b)) for b in part))
            for part in set_partitions(list(range(a.size))) if compatible(a, part)}


def as_blocks(c):
    return tuple(sorted(tuple(b) for b in c.blocks))


@pytest.mark.parametrize("name", ["B0", "B1", "B2", "N", "P2", "chain4"])
def test_congruence_lattice_matches_partitions(name):
    a = {"B0": make_bnalg(0), "B1": make_bnalg(1), "B2": make_bnalg(2), "N": make_N(),
         "P2": powerset_algebra(2), "chain4": upset_algebra(FinitePoset.chain(3))}[name]
    lattice = all_congruences(a)
    assert {as_blocks(c) for c in lattice} == brute_congruences(a)
    assert lattice.identity.is_identity and lattice.full.is_full


def test_congruence_counts():
    # frozen from the partition oracle above
    assert len(all_congruences(make_bnalg(1))) == 3
    assert len(all_congruences(make_bnalg(2))) == 5
    assert len(all_congruences(make_N())) == 9
    assert len(all_congruences(powerset_algebra(2))) == 4


def test_principal_congruences_of_n():
    n = make_N()
    ix = n.index
    assert principal_congruence(n, ix("b"), ix("1")).label() == "{0} | {a,c} | {b,e,1}"
    assert principal_congruence(n, ix("c"), ix("1")).label() == "{0} | {a,b} | {c,e,1}"
    assert principal_congruence(n, ix("a"), ix("e")).label() == "{0} | {a,b,c,e} | {1}"
    assert principal_congruence(n, ix("0"), ix("a")).is_full


def test_meet_irreducibles_of_n():
    n = make_N()
    mmi = all_congruences(n).minimal_meet_irreducible()
    assert sorted(c.label() for c in mmi) == [
        "{0} | {a,b,c,e} | {1}", "{0} | {a,b} | {c,e,1}", "{0} | {a,c} | {b,e,1}"]


def test_heyting_compatibility_on_n():
    n = make_N()
    imp = heyting_implication(n)
    ix = n.index
    assert not principal_congruence(n, ix("a"), ix("e")).is_compatible(imp)[0]
    assert principal_congruence(n, ix("b"), ix("1")).is_compatible(imp)[0]


def test_join_meet_order():
    n = make_N()
    ix = n.index
    t1 = principal_congruence(n, ix("b"), ix("1"))
    t2 = principal_congruence(n, ix("c"), ix("1"))
    assert t1.meet(t2) == principal_congruence(n, ix("e"), ix("1"))
    assert t1 <= t1.join(t2) and t2 <= t1.join(t2)
    assert identity_congruence(n) <= t1 <= full_congruence(n)


def test_from_partition_and_compatibility():
    b1 = make_bnalg(1)
    c = Congruence.from_partition(b1, [[1, 2]])
    assert c.is_compatible()[0]
    bad = Congruence.from_partition(b1, [[0, 1]])  # 0 ~ e forces 1 ~ 0 via star
    ok, witness = bad.is_compatible()
    assert not ok and witness[0] == "star"


def test_subdirect_irreducibility():
    assert is_subdirectly_irreducible(make_bnalg(0))
    assert is_subdirectly_irreducible(make_bnalg(3))
    assert not is_subdirectly_irreducible(make_N())
    assert not is_subdirectly_irreducible(powerset_algebra(2))
    assert not is_subdirectly_irreducible(powerset_algebra(0))
    b1 = make_bnalg(1)
    with pytest.raises(CapExceeded):
        is_subdirectly_irreducible(product([b1, b1, b1]))


def test_monolith_of_b1():
    res = is_subdirectly_irreducible(make_bnalg(1))
    assert res.witness[0].label() == "{0} | {e,1}"
