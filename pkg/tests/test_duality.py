import pytest

from palg.algebra import make_bnalg, product, verify_p_algebra
from palg.duality import (
    PPMorphism,
    check_pp_morphism,
    dual_homomorphism,
    duality_roundtrip,
    identity_pp,
    join_irreducibles,
    pp_morphisms,
    upset_algebra,
    upsets,
)
from palg.encodings import make_N
from palg.errors import CapExceeded, NotALattice
from palg.poset import FinitePoset, enumerate_posets, poset_isomorphism
from palg.algebra import FinitePAlgebra


def brute_upsets(p):
    out = []
    for mask in range(1 << p.size):
        if all(not (mask >> x & 1) or all(mask >> y & 1 for y in range(p.size) if p.leq(x, y))
               for x in range(p.size)):
            out.append(mask)
    return sorted(out, key=lambda m: (bin(m).count("1"), m))


def test_upsets_match_brute_force():
    for n in range(5):
        for p in enumerate_posets(n):
            assert upsets(p) == brute_upsets(p)


def test_upset_algebra_sizes():
    assert upset_algebra(FinitePoset.chain(2)).size == 3
    assert upset_algebra(FinitePoset.antichain(3)).size == 8
    assert upset_algebra(FinitePoset(0, [])).size == 1
    with pytest.raises(CapExceeded):
        upset_algebra(FinitePoset.antichain(13))


def test_star_is_complement_of_downset():
    # V shape: 0 below 1 and 2
    p = FinitePoset.from_pairs(3, [(0, 1), (0, 2)], ["m", "a", "b"])
    a = upset_algebra(p)
    assert a.labels == ("{}", "{a}", "{b}", "{a,b}", "{m,a,b}")
    # {a}* = P minus down{a} = {b}
    assert a.star_list[a.index("{a}")] == a.index("{b}")
    assert a.star_list[a.index("{a,b}")] == a.zero
    assert verify_p_algebra(a)


def test_join_irreducibles_of_known_algebras():
    assert join_irreducibles(make_bnalg(1)).poset.size == 2
    ji = join_irreducibles(make_N())
    assert [make_N().labels[x] for x in ji.elements] == ["a", "b", "c", "1"]
    # reversed order: 1 is below b, c, which are below a
    assert ji.poset.covers() == [(1, 0), (2, 0), (3, 1), (3, 2)]


def test_roundtrip_on_all_small_posets():
    for n in range(5):
        for p in enumerate_posets(n):
            assert poset_isomorphism(join_irreducibles(upset_algebra(p)).poset, p) is not None


def test_roundtrip_algebras():
    b1 = make_bnalg(1)
    for a in (b1, make_bnalg(3), make_N(), product([b1, b1])):
        h = duality_roundtrip(a)
        assert h.check() and h.is_injective and h.is_surjective


def test_roundtrip_rejects_non_distributive():
    leq = FinitePoset.from_pairs(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).matrix
    m3 = FinitePAlgebra(leq, [4, 0, 0, 0, 0], 0, 4)  # M3 has no pseudocomplements
    with pytest.raises(NotALattice):
        duality_roundtrip(m3)


def test_pp_condition():
    two = FinitePoset.chain(2)
    one = FinitePoset.chain(1)
    # collapsing the two-element chain onto a point is a pp-morphism
    assert check_pp_morphism(PPMorphism(two, one, (0, 0)))
    # the inclusion of the bottom of the chain into it: max above the point is itself,
    # but max above its image is the top
    assert check_pp_morphism(PPMorphism(one, two, (0,))).condition == "pp condition"
    assert check_pp_morphism(identity_pp(two))
    # order-reversing map
    assert check_pp_morphism(PPMorphism(two, two, (1, 0))).condition == "order preserving"


def test_pp_morphisms_dualize_to_homomorphisms():
    posets = [FinitePoset.chain(2), FinitePoset.antichain(2), FinitePoset.from_pairs(3, [(0, 1), (0, 2)])]
    for p in posets:
        for q in posets:
            for f in pp_morphisms(p, q):
                h = dual_homomorphism(f)
                assert h.check()
                # surjective pp-morphisms give injective homomorphisms
                assert h.is_injective == f.is_surjective


def test_pp_morphism_count_chain_to_point():
    assert len(list(pp_morphisms(FinitePoset.chain(3), FinitePoset.chain(1)))) == 1
