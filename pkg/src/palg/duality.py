"""Finite duality between posets and p-algebras.

A poset P gives the p-algebra Up(P) of its upsets with X* = P minus the
downward closure of X; a finite p-algebra A gives the poset J(A) of its
join-irreducible elements under the reversed order. pp-morphisms dualize
to homomorphisms by taking preimages.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import MAX_SIZE, FinitePAlgebra, Homomorphism, Report, PASS
from .errors import CapExceeded, NotALattice
from .poset import (  # noqa: F401  (re-exported)
    FinitePoset,
    canonical_form,
    disjoint_union,
    enumerate_posets,
    iter_bits,
    popcount,
    poset_isomorphism,
)


class UpsetAlgebra(FinitePAlgebra):
    """Up(P); ``masks[x]`` is the upset (as a bitmask over P) behind element x."""

    def __init__(self, poset: FinitePoset, masks, **kw):
        super().__init__(**kw)
        self.poset = poset
        self.masks = tuple(masks)
        self._pos = {m: i for i, m in enumerate(self.masks)}

    def element_of(self, mask: int) -> int:
        return self._pos[mask]

    def principal(self, p: int) -> int:
        """The element ↑p."""
        return self._pos[self.poset.up[p]]


def upsets(p: FinitePoset, max_count: int = MAX_SIZE) -> list[int]:
    """All upsets as bitmasks, sorted by (popcount, value).

    Elements are decided from the top of the order down, so each upset is
    produced exactly once and the count can be capped before anything big
    is built.
    """
    order = sorted(range(p.size), key=lambda x: popcount(p.up[x]))
    out: list[int] = []

    def walk(k: int, mask: int):
        if k == len(order):
            out.append(mask)
            if len(out) > max_count:
                raise CapExceeded(f"poset has more than {max_count} upsets")
            return
        x = order[k]
        walk(k + 1, mask)
        strict_up = p.up[x] & ~(1 << x)
        if strict_up & mask == strict_up:
            walk(k + 1, mask | 1 << x)

    walk(0, 0)
    out.sort(key=lambda m: (popcount(m), m))
    return out


def _upset_label(p: FinitePoset, mask: int) -> str:
    return "{" + ",".join(p.labels[x] for x in iter_bits(mask)) + "}"


def upset_algebra(p: FinitePoset, max_size: int = MAX_SIZE) -> UpsetAlgebra:
    """Up(P) ordered by inclusion; zero is the empty upset, one is P.

    Results are cached per poset (posets and algebras are immutable).
    """
    return _upset_algebra(p, max_size)


@lru_cache(maxsize=64)
def _upset_algebra(p: FinitePoset, max_size: int) -> UpsetAlgebra:
    masks = upsets(p, max_size)
    n = len(masks)
    if p.size <= 62:
        m = np.array(masks, dtype=np.int64)
        order = np.argsort(m)
        sorted_m = m[order]

        def locate(values):
            return order[np.searchsorted(sorted_m, values)]

        leq = (m[:, None] & m[None, :]) == m[:, None]
        meet = locate(m[:, None] & m[None, :])
        join = locate(m[:, None] | m[None, :])
    else:
        pos = {x: i for i, x in enumerate(masks)}
        leq = np.array([[x & y == x for y in masks] for x in masks], dtype=bool)
        meet = np.array([[pos[x & y] for y in masks] for x in masks])
        join = np.array([[pos[x | y] for y in masks] for x in masks])
    pos = {x: i for i, x in enumerate(masks)}
    full = p.full_mask
    star = [pos[full & ~p.down_closure(x)] for x in masks]
    labels = [_upset_label(p, x) for x in masks]
    return UpsetAlgebra(
        p, masks, leq=leq, star=star, zero=pos[0], one=pos[full],
        labels=labels, meet=meet, join=join,
    )


@dataclass(frozen=True, eq=False)
class JoinIrreducibles:
    """J(A) together with the algebra element behind each poset point."""

    poset: FinitePoset
    elements: tuple


def join_irreducible_elements(a: FinitePAlgebra) -> list[int]:
    """Nonzero x with x = y | z only if x in {y, z}: in a finite lattice,
    exactly the elements with a single lower cover."""
    covers = a.lower_covers
    return [x for x in range(a.size) if len(covers[x]) == 1]


def join_irreducibles(a: FinitePAlgebra) -> JoinIrreducibles:
    """J(A) with p <= q in J(A) iff q <= p in A."""
    js = join_irreducible_elements(a)
    up = []
    for j in js:
        mask = 0
        for k, other in enumerate(js):
            if a.leq[other, j]:
                mask |= 1 << k
        up.append(mask)
    poset = FinitePoset(len(js), up, [a.labels[j] for j in js])
    return JoinIrreducibles(poset, tuple(js))


def duality_roundtrip(a: FinitePAlgebra, max_size: int = MAX_SIZE) -> Homomorphism:
    """The isomorphism a -> Up(J(a)), x -> {j in J(a) : j <= x}, verified.

    Raises NotALattice when the map fails to be a bijective homomorphism,
    which happens exactly when ``a`` is not distributive.
    """
    ji = join_irreducibles(a)
    up = upset_algebra(ji.poset, max_size)
    table = []
    for x in range(a.size):
        mask = 0
        for k, j in enumerate(ji.elements):
            if a.leq[j, x]:
                mask |= 1 << k
        if mask not in up._pos:
            raise NotALattice(f"element {a.labels[x]} does not map to an upset")
        table.append(up.element_of(mask))
    h = Homomorphism(a, up, table)
    if not (h.is_injective and h.is_surjective):
        raise NotALattice("canonical map is not bijective; the lattice is not distributive")
    rep = h.check()
    if not rep:
        raise NotALattice(f"canonical map is not a homomorphism: {rep}")
    return h


# -- pp-morphisms ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PPMorphism:
    source: FinitePoset
    target: FinitePoset
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def image(self, mask: int) -> int:
        out = 0
        for p in iter_bits(mask):
            out |= 1 << self.map[p]
        return out

    def preimage(self, mask: int) -> int:
        out = 0
        for p, q in enumerate(self.map):
            if mask >> q & 1:
                out |= 1 << p
        return out


def check_pp_morphism(f: PPMorphism) -> Report:
    """Order preservation, then f(max up(p)) = max up(f(p)) for every p."""
    src, tgt = f.source, f.target
    if len(f.map) != src.size:
        return Report(False, "map total on source", (len(f.map),))
    for p, q in enumerate(f.map):
        if not 0 <= q < tgt.size:
            return Report(False, "map in range", (p,))
    for p in range(src.size):
        for q in iter_bits(src.up[p]):
            if not tgt.leq(f.map[p], f.map[q]):
                return Report(False, "order preserving", (p, q))
    for p in range(src.size):
        lhs = f.image(src.max_above[p])
        rhs = tgt.max_above[f.map[p]]
        if lhs != rhs:
            return Report(False, "pp condition", (p,),
                          f"image of max above {src.labels[p]} is {sorted(iter_bits(lhs))}, "
                          f"max above {tgt.labels[f.map[p]]} is {sorted(iter_bits(rhs))}")
    return PASS


def dual_homomorphism(f: PPMorphism, max_size: int = MAX_SIZE) -> Homomorphism:
    """Up(target) -> Up(source), X -> f^-1(X), checked to be a homomorphism."""
    rep = check_pp_morphism(f)
    if not rep:
        raise ValueError(f"not a pp-morphism: {rep}")
    up_t = upset_algebra(f.target, max_size)
    up_s = upset_algebra(f.source, max_size)
    table = [up_s.element_of(f.preimage(m)) for m in up_t.masks]
    h = Homomorphism(up_t, up_s, table)
    rep = h.check()
    if not rep:
        raise AssertionError(f"dual map is not a homomorphism: {rep}")
    return h


def pp_morphisms(p: FinitePoset, q: FinitePoset):
    """Every pp-morphism p -> q, in lexicographic order of the map table."""
    from itertools import product

    for table in product(range(q.size), repeat=p.size):
        f = PPMorphism(p, q, table)
        if check_pp_morphism(f):
            yield f


def identity_pp(p: FinitePoset) -> PPMorphism:
    return PPMorphism(p, p, tuple(range(p.size)))
