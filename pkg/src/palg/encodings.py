"""Concrete constructions inside powers of the three-element chain algebra:
Boolean pairs, the six-element algebra N, and finite graphs."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations, product as iproduct
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    MAX_SIZE,
    FinitePAlgebra,
    Homomorphism,
    Report,
    closure,
    is_closed,
    make_bnalg,
    power,
    pseudocomplements_from_order,
    subalgebra,
)
from .duality import (
    PPMorphism,
    UpsetAlgebra,
    check_pp_morphism,
    dual_homomorphism,
    upset_algebra,
)
from .errors import CapExceeded, NotAnEncoding
from .poset import FinitePoset, disjoint_union
from .report import CheckReport
from .search import find_embedding, is_isomorphic

# element indices of the three-element chain 0 < e < 1
ZERO, E, ONE = 0, 1, 2
SYMBOL = ("0", "e", "1")
B1 = make_bnalg(1)
MAX_INDEX = 5


class TupleAlgebra(FinitePAlgebra):
    """A subalgebra of a power of the three-element chain; ``tuples[x]`` holds
    the coordinates of element x (values 0, 1, 2 for 0, e, 1)."""

    def __init__(self, base: FinitePAlgebra, tuples, index_set):
        super().__init__(base.leq, base.star, base.zero, base.one, base.constants,
                         base.labels, base.meet, base.join)
        self.tuples = tuple(tuple(t) for t in tuples)
        self.index_set = tuple(index_set)
        self._pos = {t: i for i, t in enumerate(self.tuples)}

    def element_of(self, tup) -> int:
        return self._pos[tuple(tup)]


def tuple_label(t) -> str:
    return "(" + ",".join(SYMBOL[v] for v in t) + ")"


@lru_cache(maxsize=16)
def chain_power(k: int, max_size: int = MAX_SIZE) -> TupleAlgebra:
    """The k-th power of the three-element chain, as a TupleAlgebra (cached)."""
    p = power(B1, k, max_size=max_size)
    tuples = list(iproduct(range(3), repeat=k))
    return TupleAlgebra(p, tuples, range(k))


# -- Boolean pairs -------------------------------------------------------------

@dataclass(frozen=True)
class BooleanPair:
    """Fields of subsets ``small`` <= ``big`` <= P(index_set)."""

    index_set: tuple
    big: frozenset
    small: frozenset

    @classmethod
    def make(cls, index_set: Iterable, big: Iterable[Iterable], small: Iterable[Iterable]) -> "BooleanPair":
        return cls(tuple(index_set), frozenset(frozenset(x) for x in big), frozenset(frozenset(x) for x in small))

    @classmethod
    def from_partitions(cls, index_set: Sequence, fine, coarse) -> "BooleanPair":
        """The pair of fields generated by two partitions, ``coarse`` coarsening ``fine``."""
        return cls(tuple(index_set), field_of(fine), field_of(coarse))

    def check(self) -> Report:
        full = frozenset(self.index_set)
        for name, fam in (("big", self.big), ("small", self.small)):
            for x in fam:
                if not x <= full:
                    return Report(False, f"{name} members are subsets of I", (sorted(x),))
            if frozenset() not in fam or full not in fam:
                return Report(False, f"{name} contains empty set and I", ())
            for x in fam:
                if full - x not in fam:
                    return Report(False, f"{name} closed under complement", (sorted(x),))
                for y in fam:
                    if x | y not in fam:
                        return Report(False, f"{name} closed under union", (sorted(x), sorted(y)))
                    if x & y not in fam:
                        return Report(False, f"{name} closed under intersection", (sorted(x), sorted(y)))
        if not self.small <= self.big:
            bad = min(sorted(x) for x in self.small - self.big)
            return Report(False, "small is contained in big", (bad,))
        return Report(True)


def field_of(partition) -> frozenset:
    """All unions of blocks of a partition."""
    blocks = [frozenset(b) for b in partition]
    out = set()
    for picks in iproduct((False, True), repeat=len(blocks)):
        out.add(frozenset().union(*(b for b, take in zip(blocks, picks) if take)))
    return frozenset(out)


def set_partitions(items: Sequence) -> list[list[list]]:
    items = list(items)
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for part in set_partitions(rest):
        out.append([[first]] + part)
        for k in range(len(part)):
            out.append(part[:k] + [[first] + part[k]] + part[k + 1:])
    return out


def _coarsens(coarse, fine) -> bool:
    return all(any(set(b) <= set(c) for c in coarse) for b in fine)


def enumerate_boolean_pairs(n: int) -> list[BooleanPair]:
    """Every Boolean pair of subfields of P({1..n}); a finite field of sets is
    determined by its atoms, which partition I."""
    index_set = tuple(range(1, n + 1))
    parts = set_partitions(index_set)
    out = []
    for fine in parts:
        for coarse in parts:
            if _coarsens(coarse, fine):
                out.append(BooleanPair.from_partitions(index_set, fine, coarse))
    return out


def chi(subset: Iterable, index_set: Sequence) -> tuple:
    """Characteristic tuple: 1 on members of the subset, e elsewhere."""
    s = set(subset)
    if not s <= set(index_set):
        raise ValueError("subset is not contained in the index set")
    return tuple(ONE if i in s else E for i in index_set)


def boolean_pair_subuniverse(bp: BooleanPair, max_index: int = MAX_INDEX) -> TupleAlgebra:
    """{f in {0,e,1}^I : f^-1(0) in small, f^-1(1) in big} as a subalgebra of
    the I-th power, with the constant ``ebar`` = constant-e tuple."""
    rep = bp.check()
    if not rep:
        raise ValueError(f"not a Boolean pair: {rep}")
    k = len(bp.index_set)
    if k > max_index:
        raise CapExceeded(f"index set has {k} elements (cap {max_index})")
    power_alg = chain_power(k)
    keep = []
    for x, t in enumerate(power_alg.tuples):
        zeros = frozenset(i for i, v in zip(bp.index_set, t) if v == ZERO)
        ones = frozenset(i for i, v in zip(bp.index_set, t) if v == ONE)
        if zeros in bp.small and ones in bp.big:
            keep.append(x)
    with_e = power_alg.with_constants({"ebar": power_alg.element_of((E,) * k)})
    sub, inclusion = subalgebra(with_e, keep)
    return TupleAlgebra(sub, [power_alg.tuples[x] for x in inclusion.map], bp.index_set)


def _tmeet(s, t):
    return tuple(min(a, b) for a, b in zip(s, t))


def _tjoin(s, t):
    return tuple(max(a, b) for a, b in zip(s, t))


def _double_star(v: int) -> int:
    star = B1.star_list
    return star[star[v]]


def verify_definability(bp: BooleanPair) -> CheckReport:
    """Check that the Boolean pair is recovered inside its subuniverse P.

    (a) {chi(X) : X in big}   == {f | ebar : f in P}
    (b) {chi(X) : X in small} == {f** | ebar : f in P}
    (c) these sets form a Boolean pair under componentwise meet/join, with
        complement taken relative to the interval [ebar, 1]
    (d) X -> chi(X) is an isomorphism of Boolean pairs
    """
    rep = CheckReport("definability")
    alg = boolean_pair_subuniverse(bp)
    I = bp.index_set
    k = len(I)
    ebar, top = (E,) * k, (ONE,) * k
    rep.add("subuniverse", is_closed(alg, range(alg.size))[0])

    c_defined = {_tjoin(f, ebar) for f in alg.tuples}
    c0_defined = {_tjoin(tuple(_double_star(v) for v in f), ebar) for f in alg.tuples}
    c_chi = {chi(x, I) for x in bp.big}
    c0_chi = {chi(x, I) for x in bp.small}
    rep.add("C = {f | ebar}", c_defined == c_chi,
            sorted(c_defined ^ c_chi)[:1] and tuple_label(sorted(c_defined ^ c_chi)[0]))
    rep.add("C0 = {f** | ebar}", c0_defined == c0_chi,
            sorted(c0_defined ^ c0_chi)[:1] and tuple_label(sorted(c0_defined ^ c0_chi)[0]))

    def rel_complement(x, family):
        found = [y for y in family if _tmeet(x, y) == ebar and _tjoin(x, y) == top]
        return found[0] if len(found) == 1 else None

    c, c0 = sorted(c_defined), sorted(c0_defined)
    witness = ""
    ok = True
    for name, fam in (("C", c), ("C0", c0)):
        fam_set = set(fam)
        if ebar not in fam_set or top not in fam_set:
            ok, witness = False, f"{name} lacks a bound"
            break
        for x in fam:
            y = rel_complement(x, fam)
            if y is None:
                ok, witness = False, f"{name}: {tuple_label(x)} has no unique complement"
                break
            for z in fam:
                if _tmeet(x, z) not in fam_set or _tjoin(x, z) not in fam_set:
                    ok, witness = False, f"{name} not closed at {tuple_label(x)}, {tuple_label(z)}"
                    break
            if not ok:
                break
        if not ok:
            break
    if ok and not set(c0) <= set(c):
        ok, witness = False, "C0 not inside C"
    rep.add("(C, C0) is a Boolean pair", ok, witness)

    ok, witness = True, ""
    full = frozenset(I)
    images = {x: chi(x, I) for x in bp.big}
    if len(set(images.values())) != len(images) or set(images.values()) != set(c):
        ok, witness = False, "chi is not a bijection onto C"
    else:
        for x in sorted(bp.big, key=sorted):
            if images[full - x] != rel_complement(images[x], c):
                ok, witness = False, f"complement of {sorted(x)}"
                break
            for y in bp.big:
                if images[x | y] != _tjoin(images[x], images[y]) or images[x & y] != _tmeet(images[x], images[y]):
                    ok, witness = False, f"lattice operations at {sorted(x)}, {sorted(y)}"
                    break
            if not ok:
                break
        if ok and {images[x] for x in bp.small} != set(c0):
            ok, witness = False, "chi does not map small onto C0"
    rep.add("chi is an isomorphism of Boolean pairs", ok, witness)
    return rep


# -- the algebra N -------------------------------------------------------------

N_LABELS = ("0", "a", "b", "c", "e", "1")
N_COVERS = ((0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5))
N_TUPLES = (
    (ZERO, ZERO, ZERO),
    (E, E, E),
    (ONE, E, E),
    (E, E, ONE),
    (ONE, E, ONE),
    (ONE, ONE, ONE),
)


def make_N() -> FinitePAlgebra:
    """0 < a < b, c < e < 1 with b, c incomparable; star read off the order."""
    order = FinitePoset.from_pairs(6, N_COVERS, N_LABELS).matrix
    star = pseudocomplements_from_order(order, 0)
    return FinitePAlgebra(order, star, 0, 5, labels=N_LABELS)


def check_n_representation() -> CheckReport:
    """B1 embeds in N, and N is the subalgebra of B1^3 on the six listed tuples,
    which two of them generate."""
    rep = CheckReport("lemma2")
    n_alg = make_N()
    # the search returns the lexicographically least embedding (e -> a); the
    # embedding onto {0, e, 1} is checked as well
    h = find_embedding(B1, n_alg)
    on_0e1 = Homomorphism(B1, n_alg, [n_alg.index(s) for s in ("0", "e", "1")])
    found = h is not None and h.check().ok and h.is_injective
    rep.add("B1 embeds in N", found and on_0e1.check().ok and on_0e1.is_injective,
            "no embedding found" if not found else f"onto {{0,e,1}}: {on_0e1.check()}")

    cube = chain_power(3)
    listed = [cube.element_of(t) for t in N_TUPLES]
    closed, witness = is_closed(cube, listed)
    ok = closed
    detail = f"not closed: {witness}"
    if closed:
        sub, _ = subalgebra(cube, listed)
        iso = is_isomorphic(sub, n_alg)
        ok = iso is not None
        detail = "subalgebra is not isomorphic to N"
    rep.add("listed tuples form a subuniverse isomorphic to N", ok, detail)

    gens = [cube.element_of((ONE, E, E)), cube.element_of((E, E, ONE))]
    generated = closure(cube, gens)
    rep.add("two tuples generate the listed set", sorted(generated) == sorted(listed),
            "generated " + " ".join(cube.labels[x] for x in generated))
    return rep


# -- graphs --------------------------------------------------------------------

def _natural_key(s: str):
    import re

    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.findall(r"\d+|\D+", s)]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; vertices sorted, edges as sorted pairs."""

    vertices: tuple
    edges: tuple

    @classmethod
    def make(cls, vertices: Iterable, edges: Iterable[Iterable]) -> "Graph":
        vs = sorted({str(v) for v in vertices}, key=_natural_key)
        vset = set(vs)
        es = set()
        for e in edges:
            e = tuple(str(v) for v in e)
            if len(e) != 2:
                raise ValueError(f"edge {e} does not have two endpoints")
            u, v = e
            if u == v:
                raise ValueError(f"loop at {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge {u}--{v} uses an unknown vertex")
            pair = tuple(sorted((u, v), key=_natural_key))
            if pair in es:
                raise ValueError(f"repeated edge {u}--{v}")
            es.add(pair)
        return cls(tuple(vs), tuple(sorted(es, key=lambda p: (_natural_key(p[0]), _natural_key(p[1])))))

    def adjacent(self, u, v) -> bool:
        return tuple(sorted((u, v), key=_natural_key)) in self._edge_set

    @cached_property
    def _edge_set(self):
        return set(self.edges)

    def degree(self, v) -> int:
        return sum(v in e for e in self.edges)


def graph_isomorphism(g: Graph, h: Graph) -> dict | None:
    """A vertex bijection g -> h preserving adjacency, or None."""
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    deg_g = {v: g.degree(v) for v in g.vertices}
    deg_h = {v: h.degree(v) for v in h.vertices}
    if sorted(deg_g.values()) != sorted(deg_h.values()):
        return None
    order = sorted(g.vertices, key=lambda v: -deg_g[v])
    image: dict = {}
    used: set = set()

    def search(k):
        if k == len(order):
            return True
        v = order[k]
        for w in h.vertices:
            if w in used or deg_h[w] != deg_g[v]:
                continue
            if all(g.adjacent(v, u) == h.adjacent(w, image[u]) for u in image):
                image[v] = w
                used.add(w)
                if search(k + 1):
                    return True
                del image[v]
                used.discard(w)
        return False

    return dict(image) if search(0) else None


def canonical_graph(g: Graph) -> tuple:
    """Least sorted edge list over all vertex orderings; for small graphs."""
    n = len(g.vertices)
    best = None
    for perm in permutations(range(n)):
        pos = {v: perm[i] for i, v in enumerate(g.vertices)}
        code = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges))
        if best is None or code < best:
            best = code
    return (n, best)


def enumerate_graphs(n: int) -> list[Graph]:
    """All simple graphs on n unlabeled vertices ``v1..vn``, one per isomorphism class."""
    names = [f"v{i}" for i in range(1, n + 1)]
    slots = list(combinations(range(n), 2))
    seen = {}
    for picks in iproduct((False, True), repeat=len(slots)):
        es = [(names[a], names[b]) for (a, b), take in zip(slots, picks) if take]
        g = Graph.make(names, es)
        key = canonical_graph(g)
        if key not in seen:
            seen[key] = g
    return sorted(seen.values(), key=lambda g: (len(g.edges), g.edges))


def _set_label(members) -> str:
    return "{" + ",".join(members) + "}"


def graph_to_poset(g: Graph) -> FinitePoset:
    """Empty set, vertex singletons and edges, ordered by reverse inclusion.

    Index 0 is the empty set (the top), then vertices, then edges.
    """
    nv = len(g.vertices)
    vpos = {v: 1 + k for k, v in enumerate(g.vertices)}
    pairs = [(vpos[v], 0) for v in g.vertices]
    for j, (u, v) in enumerate(g.edges):
        e = 1 + nv + j
        pairs += [(e, vpos[u]), (e, vpos[v])]
    labels = ["{}"] + [_set_label([v]) for v in g.vertices] + [_set_label(e) for e in g.edges]
    return FinitePoset.from_pairs(1 + nv + len(g.edges), pairs, labels)


@dataclass(frozen=True, eq=False)
class GraphEncoding:
    """Up(P_G) with its coordinatewise embedding into the I-th power of the
    three-element chain, I = vertices followed by edges."""

    graph: Graph
    poset: FinitePoset  # P_G
    algebra: UpsetAlgebra  # Up(P_G)
    index_set: tuple  # labels of I
    cover: FinitePoset  # U = 2 x I
    f: PPMorphism  # U -> P_G
    coords: np.ndarray  # coords[x, i] in {0, 1, 2}
    homomorphism: Homomorphism | None  # explicit map into the power, when within the cap

    def embedding_check(self) -> Report:
        return check_power_embedding(self.algebra, self.coords)


def check_power_embedding(a: FinitePAlgebra, coords: np.ndarray) -> Report:
    """Verify pointwise that x -> coords[x] is an injective homomorphism into
    the power of the three-element chain."""
    coords = np.asarray(coords)
    if len({tuple(r) for r in coords.tolist()}) != a.size:
        return Report(False, "injective", ())
    if (coords[a.zero] != ZERO).any():
        return Report(False, "preserves zero", (a.zero,))
    if (coords[a.one] != ONE).any():
        return Report(False, "preserves one", (a.one,))
    star3 = np.asarray(B1.star)
    if (coords[np.asarray(a.star)] != star3[coords]).any():
        x = int(np.flatnonzero((coords[np.asarray(a.star)] != star3[coords]).any(axis=1))[0])
        return Report(False, "preserves star", (x,))
    meet = np.asarray(a.meet)
    join = np.asarray(a.join)
    for x in range(a.size):
        # the chain's meet and join are min and max of indices
        if (coords[meet[x]] != np.minimum(coords[x][None, :], coords)).any():
            y = int(np.flatnonzero((coords[meet[x]] != np.minimum(coords[x][None, :], coords)).any(axis=1))[0])
            return Report(False, "preserves meet", (x, y))
        if (coords[join[x]] != np.maximum(coords[x][None, :], coords)).any():
            y = int(np.flatnonzero((coords[join[x]] != np.maximum(coords[x][None, :], coords)).any(axis=1))[0])
            return Report(False, "preserves join", (x, y))
    return Report(True)


def graph_encode(g: Graph, max_size: int = MAX_SIZE) -> GraphEncoding:
    """Encode G as Up(P_G) embedded in a power of the three-element chain.

    The map f sends <1,i> to the empty set and <0,i> to i. When 3^|I| is
    within ``max_size`` the embedding is also built explicitly as the dual
    of f followed by Up(U) = Up(2)^I; otherwise only the coordinate table
    is kept.
    """
    if not g.vertices:
        raise ValueError("graph must have at least one vertex")
    poset = graph_to_poset(g)
    index_labels = [poset.labels[1 + k] for k in range(poset.size - 1)]
    k = len(index_labels)
    chain2 = FinitePoset.chain(2)
    cover = disjoint_union([chain2] * k)
    # labels name coordinates by position so equal-size graphs share Up(U)
    cover = cover.relabel([f"<{b},{c}>" for c in range(k) for b in (0, 1)])
    # component c holds <0,c> at 2c and <1,c> at 2c + 1
    f = PPMorphism(cover, poset, tuple(v for c in range(k) for v in (1 + c, 0)))
    rep = check_pp_morphism(f)
    if not rep or not f.is_surjective:
        raise AssertionError(f"f is not a surjective pp-morphism: {rep}")
    algebra = upset_algebra(poset, max_size)

    coords = np.zeros((algebra.size, k), dtype=np.int8)
    for x, m in enumerate(algebra.masks):
        has_top = m & 1
        for c in range(k):
            coords[x, c] = ONE if m >> (1 + c) & 1 else (E if has_top else ZERO)

    homomorphism = None
    if 3 ** k <= max_size:
        dual = dual_homomorphism(f, max_size)
        up_u = dual.target
        target = chain_power(k, max_size)
        # Up(U) -> chain^I: restrict an upset of U to each two-element component
        iso_table = []
        for m in up_u.masks:
            t = []
            for c in range(k):
                part = (m >> (2 * c)) & 0b11
                t.append({0b00: ZERO, 0b10: E, 0b11: ONE}[part])
            iso_table.append(target.element_of(t))
        iso = Homomorphism(up_u, target, iso_table)
        homomorphism = dual.compose(iso)
        explicit = np.array([target.tuples[v] for v in homomorphism.map], dtype=np.int8).reshape(algebra.size, k)
        if not np.array_equal(explicit, coords):
            raise AssertionError("explicit and coordinatewise embeddings disagree")
    return GraphEncoding(g, poset, algebra, tuple(index_labels), cover, f, coords, homomorphism)


def recover_graph(a: FinitePAlgebra) -> Graph:
    """Read a graph off an encoding.

    Vertices are the join-irreducible covers of the unique atom; two of them
    are adjacent iff exactly one join-irreducible element lies above both.
    """
    atoms = a.atoms
    if len(atoms) != 1:
        raise NotAnEncoding(f"expected exactly one atom, found {len(atoms)}")
    atom = atoms[0]
    covers = a.lower_covers
    ji = np.array([len(c) == 1 for c in covers])
    vertices = [x for x in range(a.size) if covers[x] == [atom]]
    leq = np.asarray(a.leq)
    edges = []
    for x, y in combinations(vertices, 2):
        if int((leq[x] & leq[y] & ji).sum()) == 1:
            edges.append((a.labels[x], a.labels[y]))
    return Graph.make([a.labels[x] for x in vertices], edges)


ONE_EDGE_GRAPH = Graph.make(["u", "v", "w"], [("u", "v")])
