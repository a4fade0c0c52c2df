"""Finite posets stored as up/down bitmasks over element indices 0..n-1."""
from __future__ import annotations

from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded


def iter_bits(mask: int):
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class FinitePoset:
    """An immutable finite partial order.

    ``up[p]`` is the bitmask of all q with p <= q (so it contains p itself);
    ``down[p]`` is the bitmask of all q with q <= p.
    """

    __slots__ = ("size", "up", "down", "labels", "__dict__")

    def __init__(self, size: int, up: Sequence[int], labels: Sequence[str] | None = None):
        self.size = size
        self.up = tuple(up)
        if len(self.up) != size:
            raise ValueError("need one up-mask per element")
        down = [0] * size
        for p in range(size):
            for q in iter_bits(self.up[p]):
                down[q] |= 1 << p
        self.down = tuple(down)
        if labels is None:
            labels = [str(i) for i in range(size)]
        self.labels = tuple(str(s) for s in labels)
        if len(self.labels) != size:
            raise ValueError("need one label per element")

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]], labels=None) -> "FinitePoset":
        """Build from generating pairs (p, q) meaning p <= q; takes the
        reflexive-transitive closure and rejects cycles."""
        up = [1 << p for p in range(size)]
        for p, q in pairs:
            if not (0 <= p < size and 0 <= q < size):
                raise ValueError(f"pair ({p}, {q}) out of range")
            up[p] |= 1 << q
        # Warshall over bitmasks
        for k in range(size):
            bit = 1 << k
            for p in range(size):
                if up[p] & bit:
                    up[p] |= up[k]
        for p in range(size):
            for q in iter_bits(up[p]):
                if q != p and up[q] >> p & 1:
                    raise ValueError(f"order has a cycle through {p} and {q}")
        return cls(size, up, labels)

    @classmethod
    def from_matrix(cls, leq, labels=None) -> "FinitePoset":
        """Build from a boolean matrix without closing it; use
        ``is_partial_order`` on the result or ``check_partial_order`` first."""
        m = np.asarray(leq, dtype=bool)
        n = m.shape[0]
        up = [sum(1 << q for q in np.flatnonzero(m[p])) for p in range(n)]
        return cls(n, up, labels)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        return cls(n, [((1 << n) - 1) ^ ((1 << p) - 1) for p in range(n)])

    @classmethod
    def antichain(cls, n: int) -> "FinitePoset":
        return cls(n, [1 << p for p in range(n)])

    # -- order queries ------------------------------------------------------

    def leq(self, p: int, q: int) -> bool:
        return bool(self.up[p] >> q & 1)

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=bool)
        for p in range(self.size):
            for q in iter_bits(self.up[p]):
                m[p, q] = True
        m.flags.writeable = False
        return m

    def pairs(self) -> list[tuple[int, int]]:
        """Strict order pairs (p, q), p < q, in ascending order."""
        return [(p, q) for p in range(self.size) for q in iter_bits(self.up[p]) if q != p]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (p, q) with q covering p."""
        out = []
        for p in range(self.size):
            strict = self.up[p] & ~(1 << p)
            for q in iter_bits(strict):
                between = strict & self.down[q] & ~(1 << q)
                if not between:
                    out.append((p, q))
        return out

    def up_closure(self, mask: int) -> int:
        out = 0
        for p in iter_bits(mask):
            out |= self.up[p]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for p in iter_bits(mask):
            out |= self.down[p]
        return out

    def is_upset(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    def maximal(self, mask: int) -> int:
        """Maximal elements of the subset ``mask``."""
        out = 0
        for p in iter_bits(mask):
            if not (self.up[p] & mask & ~(1 << p)):
                out |= 1 << p
        return out

    @cached_property
    def max_above(self) -> tuple[int, ...]:
        """``max_above[p]`` = bitmask of the maximal elements of the upset of p."""
        return tuple(self.maximal(self.up[p]) for p in range(self.size))

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def is_partial_order(self) -> bool:
        return check_partial_order(self.matrix) is None

    # -- misc -----------------------------------------------------------------

    def relabel(self, labels: Sequence[str]) -> "FinitePoset":
        return FinitePoset(self.size, self.up, labels)

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.size, self.down, self.labels)

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.up == other.up and self.labels == other.labels

    def __hash__(self):
        return hash((self.up, self.labels))

    def __repr__(self):
        return f"FinitePoset(size={self.size}, covers={self.covers()})"


def check_partial_order(leq) -> tuple[str, tuple] | None:
    """Return None if ``leq`` is a partial order, else (violated axiom, witness)."""
    m = np.asarray(leq, dtype=bool)
    n = m.shape[0]
    for p in range(n):
        if not m[p, p]:
            return "reflexivity", (p,)
    both = m & m.T
    np.fill_diagonal(both, False)
    if both.any():
        p, q = (int(v) for v in np.argwhere(both)[0])
        return "antisymmetry", (p, q)
    # p <= q <= r  must give p <= r
    closed = (m.astype(np.int32) @ m.astype(np.int32)) > 0
    bad = closed & ~m
    if bad.any():
        p, r = (int(v) for v in np.argwhere(bad)[0])
        q = int(np.flatnonzero(m[p] & m[:, r])[0])
        return "transitivity", (p, q, r)
    return None


# -- isomorphism ------------------------------------------------------------

def _fingerprints(p: FinitePoset) -> list[tuple]:
    heights = [0] * p.size
    depth = [0] * p.size
    # elements sorted so that everything below p comes first
    order = sorted(range(p.size), key=lambda x: popcount(p.down[x]))
    for x in order:
        below = p.down[x] & ~(1 << x)
        heights[x] = 1 + max((heights[y] for y in iter_bits(below)), default=-1)
    for x in reversed(order):
        above = p.up[x] & ~(1 << x)
        depth[x] = 1 + max((depth[y] for y in iter_bits(above)), default=-1)
    return [(popcount(p.up[x]), popcount(p.down[x]), heights[x], depth[x]) for x in range(p.size)]


def poset_isomorphism(p: FinitePoset, q: FinitePoset) -> tuple[int, ...] | None:
    """An order isomorphism p -> q as an element table, or None.

    Candidates are filtered by fingerprints (up/down sizes, height, depth)
    and the search runs in ascending index order, so the result is
    deterministic.
    """
    if p.size != q.size:
        return None
    fp, fq = _fingerprints(p), _fingerprints(q)
    if sorted(fp) != sorted(fq):
        return None
    n = p.size
    cands = [[y for y in range(n) if fq[y] == fp[x]] for x in range(n)]
    order = sorted(range(n), key=lambda x: (len(cands[x]), x))
    image = [-1] * n
    used = [False] * n

    def consistent(x, y):
        for x2 in range(n):
            y2 = image[x2]
            if y2 < 0:
                continue
            if p.leq(x, x2) != q.leq(y, y2) or p.leq(x2, x) != q.leq(y2, y):
                return False
        return True

    def search(k):
        if k == n:
            return True
        x = order[k]
        for y in cands[x]:
            if not used[y] and consistent(x, y):
                image[x], used[y] = y, True
                if search(k + 1):
                    return True
                image[x], used[y] = -1, False
        return False

    return tuple(image) if search(0) else None


def canonical_form(p: FinitePoset) -> tuple:
    """A complete isomorphism invariant: the least relation code over all
    fingerprint-respecting relabelings."""
    n = p.size
    fp = _fingerprints(p)
    classes: dict[tuple, list[int]] = {}
    for x in range(n):
        classes.setdefault(fp[x], []).append(x)
    keys = sorted(classes)
    best = None
    for choice in product(*(permutations(classes[k]) for k in keys)):
        order = [x for group in choice for x in group]
        pos = {x: i for i, x in enumerate(order)}
        code = tuple(sorted((pos[a], pos[b]) for a, b in p.pairs()))
        if best is None or code < best:
            best = code
    return (n, tuple(keys), best if best is not None else ())


# -- constructions ------------------------------------------------------------

def disjoint_union(posets: Sequence[FinitePoset]) -> FinitePoset:
    """Tagged union with no order between components; labels become ``k:label``."""
    up, labels, offset = [], [], 0
    for k, p in enumerate(posets):
        up.extend(m << offset for m in p.up)
        labels.extend(f"{k}:{s}" for s in p.labels)
        offset += p.size
    return FinitePoset(offset, up, labels)


def product_poset(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    """Cartesian product with the componentwise order; element (a, b) has index a*|q|+b."""
    n = p.size * q.size
    up = []
    for a in range(p.size):
        for b in range(q.size):
            mask = 0
            for a2 in iter_bits(p.up[a]):
                for b2 in iter_bits(q.up[b]):
                    mask |= 1 << (a2 * q.size + b2)
            up.append(mask)
    labels = [f"({s},{t})" for s in p.labels for t in q.labels]
    return FinitePoset(n, up, labels)


POSET_COUNTS = (1, 1, 2, 5, 16, 63, 318)
MAX_ENUM_POSET = 6


def _downsets(p: FinitePoset) -> list[int]:
    out = []
    for mask in range(1 << p.size):
        if p.down_closure(mask) == mask:
            out.append(mask)
    return out


def enumerate_posets(n: int) -> list[FinitePoset]:
    """All posets on n unlabeled elements, one per isomorphism class.

    Each poset on n elements arises from one on n-1 elements by adding a
    new maximal element above some downset; duplicates are removed by
    canonical form. Elements are naturally labeled (p < q implies p < q
    as integers).
    """
    if n < 0 or n > MAX_ENUM_POSET:
        raise CapExceeded(f"poset enumeration supports n <= {MAX_ENUM_POSET}, got {n}")
    level = [FinitePoset(0, [])]
    for k in range(n):
        seen: dict[tuple, FinitePoset] = {}
        for p in level:
            for below in _downsets(p):
                new_bit = 1 << k
                up = [m | new_bit if below >> i & 1 else m for i, m in enumerate(p.up)]
                up.append(new_bit)
                q = FinitePoset(k + 1, up)
                key = canonical_form(q)
                if key not in seen:
                    seen[key] = q
        level = [seen[key] for key in sorted(seen, key=repr)]
        level.sort(key=lambda q: (len(q.pairs()), q.up))
    return level
