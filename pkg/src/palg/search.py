"""Backtracking search for embeddings and isomorphisms between finite p-algebras."""
from __future__ import annotations

from itertools import permutations

import numpy as np

from .algebra import FinitePAlgebra, Homomorphism


def _height(a: FinitePAlgebra) -> list[int]:
    """Length of the longest chain from zero to each element."""
    covers = a.lower_covers
    order = sorted(range(a.size), key=lambda x: int(a.leq[:, x].sum()))
    h = [0] * a.size
    for x in order:
        h[x] = max((h[y] + 1 for y in covers[x]), default=0)
    return h


def fingerprints(a: FinitePAlgebra) -> list[tuple]:
    """Isomorphism-invariant data per element: height, up/down sizes and star orbit."""
    h = _height(a)
    star = a.star_list
    up = a.leq.sum(axis=1).tolist()
    down = a.leq.sum(axis=0).tolist()
    out = []
    for x in range(a.size):
        orbit = (x == star[x], x == star[star[x]], h[star[x]], h[star[star[x]]])
        out.append((h[x], up[x], down[x], orbit))
    return out


class _Search:
    """Depth-first search for an injective homomorphism a -> b.

    Elements of ``a`` are assigned in ascending order and candidates are
    tried in ascending order; every forced value (star, meets and joins of
    assigned elements) is propagated immediately. Propagation only removes
    candidates that cannot extend to a homomorphism, so the first solution
    found is the lexicographically least map table.
    """

    def __init__(self, a: FinitePAlgebra, b: FinitePAlgebra, candidates=None):
        self.a, self.b = a, b
        self.n = a.size
        self.am, self.aj, self.ast = a.meet_list, a.join_list, a.star_list
        self.bm, self.bj, self.bst = b.meet_list, b.join_list, b.star_list
        self.aleq, self.bleq = a.leq_list, b.leq_list
        self.cands = candidates or [list(range(b.size))] * a.size
        self.image = [-1] * a.size
        self.used = {}

    def _assign(self, x, v, trail):
        """Set image[x] = v and propagate; returns False on conflict."""
        queue = [(x, v)]
        while queue:
            x, v = queue.pop()
            cur = self.image[x]
            if cur >= 0:
                if cur != v:
                    return False
                continue
            if v in self.used:
                return False
            if v not in self._allowed[x]:
                return False
            # injective homomorphisms are order embeddings
            ax, bv = self.aleq[x], self.bleq[v]
            for y in self.assigned:
                w = self.image[y]
                if ax[y] != bv[w] or self.aleq[y][x] != self.bleq[w][v]:
                    return False
            self.image[x] = v
            self.used[v] = x
            self.assigned.append(x)
            trail.append(x)
            queue.append((self.ast[x], self.bst[v]))
            for y in list(self.assigned):
                w = self.image[y]
                queue.append((self.am[x][y], self.bm[v][w]))
                queue.append((self.aj[x][y], self.bj[v][w]))
        return True

    def _undo(self, trail):
        for x in reversed(trail):
            del self.used[self.image[x]]
            self.image[x] = -1
            self.assigned.pop()

    def run(self, constants):
        self._allowed = [set(c) for c in self.cands]
        self.assigned = []
        trail = []
        for x, v in constants:
            if not self._assign(x, v, trail):
                return None
        return self._dfs(0)

    def _dfs(self, x):
        while x < self.n and self.image[x] >= 0:
            x += 1
        if x == self.n:
            return tuple(self.image)
        for v in self.cands[x]:
            if v in self.used:
                continue
            trail = []
            if self._assign(x, v, trail):
                found = self._dfs(x + 1)
                if found is not None:
                    return found
            self._undo(trail)
        return None


def _forced_pairs(a: FinitePAlgebra, b: FinitePAlgebra):
    pairs = [(a.zero, b.zero), (a.one, b.one)]
    for name in sorted(set(a.constants) & set(b.constants)):
        pairs.append((a.constants[name], b.constants[name]))
    return pairs


def find_embedding(a: FinitePAlgebra, b: FinitePAlgebra) -> Homomorphism | None:
    """Lexicographically least injective homomorphism a -> b, or None."""
    if a.size > b.size:
        return None
    found = _Search(a, b).run(_forced_pairs(a, b))
    if found is None:
        return None
    return Homomorphism(a, b, found)


def is_isomorphic(a: FinitePAlgebra, b: FinitePAlgebra) -> Homomorphism | None:
    """An isomorphism a -> b, or None.

    Sizes and the multiset of element fingerprints are compared before the
    search; candidates for each element are restricted to equal fingerprints.
    """
    if a.size != b.size:
        return None
    fa, fb = fingerprints(a), fingerprints(b)
    if sorted(fa) != sorted(fb):
        return None
    cands = [[y for y in range(b.size) if fb[y] == fa[x]] for x in range(a.size)]
    found = _Search(a, b, cands).run(_forced_pairs(a, b))
    if found is None:
        return None
    return Homomorphism(a, b, found)


def brute_force_embeddings(a: FinitePAlgebra, b: FinitePAlgebra):
    """Every injective homomorphism a -> b, by plain enumeration of injective maps
    fixing the bounds. Test oracle only: cost is |b|^(|a|-2)."""
    inner = [x for x in range(a.size) if x not in (a.zero, a.one)]
    spare = [y for y in range(b.size) if y not in (b.zero, b.one)]
    for choice in permutations(spare, len(inner)):
        table = [0] * a.size
        table[a.zero], table[a.one] = b.zero, b.one
        for x, y in zip(inner, choice):
            table[x] = y
        h = Homomorphism(a, b, table)
        if len(set(table)) == a.size and h.check():
            yield h
