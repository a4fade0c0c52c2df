"""Congruences of finite p-algebras: principal congruences, the full
congruence lattice, and subdirect irreducibility."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import FinitePAlgebra
from .errors import CapExceeded

# 16 rather than 12 so every upset algebra of a poset with <= 4 elements fits.
MAX_CONGRUENCE_SIZE = 16


def _canonical(parent: list[int]) -> tuple[int, ...]:
    """Block labels where each element points at the least member of its block."""
    least: dict[int, int] = {}
    out = []
    for x in range(len(parent)):
        r = _find(parent, x)
        out.append(least.setdefault(r, x))
    return tuple(out)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@dataclass(frozen=True, eq=False)
class Congruence:
    algebra: FinitePAlgebra
    blocks_of: tuple  # blocks_of[x] = least element of x's block

    @classmethod
    def from_partition(cls, a: FinitePAlgebra, blocks) -> "Congruence":
        parent = list(range(a.size))
        for block in blocks:
            block = list(block)
            for x in block[1:]:
                ra, rb = _find(parent, block[0]), _find(parent, x)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return cls(a, _canonical(parent))

    def related(self, x: int, y: int) -> bool:
        return self.blocks_of[x] == self.blocks_of[y]

    @cached_property
    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.blocks_of):
            out.setdefault(r, []).append(x)
        return [out[r] for r in sorted(out)]

    @property
    def is_identity(self) -> bool:
        return len(self.blocks) == self.algebra.size

    @property
    def is_full(self) -> bool:
        return len(self.blocks) == 1

    def __le__(self, other: "Congruence") -> bool:
        return all(other.related(x, r) for x, r in enumerate(self.blocks_of))

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.algebra is other.algebra and self.blocks_of == other.blocks_of

    def __hash__(self):
        return hash(self.blocks_of)

    def join(self, other: "Congruence") -> "Congruence":
        """Transitive closure of the union."""
        parent = list(self.blocks_of)
        for x, r in enumerate(other.blocks_of):
            ra, rb = _find(parent, x), _find(parent, r)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return Congruence(self.algebra, _canonical(parent))

    def meet(self, other: "Congruence") -> "Congruence":
        pairs = {}
        out = []
        for x in range(self.algebra.size):
            key = (self.blocks_of[x], other.blocks_of[x])
            out.append(pairs.setdefault(key, x))
        return Congruence(self.algebra, tuple(out))

    def is_compatible(self, table=None) -> tuple[bool, tuple]:
        """Check compatibility with meet, join and star, or with one extra
        unary or binary ``table`` when given. Returns (ok, witness)."""
        a = self.algebra
        r = np.array(self.blocks_of)
        tables = [("star", a.star), ("meet", a.meet), ("join", a.join)] if table is None else [("op", table)]
        for name, t in tables:
            t = np.asarray(t)
            if t.ndim == 1:
                bad = (r[:, None] == r[None, :]) & (r[t][:, None] != r[t][None, :])
                if bad.any():
                    x, y = (int(v) for v in np.argwhere(bad)[0])
                    return False, (name, x, y)
                continue
            # changing one argument inside a block must stay inside a block
            same = r[:, None] == r[None, :]
            for c in range(a.size):
                col = r[t[:, c]]
                bad = same & (col[:, None] != col[None, :])
                if bad.any():
                    x, y = (int(v) for v in np.argwhere(bad)[0])
                    return False, (name, x, y, c)
                row = r[t[c, :]]
                bad = same & (row[:, None] != row[None, :])
                if bad.any():
                    x, y = (int(v) for v in np.argwhere(bad)[0])
                    return False, (name, c, x, y)
        return True, ()

    def label(self) -> str:
        lab = self.algebra.labels
        return " | ".join("{" + ",".join(lab[x] for x in b) + "}" for b in self.blocks)

    def __repr__(self):
        return f"Congruence({self.label()})"


def identity_congruence(a: FinitePAlgebra) -> Congruence:
    return Congruence(a, tuple(range(a.size)))


def full_congruence(a: FinitePAlgebra) -> Congruence:
    return Congruence(a, (0,) * a.size)


def principal_congruence(a: FinitePAlgebra, x: int, y: int) -> Congruence:
    """Least congruence identifying x and y.

    Every pair that causes a merge is queued; each queued pair is pushed
    through star and through meet/join with every fixed second argument.
    """
    parent = list(range(a.size))
    meet, join, star = a.meet_list, a.join_list, a.star_list
    queue = []

    def union(u, v):
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            queue.append((u, v))

    union(int(x), int(y))
    while queue:
        u, v = queue.pop()
        union(star[u], star[v])
        mu, mv, ju, jv = meet[u], meet[v], join[u], join[v]
        for c in range(a.size):
            union(mu[c], mv[c])
            union(ju[c], jv[c])
    return Congruence(a, _canonical(parent))


@dataclass(frozen=True, eq=False)
class CongruenceLattice:
    algebra: FinitePAlgebra
    elements: tuple  # sorted by number of blocks, descending (identity first)

    @cached_property
    def order(self) -> np.ndarray:
        n = len(self.elements)
        m = np.zeros((n, n), dtype=bool)
        for i, c in enumerate(self.elements):
            for j, d in enumerate(self.elements):
                m[i, j] = c <= d
        return m

    @property
    def identity(self) -> Congruence:
        return self.elements[0]

    @property
    def full(self) -> Congruence:
        return self.elements[-1]

    def upper_covers(self, i: int) -> list[int]:
        m = self.order
        above = [j for j in range(len(self.elements)) if j != i and m[i, j]]
        return [j for j in above if not any(k != j and m[k, j] for k in above)]

    def minimal_nontrivial(self) -> list[Congruence]:
        """Atoms of the lattice: the minimal congruences above the identity."""
        return [self.elements[j] for j in self.upper_covers(0)] if len(self.elements) > 1 else []

    def meet_irreducible(self) -> list[Congruence]:
        """Congruences other than the full one with exactly one upper cover."""
        return [c for i, c in enumerate(self.elements) if len(self.upper_covers(i)) == 1]

    def minimal_meet_irreducible(self) -> list[Congruence]:
        irr = self.meet_irreducible()
        return [c for c in irr if not any(d != c and d <= c for d in irr)]

    def index(self, c: Congruence) -> int:
        return self.elements.index(c)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def all_congruences(a: FinitePAlgebra, max_size: int = MAX_CONGRUENCE_SIZE) -> CongruenceLattice:
    """The congruence lattice, generated from the principal congruences by joins."""
    if a.size > max_size:
        raise CapExceeded(f"congruence lattice supports at most {max_size} elements, got {a.size}")
    found = {identity_congruence(a)}
    principal = set()
    for x in range(a.size):
        for y in range(x + 1, a.size):
            principal.add(principal_congruence(a, x, y))
    found |= principal
    frontier = set(principal)
    while frontier:
        new = set()
        for c in frontier:
            for p in principal:
                j = c.join(p)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    elements = sorted(found, key=lambda c: (-len(c.blocks), c.blocks_of))
    return CongruenceLattice(a, tuple(elements))


@dataclass(frozen=True)
class SIResult:
    irreducible: bool
    witness: tuple  # (monolith,) or two distinct minimal congruences; () if trivial

    def __bool__(self):
        return self.irreducible


def is_subdirectly_irreducible(a: FinitePAlgebra, max_size: int = MAX_CONGRUENCE_SIZE) -> SIResult:
    """True iff the nontrivial congruences have a least element (the monolith).

    Minimal nontrivial congruences are principal, so only the principal
    congruences need to be computed.
    """
    if a.size > max_size:
        raise CapExceeded(f"congruence computations support at most {max_size} elements, got {a.size}")
    principal = {principal_congruence(a, x, y) for x in range(a.size) for y in range(x + 1, a.size)}
    if not principal:
        return SIResult(False, ())
    minimal = sorted(
        (c for c in principal if not any(d != c and d <= c for d in principal)),
        key=lambda c: c.blocks_of,
    )
    if len(minimal) == 1:
        return SIResult(True, (minimal[0],))
    return SIResult(False, (minimal[0], minimal[1]))
