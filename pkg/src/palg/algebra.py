"""Finite p-algebras: pseudocomplemented bounded distributive lattices.

Elements are the indices ``0..size-1``. The lattice order is a boolean
matrix; meet and join tables are derived from it on first use (or supplied
by constructions that already know them, such as products and upset
algebras).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CapExceeded, NotALattice, NotBoolean

MAX_ATOMS = 16
MAX_SIZE = 4096


def _frozen(arr, dtype):
    out = np.array(arr, dtype=dtype)
    out.flags.writeable = False
    return out


def _index_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


def row_masks(matrix) -> list[int]:
    """Each row of a boolean matrix as a Python int bitmask (bit j = column j)."""
    packed = np.packbits(np.asarray(matrix, dtype=bool), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _bounds_from_order(leq: np.ndarray, dual: bool = False):
    """Meet table computed from the order (join if ``dual``).

    Returns ``(table, None)`` or ``(None, (x, y))`` where the pair has no
    greatest common lower bound.
    """
    m = leq.T if dual else leq
    n = m.shape[0]
    down_size = m.sum(axis=0)
    cols = np.arange(n)
    table = np.empty((n, n), dtype=_index_dtype(n))
    for x in range(n):
        common = m[:, x][:, None] & m  # common[z, y]: z <= x and z <= y
        score = np.where(common, down_size[:, None], -1)
        cand = score.argmax(axis=0)
        nonempty = common[cand, cols]
        # every common lower bound must lie below the candidate
        dominated = ~(common & ~m[:, cand]).any(axis=0)
        good = nonempty & dominated
        if not good.all():
            y = int(np.flatnonzero(~good)[0])
            return None, (x, y)
        table[x] = cand
    table.flags.writeable = False
    return table, None


class FinitePAlgebra:
    """A finite algebra (A; meet, join, star, 0, 1) with optional named constants.

    Construction only checks that the tables are well formed; use
    :func:`verify_p_algebra` for the axioms.
    """

    def __init__(
        self,
        leq,
        star: Sequence[int],
        zero: int,
        one: int,
        constants: Mapping[str, int] | None = None,
        labels: Sequence[str] | None = None,
        meet=None,
        join=None,
    ):
        leq = _frozen(leq, bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise ValueError("order must be a square matrix")
        n = leq.shape[0]
        if n == 0:
            raise ValueError("an algebra needs at least one element")
        self.size = n
        self.leq = leq
        self.star = _frozen(star, _index_dtype(n))
        if self.star.shape != (n,):
            raise ValueError("star table has the wrong length")
        if ((self.star < 0) | (self.star >= n)).any():
            raise ValueError("star table has an index out of range")
        for name, v in (("zero", zero), ("one", one)):
            if not 0 <= v < n:
                raise ValueError(f"{name} index {v} out of range")
        self.zero = int(zero)
        self.one = int(one)
        self.constants = dict(constants or {})
        for name, v in self.constants.items():
            if not 0 <= v < n:
                raise ValueError(f"constant {name} out of range")
        if labels is None:
            labels = [str(i) for i in range(n)]
        self.labels = tuple(str(s) for s in labels)
        if len(self.labels) != n:
            raise ValueError("need one label per element")
        if meet is not None:
            self.__dict__["meet"] = _frozen(meet, _index_dtype(n))
        if join is not None:
            self.__dict__["join"] = _frozen(join, _index_dtype(n))

    @cached_property
    def meet(self) -> np.ndarray:
        table, bad = _bounds_from_order(self.leq)
        if table is None:
            raise NotALattice(f"elements {bad} have no meet")
        return table

    @cached_property
    def join(self) -> np.ndarray:
        table, bad = _bounds_from_order(self.leq, dual=True)
        if table is None:
            raise NotALattice(f"elements {bad} have no join")
        return table

    # small python-level views, used by search code where numpy scalars are slow
    @cached_property
    def meet_list(self) -> list[list[int]]:
        return self.meet.tolist()

    @cached_property
    def join_list(self) -> list[list[int]]:
        return self.join.tolist()

    @cached_property
    def star_list(self) -> list[int]:
        return self.star.tolist()

    @cached_property
    def leq_list(self) -> list[list[bool]]:
        return self.leq.tolist()

    @cached_property
    def up_masks(self) -> list[int]:
        """Bitmask of the principal filter of each element."""
        return row_masks(self.leq)

    @cached_property
    def down_masks(self) -> list[int]:
        return row_masks(self.leq.T)

    @property
    def is_trivial(self) -> bool:
        return self.zero == self.one

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def element(self, x: int | str) -> int:
        return self.index(x) if isinstance(x, str) else int(x)

    def is_boolean(self) -> bool:
        """x | x* = 1 for every x."""
        return bool((self.join[np.arange(self.size), self.star] == self.one).all())

    @cached_property
    def atoms(self) -> list[int]:
        if self.is_trivial:
            return []
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        return [x for x in range(self.size) if x != self.zero and lt[:, x].sum() == 1]

    @cached_property
    def lower_covers(self) -> list[list[int]]:
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        flt = lt.astype(np.float32)
        between = (flt @ flt) > 0.5
        cov = lt & ~between
        return [[int(y) for y in np.flatnonzero(cov[:, x])] for x in range(self.size)]

    def with_constants(self, constants: Mapping[str, int]) -> "FinitePAlgebra":
        return FinitePAlgebra(self.leq, self.star, self.zero, self.one, constants,
                              self.labels, self._meet_or_none(), self._join_or_none())

    def relabel(self, labels: Sequence[str]) -> "FinitePAlgebra":
        return FinitePAlgebra(self.leq, self.star, self.zero, self.one, self.constants,
                              labels, self._meet_or_none(), self._join_or_none())

    def _meet_or_none(self):
        return self.__dict__.get("meet")

    def _join_or_none(self):
        return self.__dict__.get("join")

    def __eq__(self, other):
        if not isinstance(other, FinitePAlgebra):
            return NotImplemented
        return (
            self.size == other.size
            and self.zero == other.zero
            and self.one == other.one
            and self.constants == other.constants
            and self.labels == other.labels
            and np.array_equal(self.leq, other.leq)
            and np.array_equal(self.star, other.star)
        )

    __hash__ = None

    def __repr__(self):
        return f"<FinitePAlgebra size={self.size} labels={list(self.labels)[:8]}>"


@dataclass(frozen=True)
class Report:
    """Outcome of a validation: ``ok`` or the first violated condition."""

    ok: bool
    condition: str | None = None
    witness: tuple = ()
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "pass"
        return f"fail: {self.condition} witness={self.witness}" + (f" ({self.detail})" if self.detail else "")


PASS = Report(True)


def verify_p_algebra(a: FinitePAlgebra) -> Report:
    """Check every p-algebra axiom from the order and star tables alone.

    Meet and join are recomputed from the order, so tables attached at
    construction are not trusted.
    """
    n = a.size
    leq = np.asarray(a.leq)
    from .poset import check_partial_order

    bad = check_partial_order(leq)
    if bad is not None:
        return Report(False, bad[0], bad[1])
    if not leq[a.zero].all():
        y = int(np.flatnonzero(~leq[a.zero])[0])
        return Report(False, "zero is least", (a.zero, y))
    if not leq[:, a.one].all():
        y = int(np.flatnonzero(~leq[:, a.one])[0])
        return Report(False, "one is greatest", (y, a.one))
    meet, bad = _bounds_from_order(leq)
    if meet is None:
        return Report(False, "meet exists", bad)
    join, bad = _bounds_from_order(leq, dual=True)
    if join is None:
        return Report(False, "join exists", bad)
    for name, given, derived in (("meet", a._meet_or_none(), meet), ("join", a._join_or_none(), join)):
        if given is not None and not np.array_equal(given, derived):
            x, y = (int(v) for v in np.argwhere(given != derived)[0])
            return Report(False, f"{name} table agrees with order", (x, y))
    # x & (y | z) == (x & y) | (x & z)
    for x in range(n):
        lhs = meet[x][join]
        rhs = join[meet[x][:, None], meet[x][None, :]]
        if not np.array_equal(lhs, rhs):
            y, z = (int(v) for v in np.argwhere(lhs != rhs)[0])
            return Report(False, "distributivity", (x, y, z))
    # x & y == 0  iff  y <= x*
    disjoint = meet == a.zero
    below_star = leq.T[a.star]  # below_star[x, y] = y <= star(x)
    diff = disjoint != below_star
    if diff.any():
        x, y = (int(v) for v in np.argwhere(diff)[0])
        return Report(False, "pseudocomplement law", (x, y),
                      f"{a.labels[x]} & {a.labels[y]} = {a.labels[meet[x, y]]}, "
                      f"star({a.labels[x]}) = {a.labels[a.star[x]]}")
    return PASS


def pseudocomplements_from_order(leq, zero: int) -> list[int] | None:
    """star(x) = max{y : x & y = 0}, or None if some maximum is missing."""
    m = np.asarray(leq, dtype=bool)
    meet, bad = _bounds_from_order(m)
    if meet is None:
        return None
    out = []
    for x in range(m.shape[0]):
        ys = np.flatnonzero(meet[x] == zero)
        tops = [y for y in ys if m[ys, y].all()]
        if len(tops) != 1:
            return None
        out.append(int(tops[0]))
    return out


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FinitePAlgebra
    target: FinitePAlgebra
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.source.size:
            raise ValueError("map must be total on the source")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def check(self) -> Report:
        a, b, h = self.source, self.target, np.array(self.map)
        if ((h < 0) | (h >= b.size)).any():
            return Report(False, "map in range", (int(np.flatnonzero((h < 0) | (h >= b.size))[0]),))
        if h[a.zero] != b.zero:
            return Report(False, "preserves zero", (a.zero,))
        if h[a.one] != b.one:
            return Report(False, "preserves one", (a.one,))
        for name in sorted(set(a.constants) & set(b.constants)):
            if h[a.constants[name]] != b.constants[name]:
                return Report(False, f"preserves constant {name}", (a.constants[name],))
        bad = h[a.star] != b.star[h]
        if bad.any():
            return Report(False, "preserves star", (int(np.flatnonzero(bad)[0]),))
        for name, ta, tb in (("meet", a.meet, b.meet), ("join", a.join, b.join)):
            bad = h[ta] != tb[h[:, None], h[None, :]]
            if bad.any():
                x, y = (int(v) for v in np.argwhere(bad)[0])
                return Report(False, f"preserves {name}", (x, y))
        return PASS

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    def image(self) -> list[int]:
        return sorted(set(self.map))

    def compose(self, then: "Homomorphism") -> "Homomorphism":
        """``then`` after ``self``."""
        return Homomorphism(self.source, then.target, tuple(then.map[v] for v in self.map))


def identity(a: FinitePAlgebra) -> Homomorphism:
    return Homomorphism(a, a, tuple(range(a.size)))


# -- constructions ------------------------------------------------------------

def _subset_label(mask: int, n_atoms: int) -> str:
    if mask == 0:
        return "0"
    if mask == (1 << n_atoms) - 1:
        return "e"
    return "{" + ",".join(str(i + 1) for i in range(n_atoms) if mask >> i & 1) + "}"


def powerset_algebra(n_atoms: int) -> FinitePAlgebra:
    """The Boolean algebra of subsets of an ``n_atoms``-set; the top is labeled ``e``."""
    if n_atoms < 0 or n_atoms > MAX_ATOMS:
        raise CapExceeded(f"powerset algebra supports at most {MAX_ATOMS} atoms")
    masks = sorted(range(1 << n_atoms), key=lambda m: (bin(m).count("1"), m))
    m = np.array(masks, dtype=np.int64)
    pos = np.empty(len(masks), dtype=np.int64)
    pos[m] = np.arange(len(masks))
    leq = (m[:, None] & m[None, :]) == m[:, None]
    full = (1 << n_atoms) - 1
    star = pos[full ^ m]
    meet = pos[m[:, None] & m[None, :]]
    join = pos[m[:, None] | m[None, :]]
    if n_atoms == 0:
        labels = ["0"]
    else:
        labels = [_subset_label(x, n_atoms) for x in masks]
    return FinitePAlgebra(leq, star, 0, len(masks) - 1, labels=labels, meet=meet, join=join)


def stacked_algebra(b: FinitePAlgebra) -> FinitePAlgebra:
    """Adjoin a new top 1 to a Boolean algebra ``b``.

    star(0) = 1, star(1) = 0 and star(x) is the Boolean complement otherwise.
    The trivial algebra stacks to the two-element chain.
    """
    if not b.is_boolean():
        x = int(np.flatnonzero(b.join[np.arange(b.size), b.star] != b.one)[0])
        raise NotBoolean(f"element {b.labels[x]} has x | x* != 1")
    n = b.size
    top = n
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:n, :n] = b.leq
    leq[:, top] = True
    star = [top if x == b.zero else int(b.star[x]) for x in range(n)] + [b.zero]
    meet = np.empty((n + 1, n + 1), dtype=np.int32)
    meet[:n, :n] = b.meet
    meet[top, :n] = np.arange(n)
    meet[:n, top] = np.arange(n)
    meet[top, top] = top
    join = np.full((n + 1, n + 1), top, dtype=np.int32)
    join[:n, :n] = b.join
    labels = list(b.labels) + ["1"]
    return FinitePAlgebra(leq, star, b.zero, top, labels=labels, meet=meet, join=join)


def make_bnalg(i: int) -> FinitePAlgebra:
    """The powerset algebra on ``i`` atoms with a new top: 2**i + 1 elements."""
    return stacked_algebra(powerset_algebra(i))


def product(factors: Sequence[FinitePAlgebra], max_size: int = MAX_SIZE) -> FinitePAlgebra:
    """Direct product; elements are tuples in lexicographic order, labeled ``(x,y,...)``.

    A named constant is kept when every factor has it.
    """
    if not factors:
        raise ValueError("product of an empty list")
    sizes = [f.size for f in factors]
    total = int(np.prod(sizes, dtype=object))
    if total > max_size:
        raise CapExceeded(f"product would have {total} elements (cap {max_size})")
    coords = np.array(list(iproduct(*(range(s) for s in sizes))), dtype=np.int64).reshape(total, len(factors))
    weights = np.array([int(np.prod(sizes[k + 1:], dtype=np.int64)) for k in range(len(sizes))], dtype=np.int64)

    leq = np.ones((total, total), dtype=bool)
    meet = np.zeros((total, total), dtype=np.int32)
    join = np.zeros((total, total), dtype=np.int32)
    star = np.zeros(total, dtype=np.int64)
    for k, f in enumerate(factors):
        c = coords[:, k]
        fleq = np.asarray(f.leq)
        leq &= fleq[c[:, None], c[None, :]]
        meet += np.asarray(f.meet, dtype=np.int32)[c[:, None], c[None, :]] * np.int32(weights[k])
        join += np.asarray(f.join, dtype=np.int32)[c[:, None], c[None, :]] * np.int32(weights[k])
        star += np.asarray(f.star, dtype=np.int64)[c] * weights[k]

    def index_of(tup):
        return int(sum(v * w for v, w in zip(tup, weights)))

    zero = index_of([f.zero for f in factors])
    one = index_of([f.one for f in factors])
    shared = set.intersection(*(set(f.constants) for f in factors))
    constants = {name: index_of([f.constants[name] for f in factors]) for name in sorted(shared)}
    labels = ["(" + ",".join(f.labels[v] for f, v in zip(factors, row)) + ")" for row in coords.tolist()]
    return FinitePAlgebra(leq, star, zero, one, constants, labels, meet, join)


def power(a: FinitePAlgebra, k: int, max_size: int = MAX_SIZE) -> FinitePAlgebra:
    return product([a] * k, max_size=max_size)


def is_closed(a: FinitePAlgebra, elements: Iterable[int]) -> tuple[bool, tuple]:
    """Whether ``elements`` is a subuniverse; else (False, witness)."""
    s = sorted(set(int(x) for x in elements))
    inside = np.zeros(a.size, dtype=bool)
    inside[s] = True
    for name, c in [("zero", a.zero), ("one", a.one)] + sorted(a.constants.items()):
        if not inside[c]:
            return False, (name,)
    idx = np.array(s)
    for x in s:
        if not inside[a.star[x]]:
            return False, ("star", x)
    for name, table in (("meet", a.meet), ("join", a.join)):
        sub = table[idx[:, None], idx[None, :]]
        bad = ~inside[sub]
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return False, (name, int(idx[i]), int(idx[j]))
    return True, ()


def subalgebra(a: FinitePAlgebra, elements: Iterable[int]) -> tuple[FinitePAlgebra, Homomorphism]:
    """The subalgebra on a closed subset, with its inclusion map.

    Elements keep their relative order and labels.
    """
    s = sorted(set(int(x) for x in elements))
    ok, witness = is_closed(a, s)
    if not ok:
        raise ValueError(f"not a subuniverse: {witness}")
    pos = {x: i for i, x in enumerate(s)}
    idx = np.array(s)
    renum = np.full(a.size, -1, dtype=np.int64)
    renum[idx] = np.arange(len(s))
    sub = FinitePAlgebra(
        np.asarray(a.leq)[idx[:, None], idx[None, :]],
        renum[np.asarray(a.star)[idx]],
        pos[a.zero],
        pos[a.one],
        {name: pos[c] for name, c in a.constants.items()},
        [a.labels[x] for x in s],
        renum[np.asarray(a.meet)[idx[:, None], idx[None, :]]],
        renum[np.asarray(a.join)[idx[:, None], idx[None, :]]],
    )
    return sub, Homomorphism(sub, a, tuple(s))


def closure(a: FinitePAlgebra, gens: Iterable[int]) -> list[int]:
    """Least subuniverse containing ``gens``, the bounds and the named constants."""
    found = {a.zero, a.one, *a.constants.values(), *(int(g) for g in gens)}
    meet, join, star = a.meet_list, a.join_list, a.star_list
    frontier = sorted(found)
    while frontier:
        new = set()
        for x in frontier:
            new.add(star[x])
            for y in list(found):
                new.add(meet[x][y])
                new.add(join[x][y])
        new -= found
        found |= new
        frontier = sorted(new)
    return sorted(found)


def generated_subalgebra(a: FinitePAlgebra, gens: Iterable[int]) -> tuple[FinitePAlgebra, Homomorphism]:
    return subalgebra(a, closure(a, gens))


def heyting_implication(a: FinitePAlgebra) -> np.ndarray | None:
    """Table of x -> y = max{z : x & z <= y}, or None if some maximum is missing."""
    n = a.size
    leq = np.asarray(a.leq)
    meet = np.asarray(a.meet)
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        # ok[z, y]: x & z <= y
        ok = leq[meet[x]]
        for y in range(n):
            zs = np.flatnonzero(ok[:, y])
            tops = [z for z in zs if leq[zs, z].all()]
            if len(tops) != 1:
                return None
            table[x, y] = tops[0]
    table.flags.writeable = False
    return table
