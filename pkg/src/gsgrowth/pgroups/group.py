"""Cayley-table groups, subgroup handles, homomorphisms and closures."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from ..config import limits
from ..errors import DomainError, ResourceCapError
from ..fplin import is_prime


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``n == p**k``, ``k >= 1``; None otherwise (including ``n == 1``)."""
    if n < 2:
        return None
    p = next(f for f in range(2, n + 1) if n % f == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def log_p(n: int, p: int) -> int:
    """Exact base-``p`` logarithm of a power of ``p``."""
    k = 0
    while n > 1:
        if n % p:
            raise DomainError(f"{n} is not a power of {p}")
        n //= p
        k += 1
    return k


class FiniteGroup:
    """A group given by its Cayley table on indices ``0..n-1``; index 0 is the identity."""

    def __init__(self, table, label: str = "G", generators: Sequence[int] | None = None,
                 origin: dict | None = None, named: dict[str, Sequence[int]] | None = None,
                 validate: bool = True):
        t = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise DomainError("Cayley table must be a nonempty square array")
        n = t.shape[0]
        if n > limits().group_order:
            raise ResourceCapError(f"group order {n} exceeds cap {limits().group_order}", cap=limits().group_order)
        t.setflags(write=False)
        self.table = t
        self.order = n
        self.label = label
        self.origin = origin
        self.named = {k: tuple(sorted(int(x) for x in v)) for k, v in (named or {}).items()}
        self._generators = tuple(int(g) for g in generators) if generators else None
        if validate:
            self._validate()
        inv = np.empty(n, dtype=np.int32)
        rows, cols = np.nonzero(t == 0)
        inv[rows] = cols
        inv.setflags(write=False)
        self.inv = inv

    def _validate(self):
        t, n = self.table, self.order
        ar = np.arange(n)
        if t.min() < 0 or t.max() >= n:
            raise DomainError("table entries out of range")
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise DomainError("element 0 must be the identity")
        srt = np.sort(t, axis=1)
        if not (np.all(srt == ar) and np.all(np.sort(t, axis=0) == ar[:, None])):
            raise DomainError("table is not a Latin square")
        if n <= 256:
            if not np.array_equal(t[t], t[:, t]):
                raise DomainError("table is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 100_000))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise DomainError("table is not associative")

    def __repr__(self):
        return f"FiniteGroup({self.label!r}, order={self.order})"

    def __len__(self):
        return self.order

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        r, rows = 0, self.rows
        for _ in range(k):
            r = rows[r][a]
        return r

    def conj(self, x: int, g: int) -> int:
        """``g^-1 x g``."""
        rows = self.rows
        return rows[rows[int(self.inv[g])][x]][g]

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a b a^-1 b^-1``."""
        rows, inv = self.rows, self.inv
        return rows[rows[a][b]][rows[int(inv[a])][int(inv[b])]]

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        k = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, np.arange(self.order)]
            k += 1
        return orders

    def element_order(self, a: int) -> int:
        return int(self.element_orders[a])

    @cached_property
    def exponent(self) -> int:
        e = 1
        for o in set(self.element_orders.tolist()):
            e = e * o // gcd(e, o)
        return e

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conjugacy_class(self, x: int) -> tuple[int, ...]:
        return self._class_of[x]

    @cached_property
    def _class_of(self) -> list[tuple[int, ...]]:
        out: list = [None] * self.order
        ar = np.arange(self.order)
        t, inv = self.table, self.inv
        for x in range(self.order):
            if out[x] is None:
                cls = tuple(sorted(set(t[t[inv, x], ar].tolist())))
                for y in cls:
                    out[y] = cls
        return out

    @cached_property
    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        return sorted(set(self._class_of), key=lambda c: c[0])

    @property
    def p(self) -> int | None:
        """The prime when the order is a nontrivial prime power."""
        pp = prime_power(self.order)
        return pp[0] if pp else None

    def is_p_group(self, p: int | None = None) -> bool:
        if self.order == 1:
            return True
        pp = prime_power(self.order)
        return pp is not None and (p is None or pp[0] == p)

    @property
    def generators(self) -> tuple[int, ...]:
        if self._generators is None:
            self._generators = greedy_generators(self, range(self.order))
        return self._generators

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def named_subgroup(self, name: str) -> "Subgroup":
        if name not in self.named:
            raise DomainError(f"group {self.label} has no named subgroup {name!r}")
        return Subgroup(self, self.named[name])


class Subgroup:
    """A subgroup handle: a sorted tuple of element indices inside a parent group."""

    __slots__ = ("group", "elements", "_set", "_gens")

    def __init__(self, group: FiniteGroup, elements: Iterable[int], gens: Sequence[int] | None = None):
        self.group = group
        self.elements = tuple(sorted(int(x) for x in elements))
        self._set = None
        self._gens = tuple(gens) if gens is not None else None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.group.order // self.order

    @property
    def set(self) -> frozenset[int]:
        if self._set is None:
            self._set = frozenset(self.elements)
        return self._set

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    def __contains__(self, x: int) -> bool:
        return x in self.set

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.group is self.group and other.elements == self.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self.set <= other.set

    def __lt__(self, other: "Subgroup") -> bool:
        return self.set < other.set

    def sort_key(self):
        return (self.order, self.elements)

    def __repr__(self):
        return f"Subgroup(order={self.order}, index={self.index})"

    @property
    def generators(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = greedy_generators(self.group, self.elements)
        return self._gens

    def is_valid(self) -> bool:
        rows = self.group.rows
        s = self.set
        return 0 in s and all(rows[a][b] in s for a in self.elements for b in self.generators) and \
            subgroup_generated(self.group, self.generators).set == s

    def is_normal(self) -> bool:
        G = self.group
        s = self.set
        return all(G.conj(h, g) in s for g in G.generators for h in self.generators)

    def is_p_group(self, p: int | None = None) -> bool:
        if self.order == 1:
            return True
        pp = prime_power(self.order)
        return pp is not None and (p is None or pp[0] == p)


def canonical_sort(subs: Iterable[Subgroup]) -> list[Subgroup]:
    return sorted(subs, key=Subgroup.sort_key)


@dataclass(frozen=True, eq=False)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_homomorphism(self) -> bool:
        im = np.asarray(self.images)
        return len(self.images) == self.domain.order and bool(
            np.array_equal(im[self.domain.table], self.codomain.table[np.ix_(im, im)]))

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and len(set(self.images)) == self.domain.order

    def kernel(self) -> Subgroup:
        return Subgroup(self.domain, [x for x, y in enumerate(self.images) if y == 0])

    def image_of(self, H: Subgroup) -> Subgroup:
        return Subgroup(self.codomain, {self.images[h] for h in H.elements})

    def preimage(self, K: Subgroup) -> Subgroup:
        s = K.set
        return Subgroup(self.domain, [x for x, y in enumerate(self.images) if y in s])

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``self ∘ other``."""
        return GroupHom(other.domain, self.codomain, tuple(self.images[y] for y in other.images))

    def __eq__(self, other):
        return isinstance(other, GroupHom) and self.images == other.images and \
            self.domain is other.domain and self.codomain is other.codomain

    def __hash__(self):
        return hash(self.images)


def _bfs_closure(rows: list[list[int]], gens: Sequence[int], seed: Iterable[int] = (0,)) -> set[int]:
    seen = set(seed)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            r = rows[x]
            for g in gens:
                y = r[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``."""
    chosen: list[int] = []
    current = {0}
    rows = G.rows
    for g in gens:
        g = int(g)
        if g not in current:
            chosen.append(g)
            current = _bfs_closure(rows, chosen)
    return Subgroup(G, current, chosen)


def greedy_generators(G: FiniteGroup, elements: Iterable[int]) -> tuple[int, ...]:
    """A small (not necessarily minimal) generating set of the subgroup spanned by ``elements``.

    Elements of large order are tried first; the result is deterministic.
    """
    els = sorted(set(int(e) for e in elements), key=lambda e: (-G.element_order(e), e))
    return subgroup_generated(G, els)._gens or ()


def normal_closure(G: FiniteGroup, gens: Iterable[int], base: Subgroup | None = None) -> Subgroup:
    """Smallest normal subgroup containing ``gens`` (and the normal subgroup ``base``)."""
    rows = G.rows
    chosen: list[int] = list(base.generators) if base is not None else []
    current = set(base.elements) if base is not None else {0}
    for g in gens:
        g = int(g)
        if g in current:
            continue
        for c in G.conjugacy_class(g):
            if c not in current:
                chosen.append(c)
                current = _bfs_closure(rows, chosen)
    return Subgroup(G, current, chosen)


def product_of_normals(A: Subgroup, B: Subgroup) -> Subgroup:
    """``AB`` for subgroups with ``AB`` a subgroup (e.g. one of them normal)."""
    G = A.group
    if A <= B:
        return B
    if B <= A:
        return A
    idx = np.unique(G.table[np.ix_(np.asarray(A.elements), np.asarray(B.elements))])
    return Subgroup(G, idx.tolist())


def subgroup_as_group(H: Subgroup, label: str | None = None) -> tuple[FiniteGroup, GroupHom]:
    """Re-index ``H`` as a standalone group; returns it with the inclusion homomorphism."""
    G = H.group
    els = np.asarray(H.elements)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[els] = np.arange(len(els))
    table = pos[G.table[np.ix_(els, els)]]
    gens = [int(pos[g]) for g in H.generators]
    K = FiniteGroup(table, label or f"{G.label}_sub{H.order}", generators=gens or None, validate=False)
    return K, GroupHom(K, G, tuple(int(x) for x in els))


def quotient(G: FiniteGroup, N: Subgroup, label: str | None = None) -> tuple[FiniteGroup, GroupHom]:
    """``G/N`` as a Cayley table on cosets, with the projection."""
    if not N.is_normal():
        raise DomainError("quotient requires a normal subgroup")
    n = G.order
    cid = np.full(n, -1, dtype=np.int64)
    reps = []
    nel = np.asarray(N.elements)
    for x in range(n):
        if cid[x] < 0:
            cid[G.table[x, nel]] = len(reps)
            reps.append(x)
    r = np.asarray(reps)
    table = cid[G.table[np.ix_(r, r)]]
    gens = sorted({int(cid[g]) for g in G.generators} - {0})
    Q = FiniteGroup(table, label or f"{G.label}/N{N.order}", generators=gens or None, validate=False)
    return Q, GroupHom(G, Q, tuple(int(c) for c in cid))


def power_elements(G: FiniteGroup, elements: Iterable[int], p: int) -> list[int]:
    return [G.power(int(x), p) for x in elements]


def check_prime(p: int):
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
