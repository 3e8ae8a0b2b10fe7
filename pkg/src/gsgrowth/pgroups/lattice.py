"""Normal and characteristic subgroup lattices, automorphism groups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..config import limits
from ..errors import ResourceCapError
from .group import (FiniteGroup, GroupHom, Subgroup, canonical_sort, normal_closure, product_of_normals,
                    subgroup_generated)
from .structure import d_min


def _lattice_cap(G: FiniteGroup, cap: int | None, which: str):
    if G.order > cap:
        raise ResourceCapError(f"{which} enumeration: order {G.order} exceeds cap {cap}", cap=cap)


def normal_subgroups(G: FiniteGroup, cap: int | None = None) -> list[Subgroup]:
    """Every normal subgroup exactly once, sorted by (order, elements).

    Each normal subgroup is a product of normal closures of conjugacy classes,
    so a breadth-first walk from the trivial subgroup joining one class
    closure at a time reaches all of them.
    """
    cap = limits().lattice_order if cap is None else cap
    _lattice_cap(G, cap, "normal subgroup")
    count_cap = limits().enumeration
    atoms = {}
    for cls in G.conjugacy_classes:
        if cls[0] != 0:
            K = normal_closure(G, [cls[0]])
            atoms[K.elements] = K
    atoms = canonical_sort(atoms.values())
    found = {G.trivial().elements: G.trivial()}
    queue = [G.trivial()]
    while queue:
        nxt = []
        for N in queue:
            for K in atoms:
                if K <= N:
                    continue
                M = product_of_normals(N, K)
                if M.elements not in found:
                    found[M.elements] = M
                    nxt.append(M)
                    if len(found) > count_cap:
                        raise ResourceCapError(f"more than {count_cap} normal subgroups", cap=count_cap)
        queue = nxt
    return canonical_sort(found.values())


@dataclass(frozen=True, eq=False)
class AutGroup:
    parent: FiniteGroup
    automorphisms: tuple[GroupHom, ...]

    @property
    def order(self) -> int:
        return len(self.automorphisms)

    def __len__(self):
        return len(self.automorphisms)


def _extend(G: FiniteGroup, gens: list[int], images: list[int]) -> dict[int, int] | None:
    """The injective homomorphism on <gens> sending gens[i] -> images[i], if one exists."""
    rows = G.rows
    phi = {0: 0}
    used = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            rx, ry = rows[x], rows[phi[x]]
            for g, h in zip(gens, images):
                y, img = rx[g], ry[h]
                if y in phi:
                    if phi[y] != img:
                        return None
                elif img in used:
                    return None
                else:
                    phi[y] = img
                    used.add(img)
                    nxt.append(y)
        frontier = nxt
    return phi


def _generating_sequence(G: FiniteGroup) -> list[int]:
    """A generating sequence of minimal length; fewer generators means fewer backtracking levels."""
    gens = list(G.generators)
    m = d_min(G)
    if len(gens) == m:
        return gens
    reps = [c[0] for c in G.conjugacy_classes if c[0] != 0]
    for first in reps:
        for rest in combinations(range(1, G.order), m - 1):
            phi = _extend(G, [first, *rest], [first, *rest])
            if phi is not None and len(phi) == G.order:
                return [first, *rest]
    return gens


def automorphisms(G: FiniteGroup, cap: int | None = None, count_cap: int | None = None) -> AutGroup:
    """All automorphisms, by backtracking over images of a generating sequence."""
    cap = limits().aut_order if cap is None else cap
    count_cap = limits().aut_count if count_cap is None else count_cap
    _lattice_cap(G, cap, "automorphism")
    if G.order == 1:
        return AutGroup(G, (GroupHom(G, G, (0,)),))
    gens = _generating_sequence(G)
    orders = G.element_orders
    candidates = [[y for y in range(G.order) if orders[y] == orders[g]] for g in gens]
    found: list[GroupHom] = []

    def rec(level: int, images: list[int]):
        if level == len(gens):
            phi = _extend(G, gens, images)
            if phi is not None and len(phi) == G.order:
                found.append(GroupHom(G, G, tuple(phi[x] for x in range(G.order))))
                if len(found) > count_cap:
                    raise ResourceCapError(f"more than {count_cap} automorphisms", cap=count_cap)
            return
        for y in candidates[level]:
            trial = images + [y]
            if _extend(G, gens[: level + 1], trial) is not None:
                rec(level + 1, trial)

    rec(0, [])
    found.sort(key=lambda h: h.images)
    return AutGroup(G, tuple(found))


def characteristic_subgroups(G: FiniteGroup, cap: int | None = None) -> list[Subgroup]:
    """Normal subgroups mapped onto themselves by every automorphism."""
    cap = limits().aut_order if cap is None else cap
    _lattice_cap(G, cap, "characteristic subgroup")
    auts = automorphisms(G, cap)
    out = []
    for N in normal_subgroups(G):
        idx = np.asarray(N.elements)
        if all(set(np.asarray(a.images)[idx].tolist()) == N.set for a in auts.automorphisms):
            out.append(N)
    return out


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by adjoining one element at a time starting from the trivial group."""
    seen = {G.trivial().elements: G.trivial()}
    frontier = [G.trivial()]
    while frontier:
        nxt = []
        for H in frontier:
            for x in range(G.order):
                if x not in H:
                    K = subgroup_generated(G, list(H.generators) + [x])
                    if K.elements not in seen:
                        seen[K.elements] = K
                        nxt.append(K)
        frontier = nxt
    return canonical_sort(seen.values())
