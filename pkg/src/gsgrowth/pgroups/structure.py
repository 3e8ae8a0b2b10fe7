"""Frattini-type subgroups, generator numbers and CMEA rank."""

from __future__ import annotations

from itertools import combinations

from ..config import limits
from ..errors import DomainError, ResourceCapError
from .group import (FiniteGroup, GroupHom, Subgroup, _bfs_closure, check_prime, log_p, normal_closure,
                    prime_factors, prime_power, product_of_normals, quotient)


def _require_p_group(order: int, what: str) -> int | None:
    if order == 1:
        return None
    pp = prime_power(order)
    if pp is None:
        raise DomainError(f"{what} of order {order} is not a p-group")
    return pp[0]


def frattini_p(G: FiniteGroup) -> Subgroup:
    """``G^p [G, G]`` for a p-group ``G``."""
    p = _require_p_group(G.order, "group")
    if p is None:
        return G.trivial()
    return _power_commutator(G, G.generators, p)


def _power_commutator(G: FiniteGroup, n_gens, p: int) -> Subgroup:
    # N^p [N, G] is the normal closure of {n^p, [n, g]} over generators n of N and g of G
    gens = [G.power(n, p) for n in n_gens]
    gens += [G.commutator(n, g) for n in n_gens for g in G.generators]
    return normal_closure(G, gens)


def phi_sub(G: FiniteGroup, N: Subgroup, p: int | None = None) -> Subgroup:
    """``N^p [N, G]`` for a normal p-subgroup ``N``; ``p`` is taken from ``|N|`` unless given."""
    if not N.is_normal():
        raise DomainError("phi_sub requires a normal subgroup")
    if p is None:
        p = _require_p_group(N.order, "subgroup")
        if p is None:
            return G.trivial()
    else:
        check_prime(p)
    return _power_commutator(G, N.generators, p)


def d_min_p(G: FiniteGroup) -> int:
    """Minimal number of generators of a p-group, ``log_p (G : Phi(G))``."""
    p = _require_p_group(G.order, "group")
    if p is None:
        return 0
    return log_p(G.order // frattini_p(G).order, p)


def cmea_rank(G: FiniteGroup) -> int:
    """``log_p`` of the largest CMEA quotient: ``log_p (G : Phi_G(Phi(G)))``."""
    p = _require_p_group(G.order, "group")
    if p is None:
        return 0
    F = frattini_p(G)
    return log_p(G.order // phi_sub(G, F, p).order, p)


def max_p_quotient(G: FiniteGroup, p: int) -> tuple[FiniteGroup, GroupHom]:
    """``G/K`` where ``K`` is normally generated by the elements of order prime to ``p``."""
    check_prime(p)
    coprime = [x for x in range(G.order) if G.element_order(x) % p != 0]
    K = normal_closure(G, coprime)
    return quotient(G, K, label=f"{G.label}_max{p}")


def _elementary_lower_bound(G: FiniteGroup, N: Subgroup) -> int:
    """``max_p dim N/(N^p [N, G])``: every normal generating set of ``N`` spans these quotients."""
    best = 1 if N.order > 1 else 0
    for p in prime_factors(N.order):
        M = _power_commutator(G, N.generators, p)
        best = max(best, log_p(N.order // M.order, p))
    return best


class _Search:
    """Exhaustive search for a smallest generating family, counting closure evaluations."""

    def __init__(self, work_cap: int):
        self.work = 0
        self.cap = work_cap

    def tick(self, bracket):
        self.work += 1
        if self.work > self.cap:
            raise ResourceCapError(f"exhaustive search exceeded work cap {self.cap}; bracket {bracket}",
                                   cap=self.cap, bracket=bracket)


def _prime_filters(G: FiniteGroup, N: Subgroup, m: int) -> list[Subgroup]:
    """Subgroups ``N^p[N, G]`` whose quotient has dimension exactly ``m``.

    A normal generating family of size ``m`` must map onto a basis of each such
    quotient, so every chosen element has to leave the span of the previous ones.
    """
    out = []
    for p in prime_factors(N.order):
        M = _power_commutator(G, N.generators, p)
        if log_p(N.order // M.order, p) == m:
            out.append(M)
    return out


def d_normal(G: FiniteGroup, N: Subgroup, work_cap: int | None = None) -> int:
    """Minimal number of elements of ``N`` whose normal closure in ``G`` is ``N``."""
    if not N.is_normal():
        raise DomainError("d_normal requires a normal subgroup")
    if N.order == 1:
        return 0
    lower = _elementary_lower_bound(G, N)
    reps = [c[0] for c in G.conjugacy_classes if c[0] in N and c[0] != 0]
    # greedy upper bound: repeatedly take the class whose addition gives the largest closure
    chosen: list[int] = []
    current = G.trivial()
    while current.order < N.order:
        r, current = max(((r, normal_closure(G, [r], base=current)) for r in reps if r not in current),
                         key=lambda pair: pair[1].order)
        chosen.append(r)
    upper = len(chosen)
    if lower == upper:
        return upper
    search = _Search(limits().search_work if work_cap is None else work_cap)
    for m in range(lower, upper):
        if _normal_family_exists(G, N, reps, m, search, (lower, upper)):
            return m
        lower = m + 1
    return upper


def _normal_family_exists(G, N, reps, m, search, bracket) -> bool:
    filters = _prime_filters(G, N, m)

    def rec(start: int, current: Subgroup, depth: int) -> bool:
        if current.order == N.order:
            return True
        if depth == m:
            return False
        spans = [product_of_normals(current, M) for M in filters]
        for i in range(start, len(reps)):
            r = reps[i]
            if r in current or any(r in S for S in spans):
                continue
            search.tick(bracket)
            if rec(i + 1, normal_closure(G, [r], base=current), depth + 1):
                return True
        return False

    return rec(0, G.trivial(), 0)


def d_min(G: FiniteGroup, work_cap: int | None = None) -> int:
    """Minimal size of a generating set of ``G`` (exact; Burnside basis for p-groups)."""
    if G.order == 1:
        return 0
    if G.is_p_group():
        return d_min_p(G)
    lower = 1
    for p in prime_factors(G.order):
        M = _power_commutator(G, G.generators, p)
        lower = max(lower, log_p(G.order // M.order, p))
    upper = len(G.generators)
    if lower >= upper:
        return upper
    search = _Search(limits().search_work if work_cap is None else work_cap)
    rows = G.rows
    class_reps = [c[0] for c in G.conjugacy_classes if c[0] != 0]
    for m in range(lower, upper):
        # the first generator may be conjugated to a class representative
        for first in class_reps:
            for rest in combinations(range(1, G.order), m - 1):
                if first in rest:
                    continue
                search.tick((lower, upper))
                if len(_bfs_closure(rows, (first,) + rest)) == G.order:
                    return m
        lower = m + 1
    return upper

