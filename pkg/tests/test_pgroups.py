import itertools
from math import comb

import numpy as np
import pytest

from gsgrowth.config import use_limits
from gsgrowth.errors import DomainError, ResourceCapError
from gsgrowth.pgroups import (FiniteGroup, Subgroup, all_subgroups, alternating, automorphisms, build,
                              characteristic_subgroups, cmea_rank, cyclic, d_min, d_normal, dihedral, direct_product,
                              elementary_abelian, frattini_p, free_cmea, lamplighter_quotient, library, max_p_quotient,
                              normal_closure, normal_subgroups, phi_sub, quaternion, quotient, subgroup_as_group,
                              subgroup_generated, symmetric)

SMALL = [G for G in library(64)]
P_GROUPS = [G for G in SMALL if G.is_p_group() and G.order > 1]


# independent oracles

def closed_subsets(G, normal=False):
    """Every subset containing 1 that is closed under the product (and conjugation); exponential, tiny groups only."""
    out = []
    rest = range(1, G.order)
    for k in range(G.order):
        for combo in itertools.combinations(rest, k):
            S = {0, *combo}
            if all(G.mul(a, b) in S for a in S for b in S):
                if not normal or all(G.conj(x, g) in S for x in S for g in range(G.order)):
                    out.append(frozenset(S))
    return out


def brute_d(G):
    """Smallest k such that some k elements generate G."""
    if G.order == 1:
        return 0
    for k in range(1, G.order):
        for combo in itertools.combinations(range(1, G.order), k):
            if subgroup_generated(G, combo).order == G.order:
                return k


def brute_d_normal(G, N):
    if N.order == 1:
        return 0
    for k in range(1, N.order):
        for combo in itertools.combinations([x for x in N.elements if x], k):
            if normal_closure(G, combo) == N:
                return k


def brute_automorphism_count(G):
    count = 0
    for perm in itertools.permutations(range(1, G.order)):
        f = (0, *perm)
        if all(f[G.mul(a, b)] == G.mul(f[a], f[b]) for a in range(G.order) for b in range(G.order)):
            count += 1
    return count


# constructors

def test_constructors():
    assert cyclic(4).order == 4 and sorted(cyclic(4).element_orders.tolist()).count(4) == 2
    E = elementary_abelian(2, 3)
    assert E.order == 8 and E.exponent == 2
    P = direct_product(cyclic(2), cyclic(2))
    assert P.order == 4 and P.exponent == 2 and P.is_abelian
    assert quaternion(8).exponent == 4 and sorted(quaternion(8).element_orders.tolist()).count(2) == 1
    assert symmetric(4).order == 24 and alternating(4).order == 12


@pytest.mark.parametrize("d,p,order", [(1, 2, 4), (2, 2, 32), (2, 3, 243), (3, 2, 512), (1, 3, 9)])
def test_free_cmea_order(d, p, order):
    G = free_cmea(d, p)
    assert G.order == order == p ** (d + comb(d + 1, 2))


def test_free_cmea_1_3_is_cyclic():
    assert 9 in free_cmea(1, 3).element_orders.tolist()


@pytest.mark.parametrize("p,k,order,rank", [(2, 1, 8, 2), (2, 2, 64, 4), (3, 1, 81, 3)])
def test_lamplighter(p, k, order, rank):
    G = lamplighter_quotient(p, k)
    B = G.named_subgroup("base")
    assert G.order == order and B.order == p**rank and B.index == p**k
    assert B.is_normal() and d_min(subgroup_as_group(B)[0]) == rank


def test_order_cap():
    with use_limits(group_order=100):
        with pytest.raises(ResourceCapError):
            free_cmea(2, 3)


def test_invalid_table():
    with pytest.raises(DomainError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(DomainError):
        FiniteGroup([[1, 0], [0, 1]])


def test_builtin_dispatch():
    assert build("dihedral", [8]).order == 8
    assert build("direct_product", [{"builtin": "cyclic", "params": [2]},
                                    {"builtin": "cyclic", "params": [3]}]).order == 6
    with pytest.raises(DomainError):
        build("nope", [])


# closures and quotients

def test_closures():
    D8 = dihedral(8)
    assert subgroup_generated(D8, []) == D8.trivial()
    assert subgroup_generated(D8, range(8)) == D8.whole()
    normals = [N for N in closed_subsets(D8, normal=True)]
    for s in range(4, 8):  # reflections r^i s
        K = normal_closure(D8, [s])
        smallest = min((N for N in normals if s in N), key=len)
        assert K.set == smallest and K.order == 4


def test_quotients():
    for G in (dihedral(8), symmetric(3), cyclic(6)):
        Q, pi = quotient(G, G.trivial())
        assert Q.order == G.order and pi.is_homomorphism()
        Q, _ = quotient(G, G.whole())
        assert Q.order == 1
    D8 = dihedral(8)
    Z = Subgroup(D8, [z for z in range(8) if all(D8.mul(z, g) == D8.mul(g, z) for g in range(8))])
    Q, pi = quotient(D8, Z)
    assert Q.order == 4 and Q.exponent == 2 and pi.kernel() == Z
    with pytest.raises(DomainError):
        quotient(D8, subgroup_generated(D8, [4]))


# Frattini-type subgroups and ranks

def test_frattini_examples():
    E = elementary_abelian(3, 2)
    assert frattini_p(E) == E.trivial()
    assert frattini_p(cyclic(9)).order == 3
    C = free_cmea(2, 2)
    F = frattini_p(C)
    assert F.order == 8
    assert phi_sub(C, F) == C.trivial()
    assert phi_sub(C, C.trivial()) == C.trivial()
    C8 = cyclic(8)
    assert phi_sub(C8, subgroup_generated(C8, [2])).order == 2
    with pytest.raises(DomainError):
        frattini_p(symmetric(3))


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.label)
def test_d_min_matches_exhaustive_search(G):
    assert d_min(G) == brute_d(G)


def test_d_min_examples():
    assert d_min(elementary_abelian(2, 3)) == 3
    assert d_min(cyclic(9)) == 1
    assert d_min(free_cmea(3, 2)) == 3


@pytest.mark.parametrize("G", [G for G in SMALL if G.order <= 16], ids=lambda G: G.label)
def test_d_normal_matches_exhaustive_search(G):
    for N in normal_subgroups(G):
        assert d_normal(G, N) == brute_d_normal(G, N), N


def test_d_normal_examples():
    E = elementary_abelian(2, 2)
    assert d_normal(E, E.trivial()) == 0 and d_normal(E, E.whole()) == 2
    L = lamplighter_quotient(2, 1)
    assert d_normal(L, L.named_subgroup("base")) == 1
    with pytest.raises(DomainError):
        d_normal(symmetric(3), subgroup_generated(symmetric(3), [1]))


def test_search_cap_reports_bracket():
    with pytest.raises(ResourceCapError) as info:
        d_min(symmetric(3), work_cap=0)
    assert info.value.bracket == (1, 2)
    assert d_min(symmetric(3)) == 2


@pytest.mark.parametrize("d,p", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_cmea_rank_of_free_cmea(d, p):
    assert cmea_rank(free_cmea(d, p)) == d + comb(d + 1, 2)


def test_cmea_rank_examples():
    assert cmea_rank(elementary_abelian(3, 3)) == 3
    assert cmea_rank(cyclic(8)) == 2
    assert cmea_rank(cyclic(27)) == 2


@pytest.mark.parametrize("G", P_GROUPS, ids=lambda G: G.label)
def test_cmea_quotient_is_maximal_and_cmea(G):
    F = frattini_p(G)
    M = phi_sub(G, F)
    assert cmea_rank(G) >= d_min(G)
    assert (cmea_rank(G) == d_min(G)) == (F == M)
    Q, pi = quotient(G, M)
    FQ = frattini_p(Q)
    assert FQ.order == 1 or (Q.exponent in (Q.p, Q.p**2) and all(Q.element_order(x) in (1, Q.p) for x in FQ.elements))
    assert all(Q.mul(x, g) == Q.mul(g, x) for x in FQ.elements for g in range(Q.order))
    assert quotient(Q, FQ)[0].exponent in (1, Q.p)


def test_max_p_quotient():
    G = dihedral(8)
    assert max_p_quotient(G, 2)[0].order == 8
    assert max_p_quotient(symmetric(3), 2)[0].order == 2
    assert max_p_quotient(cyclic(6), 3)[0].order == 3


# lattices and automorphisms

def test_normal_lattice_oracle_dihedral():
    D8 = dihedral(8)
    brute = closed_subsets(D8, normal=True)
    assert len(brute) == 6
    assert {N.set for N in normal_subgroups(D8)} == set(brute)
    assert len(all_subgroups(D8)) == len(closed_subsets(D8)) == 10


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.label)
def test_normal_lattice_against_all_subgroups(G):
    normals = normal_subgroups(G)
    assert normals == [H for H in all_subgroups(G) if H.is_normal()]
    assert normals[0] == G.trivial() and G.whole() in normals
    sets = {N.set for N in normals}
    for A, B in itertools.combinations(normals, 2):
        assert A.set & B.set in sets
        assert normal_closure(G, list(A.elements) + list(B.elements)).set in sets


@pytest.mark.parametrize("G,count", [(cyclic(5), 4), (cyclic(7), 6), (elementary_abelian(2, 2), 6), (dihedral(8), 8),
                                     (quaternion(8), 24), (symmetric(3), 6)], ids=lambda x: getattr(x, "label", x))
def test_automorphism_counts(G, count):
    A = automorphisms(G)
    assert A.order == count
    if G.order <= 8:
        assert brute_automorphism_count(G) == count
    ident = tuple(range(G.order))
    assert any(a.images == ident for a in A.automorphisms)
    images = {a.images for a in A.automorphisms}
    for a in A.automorphisms[:6]:
        for b in A.automorphisms[:6]:
            assert a.compose(b).images in images


def test_characteristic_examples():
    E = elementary_abelian(2, 2)
    assert characteristic_subgroups(E) == [E.trivial(), E.whole()]
    assert len(normal_subgroups(E)) == 5
    C8 = cyclic(8)
    assert len(characteristic_subgroups(C8)) == len(normal_subgroups(C8)) == 4


@pytest.mark.parametrize("G", [G for G in SMALL if G.order <= 32], ids=lambda G: G.label)
def test_characteristic_subset_of_normal(G):
    chars = characteristic_subgroups(G)
    normals = normal_subgroups(G)
    assert set(chars) <= set(normals)
    auts = automorphisms(G)
    for N in normals:
        fixed = all({a.images[x] for x in N.elements} == N.set for a in auts.automorphisms)
        assert fixed == (N in chars)


def test_lattice_cap():
    with pytest.raises(ResourceCapError):
        normal_subgroups(dihedral(16), cap=8)
    with pytest.raises(ResourceCapError):
        automorphisms(elementary_abelian(2, 4), count_cap=100)


def test_table_is_numpy():
    assert isinstance(cyclic(3).table, np.ndarray)
