from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from gsgrowth.errors import DomainError
from gsgrowth.fplin import gaussian_binomial
from gsgrowth.growth import (chain_upper_bound, free_subgroup_rank, growth_table, index_transfer_check,
                             prop14_arithmetic_check, rank_gradient_chain, subspace_lower_bound, theorem1_check,
                             theorem_sweep, virtual_transfer_check)
from gsgrowth.pgroups import (all_subgroups, cyclic, d_min, dihedral, elementary_abelian, frattini_p, free_cmea,
                              lamplighter_quotient, library, normal_subgroups, subgroup_as_group, subgroup_generated,
                              trivial_group)

P_GROUPS = [G for G in library(64) if G.is_p_group() and G.order > 1]


def test_growth_table_examples():
    t = growth_table(elementary_abelian(2, 2), with_characteristic=True)
    assert t.normal == {1: 1, 2: 3, 4: 1}
    assert t.characteristic == {1: 1, 4: 1}
    t = growth_table(cyclic(8), with_characteristic=True)
    assert t.normal == t.characteristic == {1: 1, 2: 1, 4: 1, 8: 1}
    assert growth_table(dihedral(8)).total_normal == 6


@pytest.mark.parametrize("G", [G for G in library(32)], ids=lambda G: G.label)
def test_growth_table_invariants(G):
    t = growth_table(G, with_characteristic=True)
    assert t.normal[1] == 1
    cum = t.cumulative()
    vals = [cum[n] for n in t.indices]
    assert vals == sorted(vals) and vals[-1] == len(normal_subgroups(G))
    subs = {}
    for H in all_subgroups(G):
        subs[H.index] = subs.get(H.index, 0) + 1
    for n in t.indices:
        assert t.characteristic.get(n, 0) <= t.normal.get(n, 0) <= subs.get(n, 0)
    assert t.s(G.order) == cum[G.order]


def test_growth_table_outputs():
    t = growth_table(elementary_abelian(2, 2), with_characteristic=True)
    assert t.to_csv() == "index,normal,characteristic\n1,1,1\n2,3,0\n4,1,1\n"
    assert t.to_json()["rows"]["2"] == {"normal": 3, "cumulative_normal": 4, "characteristic": 0,
                                        "cumulative_characteristic": 1}


def test_chain_bound_examples():
    rep = chain_upper_bound(elementary_abelian(2, 2))
    # f(0) = d(G) = 2 gives (2^2 - 1)/(2 - 1) = 3 hyperplanes, exactly the three lines
    assert rep.holds and rep.lhs[1] == 3 and rep.rhs[1] == 3
    rep = chain_upper_bound(cyclic(27))
    assert rep.holds and all(v == 1 for v in rep.lhs.values())
    assert chain_upper_bound(trivial_group()).vacuous


@pytest.mark.parametrize("G", P_GROUPS, ids=lambda G: G.label)
def test_chain_bound_holds(G):
    rep = chain_upper_bound(G)
    assert rep.holds
    assert sum(rep.lhs.values()) == len(normal_subgroups(G))


def test_subspace_bound_example():
    C = free_cmea(2, 2)
    rep = subspace_lower_bound(C, frattini_p(C), Fraction(1))
    assert rep.details["dim_elementary_quotient"] == 3 and rep.details["log_index"] == 2
    assert rep.lhs == gaussian_binomial(3, 2, 2) == 7
    assert rep.rhs == 2 and rep.holds


def test_subspace_bound_vacuous():
    G = cyclic(8)
    rep = subspace_lower_bound(G, subgroup_generated(G, [4]), Fraction(1))
    assert rep.vacuous and rep.holds
    with pytest.raises(DomainError):
        subspace_lower_bound(G, G.whole(), Fraction(0))


@pytest.mark.parametrize("G", P_GROUPS, ids=lambda G: G.label)
def test_subspace_bound_sweep(G):
    for N in normal_subgroups(G):
        for c in (Fraction(1, 2), Fraction(1), Fraction(2)):
            rep = subspace_lower_bound(G, N, c)
            if rep.vacuous:
                continue
            a, b = rep.details["exponent"].numerator, rep.details["exponent"].denominator
            assert rep.holds == (rep.lhs ** b >= rep.details["p"] ** a)
            # with an integral codimension the count always dominates
            if (c * rep.details["log_index"]).denominator == 1 and (c * rep.details["log_index"]) % 2 == 0:
                assert rep.holds


def test_index_transfer_examples():
    D8 = dihedral(8)
    assert index_transfer_check(D8, D8.whole()).holds
    assert index_transfer_check(D8, subgroup_generated(D8, [1])).holds
    L = lamplighter_quotient(2, 2)
    assert index_transfer_check(L, L.named_subgroup("base")).holds


def test_virtual_transfer_examples():
    L = lamplighter_quotient(2, 1)
    B = L.named_subgroup("base")
    rep = virtual_transfer_check(L, B, B)
    assert (rep.details["d_H(N)"], rep.details["index"], rep.lhs) == (2, 2, 1) and rep.holds
    G = dihedral(8)
    assert virtual_transfer_check(G, G.whole(), frattini_p(G)).holds
    with pytest.raises(DomainError):
        virtual_transfer_check(G, subgroup_generated(G, [4]), G.trivial())


def test_theorem1_examples():
    D8 = dihedral(8)
    rep = theorem1_check(D8, subgroup_generated(D8, [1]), 2)
    assert (rep.lhs, rep.rhs, rep.holds) == (1, Fraction(-1), True)
    assert rep.details["|Psi|"] == 2 and rep.details["|H|"] == 4
    T = trivial_group()
    rep = theorem1_check(T, T.whole(), 2)
    assert (rep.lhs, rep.rhs, rep.holds) == (0, 0, True)


@pytest.mark.parametrize("G", P_GROUPS, ids=lambda G: G.label)
def test_theorem1_whole_group_identity(G):
    # with D = G a p-group, Psi = Phi(G) and d_G(Phi) = rk_cm - d exactly
    rep = theorem1_check(G, G.whole(), G.p)
    assert rep.holds and rep.lhs == rep.rhs


def test_full_sweep_has_no_violations():
    reports = theorem_sweep(library(64))
    assert reports and all(rep.holds for _, rep in reports)
    labels = [label for label, _ in reports]
    assert labels == sorted(labels)


def test_rank_gradient():
    L = lamplighter_quotient(2, 2)
    assert rank_gradient_chain(L, [L.whole(), L.named_subgroup("base")]) == [Fraction(2), Fraction(1)]
    E = elementary_abelian(2, 4)
    flag = [subgroup_generated(E, [1, 2, 4, 8][:k]) for k in range(4, -1, -1)]
    assert rank_gradient_chain(E, flag[:-1]) == [Fraction(k, 2 ** (4 - k)) for k in range(4, 0, -1)]
    with pytest.raises(DomainError):
        rank_gradient_chain(E, [flag[2], flag[0]])


def test_free_subgroup_rank():
    assert free_subgroup_rank(2, 2) == 3
    assert free_subgroup_rank(5, 1) == 5
    assert free_subgroup_rank(3, 4) == 9
    with pytest.raises(DomainError):
        free_subgroup_rank(0, 2)


def test_prop14_examples():
    rep = prop14_arithmetic_check(2, 2, 1)
    assert rep.details["d1"] == 3 and rep.lhs == 9 and rep.rhs == Fraction(9, 2) and rep.holds
    assert prop14_arithmetic_check(2, 2, 3).holds
    rep = prop14_arithmetic_check(1, 3, 2)
    assert rep.details["d1"] == 1 and rep.details["first"]


@given(st.integers(2, 12), st.sampled_from([2, 3, 5, 7]), st.integers(1, 6))
def test_prop14_property(d, p, k):
    rep = prop14_arithmetic_check(d, p, k)
    d1 = p**k * (d - 1) + 1
    assert rep.lhs == d1 + comb(d1 + 1, 2)
    assert rep.holds


def test_rank_gradient_of_cmea():
    C = free_cmea(2, 2)
    F = frattini_p(C)
    r = rank_gradient_chain(C, [C.whole(), F])
    assert r[1] == Fraction(d_min(subgroup_as_group(F)[0]), 4) == Fraction(3, 4)
