"""Normal/characteristic growth tables and the inequality checkers.

Every checker recomputes both sides from scratch through the group and
module layers and returns a :class:`BoundReport`; ``holds`` is exactly the
recorded comparison of the two sides.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor
from typing import Any, Sequence

from .errors import DomainError
from .fplin import gaussian_binomial
from .gscert import fraction_str
from .pgroups import (FiniteGroup, Subgroup, all_subgroups, characteristic_subgroups, cmea_rank, d_min, d_normal,
                      frattini_p, log_p, max_p_quotient, normal_subgroups, phi_sub, prime_factors, prime_power,
                      subgroup_as_group)


@dataclass
class GrowthTable:
    label: str
    order: int
    normal: dict[int, int]
    characteristic: dict[int, int] | None = None

    @property
    def indices(self) -> list[int]:
        return [n for n in range(1, self.order + 1) if self.order % n == 0]

    def cumulative(self, which: str = "normal") -> dict[int, int]:
        counts = self.normal if which == "normal" else self.characteristic
        if counts is None:
            raise DomainError("characteristic counts were not computed")
        out, run = {}, 0
        for n in self.indices:
            run += counts.get(n, 0)
            out[n] = run
        return out

    def s(self, n: int, which: str = "normal") -> int:
        """Number of (normal or characteristic) subgroups of index at most ``n``."""
        counts = self.normal if which == "normal" else self.characteristic
        return sum(c for i, c in counts.items() if i <= n)

    @property
    def total_normal(self) -> int:
        return sum(self.normal.values())

    def to_json(self) -> dict:
        cum_n = self.cumulative("normal")
        cum_c = self.cumulative("characteristic") if self.characteristic is not None else None
        rows = {}
        for n in self.indices:
            row = {"normal": self.normal.get(n, 0), "cumulative_normal": cum_n[n]}
            if self.characteristic is not None:
                row["characteristic"] = self.characteristic.get(n, 0)
                row["cumulative_characteristic"] = cum_c[n]
            rows[str(n)] = row
        return {"group": self.label, "order": self.order, "rows": rows}

    def to_csv(self) -> str:
        lines = ["index,normal,characteristic"]
        for n in self.indices:
            ch = "" if self.characteristic is None else str(self.characteristic.get(n, 0))
            lines.append(f"{n},{self.normal.get(n, 0)},{ch}")
        return "\n".join(lines) + "\n"


def growth_table(G: FiniteGroup, with_characteristic: bool = False) -> GrowthTable:
    normals = normal_subgroups(G)
    table = GrowthTable(G.label, G.order, dict(Counter(N.index for N in normals)))
    if with_characteristic:
        table.characteristic = dict(Counter(N.index for N in characteristic_subgroups(G)))
    return table


@dataclass
class BoundReport:
    name: str
    lhs: Any
    rhs: Any
    holds: bool
    relation: str = "<="
    vacuous: bool = False
    details: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "bound": self.name,
            "lhs": _exact(self.lhs),
            "relation": self.relation,
            "rhs": _exact(self.rhs),
            "holds": self.holds,
            "vacuous": self.vacuous,
            "details": {k: _exact(v) for k, v in self.details.items()},
        }


def _exact(x):
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_exact(v) for v in x]
    return x


def _p_of(G: FiniteGroup) -> int | None:
    if G.order == 1:
        return None
    pp = prime_power(G.order)
    if pp is None:
        raise DomainError(f"{G.label} is not a p-group")
    return pp[0]


def chain_upper_bound(G: FiniteGroup) -> BoundReport:
    """Normal subgroups of index ``p^n`` versus the number of chains through index-``p`` steps.

    With ``f(i) = max d_G(N)`` over normal ``N`` of index ``p^i``, a normal
    subgroup of index ``p^(i+1)`` inside ``N`` is a hyperplane of
    ``N/Phi_G(N)``, giving at most ``prod_(i<n) (p^f(i) - 1)/(p - 1)``.
    """
    p = _p_of(G)
    if p is None:
        return BoundReport("chain_upper_bound", {}, {}, True, vacuous=True)
    normals = normal_subgroups(G)
    by_level: dict[int, list[Subgroup]] = {}
    for N in normals:
        by_level.setdefault(log_p(N.index, p), []).append(N)
    top = log_p(G.order, p)
    f = {i: max(d_normal(G, N) for N in by_level.get(i, [])) if by_level.get(i) else 0 for i in range(top + 1)}
    actual, bound, display = {}, {}, {}
    running = 1
    for n in range(top + 1):
        actual[n] = len(by_level.get(n, []))
        bound[n] = running
        display[n] = p ** sum(f[i] for i in range(n))
        running *= (p ** f[n] - 1) // (p - 1)
    holds = all(actual[n] <= bound[n] for n in actual)
    return BoundReport("chain_upper_bound", actual, bound, holds,
                       details={"p": p, "f": f, "simplified_bound": display})


def subspace_lower_bound(G: FiniteGroup, N: Subgroup, c: Fraction) -> BoundReport:
    """Count of codimension-``floor(c k/2)`` subspaces of ``N/Phi_G(N)`` versus ``p^(c^2 k^2/4)``.

    ``k = log_p (G : N)``.  The bound is only asserted when ``dim N/Phi_G(N) > c k``.
    """
    c = Fraction(c)
    if c <= 0:
        raise DomainError("c must be positive")
    p = _p_of(G)
    if p is None:
        return BoundReport("subspace_lower_bound", 1, 1, True, relation=">=", vacuous=True)
    k = log_p(N.index, p)
    dim = log_p(N.order // phi_sub(G, N, p).order, p) if N.order > 1 else 0
    exponent = c * c * k * k / 4
    details = {"p": p, "log_index": k, "dim_elementary_quotient": dim, "c": c, "exponent": exponent}
    if not dim > c * k:
        return BoundReport("subspace_lower_bound", dim, c * k, True, relation=">", vacuous=True, details=details)
    codim = floor(c * k / 2)
    count = gaussian_binomial(dim, dim - codim, p)
    details["codim"] = codim
    # count >= p^(a/b)  <=>  count^b >= p^a
    holds = count ** exponent.denominator >= p ** exponent.numerator
    rhs = p ** exponent.numerator if exponent.denominator == 1 else f"{p}^({fraction_str(exponent)})"
    return BoundReport("subspace_lower_bound", count, rhs, holds, relation=">=", details=details)


def _normal_count_table(G: FiniteGroup) -> Counter:
    return Counter(N.index for N in normal_subgroups(G))


def index_transfer_check(G: FiniteGroup, D: Subgroup) -> BoundReport:
    """``s_n(G) <= s_n(D) * n^(G:D)`` for every ``n <= |G|``."""
    DG, _ = subgroup_as_group(D)
    tg, td = _normal_count_table(G), _normal_count_table(DG)
    k = D.index
    lhs, rhs = {}, {}
    holds = True
    sg = sd = 0
    for n in range(1, G.order + 1):
        sg += tg.get(n, 0)
        sd += td.get(n, 0)
        lhs[n], rhs[n] = sg, sd * n**k
        holds &= sg <= sd * n**k
    return BoundReport("index_transfer", lhs, rhs, holds, details={"index": k})


def virtual_transfer_check(G: FiniteGroup, H: Subgroup, N: Subgroup) -> BoundReport:
    """``d_G(N) >= d_H(N) / (G:H)`` for ``N <= H`` with ``N`` normal in ``G``."""
    if not H.is_normal():
        raise DomainError("H must be normal in G")
    if not N <= H or not N.is_normal():
        raise DomainError("N must lie in H and be normal in G")
    HG, inc = subgroup_as_group(H)
    pos = {g: i for i, g in enumerate(inc.images)}
    NH = Subgroup(HG, [pos[x] for x in N.elements])
    if not NH.is_normal():
        raise DomainError("N must be normal in H")
    dG = d_normal(G, N)
    dH = d_normal(HG, NH)
    rhs = Fraction(dH, H.index)
    return BoundReport("virtual_transfer", dG, rhs, dG >= rhs, relation=">=",
                       details={"d_G(N)": dG, "d_H(N)": dH, "index": H.index})


def theorem1_check(G: FiniteGroup, D: Subgroup, p: int) -> BoundReport:
    """``d_G(Psi) >= rk_cm(H)/(G:D) - d(G)``.

    ``H`` is the maximal p-quotient of ``D`` and ``Psi`` the preimage in ``D``
    of the Frattini subgroup of ``H``.
    """
    if not D.is_normal():
        raise DomainError("D must be normal in G")
    DG, inc = subgroup_as_group(D)
    H, proj = max_p_quotient(DG, p)
    F = frattini_p(H)
    psi_local = proj.preimage(F)
    Psi = Subgroup(G, [inc.images[x] for x in psi_local.elements])
    lhs = d_normal(G, Psi)
    rk = cmea_rank(H)
    dG = d_min(G)
    rhs = Fraction(rk, D.index) - dG
    return BoundReport("theorem1", lhs, rhs, lhs >= rhs, relation=">=",
                       details={"d_G(Psi)": lhs, "rk_cm(H)": rk, "index": D.index, "d(G)": dG,
                                "|H|": H.order, "|Psi|": Psi.order},
                       witnesses=[Psi])


def rank_gradient_chain(G: FiniteGroup, chain: Sequence[Subgroup]) -> list[Fraction]:
    """``d(U_i) / (G : U_i)`` along a descending chain."""
    out = []
    prev = None
    for U in chain:
        if prev is not None and not U <= prev:
            raise DomainError("chain must be descending")
        UG, _ = subgroup_as_group(U)
        out.append(Fraction(d_min(UG), U.index))
        prev = U
    return out


def free_subgroup_rank(d: int, index: int) -> int:
    """Rank of an index-``index`` subgroup of a free group of rank ``d``."""
    if d < 1 or index < 1:
        raise DomainError("need d >= 1 and index >= 1")
    return index * (d - 1) + 1


def prop14_arithmetic_check(d: int, p: int, k: int) -> BoundReport:
    """``d1 + C(d1+1, 2) > d1^2/2 > ((d-1)^2/2) p^(2k)`` with ``d1 = p^k (d-1) + 1``."""
    d1 = free_subgroup_rank(d, p**k)
    cmea_exp = d1 + comb(d1 + 1, 2)
    half_sq = Fraction(d1 * d1, 2)
    tail = Fraction((d - 1) ** 2, 2) * p ** (2 * k)
    first = cmea_exp > half_sq
    second = half_sq > tail
    return BoundReport("prop14_arithmetic", cmea_exp, half_sq, first and second, relation=">",
                       details={"d1": d1, "d1^2/2": half_sq, "(d-1)^2 p^(2k)/2": tail,
                                "first": first, "second": second})


def theorem_sweep(groups: Sequence[FiniteGroup]) -> list[tuple[str, BoundReport]]:
    """Run every applicable checker instance on ``groups``, ordered by instance label."""
    out: list[tuple[str, BoundReport]] = []
    for G in groups:
        normals = normal_subgroups(G)
        if G.is_p_group() or G.order == 1:
            out.append((f"{G.label}", chain_upper_bound(G)))
        for D in all_subgroups(G):
            out.append((f"{G.label} D={_handle(D)}", index_transfer_check(G, D)))
        for H in normals:
            if not H.is_p_group():
                continue
            for N in normals:
                if N <= H:
                    out.append((f"{G.label} H={_handle(H)} N={_handle(N)}", virtual_transfer_check(G, H, N)))
        for D in normals:
            for p in prime_factors(D.order):
                out.append((f"{G.label} D={_handle(D)} p={p}", theorem1_check(G, D, p)))
    out.sort(key=lambda pair: pair[0])
    return out


def _handle(H: Subgroup) -> str:
    return "{" + ",".join(map(str, H.elements)) + "}"
