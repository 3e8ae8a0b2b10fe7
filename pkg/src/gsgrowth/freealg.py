"""Truncated power series in non-commuting variables over F_p.

Monomials carry a weighted degree (sum of generator weights).  A series with
truncation ``N`` keeps only monomials of weighted degree ``< N``.  The Magnus
map sends a generator ``x`` to ``1 + x``; the degree of a word is the
valuation of ``magnus(w) - 1``, i.e. the smallest weighted degree of a
monomial that survives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Sequence

from .config import limits
from .errors import DegreeCapError, DomainError, ResourceCapError, UsageError
from .fplin import require_prime
from .words import Word

Monomial = tuple[int, ...]  # generator indices


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]
    p: int

    def __post_init__(self):
        require_prime(self.p)
        if not self.names:
            raise DomainError("alphabet must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise DomainError("generator names must be distinct")

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DomainError(f"generator {name!r} not in alphabet") from None


@dataclass(frozen=True)
class DegreeMap:
    """Positive integer weight per generator, in alphabet order."""

    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise UsageError("one weight per generator is required")
        if any((not isinstance(w, int)) or w < 1 for w in self.weights):
            raise DomainError("weights must be integers >= 1")

    @classmethod
    def from_mapping(cls, names: Sequence[str], weights: Mapping[str, int] | None = None) -> "DegreeMap":
        weights = weights or {}
        return cls(tuple(names), tuple(int(weights.get(n, 1)) for n in names))

    @classmethod
    def unit(cls, names: Sequence[str]) -> "DegreeMap":
        return cls(tuple(names), (1,) * len(names))

    def __getitem__(self, name: str) -> int:
        return self.weights[self.names.index(name)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.names, self.weights))

    def monomial_degree(self, m: Monomial) -> int:
        w = self.weights
        return sum(w[i] for i in m)


@dataclass(frozen=True)
class NcSeries:
    p: int
    degree_map: DegreeMap
    truncation: int
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, c in self.terms.items():
            c %= self.p
            if c and self.degree_map.monomial_degree(m) < self.truncation:
                clean[tuple(m)] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def constant(cls, c: int, p: int, deg: DegreeMap, truncation: int) -> "NcSeries":
        return cls(p, deg, truncation, {(): c})

    @classmethod
    def variable(cls, name: str, p: int, deg: DegreeMap, truncation: int) -> "NcSeries":
        return cls(p, deg, truncation, {(deg.names.index(name),): 1})

    def _check(self, other: "NcSeries"):
        if (self.p, self.degree_map, self.truncation) != (other.p, other.degree_map, other.truncation):
            raise UsageError("series have different prime, degree map or truncation")

    def __add__(self, other: "NcSeries") -> "NcSeries":
        return nc_add(self, other)

    def __sub__(self, other: "NcSeries") -> "NcSeries":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return NcSeries(self.p, self.degree_map, self.truncation, out)

    def __mul__(self, other: "NcSeries") -> "NcSeries":
        return nc_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcSeries):
            return NotImplemented
        return (self.p, self.degree_map, self.truncation) == (other.p, other.degree_map, other.truncation) and \
            self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.degree_map, self.truncation, frozenset(self.terms.items())))

    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def valuation(self) -> int | None:
        """Least weighted degree of a nonzero monomial, or None for the zero series."""
        if not self.terms:
            return None
        return min(self.degree_map.monomial_degree(m) for m in self.terms)

    def format(self) -> str:
        if not self.terms:
            return "0"
        names = self.degree_map.names
        deg = self.degree_map.monomial_degree
        parts = []
        for m in sorted(self.terms, key=lambda m: (deg(m), m)):
            c = self.terms[m]
            mono = "*".join(names[i] for i in m) if m else ""
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def nc_add(a: NcSeries, b: NcSeries) -> NcSeries:
    a._check(b)
    out = dict(a.terms)
    for m, c in b.terms.items():
        out[m] = out.get(m, 0) + c
    return NcSeries(a.p, a.degree_map, a.truncation, out)


def _by_degree(s: NcSeries) -> dict[int, list[tuple[Monomial, int]]]:
    buckets: dict[int, list] = {}
    deg = s.degree_map.monomial_degree
    for m, c in s.terms.items():
        buckets.setdefault(deg(m), []).append((m, c))
    return buckets


def nc_mul(a: NcSeries, b: NcSeries) -> NcSeries:
    a._check(b)
    p, cutoff = a.p, a.truncation
    right = sorted(_by_degree(b).items())
    out: dict[Monomial, int] = {}
    for da, left_terms in _by_degree(a).items():
        for db, terms in right:
            if da + db >= cutoff:
                break
            for m1, c1 in left_terms:
                for m2, c2 in terms:
                    m = m1 + m2
                    out[m] = (out.get(m, 0) + c1 * c2) % p
    return NcSeries(p, a.degree_map, cutoff, out)


def nc_inverse_of_one_plus(u: NcSeries) -> NcSeries:
    """``(1 + u)^-1`` as the truncated geometric series ``sum (-u)^k``."""
    if u.constant_term():
        raise DomainError("u must have zero constant term")
    one = NcSeries.constant(1, u.p, u.degree_map, u.truncation)
    neg = NcSeries(u.p, u.degree_map, u.truncation, {m: -c for m, c in u.terms.items()})
    result, power = one, one
    while True:
        power = power * neg
        if not power.terms:
            return result
        result = result + power


def _letter_series(index: int, exponent: int, p: int, deg: DegreeMap, truncation: int) -> NcSeries:
    # (1 + x)^e = sum_k binom(e, k) x^k, with binom(-n, k) = (-1)^k binom(n + k - 1, k)
    w = deg.weights[index]
    terms = {}
    k = 0
    while k * w < truncation:
        if exponent >= 0:
            c = comb(exponent, k)
        else:
            c = (-1) ** k * comb(-exponent + k - 1, k)
        terms[(index,) * k] = c
        k += 1
    return NcSeries(p, deg, truncation, terms)


def magnus(w: Word, deg: DegreeMap, truncation: int, p: int, work_cap: int | None = None) -> NcSeries:
    """Image of ``w`` under ``x -> 1 + x`` modulo monomials of weighted degree ``>= truncation``."""
    return _magnus(w, deg, truncation, p, limits().series_work if work_cap is None else work_cap)[0]


def _magnus(w: Word, deg: DegreeMap, truncation: int, p: int, work_cap: int) -> tuple[NcSeries, int]:
    # work counts monomial products, an upper bound on the cost of each multiplication
    if truncation < 1:
        raise DomainError("truncation must be >= 1")
    work = 0
    result = NcSeries.constant(1, p, deg, truncation)
    for g, e in w.letters:
        if g not in deg.names:
            raise DomainError(f"generator {g!r} has no weight")
        factor = _letter_series(deg.names.index(g), e, p, deg, truncation)
        work += len(result.terms) * len(factor.terms)
        if work > work_cap:
            raise ResourceCapError(f"Magnus expansion at truncation {truncation} exceeds work cap", cap=work_cap)
        result = result * factor
    return result, work


def vanishes_below(w: Word, deg: DegreeMap, bound: int, p: int) -> bool:
    """True when ``magnus(w) - 1`` has no monomial of weighted degree ``< bound``."""
    s = magnus(w, deg, bound, p)
    return all(m == () for m in s.terms) and s.constant_term() == 1


def magnus_degree(w: Word, deg: DegreeMap, p: int, max_truncation: int | None = None) -> int:
    """Valuation of ``magnus(w) - 1``: the least weighted degree of a surviving monomial."""
    cap = limits().degree if max_truncation is None else max_truncation
    w = w.reduced()
    if not w.letters:
        raise DomainError("the trivial word has no finite degree")
    truncation = min(deg.weights) + 1
    low = min(deg.weights)
    budget = limits().series_work
    while True:
        n = min(truncation, cap)
        try:
            s, work = _magnus(w, deg, n, p, budget)
        except ResourceCapError as exc:
            # truncation `low` came back empty, so the degree is at least `low`
            raise DegreeCapError(f"degree of word of length {len(w)}: {exc}", cap=limits().series_work, word=w,
                                 bracket=(low, "inf")) from None
        budget -= work
        v = (s - NcSeries.constant(1, p, deg, n)).valuation()
        if v is not None:
            return v
        if n >= cap:
            raise DegreeCapError(f"degree of word of length {len(w)} exceeds truncation cap {cap}", cap=cap, word=w, bracket=(cap, "inf"))
        low = n
        truncation = n + 1


def relator_hilbert_terms(rels: Iterable[Word], deg: DegreeMap, p: int, cap: int | None = None) -> list[int]:
    out = []
    for i, r in enumerate(rels):
        try:
            out.append(magnus_degree(r, deg, p, cap))
        except DegreeCapError as exc:
            raise DegreeCapError(f"relator #{i} ({r}): {exc}", cap=exc.cap, word=r, index=i,
                                 bracket=exc.bracket) from None
    return out
