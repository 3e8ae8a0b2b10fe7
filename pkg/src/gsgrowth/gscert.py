"""Generalized Golod-Shafarevich certificates.

A presentation ``<X | R>`` with weights ``d`` certifies at ``t0`` in (0, 1)
when ``1 - H_X(t0) + H_R(t0) < 0``, where ``H_A(t) = sum_a t^d(a)``.  All
arithmetic is exact (``fractions.Fraction``).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .freealg import Alphabet, DegreeMap, relator_hilbert_terms
from .words import Word


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]
    default_weights: DegreeMap

    def __post_init__(self):
        names = set(self.alphabet.names)
        for r in self.relators:
            if not r.generators() <= names:
                raise DomainError(f"relator {r} uses generators outside the alphabet")
            if r.is_trivial():
                raise DomainError(f"relator {r} is freely trivial")
        if self.default_weights.names != self.alphabet.names:
            raise DomainError("default weights must cover the alphabet in order")

    @classmethod
    def build(cls, p: int, names, relators=(), weights=None) -> "Presentation":
        alphabet = Alphabet(tuple(names), p)
        return cls(alphabet, tuple(relators), DegreeMap.from_mapping(alphabet.names, weights))

    @property
    def p(self) -> int:
        return self.alphabet.p


class HilbertPoly(Counter):
    """Sparse polynomial ``{exponent: coefficient}`` with nonnegative integer coefficients."""

    def __call__(self, t: Fraction) -> Fraction:
        return sum((Fraction(c) * Fraction(t) ** e for e, c in self.items() if c), Fraction(0))

    def max_exponent(self) -> int:
        return max((e for e, c in self.items() if c), default=0)

    def format(self) -> str:
        items = sorted((e, c) for e, c in self.items() if c)
        if not items:
            return "0"
        return " + ".join((f"{c}*" if c != 1 else "") + (f"t^{e}" if e != 1 else "t") for e, c in items)


def hilbert_of_generators(deg: DegreeMap) -> HilbertPoly:
    return HilbertPoly(deg.weights)


def hilbert_of_relators(pres: Presentation, deg: DegreeMap, cap: int | None = None) -> HilbertPoly:
    return HilbertPoly(relator_hilbert_terms(pres.relators, deg, pres.p, cap))


def _check_t0(t0) -> Fraction:
    t0 = Fraction(t0)
    if not 0 < t0 < 1:
        raise DomainError(f"t0 = {t0} is not in (0, 1)")
    return t0


def series_value(hx: HilbertPoly, hr: HilbertPoly, t0) -> Fraction:
    """``1 - hx(t0) + hr(t0)`` for precomputed Hilbert polynomials."""
    t0 = _check_t0(t0)
    return 1 - hx(t0) + hr(t0)


def ggs_value(pres: Presentation, deg: DegreeMap | None, t0, cap: int | None = None) -> Fraction:
    deg = pres.default_weights if deg is None else deg
    t0 = _check_t0(t0)
    return series_value(hilbert_of_generators(deg), hilbert_of_relators(pres, deg, cap), t0)


@dataclass(frozen=True)
class GsCertificate:
    degree_map: DegreeMap
    t0: Fraction
    value: Fraction

    def __post_init__(self):
        if not self.value < 0:
            raise DomainError("a certificate needs a negative value")
        _check_t0(self.t0)

    @property
    def delta(self) -> Fraction:
        return -self.value

    def verify(self, pres: Presentation, cap: int | None = None) -> bool:
        return ggs_value(pres, self.degree_map, self.t0, cap) == self.value < 0

    def to_json(self) -> dict:
        return {
            "weights": self.degree_map.as_dict(),
            "t0": fraction_str(self.t0),
            "value": fraction_str(self.value),
            "delta": fraction_str(self.delta),
        }


@dataclass(frozen=True)
class NotFound:
    """Search exhausted without a certificate.  This is not a disproof."""

    min_value: Fraction | None
    argmin: tuple[DegreeMap, Fraction] | None
    weight_bound: int
    grid: int
    pruned: int = 0

    def to_json(self) -> dict:
        return {
            "found": False,
            "min_value": None if self.min_value is None else fraction_str(self.min_value),
            "argmin": None if self.argmin is None else {
                "weights": self.argmin[0].as_dict(), "t0": fraction_str(self.argmin[1])},
            "weight_bound": self.weight_bound,
            "grid": self.grid,
            "pruned_degree_maps": self.pruned,
        }


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def ggs_search(pres: Presentation, weight_bound: int, grid: int, cap: int | None = None) -> GsCertificate | NotFound:
    """Scan weights in ``[1, W]^|X|`` (lexicographic) and ``t0 = k/Q``; return the first certificate."""
    if weight_bound < 1 or grid < 2:
        raise DomainError("need weight bound >= 1 and grid >= 2")
    ts = [Fraction(k, grid) for k in range(1, grid)]
    names = pres.alphabet.names
    best: tuple[Fraction, DegreeMap, Fraction] | None = None
    pruned = 0
    for weights in itertools.product(range(1, weight_bound + 1), repeat=len(names)):
        deg = DegreeMap(names, weights)
        hx = hilbert_of_generators(deg)
        # relators only add nonnegative terms, so skip maps where no grid point can go negative
        if all(1 - hx(t) >= 0 for t in ts):
            pruned += 1
            continue
        hr = hilbert_of_relators(pres, deg, cap)
        for t in ts:
            v = 1 - hx(t) + hr(t)
            if v < 0:
                return GsCertificate(deg, t, v)
            if best is None or v < best[0]:
                best = (v, deg, t)
    if best is None:
        # every map was pruned: report the minimum of 1 - H_X over the grid
        deg = DegreeMap(names, (1,) * len(names))
        hx = hilbert_of_generators(deg)
        hr = hilbert_of_relators(pres, deg, cap)
        v, t = min((1 - hx(t) + hr(t), t) for t in ts)
        return NotFound(v, (deg, t), weight_bound, grid, pruned)
    return NotFound(best[0], (best[1], best[2]), weight_bound, grid, pruned)


def gs_generator_bound(cert: GsCertificate, n: int) -> int:
    """``floor(delta * t0^-n) + 1``: fewer normal generators than this cannot generate a subgroup of degree >= n."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return math.floor(cert.delta / cert.t0**n) + 1
