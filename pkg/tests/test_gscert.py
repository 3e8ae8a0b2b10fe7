import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gsgrowth.errors import DomainError
from gsgrowth.freealg import DegreeMap
from gsgrowth.gscert import (GsCertificate, NotFound, Presentation, ggs_search, ggs_value, gs_generator_bound,
                             hilbert_of_generators, hilbert_of_relators)
from gsgrowth.words import Word, commutator, parse_word


def pres(p, names, rels=(), weights=None):
    return Presentation.build(p, names, [parse_word(r, names) for r in rels], weights)


def test_hilbert_polys():
    assert hilbert_of_generators(DegreeMap.unit(("x", "y"))) == {1: 2}
    assert hilbert_of_generators(DegreeMap(("x", "y"), (1, 2))) == {1: 1, 2: 1}
    assert hilbert_of_generators(DegreeMap.unit("abcd")) == {1: 4}
    P = pres(2, ["x", "y"], ["[x,y]"])
    assert hilbert_of_relators(P, P.default_weights) == {2: 1}
    assert hilbert_of_relators(pres(2, ["x"], ["x^4"]), DegreeMap.unit("x")) == {4: 1}
    assert hilbert_of_relators(pres(2, ["x"]), DegreeMap.unit("x")) == {}


def test_values():
    assert ggs_value(pres(2, ["x", "y"]), None, Fraction(2, 3)) == Fraction(-1, 3)
    four = pres(2, list("abcd"), ["[a,b]", "[c,d]", "[a,c]"])
    assert ggs_value(four, None, Fraction(1, 2)) == Fraction(-1, 4)
    for t in (Fraction(1, 7), Fraction(1, 2), Fraction(9, 10)):
        assert ggs_value(pres(3, ["x"], ["x^3"]), None, t) >= 1 - t > 0
    with pytest.raises(DomainError):
        ggs_value(pres(2, ["x"]), None, Fraction(1))
    with pytest.raises(DomainError):
        ggs_value(pres(2, ["x"]), None, 0)


def test_search_outcomes():
    cert = ggs_search(pres(2, ["x", "y"]), 1, 8)
    assert isinstance(cert, GsCertificate) and cert.value < 0 and cert.t0 > Fraction(1, 2)
    four = pres(2, list("abcd"), ["[a,b]", "[c,d]", "[a,c]"])
    cert = ggs_search(four, 1, 2)
    assert (cert.t0, cert.value) == (Fraction(1, 2), Fraction(-1, 4))
    res = ggs_search(pres(2, ["x", "y"], ["[x,y]"]), 1, 64)
    assert isinstance(res, NotFound) and res.min_value >= 0


def test_generator_bound():
    cert = GsCertificate(DegreeMap.unit("xy"), Fraction(2, 3), Fraction(-1, 3))
    assert gs_generator_bound(cert, 3) == 2
    assert gs_generator_bound(cert, 1) == 1
    vals = [gs_generator_bound(cert, n) for n in range(1, 15)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    with pytest.raises(DomainError):
        gs_generator_bound(cert, 0)


def _quadratic_relators(names, r):
    pool = [Word.of(x) ** 2 for x in names]
    pool += [commutator(Word.of(a), Word.of(b)) for a, b in itertools.combinations(names, 2)]
    return [pool[i % len(pool)] for i in range(r)]


@pytest.mark.parametrize("d", range(2, 7))
def test_classical_threshold(d):
    names = [f"x{i}" for i in range(d)]
    for r in range(10):
        P = Presentation.build(2, names, _quadratic_relators(names, r))
        assert all(t == 2 for t in hilbert_of_relators(P, P.default_weights).elements())
        found = isinstance(ggs_search(P, 1, 240), GsCertificate)
        assert found == (4 * r < d * d), (d, r)


small_pres = st.tuples(
    st.integers(1, 3),
    st.lists(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([-1, 1, 2])), min_size=1, max_size=5),
             max_size=3),
    st.lists(st.integers(1, 2), min_size=3, max_size=3),
)


def _build(data):
    n, rels, ws = data
    names = ["x", "y", "z"][:n]
    words = [Word(tuple((names[g % n], e) for g, e in r)).reduced() for r in rels]
    words = [w for w in words if not w.is_trivial()]
    return Presentation.build(2, names, words, dict(zip(names, ws)))


@given(small_pres, st.integers(1, 9), st.integers(2, 10))
def test_value_denominator(data, a, b):
    P = _build(data)
    t = Fraction(a % b or 1, b)
    v = ggs_value(P, None, t)
    top = max([1] + list(hilbert_of_relators(P, P.default_weights)) + list(P.default_weights.weights))
    assert (t.denominator ** top) % v.denominator == 0


@given(small_pres, st.integers(1, 9))
def test_adding_relator_is_monotone(data, k):
    P = _build(data)
    t = Fraction(k, 10)
    extra = Presentation(P.alphabet, P.relators + (Word.of(P.alphabet.names[0]) ** 2,), P.default_weights)
    assert ggs_value(extra, None, t) >= ggs_value(P, None, t)


@given(small_pres)
def test_certificates_reverify(data):
    P = _build(data)
    res = ggs_search(P, 2, 12)
    if isinstance(res, GsCertificate):
        assert res.verify(P) and res.delta > 0
    else:
        assert res.min_value is not None
