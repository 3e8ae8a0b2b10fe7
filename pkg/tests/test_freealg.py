import pytest
from hypothesis import assume, given, strategies as st

from gsgrowth.config import use_limits
from gsgrowth.errors import DegreeCapError, DomainError, ParseError, UsageError
from gsgrowth.freealg import (DegreeMap, NcSeries, magnus, magnus_degree, nc_inverse_of_one_plus, nc_mul,
                              relator_hilbert_terms, vanishes_below)
from gsgrowth.words import Word, commutator, format_word, parse_word, split_top_level

XY = DegreeMap.unit(("x", "y"))


def var(name, p=2, deg=XY, n=6):
    return NcSeries.variable(name, p, deg, n)


def one(p=2, deg=XY, n=6):
    return NcSeries.constant(1, p, deg, n)


def test_ring_examples():
    x, y = var("x"), var("y")
    assert (one() + x) * (one() + y) == one() + x + y + x * y
    assert x * y != y * x
    assert (one() + x) * (one() + x) == one() + x * x


def test_inverse_of_one_plus():
    x = var("x", p=3)
    inv = nc_inverse_of_one_plus(x)
    assert inv.terms == {(0,) * k: (-1) ** k % 3 for k in range(6)}
    zero = NcSeries(3, XY, 6)
    assert nc_inverse_of_one_plus(zero) == one(p=3)
    with pytest.raises(DomainError):
        nc_inverse_of_one_plus(one(p=3))


def test_mismatched_parameters():
    with pytest.raises(UsageError):
        var("x", n=5) + var("x", n=6)


def test_magnus_examples():
    x = Word.of("x")
    assert magnus(x, XY, 6, 2) == one() + var("x")
    assert magnus(Word(()), XY, 6, 2) == one()
    assert magnus(x.inverse() * x, XY, 6, 2) == one()


@pytest.mark.parametrize("dx,dy", [(1, 1), (1, 2), (2, 1), (2, 2)])
@pytest.mark.parametrize("p", [2, 3])
def test_commutator_degree(dx, dy, p):
    deg = DegreeMap(("x", "y"), (dx, dy))
    assert magnus_degree(commutator(Word.of("x"), Word.of("y")), deg, p) == dx + dy


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("dx", [1, 2])
def test_power_degree(p, dx):
    deg = DegreeMap(("x",), (dx,))
    assert magnus_degree(Word.of("x") ** p, deg, p) == p * dx
    assert magnus_degree(Word.of("x"), deg, p) == dx


def test_relator_terms():
    rels = [parse_word("x^2"), parse_word("y^2"), parse_word("[x,y]")]
    assert relator_hilbert_terms(rels, XY, 2) == [2, 2, 2]
    assert relator_hilbert_terms([], XY, 2) == []
    assert relator_hilbert_terms([parse_word("x^3")], DegreeMap(("x",), (2,)), 3) == [6]


def test_degree_cap_and_trivial():
    with pytest.raises(DomainError):
        magnus_degree(parse_word("x y y^-1 x^-1"), XY, 2)
    with pytest.raises(DegreeCapError) as info:
        relator_hilbert_terms([parse_word("x"), parse_word("x^32")], XY, 2, cap=10)
    assert info.value.index == 1 and info.value.cap == 10
    assert info.value.bracket == (10, "inf")


def test_degree_work_cap_brackets():
    w = parse_word("[x,y]^64")
    with use_limits(series_work=2000):
        with pytest.raises(DegreeCapError) as info:
            magnus_degree(w, XY, 2)
    low, high = info.value.bracket
    assert high == "inf" and 2 <= low < 24
    # the lower end of the bracket is a proven bound
    assert vanishes_below(w, XY, low, 2)


def test_nested_commutators_lie_deep():
    x, y = Word.of("x"), Word.of("y")
    w = x
    for k in range(2, 5):
        w = commutator(w, y if k % 2 else x * y)
        assert magnus_degree(w, XY, 2) >= k
        assert magnus_degree(w, XY, 3) >= k


def test_truncation_consistency():
    w = parse_word("[x,y]^2 x^3")
    for p in (2, 3):
        d = magnus_degree(w, XY, p)
        for n in range(d + 1, d + 4):
            s = magnus(w, XY, n, p) - one(p=p, n=n)
            assert s.valuation() == d
        assert vanishes_below(w, XY, d, p) and not vanishes_below(w, XY, d + 1, p)


letters = st.tuples(st.sampled_from("xy"), st.sampled_from([-2, -1, 1, 2]))
words = st.lists(letters, max_size=8).map(lambda ls: Word(tuple(ls)).reduced())
weights = st.tuples(st.integers(1, 2), st.integers(1, 2)).map(lambda w: DegreeMap(("x", "y"), w))


@given(words, words, st.sampled_from([2, 3]))
def test_magnus_is_multiplicative(u, v, p):
    assert magnus(u * v, XY, 6, p) == nc_mul(magnus(u, XY, 6, p), magnus(v, XY, 6, p))
    assert magnus(u.inverse(), XY, 6, p) * magnus(u, XY, 6, p) == one(p=p)


@given(words, words, weights, st.sampled_from([2, 3]))
def test_valuation_axioms(u, v, deg, p):
    assume(not u.is_trivial() and not v.is_trivial())
    du, dv = magnus_degree(u, deg, p), magnus_degree(v, deg, p)
    assert magnus_degree(u.inverse(), deg, p) == du
    if not (u * v).is_trivial():
        assert magnus_degree(u * v, deg, p) >= min(du, dv)
    c = commutator(u, v)
    if not c.is_trivial():
        assert vanishes_below(c, deg, du + dv, p)


def test_parse_word_grammar():
    assert parse_word("x^-1y x", ["x", "y"]) == Word((("x", -1), ("y", 1), ("x", 1)))
    assert parse_word("[x,y]") == commutator(Word.of("x"), Word.of("y"))
    assert parse_word("(x y)^2") == Word((("x", 1), ("y", 1), ("x", 1), ("y", 1)))
    assert parse_word("(x y)^-1").reduced() == Word((("y", -1), ("x", -1)))
    assert parse_word("x10 x1", ["x1", "x10"]) == Word((("x10", 1), ("x1", 1)))
    assert format_word(parse_word("")) == "1"
    with pytest.raises(ParseError) as info:
        parse_word("x z", ["x", "y"], line=3, column=5)
    assert (info.value.line, info.value.column) == (3, 7)
    assert "y" in info.value.expected
    with pytest.raises(ParseError):
        parse_word("[x y]")


def test_split_top_level():
    assert split_top_level("[x,y], x^2") == [(0, "[x,y]"), (6, " x^2")]
