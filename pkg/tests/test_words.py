import pytest
from hypothesis import given, settings, strategies as st

from bgkit.words import (
    AlphabetError,
    Word,
    build_V,
    build_v,
    commutator,
    conjugate,
    cyclic_reduce,
    format_word,
    invert,
    parse,
    reduce,
)
from oracles import naive_reduce

letters = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=40)
texts = st.text(alphabet="xXtT", max_size=40)

x, t = Word.gen(0), Word.gen(1)


def test_cancel_pair():
    assert reduce("x X") == Word()


def test_cancel_then_merge():
    w = reduce("x x t T x")
    assert w.syllables == ((0, 3),)


def test_r1_already_reduced():
    text = "txTxtXTXX"
    assert naive_reduce(text) == text
    w = parse(text)
    assert format_word(w) == text
    assert len(w) == 9


def test_unknown_letter():
    with pytest.raises(AlphabetError):
        parse("xyz")
    with pytest.raises(AlphabetError):
        reduce([1, 3])


@given(texts)
def test_reduce_matches_naive(s):
    assert format_word(parse(s)) == naive_reduce(s)


@given(texts)
def test_reduce_idempotent(s):
    w = parse(s)
    assert parse(format_word(w)) == w
    assert len(w) <= len(s)


@settings(max_examples=500)
@given(letters)
def test_times_inverse_is_empty(raw):
    w = reduce(raw)
    assert w * invert(w) == Word()
    assert invert(invert(w)) == w


def test_invert_examples():
    assert format_word(invert(parse("xt"))) == "TX"
    assert invert(Word()) == Word()
    r1 = parse("txTxtXTXX")
    assert len(invert(r1)) == 9
    assert naive_reduce(format_word(r1) + format_word(invert(r1))) == ""


@given(letters, letters)
def test_conjugate_length_bound(a, b):
    a, b = reduce(a), reduce(b)
    assert len(conjugate(a, b)) <= len(a) + 2 * len(b)


def test_conjugate_examples():
    assert format_word(conjugate(x, t)) == "txT"
    w = parse("xtXt")
    assert conjugate(w, Word()) == w
    assert conjugate(x, x) == x


def test_commutator_examples():
    assert commutator(x, x ** 3) == Word()
    assert format_word(commutator(x, t)) == "xtXT"
    w = commutator(build_V(1), x)
    assert w == parse(naive_reduce("txTxtXTx" + "txTXtXT" + "X"))
    assert len(w) <= 2 * 7 + 2


def test_build_V_small():
    assert build_V(0) == x
    assert format_word(build_V(1)) == "txTxtXT"
    assert len(build_V(3)) == 43


@pytest.mark.parametrize("m", range(21))
def test_build_V_length_law(m):
    assert len(build_V(m)) == 6 * 2 ** m - 5


@pytest.mark.parametrize("m", range(8))
def test_build_V_recursion(m):
    assert build_V(m + 1) == conjugate(x, conjugate(build_V(m), t))
    s = format_word(build_V(m + 1))
    assert naive_reduce(s) == s


def test_build_v():
    assert build_v(1) == x
    assert len(build_v(4)) == 19 and build_v(4) == build_V(2)
    n = 2 ** 20
    assert len(build_v(n)) == 6 * 2 ** 20 - 5 <= 6 * n
    with pytest.raises(ValueError):
        build_v(0)


def test_huge_power_is_one_syllable():
    w = x ** 10 ** 6
    assert w.syllables == ((0, 10 ** 6),)
    assert len(w) == 10 ** 6


def test_cyclic_reduce():
    assert format_word(cyclic_reduce(parse("txXxT"))) == "x"


@given(texts)
def test_text_round_trip(s):
    w = parse(s)
    assert parse(format_word(w)) == w
