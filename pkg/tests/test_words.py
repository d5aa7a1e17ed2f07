import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powell_calc.words import (
    DihRho,
    Exchange,
    Eyeglass,
    Flip,
    Letter,
    Rotation,
    STANDARD_EYEGLASS,
    SymbolError,
    Word,
    WordSyntaxError,
    ClassExpr,
    chain_word,
    check_genus,
    conjugate,
    invert,
    parse,
    parse_class,
    reduce,
)

SYMBOLS = [Flip(1), Flip(2), Exchange(1), Exchange(2), Rotation(), STANDARD_EYEGLASS, Eyeglass(ClassExpr.a(1), ClassExpr.a(2))]
letters = st.builds(Letter, st.sampled_from(SYMBOLS), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=40).map(lambda ls: Word(tuple(ls)))


def naive_reduce(w):
    # cancel one adjacent inverse pair at a time until none is left
    ls = list(w.letters)
    changed = True
    while changed:
        changed = False
        for k in range(len(ls) - 1):
            if ls[k].symbol == ls[k + 1].symbol and ls[k].exp == -ls[k + 1].exp:
                del ls[k : k + 2]
                changed = True
                break
    return Word(tuple(ls))


def test_reduce_examples():
    assert reduce(parse("w w^-1 x1")) == parse("x1")
    assert reduce(parse("x1 x2 x2^-1 x1^-1")) == Word()
    assert reduce(parse("w w")) == parse("w w")  # w has order 2 only in a representation
    assert str(reduce(parse("e t t^-1 e^-1 x3"))) == "x3"


@given(words)
def test_reduce_matches_naive(w):
    assert reduce(w) == naive_reduce(w)


@given(words)
def test_reduce_idempotent_and_reduced(w):
    r = reduce(w)
    assert reduce(r) == r and r.is_reduced()


@given(words)
def test_invert_involution(w):
    assert invert(invert(w)) == w
    assert reduce(w + invert(w)) == Word()


@given(words, words)
def test_conjugate_by_inverse(w, u):
    assert reduce(conjugate(conjugate(w, u), invert(u))) == reduce(w)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 2**32))
def test_long_words(seed):
    import random

    rng = random.Random(seed)
    w = Word(tuple(Letter(rng.choice(SYMBOLS[:3]), rng.choice((1, -1))) for _ in range(10_000)))
    assert reduce(reduce(w)) == reduce(w)
    assert reduce(w + invert(w)) == Word()


@given(words)
def test_format_parse_roundtrip(w):
    assert parse(str(w)) == w


def test_parse_tokens():
    assert parse("w") == Word.of(Flip(1))
    assert parse("w1") == Word.of(Flip(1))
    assert parse("w3 x2^-1 e t re") == Word.of(Flip(3), (Exchange(2), -1), Rotation(), STANDARD_EYEGLASS, DihRho("e"))
    assert parse("t(a1+a3,-b2)").letters[0].symbol == Eyeglass(ClassExpr.a(1) + ClassExpr.a(3), -ClassExpr.b(2))
    assert str(parse("t(a1,b2)")) == "t"
    assert parse("  ") == Word()
    assert str(chain_word(4)) == "x1 x2 x3"


@pytest.mark.parametrize(
    "text, offset",
    [("w q", 2), ("x0", 1), ("x", 1), ("w0", 1), ("x1^2", 2), ("^-1", 0), ("e t(a1", 6), ("t(a1,c2)", 5)],
)
def test_parse_errors(text, offset):
    with pytest.raises(WordSyntaxError) as exc:
        parse(text)
    assert exc.value.offset == offset


def test_parse_class():
    assert str(parse_class("a1+2b3-a2")) == "a1-a2+2b3"
    assert str(parse_class("a1-a1")) == "0"
    with pytest.raises(WordSyntaxError):
        parse_class("a1b2")


def test_letter_exponent():
    with pytest.raises(ValueError):
        Letter(Rotation(), 2)


def test_check_genus():
    check_genus(parse("w2 x1 t"), 2)
    for bad, g in [("w3", 2), ("x2", 2), ("t(a3,b1)", 2), ("r0", 4), ("x1", 1)]:
        with pytest.raises(SymbolError):
            check_genus(parse(bad), g)
