import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from goeritz.errors import DegenerateBlockError, DeterminantError
from goeritz.factorization import (
    bezout,
    evaluate_r_word,
    factor_block,
    normalize_first_block,
    r_word_of_block,
    simplify_word,
    transporter_gl2,
)
from goeritz.homology import Block2Matrix, HomologyVector, gcd_pair, goeritz_form_from_block
from goeritz.words import GoeritzWord, evaluate, first_block, parse_word


def test_bezout():
    assert bezout(12, -5) == (-2, -5)
    e1, e2 = bezout(7, 3)
    assert 7 * e1 + 3 * e2 == 1 and abs(e1) <= 1
    with pytest.raises(ValueError):
        bezout(4, 6)


def test_transporter_examples():
    g = transporter_gl2((1, 0), (1, 0))
    assert g.apply((1, 0)) == (1, 0) and g.is_unimodular()
    g = transporter_gl2((6, 4), (2, 0))
    assert g == Block2Matrix(1, -1, -2, 3)
    assert transporter_gl2((2, 0), (3, 0)) is None
    with pytest.raises(DegenerateBlockError):
        transporter_gl2((0, 0), (1, 0))


def _brute_transporter_exists(v, v2, n=4):
    for s, t, u, w in itertools.product(range(-n, n + 1), repeat=4):
        c = Block2Matrix(s, t, u, w)
        if c.is_unimodular() and c.apply(v) == v2:
            return True
    return False


PAIRS = [p for p in itertools.product(range(-3, 4), repeat=2) if p != (0, 0)]


@pytest.mark.parametrize("v", PAIRS[::3])
def test_transporter_matches_brute_force(v):
    for v2 in PAIRS:
        g = transporter_gl2(v, v2)
        if g is None:
            assert gcd_pair(*v) != gcd_pair(*v2)
            assert not _brute_transporter_exists(v, v2)
        else:
            assert g.apply(v) == tuple(v2) and g.is_unimodular()


def test_factor_examples():
    result = factor_block(Block2Matrix.identity())
    assert result.word == GoeritzWord() and result.certified
    r1 = Block2Matrix(0, 1, 1, 0)
    result = factor_block(r1)
    assert result.word == parse_word("a g") and result.certified
    result = factor_block(Block2Matrix(1, 1, 2, 1))
    assert result.certified
    assert evaluate(result.word) == evaluate(parse_word("a b g d' g d^2"))


def test_factor_rejects_non_unimodular():
    with pytest.raises(DeterminantError):
        factor_block(Block2Matrix(2, 1, 1, 2))


def test_r_words_evaluate_to_block():
    for block in [Block2Matrix(5, 3, 3, 2), Block2Matrix(0, -1, 1, 0), Block2Matrix(-7, 2, 4, -1)]:
        assert evaluate_r_word(r_word_of_block(block)) == block


def test_simplify_keeps_value():
    w = parse_word("a g g b a d a")
    s = simplify_word(w)
    assert evaluate(s) == evaluate(w)
    assert len(s) < len(w)
    w = parse_word("a e b a e")
    assert evaluate(simplify_word(w)) == evaluate(w)


def test_normalize_examples():
    word, k = normalize_first_block(HomologyVector(1, 0, 5, 7))
    assert k == HomologyVector(1, 0, 5, 7)
    assert evaluate(word) == evaluate(GoeritzWord())
    word, k = normalize_first_block(HomologyVector(6, 4, 1, 1))
    assert k.first_block == (2, 0)
    assert goeritz_form_from_block(first_block(evaluate(word))).matrix4() == evaluate(word)
    _, k = normalize_first_block(HomologyVector(12, -5, 17, 5))
    assert k.first_block == (1, 0)
    with pytest.raises(DegenerateBlockError):
        normalize_first_block(HomologyVector(0, 0, 1, 1))


@given(words(max_size=20, epsilon=False))
@settings(max_examples=150)
def test_round_trip(w):
    block = first_block(evaluate(w))
    result = factor_block(block)
    assert result.certified
    assert evaluate(result.word) == evaluate(w)


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_normalize_preserves_gcd(a, x):
    if (a, x) == (0, 0):
        return
    _, k = normalize_first_block(HomologyVector(a, x, 3, -2))
    assert k.first_block == (gcd_pair(a, x), 0)
