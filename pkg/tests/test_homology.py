import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_vectors, vectors, words
from goeritz.errors import ArithmeticDomainError, DeterminantError
from goeritz.homology import (
    Block2Matrix,
    GoeritzMatrix,
    HomologyVector,
    SurfaceSlope,
    TwistCurve,
    apply,
    dehn_twist,
    epsilon_star,
    gcd_pair,
    goeritz_form_from_block,
    is_degenerate,
    split_product,
    symplectic_pairing,
    twist_slope_delta,
)
from goeritz.words import apply4, evaluate, first_block, is_goeritz_form

H = HomologyVector


@pytest.mark.parametrize(
    "k, expected",
    [((1, 0, 0, 0), 0), ((2, -6, 9, 3), 0), ((12, -5, 17, 5), 179), ((12, -7, 19, 7), 179)],
)
def test_split_product_examples(k, expected):
    assert split_product(H(*k)) == expected
    assert SurfaceSlope.of(H(*k)).value == expected


def test_symplectic_pairing_examples():
    assert symplectic_pairing(H(1, 0, 0, 0), H(0, 0, 1, 0)) == 1
    assert symplectic_pairing(H(1, 2, 3, 4), H(5, 6, 7, 8)) == -16


def test_epsilon_star_examples():
    assert epsilon_star(H(1, 0, 0, 0)) == H(0, 0, 0, 1)
    assert epsilon_star(H(12, -7, 19, 7)) == H(7, 19, -7, 12)


def test_goeritz_form_examples():
    assert goeritz_form_from_block(Block2Matrix.identity()).second_block == Block2Matrix.identity()
    g = goeritz_form_from_block(Block2Matrix(1, 1, 2, 1))
    assert g.second_block == Block2Matrix(-1, 2, 1, -1)
    r1 = Block2Matrix(0, 1, 1, 0)
    assert goeritz_form_from_block(r1).second_block == r1


def test_goeritz_form_rejects_non_unimodular():
    with pytest.raises(DeterminantError):
        goeritz_form_from_block(Block2Matrix(2, 0, 0, 1))
    with pytest.raises(DeterminantError):
        GoeritzMatrix(Block2Matrix.identity(), Block2Matrix(1, 1, 0, 1))


def test_apply_examples():
    g = goeritz_form_from_block(Block2Matrix(1, 1, 2, 1))
    assert apply(g, H(12, -5, 17, 5)) == H(7, 19, -7, 12)
    assert apply(goeritz_form_from_block(Block2Matrix(1, 0, 1, 1)), H(1, 0, 0, 0)) == H(1, 1, 0, 0)


@pytest.mark.parametrize(
    "curve, k, image, delta",
    [
        ("c2", (1, 0, 0, 0), (1, 0, 1, 0), 1),
        ("c1", (0, 0, 1, 0), (-1, 0, 1, 0), -1),
        ("c3", (0, 0, 1, 0), (-1, 1, 1, 0), -1),
    ],
)
def test_dehn_twist_examples(curve, k, image, delta):
    assert dehn_twist(H(*k), curve) == H(*image)
    assert split_product(H(*image)) - split_product(H(*k)) == delta


def test_gcd_examples():
    assert gcd_pair(6, 4) == 2
    assert gcd_pair(0, 0) == 0
    assert gcd_pair(12, -5) == 1
    assert is_degenerate((0, 0)) and not is_degenerate((0, 3))


@pytest.mark.parametrize("bad", [1.0, True, "3", None])
def test_non_integers_rejected(bad):
    with pytest.raises(ArithmeticDomainError):
        H(bad, 0, 0, 0)
    with pytest.raises(ArithmeticDomainError):
        gcd_pair(bad, 1)


def test_big_integers_do_not_wrap():
    big = 2**200
    assert split_product(H(big, big, big, big)) == 2 * big * big


def test_block_inverse():
    c = Block2Matrix(2, 1, 1, 1)
    assert c @ c.inverse() == Block2Matrix.identity()
    with pytest.raises(DeterminantError):
        Block2Matrix(2, 0, 0, 2).inverse()


DELTAS = {
    "c1": lambda k: -k.b**2,
    "c2": lambda k: k.a**2,
    "c3": lambda k: -((k.b - k.y) ** 2),
    "c4": lambda k: k.x**2,
    "c5": lambda k: -k.y**2,
}


@given(vectors, st.sampled_from(list(TwistCurve)))
def test_twist_slope_law(k, curve):
    delta = split_product(dehn_twist(k, curve)) - split_product(k)
    assert delta == DELTAS[curve.value](k) == twist_slope_delta(k, curve)


@given(vectors, words())
def test_split_product_invariant_under_words(k, w):
    assert split_product(apply4(evaluate(w), k)) == split_product(k)


@given(vectors)
def test_epsilon_star_preserves_split_product_and_is_involution(k):
    assert split_product(epsilon_star(k)) == split_product(k)
    assert epsilon_star(epsilon_star(k)) == k


@given(small_vectors, small_vectors, words(epsilon=False))
def test_pairing_invariance(k1, k2, w):
    m = evaluate(w)
    assert is_goeritz_form(m)
    assert symplectic_pairing(apply4(m, k1), apply4(m, k2)) == symplectic_pairing(k1, k2)
    assert symplectic_pairing(epsilon_star(k1), epsilon_star(k2)) == -symplectic_pairing(k1, k2)
    g = goeritz_form_from_block(first_block(m))
    assert gcd_pair(*apply(g, k1).first_block) == gcd_pair(k1.a, k1.x)
