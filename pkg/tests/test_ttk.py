import pytest

from goeritz.errors import PreconditionError
from goeritz.freegroup import Letter, is_cyclic_palindrome
from goeritz.homology import HomologyVector, split_product
from goeritz.ttk import (
    A_BAR,
    TtkParams,
    admissible_qm,
    basic_sequence_facts,
    family_pair,
    family_zero_slope,
    near_palindrome_holds,
    runs_after_separator,
    strand_sequences,
    switch_words,
    ttk_homology,
    two_positions_hold,
    verify_case,
    zero_slope_admissible,
)

H = HomologyVector


def test_ttk_homology_examples():
    assert ttk_homology(TtkParams(17, 12, 5, -1)) == H(12, -5, 17, 5)
    assert ttk_homology(TtkParams(9, 2, 3, -2)) == H(2, -6, 9, 3)
    assert ttk_homology(TtkParams(7, 3, 0, 4)) == H(3, 0, 7, 0)


def test_zero_slope_family():
    assert family_zero_slope(3, 2) == H(2, -6, 9, 3)
    assert family_zero_slope(5, 4) == H(4, -20, 25, 5)
    for r, q in zero_slope_admissible(8):
        assert split_product(family_zero_slope(r, q)) == 0
    with pytest.raises(PreconditionError, match=r"\(q,r\)!=\(1,2\)"):
        family_zero_slope(2, 1)
    with pytest.raises(PreconditionError, match="gcd"):
        family_zero_slope(4, 6)
    with pytest.raises(PreconditionError):
        family_zero_slope(3, 9)


def test_family_pair():
    assert family_pair(0, 5, 2) == (H(5, -2, 2, 2), H(5, -3, 3, 3))
    assert family_pair(1, 12, 5) == (H(12, -5, 17, 5), H(12, -7, 19, 7))
    with pytest.raises(PreconditionError):
        family_pair(1, 12, 4)
    with pytest.raises(PreconditionError):
        family_pair(1, 2, 1)


def test_strand_sequences_case_study():
    seq = strand_sequences(12, 5)
    assert (seq.d, seq.r) == (2, 2)
    assert seq.p == (3, 2, 3, 2, 2)
    assert seq.p_tilde == (2, 2, 2, 1, 2, 2, 1)
    assert seq.z_at(-1) == 0


def test_m_equals_one():
    seq = strand_sequences(7, 1)
    assert seq.p == (7,) and seq.r == 0
    assert near_palindrome_holds(seq) is None
    assert two_positions_hold(seq)
    assert verify_case(7, 1).check("near_palindrome").passed is None


def test_switch_words_case_study():
    words = switch_words(12, 5)
    assert runs_after_separator(words.inner[0], "X", A_BAR) == (2, 2, 1, 2, 2, 1, 2)
    assert runs_after_separator(words.inner[1], "X", A_BAR) == (1, 2, 2, 1, 2, 2, 2)
    assert words.chi1 == (2, 2, 2, 1, 2, 2, 1)
    assert words.chi2 == (1, 2, 2, 1, 2, 2, 2)
    assert words.upsilon1 == (3, 3, 3, 2, 3, 3, 2)
    assert words.upsilon2 == (2, 3, 3, 2, 3, 3, 3)
    assert runs_after_separator(words.outer[0], "Y", Letter("B", 1)) == (3, 3, 2, 3, 3, 2, 3)


@pytest.mark.parametrize("q, m", [(12, 5), (5, 2)])
def test_verify_case_passes(q, m):
    report = verify_case(q, m)
    assert report.passed, report.failures


def test_verify_case_preconditions():
    with pytest.raises(PreconditionError):
        verify_case(2, 1)


def _ms(q):
    return [m for qq, m in admissible_qm(q) if qq == q]


@pytest.mark.parametrize("q", range(3, 61))
def test_sequence_identities(q):
    for m in _ms(q):
        seq = strand_sequences(q, m)
        assert all(basic_sequence_facts(seq).values()), m
        assert near_palindrome_holds(seq) is not False, m
        assert two_positions_hold(seq), m
        if seq.r:
            assert seq.p[0] == seq.d + 1 and seq.p[-1] == seq.d


@pytest.mark.parametrize("q", range(3, 26))
def test_words_palindromic(q):
    for m in _ms(q):
        words = switch_words(q, m)
        assert all(is_cyclic_palindrome(w) for w in words.inner + words.outer), m
        assert words.chi1 == strand_sequences(q, m).p_tilde
