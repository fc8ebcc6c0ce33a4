"""Twisted torus knots on the genus-2 surface and the k = 1 switch-word pipeline.

K(p, q, r, n) has homology class (q, n r, p, r).  For coprime 1 <= m < q the
curves g(K1) and epsilon(K2) of the k = 1 family are described by strand counts
p_n (blue strands of g(K1) between red ones) and p~_n (purple strands of
epsilon(K2) between pink ones); their handlebody words are built from these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .equivalence import Outcome, decide_extended, homotopy_obstruction
from .errors import PreconditionError
from .freegroup import (
    INNER,
    OUTER,
    FreeWord,
    Letter,
    abelianize,
    conjugate_equal,
    cyclic_reduce,
    free_reduce,
    is_cyclic_palindrome,
)
from .homology import Block2Matrix, HomologyVector, apply, epsilon_star, goeritz_form_from_block
from .words import apply4, evaluate, named_word


@dataclass(frozen=True)
class TtkParams:
    p: int
    q: int
    r: int
    n: int


def ttk_homology(params: TtkParams) -> HomologyVector:
    return HomologyVector(params.q, params.n * params.r, params.p, params.r)


def _require(condition: bool, name: str, detail: str) -> None:
    if not condition:
        raise PreconditionError(f"precondition {name} violated: {detail}")


def family_zero_slope(r: int, q: int) -> HomologyVector:
    """Homology of K(r^2, q, r, -q); always split orthogonal."""
    _require(r >= 2, "r>=2", f"r = {r}")
    _require(1 <= q < r * r, "1<=q<r^2", f"q = {q}, r^2 = {r * r}")
    _require(math.gcd(r, q) == 1, "gcd(r,q)=1", f"gcd({r}, {q}) = {math.gcd(r, q)}")
    _require((q, r) != (1, 2), "(q,r)!=(1,2)", "K(4, 1, 2, -1) is trivial")
    return ttk_homology(TtkParams(r * r, q, r, -q))


def zero_slope_admissible(r_max: int) -> list[tuple[int, int]]:
    """All (r, q) accepted by :func:`family_zero_slope` with r <= r_max."""
    out = []
    for r in range(2, r_max + 1):
        for q in range(1, r * r):
            if math.gcd(r, q) == 1 and (q, r) != (1, 2):
                out.append((r, q))
    return out


def _check_qm(q: int, m: int) -> None:
    _require(1 <= m < q, "1<=m<q", f"q = {q}, m = {m}")
    _require(math.gcd(q, m) == 1, "gcd(q,m)=1", f"gcd({q}, {m}) = {math.gcd(q, m)}")


def family_pair(k: int, q: int, m: int) -> tuple[HomologyVector, HomologyVector]:
    """K1 = K(kq + m, q, m, -1) and K2 = K(kq + q - m, q, q - m, -1)."""
    _require(q > 2, "q>2", f"q = {q}")
    _check_qm(q, m)
    _require(k >= 0, "k>=0", f"k = {k}")
    k1 = ttk_homology(TtkParams(k * q + m, q, m, -1))
    k2 = ttk_homology(TtkParams(k * q + q - m, q, q - m, -1))
    return k1, k2


def admissible_qm(q_max: int) -> list[tuple[int, int]]:
    return [(q, m) for q in range(3, q_max + 1) for m in range(1, q) if math.gcd(q, m) == 1]


def _strand_counts(q: int, m: int) -> tuple[int, int, tuple[int, ...], tuple[int, ...]]:
    d, r = divmod(q, m)
    # z_n is the least integer with m z_n >= (n+1) r, for n = -1 .. m-1
    z = tuple(-((-(n + 1) * r) // m) for n in range(-1, m))
    p = tuple(d + z[i + 1] - z[i] for i in range(m))
    return d, r, z, p


@dataclass(frozen=True)
class StrandSequences:
    """z[i] holds z_{i-1} (the sequence starts at index -1); p[i] holds p_i."""

    q: int
    m: int
    d: int
    r: int
    m_tilde: int
    d_tilde: int
    r_tilde: int
    z: tuple[int, ...]
    p: tuple[int, ...]
    z_tilde: tuple[int, ...]
    p_tilde: tuple[int, ...]

    def z_at(self, n: int) -> int:
        return self.z[n + 1]

    def z_tilde_at(self, n: int) -> int:
        return self.z_tilde[n + 1]

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "d": self.d,
            "r": self.r,
            "m_tilde": self.m_tilde,
            "d_tilde": self.d_tilde,
            "r_tilde": self.r_tilde,
            "z": list(self.z),
            "p": list(self.p),
            "z_tilde": list(self.z_tilde),
            "p_tilde": list(self.p_tilde),
        }


def strand_sequences(q: int, m: int) -> StrandSequences:
    _check_qm(q, m)
    d, r, z, p = _strand_counts(q, m)
    # p~(q, m) = p(q, q - m)
    dt, rt, zt, pt = _strand_counts(q, q - m)
    return StrandSequences(q, m, d, r, q - m, dt, rt, z, p, zt, pt)


def _w(runs, alphabet) -> FreeWord:
    return FreeWord.from_runs(runs, alphabet)


def rotate(w: FreeWord, i: int) -> FreeWord:
    """Cyclic permutation moving the first i letters to the end."""
    i %= max(len(w), 1)
    return FreeWord(w.letters[i:] + w.letters[:i], w.alphabet)


def _trailing_run(w: FreeWord, generator: str) -> int:
    count = 0
    for letter in reversed(w.letters):
        if letter != Letter(generator, 1):
            break
        count += 1
    return count


def standard_runs(w: FreeWord, run_generator: str, separator: Letter) -> tuple[int, ...]:
    """Powers c_i of a word of the exact shape R^c0 S R^c1 S ... R^cj S (all c_i >= 1)."""
    runs = []
    current = 0
    for letter in w.letters:
        if letter == Letter(run_generator, 1):
            current += 1
        elif letter == separator:
            if current == 0:
                raise ValueError(f"{w} has an empty run before a separator")
            runs.append(current)
            current = 0
        else:
            raise ValueError(f"{w} contains {letter}, not of the standard shape")
    if current:
        raise ValueError(f"{w} does not end with the separator {separator}")
    return tuple(runs)


def runs_after_separator(w: FreeWord, run_generator: str, separator: Letter) -> tuple[int, ...]:
    """For each separator in order, the length of the run that follows it cyclically."""
    letters = w.letters
    n = len(letters)
    out = []
    for i, letter in enumerate(letters):
        if letter != separator:
            continue
        j, count = (i + 1) % n, 0
        while count < n and letters[j] == Letter(run_generator, 1):
            count += 1
            j = (j + 1) % n
        out.append(count)
    return tuple(out)


@dataclass(frozen=True)
class SwitchWordPair:
    """Handlebody words of g(K1) and epsilon(K2), with their standardized run sequences.

    chi1/chi2 are the X-powers of the inner words once g(K1)'s trailing X-run is
    cycled to the front and epsilon(K2)'s leading A' is cycled to the back.
    upsilon1/upsilon2 are the Y-powers of the outer words once g(K1)'s trailing
    Y-run is cycled to the front and epsilon(K2)'s leading Y B is cycled to the back.
    """

    inner: tuple[FreeWord, FreeWord]
    outer: tuple[FreeWord, FreeWord]
    inner_raw: tuple[FreeWord, FreeWord]
    outer_raw: tuple[FreeWord, FreeWord]
    chi1: tuple[int, ...]
    chi2: tuple[int, ...]
    upsilon1: tuple[int, ...]
    upsilon2: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "inner": [str(w) for w in self.inner],
            "outer": [str(w) for w in self.outer],
            "chi1": list(self.chi1),
            "chi2": list(self.chi2),
            "upsilon1": list(self.upsilon1),
            "upsilon2": list(self.upsilon2),
        }


A_BAR = Letter("A", -1)
B_SEP = Letter("B", 1)


def switch_words(q: int, m: int) -> SwitchWordPair:
    _require(q > 2, "q>2", f"q = {q}")
    seq = strand_sequences(q, m)
    p, pt = seq.p, seq.p_tilde

    # products run from the highest index on the left down to index 0 on the right
    inner_g = _w(
        [r for n in reversed(range(m)) for r in [("X", 1)] + [("A", -1), ("X", 1)] * (p[n] - 1)],
        INNER,
    )
    inner_g_raw = _w(
        [r for n in reversed(range(m)) for r in [("A", 1)] + [("A", -1), ("X", 1)] * p[n]], INNER
    )
    inner_e = _w([r for n in reversed(range(q - m)) for r in (("A", -1), ("X", pt[n]))], INNER)
    outer_g = _w(
        [r for n in reversed(range(m)) for r in [("Y", 1)] + [("B", 1), ("Y", 2)] * (p[n] - 1)],
        OUTER,
    )
    outer_g_raw = _w(
        [r for n in reversed(range(m)) for r in [("Y", -1), ("B", -1)] + [("B", 1), ("Y", 2)] * p[n]],
        OUTER,
    )
    outer_e = _w(
        [r for n in reversed(range(q - m)) for r in (("Y", 1), ("B", 1), ("Y", pt[n]))], OUTER
    )

    chi1 = standard_runs(rotate(inner_g, -_trailing_run(inner_g, "X")), "X", A_BAR)
    chi2 = standard_runs(rotate(inner_e, 1), "X", A_BAR)
    upsilon1 = standard_runs(rotate(outer_g, -_trailing_run(outer_g, "Y")), "Y", B_SEP)
    upsilon2 = standard_runs(rotate(outer_e, 2), "Y", B_SEP)
    return SwitchWordPair(
        inner=(inner_g, inner_e),
        outer=(outer_g, outer_e),
        inner_raw=(inner_g_raw, inner_e),
        outer_raw=(outer_g_raw, outer_e),
        chi1=chi1,
        chi2=chi2,
        upsilon1=upsilon1,
        upsilon2=upsilon2,
    )


# -- sequence identities ----------------------------------------------------


def near_palindrome_holds(seq: StrandSequences) -> bool | None:
    """p_0 = d+1, p_{m-1} = d and p_n = p_{m-1-n} for 1 <= n <= m-2.

    Returns None when m = 1: then r = 0 and p = (d) cannot satisfy both end
    conditions.
    """
    p, m, d = seq.p, seq.m, seq.d
    if seq.r == 0:
        return None
    return p[0] == d + 1 and p[m - 1] == d and all(p[n] == p[m - 1 - n] for n in range(1, m - 1))


def _two_positions(p: tuple[int, ...], pt: tuple[int, ...], q: int, m: int) -> bool:
    """Positions of 2 in pt, and reconstruction of p from them (requires m < q/2)."""
    expected = {0}
    partial = 0
    for j in range(m - 1):
        partial += p[j]
        expected.add(partial - (j + 2))
    twos = [n for n, value in enumerate(pt) if value == 2]
    if set(twos) != expected or len(twos) != m:
        return False
    if p[0] != 1 + (q - m) - twos[m - 1]:
        return False
    return all(p[m - 1 - i] == 1 + twos[i + 1] - twos[i] for i in range(m - 1))


def two_positions_hold(seq: StrandSequences) -> bool:
    """Where p~ equals 2, for m < q/2; the mirror statement with p and p~ exchanged otherwise."""
    if 2 * seq.m < seq.q:
        return _two_positions(seq.p, seq.p_tilde, seq.q, seq.m)
    return _two_positions(seq.p_tilde, seq.p, seq.q, seq.q - seq.m)


def basic_sequence_facts(seq: StrandSequences) -> dict[str, bool]:
    facts = {
        "sum_p": sum(seq.p) == seq.q,
        "sum_p_tilde": sum(seq.p_tilde) == seq.q,
        "p_range": all(v in (seq.d, seq.d + 1) for v in seq.p),
        "p_tilde_range": all(v in (seq.d_tilde, seq.d_tilde + 1) for v in seq.p_tilde),
        "z_start": seq.z_at(-1) == 0 and seq.z_tilde_at(-1) == 0,
        "p_tilde_is_p_of_complement": seq.p_tilde == strand_sequences(seq.q, seq.q - seq.m).p,
    }
    return facts


# -- case report ------------------------------------------------------------


@dataclass(frozen=True)
class CaseCheck:
    tag: str
    passed: bool | None
    detail: str = ""

    @property
    def applicable(self) -> bool:
        return self.passed is not None

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "status": "n/a" if self.passed is None else ("pass" if self.passed else "fail"),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class CaseReport:
    q: int
    m: int
    k1: HomologyVector
    k2: HomologyVector
    checks: tuple[CaseCheck, ...]
    data: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [c.tag for c in self.checks if c.passed is False]

    def check(self, tag: str) -> CaseCheck:
        for c in self.checks:
            if c.tag == tag:
                return c
        raise KeyError(tag)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "k1": self.k1.to_json(),
            "k2": self.k2.to_json(),
            "passed": self.passed,
            "failures": self.failures,
            "checks": [c.to_json() for c in self.checks],
            **self.data,
        }


CASE_BLOCK = Block2Matrix(1, 1, 2, 1)


def verify_case(q: int, m: int) -> CaseReport:
    """Run every k = 1 sub-check for (q, m); nothing short-circuits."""
    _require(q > 2, "q>2", f"q = {q}")
    k1, k2 = family_pair(1, q, m)
    target = epsilon_star(k2)
    checks: list[CaseCheck] = []

    def add(tag: str, passed: bool | None, detail: str = "") -> None:
        checks.append(CaseCheck(tag, passed, detail))

    plain, swapped = decide_extended(k1, k2)
    witness_blocks = [(w.d, w.block) for w in swapped.witnesses]
    add("plain_not_equivalent", plain.outcome is Outcome.NotEquivalent, plain.outcome.value)
    add(
        "epsilon_unique_witness",
        swapped.outcome is Outcome.Equivalent
        and witness_blocks == [(-1, CASE_BLOCK)]
        and all(w.certified for w in swapped.witnesses),
        f"{swapped.outcome.value} {[(d, b.rows()) for d, b in witness_blocks]}",
    )
    g_matrix = evaluate(named_word("case_g"))
    add(
        "case_word_matches_witness",
        g_matrix == goeritz_form_from_block(CASE_BLOCK).matrix4()
        and apply4(g_matrix, k1) == target
        and apply(goeritz_form_from_block(CASE_BLOCK), k1) == target,
    )

    seq = strand_sequences(q, m)
    for name, ok in basic_sequence_facts(seq).items():
        add(f"sequence_{name}", ok)
    add("near_palindrome", near_palindrome_holds(seq),
        "" if seq.r else "m = 1 leaves r = 0, outside the identity's hypothesis")
    add("two_positions", two_positions_hold(seq))

    words = switch_words(q, m)
    pt = seq.p_tilde
    add("chi1_equals_p_tilde", words.chi1 == pt, f"chi1 = {list(words.chi1)}")
    add("chi2_reverse_p_tilde", words.chi2 == pt[::-1], f"chi2 = {list(words.chi2)}")
    add(
        "upsilon1_equals_p_tilde_plus_one",
        words.upsilon1 == tuple(v + 1 for v in pt),
        f"upsilon1 = {list(words.upsilon1)}",
    )
    add(
        "upsilon2_reverse_p_tilde_plus_one",
        words.upsilon2 == tuple(v + 1 for v in reversed(pt)),
        f"upsilon2 = {list(words.upsilon2)}",
    )
    add(
        "displayed_words_reduce",
        free_reduce(words.inner_raw[0]) == words.inner[0]
        and free_reduce(words.outer_raw[0]) == words.outer[0],
    )
    all_words = words.inner + words.outer
    add(
        "cyclic_palindromes",
        all(is_cyclic_palindrome(w) for w in all_words if abelianize(w) != (0, 0)),
    )
    add("inner_conjugate", conjugate_equal(*words.inner))
    add("outer_conjugate", conjugate_equal(*words.outer))
    add(
        "abelianization",
        all(abelianize(w) == target.second_block for w in words.inner)
        and all(abelianize(w) == target.first_block for w in words.outer),
        f"inner {[abelianize(w) for w in words.inner]}, outer {[abelianize(w) for w in words.outer]}",
    )
    obstruction = homotopy_obstruction(
        cyclic_reduce(words.inner[0]),
        cyclic_reduce(words.outer[0]),
        cyclic_reduce(words.inner[1]),
        cyclic_reduce(words.outer[1]),
    )
    add("homotopy_no_obstruction", obstruction.value == "NoObstruction", obstruction.value)

    data = {
        "epsilon_k2": target.to_json(),
        "plain_verdict": plain.to_json(),
        "epsilon_verdict": swapped.to_json(),
        "sequences": seq.to_json(),
        "words": words.to_json(),
        "homotopy": obstruction.value,
    }
    return CaseReport(q, m, k1, k2, tuple(checks), data)
