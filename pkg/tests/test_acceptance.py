"""Acceptance criteria 1-9, each at its stated tolerance and time limit.

Every criterion prints one PASS/FAIL line (collected in the pytest terminal
summary, or printed directly with ``python tests/test_acceptance.py``).
"""

import functools
import random
import time

from conftest import ACCEPTANCE_LINES
from goeritz.equivalence import (
    Outcome,
    decide_extended,
    transporter_system,
    zero_slope_screen,
)
from goeritz.factorization import factor_block
from goeritz.homology import (
    Block2Matrix,
    HomologyVector,
    TwistCurve,
    dehn_twist,
    epsilon_star,
    goeritz_form_from_block,
    split_product,
)
from goeritz.ttk import admissible_qm, family_pair, family_zero_slope, verify_case, zero_slope_admissible
from goeritz.words import (
    IDENTITY4,
    GoeritzGenerator,
    GoeritzWord,
    apply4,
    evaluate,
    first_block,
    generator_matrix,
    matmul4,
    named_word,
    parse_word,
    verify_relators,
)

CASE_BLOCK = Block2Matrix(1, 1, 2, 1)


def criterion(number: int, title: str, limit: float):
    def wrap(body):
        @functools.wraps(body)
        def test():
            start = time.perf_counter()
            detail, status = "", "PASS"
            try:
                detail = body() or ""
                elapsed = time.perf_counter() - start
                assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
            except AssertionError as exc:
                status, detail = "FAIL", str(exc).splitlines()[0] if str(exc) else "assertion failed"
                raise
            finally:
                elapsed = time.perf_counter() - start
                line = f"criterion {number}: {status}  {title} ({elapsed:.2f} s / {limit} s)"
                if detail:
                    line += f"  {detail}"
                ACCEPTANCE_LINES.append(line)
                print(line)

        return test

    return wrap


@criterion(1, "relator soundness", 1.0)
def test_relator_soundness():
    report = verify_relators()
    assert report.count("extended") == (13, 13), report.failures
    assert report.count("goeritz") == (8, 8), report.failures
    return "13/13 extended, 8/8 plain"


@criterion(2, "kernel fact", 1.0)
def test_kernel_fact():
    assert evaluate(named_word("belt_twist")) == IDENTITY4
    assert matmul4(generator_matrix("beta"), generator_matrix("beta")) == IDENTITY4


def _random_word(rng: random.Random, max_len: int, epsilon: bool) -> GoeritzWord:
    pool = [
        (GoeritzGenerator.alpha, 1),
        (GoeritzGenerator.beta, 1),
        (GoeritzGenerator.beta, -1),
        (GoeritzGenerator.gamma, 1),
        (GoeritzGenerator.delta, 1),
        (GoeritzGenerator.delta, -1),
    ]
    if epsilon:
        pool.append((GoeritzGenerator.epsilon, 1))
    return GoeritzWord(tuple(rng.choice(pool) for _ in range(rng.randint(0, max_len))))


@criterion(3, "factorization round trip", 10.0)
def test_factorization_round_trip():
    rng = random.Random(20240601)
    certified = 0
    for _ in range(1000):
        w = _random_word(rng, 20, epsilon=False)
        m = evaluate(w)
        result = factor_block(first_block(m))
        assert evaluate(result.word) == m, f"word {w} re-evaluates differently"
        certified += result.certified
    assert certified == 1000, f"{certified}/1000 certified"
    return "1000/1000 certified"


@criterion(4, "k = 1 case study", 1.0)
def test_case_study():
    case_matrix = evaluate(parse_word("a b g d' g d^2"))
    assert case_matrix == goeritz_form_from_block(CASE_BLOCK).matrix4()
    for q, m in [(5, 2), (7, 3), (9, 4), (11, 7), (12, 5)]:
        k1, k2 = family_pair(1, q, m)
        plain, swapped = decide_extended(k1, k2)
        assert plain.outcome is Outcome.NotEquivalent, (q, m)
        assert swapped.outcome is Outcome.Equivalent, (q, m)
        assert [(w.d, w.block) for w in swapped.witnesses] == [(-1, CASE_BLOCK)], (q, m)
        assert apply4(case_matrix, k1) == epsilon_star(k2)


@criterion(5, "k = 0 family", 1.0)
def test_k_zero_family():
    count = 0
    for q, m in admissible_qm(30):
        k1, k2 = family_pair(0, q, m)
        for verdict in decide_extended(k1, k2):
            assert verdict.outcome is Outcome.NotEquivalent, (q, m)
            tags = set(verdict.failed_conditions)
            assert tags and tags <= {"gcd_first", "gcd_second"}, (q, m, tags)
            assert not verdict.candidates, (q, m)
        count += 1
    return f"{count} pairs"


@criterion(6, "zero-slope family", 5.0)
def test_zero_slope_family():
    admissible = zero_slope_admissible(8)
    vectors = {rq: family_zero_slope(*rq) for rq in admissible}
    not_obstructed = []
    swapped_not_inconsistent = []
    total = 0
    for r1, q1 in admissible:
        for r2, q2 in admissible:
            if (r1, q1) == (r2, q2):
                continue
            total += 1
            k, k2 = vectors[(r1, q1)], vectors[(r2, q2)]
            if zero_slope_screen(k, k2).outcome is not Outcome.NotEquivalent:
                not_obstructed.append(((r1, q1), (r2, q2)))
            if q1 == r2 and r1 == q2:
                statuses = [transporter_system(k, epsilon_star(k2), d).status for d in (1, -1)]
                if statuses != ["Inconsistent", "Inconsistent"]:
                    swapped_not_inconsistent.append(((r1, q1), (r2, q2), statuses))
    assert not not_obstructed and not swapped_not_inconsistent, (
        f"{len(not_obstructed)}/{total} pairs not obstructed, e.g. (r, q) = "
        f"{not_obstructed[0][0]} vs {not_obstructed[0][1]}; "
        f"{len(swapped_not_inconsistent)} swapped pairs have a consistent system, e.g. "
        f"{swapped_not_inconsistent[0]}"
    )
    return f"{total} ordered pairs obstructed"


ORACLE_VECTORS = [
    HomologyVector(12, -5, 17, 5),
    HomologyVector(1, 2, 3, 4),
    HomologyVector(2, 1, -1, 3),
    HomologyVector(5, -2, 2, 2),
    HomologyVector(3, -4, 7, 1),
    HomologyVector(-6, 4, 1, 1),
]


@criterion(7, "brute-force oracle", 60.0)
def test_brute_force_oracle():
    letters = [
        (generator_matrix("alpha"), 0),
        (generator_matrix("beta"), 0),
        (generator_matrix("gamma"), 0),
        (generator_matrix("delta"), 0),
        (evaluate(parse_word("d'")), 0),
        (generator_matrix("epsilon"), 1),
    ]
    # every word of length <= 6, evaluated incrementally; keep each matrix with its parity
    images: dict = {IDENTITY4: 0}
    frontier = [(IDENTITY4, 0)]
    words = 1
    for _ in range(6):
        nxt = []
        for m, parity in frontier:
            for g, odd in letters:
                mm = matmul4(m, g)
                nxt.append((mm, parity ^ odd))
                images.setdefault(mm, parity ^ odd)
        words += len(nxt)
        frontier = nxt
    assert words == sum(6**n for n in range(7))
    decisions = 0
    most = 0
    for k in ORACLE_VECTORS:
        assert split_product(k) != 0
        targets: dict = {}
        for m, parity in images.items():
            targets.setdefault(apply4(m, k), set()).add(parity)
        for target, parities in targets.items():
            plain, swapped = decide_extended(k, target)
            decisions += 1
            for verdict in (plain, swapped):
                integral = sum(c.integral for c in verdict.candidates)
                most = max(most, len(verdict.witnesses), integral)
                assert len(verdict.witnesses) <= 2 and integral <= 2, (k, target)
                assert all(w.certified for w in verdict.witnesses), (k, target)
            if 0 in parities:
                assert plain.outcome is Outcome.Equivalent, (k, target)
            if 1 in parities:
                assert swapped.outcome is Outcome.Equivalent, (k, target)
    return f"{words} words, {len(images)} matrices, {decisions} decisions, max {most} candidates"


DELTAS = {
    TwistCurve.c1: lambda k: -k.b**2,
    TwistCurve.c2: lambda k: k.a**2,
    TwistCurve.c3: lambda k: -((k.b - k.y) ** 2),
    TwistCurve.c4: lambda k: k.x**2,
    TwistCurve.c5: lambda k: -k.y**2,
}


@criterion(8, "word pipeline", 30.0)
def test_word_pipeline():
    failures = []
    cases = admissible_qm(40)
    for q, m in cases:
        report = verify_case(q, m)
        if not report.passed:
            failures.append((q, m, report.failures))
    assert not failures, f"{len(failures)} cases fail, first {failures[0]}"
    return f"{len(cases)} cases"


@criterion(9, "split-product / Dehn-twist law", 10.0)
def test_twist_law():
    rng = random.Random(7)
    bound = 2**31

    def rand_vector():
        return HomologyVector(*(rng.randrange(-bound, bound) for _ in range(4)))

    for _ in range(10_000):
        k = rand_vector()
        sp = split_product(k)
        for curve, delta in DELTAS.items():
            assert split_product(dehn_twist(k, curve)) - sp == delta(k), (k, curve)
    for _ in range(1000):
        m = evaluate(_random_word(rng, 20, epsilon=True))
        k = rand_vector()
        assert split_product(apply4(m, k)) == split_product(k)
    return "50000 twists, 1000 words"


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
