"""Decision procedures for homological Goeritz equivalence and its obstructions.

For curves of nonzero surface slope, any Goeritz-form matrix carrying k to k'
has first block equal to one of two rational candidates (one per determinant
d = +-1), so equivalence reduces to an integrality check.  For slope zero the
linear system is singular and :func:`zero_slope_screen` only ever obstructs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateBlockError, HypothesisError
from .factorization import bezout, factor_block
from .freegroup import CyclicWord, FreeWord, conjugate_equal
from .homology import (
    Block2Matrix,
    HomologyVector,
    apply,
    epsilon_star,
    gcd_pair,
    goeritz_form_from_block,
    is_degenerate,
    split_product,
)
from .words import GoeritzWord, apply4, evaluate

CONDITION_TAGS = ("gcd_first", "gcd_second", "slope", "div_plus", "div_minus", "degenerate")


class Outcome(str, enum.Enum):
    Equivalent = "Equivalent"
    NotEquivalent = "NotEquivalent"
    Undecidable = "Undecidable"


class HomotopyOutcome(str, enum.Enum):
    Obstructed = "Obstructed"
    NoObstruction = "NoObstruction"


@dataclass(frozen=True)
class CandidateBlock:
    d: int
    numerators: Block2Matrix
    divisor: int

    @property
    def integral(self) -> bool:
        n = self.numerators
        return all(e % self.divisor == 0 for e in (n.s, n.t, n.u, n.v))

    @property
    def block(self) -> Block2Matrix | None:
        if not self.integral:
            return None
        n, q = self.numerators, self.divisor
        return Block2Matrix(n.s // q, n.t // q, n.u // q, n.v // q)

    def rational(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        n, q = self.numerators, self.divisor
        return ((Fraction(n.s, q), Fraction(n.t, q)), (Fraction(n.u, q), Fraction(n.v, q)))

    def to_json(self) -> dict:
        block = self.block
        return {
            "d": self.d,
            "numerators": self.numerators.rows(),
            "divisor": self.divisor,
            "integral": self.integral,
            "block": block.rows() if block else None,
        }


@dataclass(frozen=True)
class Witness:
    d: int
    block: Block2Matrix
    word: GoeritzWord
    certified: bool

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "block": self.block.rows(),
            "word": self.word.to_json(),
            "word_ascii": self.word.ascii(),
            "certified": self.certified,
        }


@dataclass(frozen=True)
class RouteReport:
    """One target tried by the zero-slope screen (k' itself, or epsilon_* k')."""

    name: str
    target: HomologyVector
    gcd_first: bool
    gcd_second: bool
    systems: tuple[tuple[int, str], ...] = ()
    transporter: Block2Matrix | None = None

    @property
    def obstructed(self) -> bool:
        return self.transporter is None and all(
            status == "Inconsistent" or status == "NoUnimodular" for _, status in self.systems
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "target": self.target.to_json(),
            "gcd_first": self.gcd_first,
            "gcd_second": self.gcd_second,
            "systems": {str(d): status for d, status in self.systems},
            "transporter": self.transporter.rows() if self.transporter else None,
            "obstructed": self.obstructed,
        }


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witnesses: tuple[Witness, ...] = ()
    failed_conditions: tuple[str, ...] = ()
    candidates: tuple[CandidateBlock, ...] = ()
    routes: tuple[RouteReport, ...] = ()
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "witnesses": [w.to_json() for w in self.witnesses],
            "failed_conditions": list(self.failed_conditions),
            "candidates": [c.to_json() for c in self.candidates],
            "routes": [r.to_json() for r in self.routes],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class LinearSystemSolution:
    """Integer solutions (s, t, u, v) of the transporter equations for a fixed determinant d.

    status is "Inconsistent", "Unique" (nonzero slope; the rational candidate,
    possibly non-integral) or "Affine" (particular + span of basis).
    """

    d: int
    status: str
    candidate: CandidateBlock | None = None
    particular: tuple[int, int, int, int] | None = None
    basis: tuple[tuple[int, int, int, int], ...] = ()

    @property
    def rank_deficiency(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "status": self.status,
            "candidate": self.candidate.to_json() if self.candidate else None,
            "particular": list(self.particular) if self.particular else None,
            "basis": [list(b) for b in self.basis],
        }


def _check_d(d: int) -> None:
    if d not in (1, -1):
        raise ValueError(f"determinant must be +1 or -1, got {d}")


def candidate_block(k: HomologyVector, k2: HomologyVector, d: int) -> CandidateBlock:
    """The unique rational first block with determinant d carrying k to k2 (slope != 0)."""
    _check_d(d)
    sp = split_product(k)
    if sp == 0:
        raise HypothesisError("candidate blocks need a nonzero split product")
    a, x, b, y = k.as_tuple()
    a2, x2, b2, y2 = k2.as_tuple()
    numerators = Block2Matrix(
        x * y2 * d + a2 * b,
        -a * y2 * d + a2 * y,
        -b2 * x * d + b * x2,
        a * b2 * d + x2 * y,
    )
    return CandidateBlock(d, numerators, sp)


def _solve_two_unknowns(rows):
    """Integer solutions of c1*p + c2*q = e for every row (c1, c2, e).

    Returns None when there are none, else (particular, kernel basis).
    """
    live = [(c1, c2, e) for c1, c2, e in rows if c1 or c2]
    if any(e for c1, c2, e in rows if not (c1 or c2)):
        return None
    if not live:
        return (0, 0), [(1, 0), (0, 1)]
    c1, c2, e = live[0]
    for o1, o2, oe in live[1:]:
        det = c1 * o2 - c2 * o1
        if det:
            p_num = e * o2 - c2 * oe
            q_num = c1 * oe - e * o1
            if p_num % det or q_num % det:
                return None
            p, q = p_num // det, q_num // det
            if any(r1 * p + r2 * q != re for r1, r2, re in live):
                return None
            return (p, q), []
        if c1 * oe - o1 * e or c2 * oe - o2 * e:
            return None
    g = gcd_pair(c1, c2)
    if e % g:
        return None
    e1, e2 = bezout(c1 // g, c2 // g)
    return (e1 * (e // g), e2 * (e // g)), [(c2 // g, -c1 // g)]


def transporter_system(k: HomologyVector, k2: HomologyVector, d: int) -> LinearSystemSolution:
    """Solve s a + t x = a', u a + v x = x', d(v b - u y) = b', d(s y - t b) = y'."""
    _check_d(d)
    if k.is_zero():
        raise DegenerateBlockError("source vector is zero")
    if split_product(k) != 0:
        return LinearSystemSolution(d, "Unique", candidate=candidate_block(k, k2, d))
    a, x, b, y = k.as_tuple()
    a2, x2, b2, y2 = k2.as_tuple()
    st = _solve_two_unknowns([(a, x, a2), (d * y, -d * b, y2)])
    uv = _solve_two_unknowns([(a, x, x2), (-d * y, d * b, b2)])
    if st is None or uv is None:
        return LinearSystemSolution(d, "Inconsistent")
    (s0, t0), st_basis = st
    (u0, v0), uv_basis = uv
    basis = tuple((p, q, 0, 0) for p, q in st_basis) + tuple((0, 0, p, q) for p, q in uv_basis)
    return LinearSystemSolution(d, "Affine", particular=(s0, t0, u0, v0), basis=basis)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [i for i in range(1, math.isqrt(n) + 1) if n % i == 0]
    return sorted(set(small + [n // i for i in small]))


def _entry_cost(block: tuple[int, int, int, int]) -> tuple[int, tuple[int, ...]]:
    return (sum(abs(e) for e in block), tuple(-e for e in block))


def _best_on_line(base, direction) -> tuple[int, int, int, int]:
    """Integer point base + t*direction with least total entry magnitude."""
    ts = {0}
    for p, q in zip(base, direction):
        if q:
            ts.update({math.floor(-p / q), math.ceil(-p / q)})
    points = [tuple(p + t * q for p, q in zip(base, direction)) for t in ts]
    return min(points, key=_entry_cost)


def resolve_determinant(sol: LinearSystemSolution) -> tuple[str, Block2Matrix | None]:
    """Look for an integer solution of an Affine system whose determinant equals sol.d.

    Returns ("found", block), ("none", None) or ("unresolved", None).  With at
    most one free direction per block the determinant condition is the bilinear
    equation A + B*l + C*m + D*l*m = d, which is solved exactly.
    """
    if sol.status != "Affine":
        raise ValueError("only Affine systems need determinant resolution")
    st_dirs = [b[:2] for b in sol.basis if b[2:] == (0, 0)]
    uv_dirs = [b[2:] for b in sol.basis if b[:2] == (0, 0)]
    if len(st_dirs) > 1 or len(uv_dirs) > 1:
        return ("unresolved", None)
    s0, t0, u0, v0 = sol.particular
    ks, kt = st_dirs[0] if st_dirs else (0, 0)
    ku, kv = uv_dirs[0] if uv_dirs else (0, 0)
    A = s0 * v0 - t0 * u0
    B = ks * v0 - kt * u0
    C = s0 * kv - t0 * ku
    D = ks * kv - kt * ku
    target = sol.d

    def point(lam: int, mu: int) -> tuple[int, int, int, int]:
        return (s0 + lam * ks, t0 + lam * kt, u0 + mu * ku, v0 + mu * kv)

    found: list[tuple[int, int, int, int]] = []
    if D:
        # (D l + C)(D m + B) = D (d - A) + B C
        n = D * (target - A) + B * C
        if n:
            for f in _divisors(n):
                for f1 in (f, -f):
                    f2 = n // f1
                    if (f1 - C) % D == 0 and (f2 - B) % D == 0:
                        found.append(point((f1 - C) // D, (f2 - B) // D))
        else:
            if -C % D == 0:
                lam = -C // D
                found.append(_best_on_line(point(lam, 0), (0, 0, ku, kv)))
            if -B % D == 0:
                mu = -B // D
                found.append(_best_on_line(point(0, mu), (ks, kt, 0, 0)))
    else:
        rhs = target - A
        if B == 0 and C == 0:
            if rhs == 0:
                found.append(point(0, 0))
        else:
            g = math.gcd(B, C)
            if rhs % g == 0:
                e1, e2 = bezout(B // g, C // g)
                lam0, mu0 = e1 * (rhs // g), e2 * (rhs // g)
                base = point(lam0, mu0)
                step = (C // g * ks, C // g * kt, -B // g * ku, -B // g * kv)
                found.append(_best_on_line(base, step))
    found = [p for p in found if p[0] * p[3] - p[1] * p[2] == target]
    if not found:
        return ("none", None)
    best = min(found, key=_entry_cost)
    return ("found", Block2Matrix(*best))


def _witness(k: HomologyVector, target: HomologyVector, d: int, block: Block2Matrix,
             prefix: GoeritzWord | None = None) -> Witness:
    result = factor_block(block)
    word = result.word if prefix is None else prefix * result.word
    image = apply(goeritz_form_from_block(block), k)
    if prefix is not None:
        image = apply4(evaluate(prefix), image)
    certified = (
        result.certified
        and block.det == d
        and image == target
        and apply4(evaluate(word), k) == target
    )
    return Witness(d, block, word, certified)


def _gcd_tags(k: HomologyVector, k2: HomologyVector) -> list[str]:
    tags = []
    if gcd_pair(*k.first_block) != gcd_pair(*k2.first_block):
        tags.append("gcd_first")
    if gcd_pair(*k.second_block) != gcd_pair(*k2.second_block):
        tags.append("gcd_second")
    return tags


def _decide(k: HomologyVector, k2: HomologyVector, target: HomologyVector,
            prefix: GoeritzWord | None) -> Verdict:
    if split_product(k) == 0:
        raise HypothesisError(
            f"{k} has zero split product; the decision procedure needs nonzero surface slope "
            "(use zero_slope_screen instead)"
        )
    tags = _gcd_tags(k, k2)
    if split_product(k) != split_product(k2):
        tags.append("slope")
    if is_degenerate(k2.first_block) or is_degenerate(k2.second_block):
        tags.append("degenerate")
    if tags:
        return Verdict(Outcome.NotEquivalent, failed_conditions=tuple(tags))
    candidates = tuple(candidate_block(k, k2, d) for d in (1, -1))
    witnesses = tuple(
        _witness(k, target, c.d, c.block, prefix) for c in candidates if c.integral
    )
    if not witnesses:
        return Verdict(
            Outcome.NotEquivalent,
            failed_conditions=("div_plus", "div_minus"),
            candidates=candidates,
        )
    return Verdict(Outcome.Equivalent, witnesses=witnesses, candidates=candidates)


def decide_homological(k: HomologyVector, k2: HomologyVector) -> Verdict:
    """Is there a Goeritz group element whose homology action sends k to k2?"""
    return _decide(k, k2, k2, None)


def decide_extended(k: HomologyVector, k2: HomologyVector) -> tuple[Verdict, Verdict]:
    """(plain verdict, verdict against epsilon_* k2).

    Witnesses on the epsilon side are words ending (on the left) in epsilon, so
    they carry k to k2 itself.
    """
    plain = decide_homological(k, k2)
    swapped = _decide(k, epsilon_star(k2), k2, GoeritzWord.generator("epsilon"))
    return plain, swapped


def extended_equivalent(k: HomologyVector, k2: HomologyVector) -> bool:
    return any(v.outcome is Outcome.Equivalent for v in decide_extended(k, k2))


def _screen_route(name: str, k: HomologyVector, target: HomologyVector) -> RouteReport:
    g1 = gcd_pair(*k.first_block) == gcd_pair(*target.first_block)
    g2 = gcd_pair(*k.second_block) == gcd_pair(*target.second_block)
    if not (g1 and g2):
        return RouteReport(name, target, g1, g2)
    systems = []
    transporter = None
    for d in (1, -1):
        sol = transporter_system(k, target, d)
        if sol.status == "Inconsistent":
            systems.append((d, "Inconsistent"))
            continue
        status, block = resolve_determinant(sol)
        if status == "found":
            systems.append((d, "Unimodular"))
            transporter = transporter or block
        elif status == "none":
            systems.append((d, "NoUnimodular"))
        else:
            systems.append((d, "Unresolved"))
    return RouteReport(name, target, g1, g2, tuple(systems), transporter)


def zero_slope_screen(k: HomologyVector, k2: HomologyVector) -> Verdict:
    """Obstruction-only test for split-orthogonal vectors.

    Never reports Equivalent: NotEquivalent when every route (k2 and
    epsilon_* k2) is blocked by a gcd mismatch or an unsolvable transporter
    system, otherwise Undecidable, with any transporter found attached.
    """
    if split_product(k) != 0:
        raise HypothesisError(f"{k} has nonzero split product; use decide_homological")
    for v in (k, k2):
        if is_degenerate(v.first_block) or is_degenerate(v.second_block):
            raise DegenerateBlockError(
                f"{v} has a zero block; infinitely many candidate Goeritz-form matrices exist"
            )
    if split_product(k2) != 0:
        return Verdict(Outcome.NotEquivalent, failed_conditions=("slope",))
    routes = (_screen_route("plain", k, k2), _screen_route("epsilon", k, epsilon_star(k2)))
    tags: list[str] = []
    for route in routes:
        if not route.obstructed:
            continue
        if not route.gcd_first:
            tags.append("gcd_first")
        if not route.gcd_second:
            tags.append("gcd_second")
        for d, status in route.systems:
            if status in ("Inconsistent", "NoUnimodular"):
                tags.append("div_plus" if d == 1 else "div_minus")
    tags = list(dict.fromkeys(tags))
    if all(r.obstructed for r in routes):
        return Verdict(Outcome.NotEquivalent, failed_conditions=tuple(tags), routes=routes)
    notes = []
    witnesses = []
    if k == k2:
        notes.append("identity is a trivially valid transporter")
    for route in routes:
        if route.transporter is not None:
            prefix = GoeritzWord.generator("epsilon") if route.name == "epsilon" else None
            witnesses.append(_witness(k, k2, route.transporter.det, route.transporter, prefix))
            notes.append(f"{route.name} route: unimodular transporter {route.transporter.rows()}")
        elif not route.obstructed:
            notes.append(f"{route.name} route: determinant condition unresolved")
    return Verdict(
        Outcome.Undecidable,
        witnesses=tuple(witnesses),
        failed_conditions=tuple(tags),
        routes=routes,
        notes=tuple(notes),
    )


def homotopy_obstruction(
    w_inner_1: CyclicWord | FreeWord,
    w_outer_1: CyclicWord | FreeWord,
    w_inner_2: CyclicWord | FreeWord,
    w_outer_2: CyclicWord | FreeWord,
) -> HomotopyOutcome:
    """Compare free homotopy classes of two curves in both handlebodies.

    NoObstruction does not mean the curves are Goeritz equivalent.
    """
    if conjugate_equal(w_inner_1, w_inner_2) and conjugate_equal(w_outer_1, w_outer_2):
        return HomotopyOutcome.NoObstruction
    return HomotopyOutcome.Obstructed
