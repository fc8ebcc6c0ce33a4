"""Words in the extended Goeritz group generators and their action on homology.

Convention: a word acts right-to-left.  ``evaluate(w)`` is the product of the
generator matrices in the order written, so the rightmost letter is applied
to a homology vector first.  In the case-study word a b g d' g d^2 the d^2 is
applied first.

ASCII encoding: ``a b g d e`` for alpha, beta, gamma, delta (the slide), epsilon;
a trailing apostrophe inverts a letter and ``^n`` raises it to a power, e.g.
``"a b g d' g d^2"``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ArithmeticDomainError, ParseError
from .homology import Block2Matrix, GoeritzMatrix, HomologyVector

Matrix4 = tuple[tuple[int, int, int, int], ...]


class GoeritzGenerator(str, enum.Enum):
    alpha = "alpha"
    beta = "beta"
    gamma = "gamma"
    delta = "delta"
    epsilon = "epsilon"

    @property
    def ascii(self) -> str:
        return _ASCII_OF[self]


_ASCII_OF = {
    GoeritzGenerator.alpha: "a",
    GoeritzGenerator.beta: "b",
    GoeritzGenerator.gamma: "g",
    GoeritzGenerator.delta: "d",
    GoeritzGenerator.epsilon: "e",
}
_FROM_ASCII = {v: k for k, v in _ASCII_OF.items()}

IDENTITY4: Matrix4 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

_GENERATOR_MATRICES: dict[GoeritzGenerator, Matrix4] = {
    GoeritzGenerator.alpha: ((-1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1)),
    GoeritzGenerator.beta: ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1)),
    GoeritzGenerator.gamma: ((0, -1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, -1), (0, 0, -1, 0)),
    GoeritzGenerator.delta: ((1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, -1), (0, 0, 0, 1)),
    GoeritzGenerator.epsilon: ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)),
}
# alpha, beta, gamma, epsilon act as involutions on homology
_INVERSE_MATRICES: dict[GoeritzGenerator, Matrix4] = {
    **_GENERATOR_MATRICES,
    GoeritzGenerator.delta: ((1, 0, 0, 0), (-1, 1, 0, 0), (0, 0, 1, 1), (0, 0, 0, 1)),
}


def matmul4(m: Matrix4, n: Matrix4) -> Matrix4:
    cols = tuple(zip(*n))
    return tuple(tuple(sum(p * q for p, q in zip(row, col)) for col in cols) for row in m)


def det4(m: Matrix4) -> int:
    """Exact determinant by cofactor expansion (only ever used on 4x4 matrices)."""

    def det(rows: Sequence[Sequence[int]]) -> int:
        if len(rows) == 1:
            return rows[0][0]
        total = 0
        for j, entry in enumerate(rows[0]):
            if entry:
                minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
                total += (-1) ** j * entry * det(minor)
        return total

    return det([list(r) for r in m])


def apply4(m: Matrix4, k: HomologyVector) -> HomologyVector:
    v = k.as_tuple()
    return HomologyVector(*(sum(p * q for p, q in zip(row, v)) for row in m))


def matrix4_of(g: GoeritzMatrix) -> Matrix4:
    return g.matrix4()


def is_goeritz_form(m: Matrix4) -> bool:
    if any(m[i][j] for i in (0, 1) for j in (2, 3)) or any(m[i][j] for i in (2, 3) for j in (0, 1)):
        return False
    c = Block2Matrix(m[0][0], m[0][1], m[1][0], m[1][1])
    d = Block2Matrix(m[2][2], m[2][3], m[3][2], m[3][3])
    return c.is_unimodular() and c.transpose() @ d == Block2Matrix.identity()


def first_block(m: Matrix4) -> Block2Matrix:
    return Block2Matrix(m[0][0], m[0][1], m[1][0], m[1][1])


@dataclass(frozen=True)
class GoeritzWord:
    """Run-length encoded word; adjacent letters never share a generator."""

    letters: tuple[tuple[GoeritzGenerator, int], ...] = ()

    def __post_init__(self) -> None:
        normal = _normalize(self.letters)
        object.__setattr__(self, "letters", normal)

    @classmethod
    def of(cls, *letters: tuple[GoeritzGenerator | str, int]) -> "GoeritzWord":
        return cls(tuple((GoeritzGenerator(g), e) for g, e in letters))

    @classmethod
    def generator(cls, g: GoeritzGenerator | str, exponent: int = 1) -> "GoeritzWord":
        return cls(((GoeritzGenerator(g), exponent),))

    def __mul__(self, other: "GoeritzWord") -> "GoeritzWord":
        return GoeritzWord(self.letters + other.letters)

    def __pow__(self, n: int) -> "GoeritzWord":
        if n < 0:
            return self.inverse() ** (-n)
        return GoeritzWord(self.letters * n)

    def inverse(self) -> "GoeritzWord":
        return GoeritzWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def expand(self) -> list[tuple[GoeritzGenerator, int]]:
        """Letters one at a time as (generator, +-1)."""
        out = []
        for g, e in self.letters:
            step = 1 if e > 0 else -1
            out.extend([(g, step)] * abs(e))
        return out

    def to_json(self) -> list[list]:
        return [[g.value, e] for g, e in self.letters]

    @classmethod
    def from_json(cls, data) -> "GoeritzWord":
        try:
            letters = []
            for name, exponent in data:
                if isinstance(exponent, bool) or not isinstance(exponent, int):
                    raise ArithmeticDomainError(f"exponent {exponent!r} is not an integer")
                letters.append((GoeritzGenerator(name), exponent))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed word {data!r}: {exc}") from None
        return cls(tuple(letters))

    def ascii(self) -> str:
        parts = []
        for g, e in self.letters:
            if e == 1:
                parts.append(g.ascii)
            elif e == -1:
                parts.append(g.ascii + "'")
            else:
                parts.append(f"{g.ascii}^{e}")
        return " ".join(parts)

    def pretty(self) -> str:
        greek = {"alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ", "epsilon": "ε"}
        sup = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")
        if not self.letters:
            return "1"
        return "".join(
            greek[g.value] + ("" if e == 1 else str(e).translate(sup)) for g, e in self.letters
        )

    def __str__(self) -> str:
        return self.ascii() or "1"


def _normalize(letters: Iterable[tuple[GoeritzGenerator, int]]) -> tuple:
    out: list[tuple[GoeritzGenerator, int]] = []
    for g, e in letters:
        g = GoeritzGenerator(g)
        if isinstance(e, bool) or not isinstance(e, int):
            raise ArithmeticDomainError(f"exponent {e!r} is not an integer")
        if e == 0:
            continue
        if out and out[-1][0] is g:
            total = out[-1][1] + e
            out.pop()
            if total:
                out.append((g, total))
        else:
            out.append((g, e))
    return tuple(out)


def parse_word(text: str) -> GoeritzWord:
    """Parse the ASCII encoding.  Whitespace between letters is optional."""
    letters = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace() or ch in "·*":
            i += 1
            continue
        if ch not in _FROM_ASCII:
            raise ParseError(f"unknown generator {ch!r}", text, i)
        gen = _FROM_ASCII[ch]
        i += 1
        exponent = 1
        if i < n and text[i] == "'":
            exponent = -1
            i += 1
        if i < n and text[i] == "^":
            start = i
            i += 1
            j = i
            if j < n and text[j] in "+-":
                j += 1
            while j < n and text[j].isdigit():
                j += 1
            digits = text[i:j]
            if not digits.lstrip("+-"):
                raise ParseError("exponent expected after '^'", text, start)
            exponent *= int(digits)
            i = j
        letters.append((gen, exponent))
    return GoeritzWord(tuple(letters))


def generator_matrix(g: GoeritzGenerator | str) -> Matrix4:
    return _GENERATOR_MATRICES[GoeritzGenerator(g)]


def _power(m: Matrix4, e: int) -> Matrix4:
    result = IDENTITY4
    while e:
        if e & 1:
            result = matmul4(result, m)
        m = matmul4(m, m)
        e >>= 1
    return result


def evaluate(w: GoeritzWord) -> Matrix4:
    """Homology matrix of a word; the rightmost letter acts first."""
    result = IDENTITY4
    for g, e in w.letters:
        base = _GENERATOR_MATRICES[g] if e > 0 else _INVERSE_MATRICES[g]
        result = matmul4(result, _power(base, abs(e)))
    return result


def epsilon_parity(w: GoeritzWord) -> str:
    count = sum(abs(e) for g, e in w.letters if g is GoeritzGenerator.epsilon)
    return "even" if count % 2 == 0 else "odd"


def _g(name: str, e: int = 1) -> GoeritzWord:
    return GoeritzWord.generator(name, e)


def commutator(u: GoeritzWord, v: GoeritzWord) -> GoeritzWord:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def _relator_table(extended: bool) -> list[tuple[str, GoeritzWord]]:
    a, b, g, d, e = (_g(n) for n in ("alpha", "beta", "gamma", "delta", "epsilon"))
    head = [("a^2", a**2), ("g^2", g**2)]
    if extended:
        head.append(("e^2", e**2))
    middle = [
        ("[a,b]", commutator(a, b)),
        ("[a,g]", commutator(a, g)),
        ("[a,d]", commutator(a, d)),
        ("a[g,b]", a * commutator(g, b)),
    ]
    if extended:
        middle += [
            ("[e,a]", commutator(e, a)),
            ("a[e,b]", a * commutator(e, b)),
            ("[e,g]", commutator(e, g)),
            ("(e d)^2", (e * d) ** 2),
        ]
    tail = [("(b' g d)^3", (b.inverse() * g * d) ** 3), ("(b' d)^2", (b.inverse() * d) ** 2)]
    return head + middle + tail


def relators(extended: bool) -> list[GoeritzWord]:
    """Relators of the Goeritz group presentation (8) or its extension by epsilon (13)."""
    return [w for _, w in _relator_table(extended)]


def relator_labels(extended: bool) -> list[str]:
    return [label for label, _ in _relator_table(extended)]


@dataclass(frozen=True)
class RelatorCheck:
    presentation: str
    label: str
    word: GoeritzWord
    identity: bool


@dataclass(frozen=True)
class RelatorReport:
    checks: tuple[RelatorCheck, ...]

    @property
    def failures(self) -> list[RelatorCheck]:
        return [c for c in self.checks if not c.identity]

    def count(self, presentation: str) -> tuple[int, int]:
        rows = [c for c in self.checks if c.presentation == presentation]
        return sum(c.identity for c in rows), len(rows)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_relators() -> RelatorReport:
    checks = []
    for presentation, extended in (("extended", True), ("goeritz", False)):
        for label, word in _relator_table(extended):
            checks.append(RelatorCheck(presentation, label, word, evaluate(word) == IDENTITY4))
    return RelatorReport(tuple(checks))


def named_word(name: str) -> GoeritzWord:
    """delta_rot = b' g d; belt_twist = b^2; case_g = a b g d' g d^2."""
    table = {
        "delta_rot": lambda: parse_word("b' g d"),
        "belt_twist": lambda: parse_word("b^2"),
        "case_g": lambda: parse_word("a b g d' g d^2"),
    }
    try:
        return table[name]()
    except KeyError:
        raise ValueError(f"unknown named word {name!r}; expected one of {sorted(table)}") from None
