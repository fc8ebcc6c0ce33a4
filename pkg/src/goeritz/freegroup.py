"""Words in a rank-2 free group, up to free homotopy (conjugacy).

An alphabet is a pair of generator symbols: ``("A", "X")`` for the inner
handlebody and ``("B", "Y")`` for the outer one.  Inverses are written with a
trailing apostrophe, so ``"A X A' X"`` is A X A^-1 X.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import ParseError

INNER = ("A", "X")
OUTER = ("B", "Y")


class Letter(NamedTuple):
    generator: str
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)

    def __str__(self) -> str:
        return self.generator if self.sign > 0 else self.generator + "'"


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[Letter, ...]
    alphabet: tuple[str, str] = INNER

    def __post_init__(self) -> None:
        letters = tuple(Letter(g, s) for g, s in self.letters)
        for letter in letters:
            if letter.generator not in self.alphabet:
                raise ValueError(f"{letter.generator!r} is not in alphabet {self.alphabet}")
            if letter.sign not in (1, -1):
                raise ValueError(f"letter sign must be +-1, got {letter.sign}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    @classmethod
    def parse(cls, text: str, alphabet: tuple[str, str] = INNER) -> "FreeWord":
        letters = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch not in alphabet:
                raise ParseError(f"{ch!r} is not in alphabet {alphabet}", text, i)
            sign = 1
            if i + 1 < len(text) and text[i + 1] == "'":
                sign = -1
                i += 1
            letters.append(Letter(ch, sign))
            i += 1
        return cls(tuple(letters), alphabet)

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[str, int]], alphabet=INNER) -> "FreeWord":
        """Build from (generator, exponent) runs, e.g. [("A", -1), ("X", 3)]."""
        letters = []
        for g, e in runs:
            letters.extend([Letter(g, 1 if e > 0 else -1)] * abs(e))
        return cls(tuple(letters), alphabet)

    def _same_alphabet(self, other: "FreeWord") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError(f"cannot mix alphabets {self.alphabet} and {other.alphabet}")

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        self._same_alphabet(other)
        return FreeWord(self.letters + other.letters, self.alphabet)

    def __pow__(self, n: int) -> "FreeWord":
        if n < 0:
            return self.inverse() ** -n
        return FreeWord(self.letters * n, self.alphabet)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple(l.inverse() for l in reversed(self.letters)), self.alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(l) for l in self.letters)

    def to_json(self) -> list[list]:
        return [[l.generator, l.sign] for l in self.letters]

    def runs(self) -> list[tuple[str, int]]:
        out: list[list] = []
        for l in self.letters:
            if out and out[-1][0] == l.generator and (out[-1][1] > 0) == (l.sign > 0):
                out[-1][1] += l.sign
            else:
                out.append([l.generator, l.sign])
        return [(g, e) for g, e in out]


def free_reduce(w: FreeWord) -> FreeWord:
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return FreeWord(tuple(stack), w.alphabet)


def _rotations(letters: tuple[Letter, ...]):
    for i in range(len(letters) or 1):
        yield letters[i:] + letters[:i]


@dataclass(frozen=True, eq=False)
class CyclicWord:
    """A cyclically reduced word, compared up to rotation."""

    word: FreeWord

    def __post_init__(self) -> None:
        letters = self.word.letters
        for i, letter in enumerate(letters):
            if letters[i - 1] == letter.inverse() and len(letters) > 1:
                raise ValueError(f"{self.word} is not cyclically reduced")

    @property
    def alphabet(self) -> tuple[str, str]:
        return self.word.alphabet

    def canonical(self) -> tuple[Letter, ...]:
        return min(_rotations(self.word.letters), default=())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return conjugate_equal(self, other)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.canonical()))

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return f"({self.word})"


def cyclic_reduce(w: FreeWord) -> CyclicWord:
    letters = list(free_reduce(w).letters)
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo] == letters[hi - 1].inverse():
        lo += 1
        hi -= 1
    return CyclicWord(FreeWord(tuple(letters[lo:hi]), w.alphabet))


def _as_cyclic(w: CyclicWord | FreeWord) -> CyclicWord:
    return w if isinstance(w, CyclicWord) else cyclic_reduce(w)


def conjugate_equal(w1: CyclicWord | FreeWord, w2: CyclicWord | FreeWord) -> bool:
    """True iff the two words are conjugate, i.e. one cyclic reduction is a rotation of the other."""
    c1, c2 = _as_cyclic(w1), _as_cyclic(w2)
    if c1.alphabet != c2.alphabet or len(c1) != len(c2):
        return False
    target = c2.word.letters
    return any(rot == target for rot in _rotations(c1.word.letters))


def reverse(w: FreeWord) -> FreeWord:
    """Letters in reverse order, signs unchanged."""
    return FreeWord(tuple(reversed(w.letters)), w.alphabet)


def is_cyclic_palindrome(w: FreeWord | CyclicWord) -> bool:
    word = w.word if isinstance(w, CyclicWord) else w
    return conjugate_equal(cyclic_reduce(word), cyclic_reduce(reverse(word)))


def abelianize(w: FreeWord | CyclicWord) -> tuple[int, int]:
    word = w.word if isinstance(w, CyclicWord) else w
    first, second = word.alphabet
    return (
        sum(l.sign for l in word.letters if l.generator == first),
        sum(l.sign for l in word.letters if l.generator == second),
    )
