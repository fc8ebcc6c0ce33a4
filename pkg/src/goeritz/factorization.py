"""GL(2, Z) transporters and factorization of unimodular blocks into Goeritz words.

A unimodular block C is reduced to an upper triangular sign matrix by Euclidean
row moves.  Each elementary move is rewritten over the Coxeter generators

    R1 = [[0, 1], [1, 0]],  R2 = [[-1, 0], [1, 1]],  R3 = [[-1, 0], [0, 1]]

with the fixed table

    swap                 -> R1
    [[1, 0], [n, 1]]     -> (R3 R2)^n        (n < 0: (R2 R3)^|n|)
    [[1, n], [0, 1]]     -> R1 (R3 R2)^n R1
    diag(-1, 1)          -> R3
    diag(1, -1)          -> R1 R3 R1

and then R1 -> alpha gamma, R2 -> alpha beta delta, R3 -> alpha beta.  The
resulting word is shortened using only relations that hold in the Goeritz group
itself (alpha is central, alpha^2 = gamma^2 = 1), never the homology kernel.
The output is certified by evaluating it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateBlockError, DeterminantError
from .homology import (
    Block2Matrix,
    HomologyVector,
    apply,
    gcd_pair,
    goeritz_form_from_block,
    is_degenerate,
)
from .words import GoeritzGenerator, GoeritzWord, epsilon_parity, evaluate

R_MATRICES = {
    "R1": Block2Matrix(0, 1, 1, 0),
    "R2": Block2Matrix(-1, 0, 1, 1),
    "R3": Block2Matrix(-1, 0, 0, 1),
}

R_SUBSTITUTION = {
    "R1": GoeritzWord.of(("alpha", 1), ("gamma", 1)),
    "R2": GoeritzWord.of(("alpha", 1), ("beta", 1), ("delta", 1)),
    "R3": GoeritzWord.of(("alpha", 1), ("beta", 1)),
}


@dataclass(frozen=True)
class FactorizationResult:
    word: GoeritzWord
    block: Block2Matrix
    certified: bool
    r_word: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "block": self.block.rows(),
            "word": self.word.to_json(),
            "word_ascii": self.word.ascii(),
            "r_word": list(self.r_word),
            "certified": self.certified,
        }


def bezout(k: int, l: int) -> tuple[int, int]:
    """(e1, e2) with e1*k + e2*l = 1 for coprime k, l.

    Among all solutions e1 has least magnitude, ties going to e1 >= 0.
    """
    if gcd_pair(k, l) != 1:
        raise ValueError(f"{k} and {l} are not coprime")
    if l == 0:
        return (k, 0)  # k = +-1
    # extended Euclid
    old_r, r = k, l
    old_s, s = 1, 0
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
    e1 = old_s * old_r  # old_r is +-1
    m = abs(l)
    e1 %= m
    if 2 * e1 > m:
        e1 -= m
    e2 = (1 - e1 * k) // l
    return (e1, e2)


def _column_frame(pair: tuple[int, int]) -> tuple[int, Block2Matrix]:
    """(d, M) with det M = 1 and M (d, 0)^T = pair."""
    a, x = pair
    d = gcd_pair(a, x)
    k, l = a // d, x // d
    e1, e2 = bezout(k, l)
    return d, Block2Matrix(k, -e2, l, e1)


def transporter_gl2(v: tuple[int, int], v2: tuple[int, int]) -> Block2Matrix | None:
    """Some G in GL(2, Z) with G v = v2, or None when gcd(v) != gcd(v2)."""
    if is_degenerate(tuple(v)) or is_degenerate(tuple(v2)):
        raise DegenerateBlockError(f"zero block in transporter request {v} -> {v2}")
    d, m = _column_frame(tuple(v))
    d2, m2 = _column_frame(tuple(v2))
    if d != d2:
        return None
    return m2 @ m.inverse()


def _e21(n: int) -> Block2Matrix:
    return Block2Matrix(1, 0, n, 1)


def _e12(n: int) -> Block2Matrix:
    return Block2Matrix(1, n, 0, 1)


def _r_word_of_move(kind: str, n: int = 0) -> list[str]:
    if kind == "swap":
        return ["R1"]
    if kind == "e21":
        return (["R3", "R2"] * n) if n >= 0 else (["R2", "R3"] * -n)
    if kind == "e12":
        return ["R1"] + _r_word_of_move("e21", n) + ["R1"]
    if kind == "diag":
        s1, s2 = n
        word = []
        if s1 == -1:
            word += ["R3"]
        if s2 == -1:
            word += ["R1", "R3", "R1"]
        return word
    raise ValueError(kind)


def elementary_moves(block: Block2Matrix) -> list[tuple[str, object]]:
    """Factor a unimodular block as a product of elementary moves (left to right)."""
    if not block.is_unimodular():
        raise DeterminantError(f"{block.rows()} has determinant {block.det}, not +-1")
    s, t, u, v = block.s, block.t, block.u, block.v
    left_ops: list[tuple[str, object]] = []  # applied on the left, in order
    if s == 0:
        s, t, u, v = u, v, s, t
        left_ops.append(("swap", 0))
    while u != 0:
        if s == 0:
            s, t, u, v = u, v, s, t
            left_ops.append(("swap", 0))
            continue
        q = u // s
        if q:
            u, v = u - q * s, v - q * t
            left_ops.append(("e21", -q))
        if u == 0:
            break
        q = s // u
        s, t = s - q * u, t - q * v
        left_ops.append(("e12", -q))
    # now block is [[s, t], [0, v]] with s, v = +-1
    factors: list[tuple[str, object]] = []
    for kind, n in left_ops:
        factors.append((kind, n if kind == "swap" else -n))
    if t * v:
        factors.append(("e12", t * v))
    factors.append(("diag", (s, v)))
    return factors


def _move_matrix(kind: str, n) -> Block2Matrix:
    if kind == "swap":
        return R_MATRICES["R1"]
    if kind == "e21":
        return _e21(n)
    if kind == "e12":
        return _e12(n)
    return Block2Matrix(n[0], 0, 0, n[1])


def r_word_of_block(block: Block2Matrix) -> tuple[str, ...]:
    word: list[str] = []
    for kind, n in elementary_moves(block):
        word += _r_word_of_move(kind, n)
    # R1, R2, R3 are involutions
    out: list[str] = []
    for r in word:
        if out and out[-1] == r:
            out.pop()
        else:
            out.append(r)
    return tuple(out)


def evaluate_r_word(r_word) -> Block2Matrix:
    result = Block2Matrix.identity()
    for r in r_word:
        result = result @ R_MATRICES[r]
    return result


def simplify_word(w: GoeritzWord) -> GoeritzWord:
    """Shorten using alpha central, alpha^2 = gamma^2 = epsilon^2 = 1.

    epsilon does not commute with beta in general, so alpha is only pulled to
    the front of epsilon-free words.
    """
    letters = list(w.letters)
    has_epsilon = any(g is GoeritzGenerator.epsilon for g, _ in letters)
    alpha_count = 0
    if not has_epsilon:
        alpha_count = sum(e for g, e in letters if g is GoeritzGenerator.alpha)
        letters = [(g, e) for g, e in letters if g is not GoeritzGenerator.alpha]
    order_two = {GoeritzGenerator.alpha, GoeritzGenerator.gamma, GoeritzGenerator.epsilon}
    while True:
        merged = GoeritzWord(tuple(letters)).letters
        reduced = tuple((g, e % 2) if g in order_two else (g, e) for g, e in merged)
        reduced = GoeritzWord(reduced).letters
        if reduced == tuple(letters):
            break
        letters = list(reduced)
    head = ((GoeritzGenerator.alpha, 1),) if alpha_count % 2 else ()
    return GoeritzWord(head + tuple(letters))


def substitute_r_word(r_word) -> GoeritzWord:
    word = GoeritzWord()
    for r in r_word:
        word = word * R_SUBSTITUTION[r]
    return simplify_word(word)


def certify(word: GoeritzWord, block: Block2Matrix) -> bool:
    return (
        epsilon_parity(word) == "even"
        and evaluate(word) == goeritz_form_from_block(block).matrix4()
    )


def factor_block(block: Block2Matrix) -> FactorizationResult:
    """Epsilon-free Goeritz word whose homology action is diag(C, (C^-1)^T)."""
    if not block.is_unimodular():
        raise DeterminantError(f"{block.rows()} has determinant {block.det}, not +-1")
    r_word = r_word_of_block(block)
    word = substitute_r_word(r_word)
    return FactorizationResult(word, block, certify(word, block), r_word)


def normalize_first_block(k: HomologyVector) -> tuple[GoeritzWord, HomologyVector]:
    """Word carrying k to a vector whose first block is (gcd(a, x), 0)."""
    if is_degenerate(k.first_block):
        raise DegenerateBlockError(f"first block of {k} is zero")
    d = gcd_pair(k.a, k.x)
    block = transporter_gl2(k.first_block, (d, 0))
    assert block is not None
    result = factor_block(block)
    image = apply(goeritz_form_from_block(block), k)
    if not result.certified or image.first_block != (d, 0):
        raise ArithmeticError(f"normalization of {k} failed to certify")
    return result.word, image
