"""Homology of the genus-2 Heegaard surface: vectors, blocks and Goeritz-form matrices.

A class in H_1(F; Z) is written (a, x, b, y) in the standard basis.  The pair
(a, x) is the "first block" and (b, y) the "second block".  Every element of the
(non-extended) Goeritz group acts as diag(C, (C^-1)^T) for some C in GL(2, Z);
the handlebody swap acts by the coordinate permutation (a, x, b, y) -> (y, b, x, a).

Python integers are unbounded, so nothing here can wrap.  Inputs that are not
exact integers are rejected with :class:`ArithmeticDomainError`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import ArithmeticDomainError, DeterminantError


def _check_int(name: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ArithmeticDomainError(f"{name} must be an exact integer, got {value!r}")
    return value


@dataclass(frozen=True)
class HomologyVector:
    a: int
    x: int
    b: int
    y: int

    def __post_init__(self) -> None:
        for name in ("a", "x", "b", "y"):
            _check_int(name, getattr(self, name))

    @classmethod
    def of(cls, values: Iterable[int]) -> "HomologyVector":
        vals = list(values)
        if len(vals) != 4:
            raise ArithmeticDomainError(f"a homology vector has 4 coordinates, got {len(vals)}")
        return cls(*vals)

    @property
    def first_block(self) -> tuple[int, int]:
        return (self.a, self.x)

    @property
    def second_block(self) -> tuple[int, int]:
        return (self.b, self.y)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.x, self.b, self.y)

    def to_json(self) -> list[int]:
        return list(self.as_tuple())

    def is_zero(self) -> bool:
        return self.as_tuple() == (0, 0, 0, 0)

    def __iter__(self):
        return iter(self.as_tuple())

    def __str__(self) -> str:
        return "({}, {}, {}, {})".format(*self.as_tuple())


@dataclass(frozen=True)
class Block2Matrix:
    """Row-major 2x2 integer matrix [[s, t], [u, v]]."""

    s: int
    t: int
    u: int
    v: int

    def __post_init__(self) -> None:
        for name in ("s", "t", "u", "v"):
            _check_int(name, getattr(self, name))

    @classmethod
    def from_rows(cls, rows) -> "Block2Matrix":
        try:
            (s, t), (u, v) = rows
        except (TypeError, ValueError):
            raise ArithmeticDomainError(f"expected [[s, t], [u, v]], got {rows!r}") from None
        return cls(s, t, u, v)

    @classmethod
    def identity(cls) -> "Block2Matrix":
        return cls(1, 0, 0, 1)

    def rows(self) -> list[list[int]]:
        return [[self.s, self.t], [self.u, self.v]]

    to_json = rows

    @property
    def det(self) -> int:
        return self.s * self.v - self.t * self.u

    def is_unimodular(self) -> bool:
        return self.det in (1, -1)

    def __matmul__(self, other: "Block2Matrix") -> "Block2Matrix":
        return Block2Matrix(
            self.s * other.s + self.t * other.u,
            self.s * other.t + self.t * other.v,
            self.u * other.s + self.v * other.u,
            self.u * other.t + self.v * other.v,
        )

    def apply(self, pair: tuple[int, int]) -> tuple[int, int]:
        p, q = pair
        return (self.s * p + self.t * q, self.u * p + self.v * q)

    def transpose(self) -> "Block2Matrix":
        return Block2Matrix(self.s, self.u, self.t, self.v)

    def adjugate(self) -> "Block2Matrix":
        return Block2Matrix(self.v, -self.t, -self.u, self.s)

    def inverse(self) -> "Block2Matrix":
        det = self.det
        if det not in (1, -1):
            raise DeterminantError(f"{self.rows()} has determinant {det}, not +-1")
        adj = self.adjugate()
        # det is +-1, so dividing by it is multiplying by it
        return Block2Matrix(adj.s * det, adj.t * det, adj.u * det, adj.v * det)

    def inverse_transpose(self) -> "Block2Matrix":
        return self.inverse().transpose()


@dataclass(frozen=True)
class GoeritzMatrix:
    """Block-diagonal diag(C, D) with D = (C^-1)^T."""

    first_block: Block2Matrix
    second_block: Block2Matrix

    def __post_init__(self) -> None:
        if not self.first_block.is_unimodular():
            raise DeterminantError(
                f"first block {self.first_block.rows()} has determinant {self.first_block.det}"
            )
        if self.first_block.transpose() @ self.second_block != Block2Matrix.identity():
            raise DeterminantError("second block is not the inverse transpose of the first")

    def matrix4(self) -> tuple[tuple[int, ...], ...]:
        c, d = self.first_block, self.second_block
        return (
            (c.s, c.t, 0, 0),
            (c.u, c.v, 0, 0),
            (0, 0, d.s, d.t),
            (0, 0, d.u, d.v),
        )


class TwistCurve(str, enum.Enum):
    """The five curves whose Dehn twists generate the mapping class group of F."""

    c1 = "c1"
    c2 = "c2"
    c3 = "c3"
    c4 = "c4"
    c5 = "c5"


@dataclass(frozen=True)
class SurfaceSlope:
    value: int

    @classmethod
    def of(cls, k: HomologyVector) -> "SurfaceSlope":
        return cls(split_product(k))


def split_product(k: HomologyVector) -> int:
    """ab + xy, the dot product of the two blocks.  Equals the surface slope."""
    return k.a * k.b + k.x * k.y


def symplectic_pairing(k1: HomologyVector, k2: HomologyVector) -> int:
    """Algebraic intersection number in the symplectic basis {a, b, x, y}."""
    return (k1.a * k2.b - k2.a * k1.b) + (k1.x * k2.y - k2.x * k1.y)


def epsilon_star(k: HomologyVector) -> HomologyVector:
    return HomologyVector(k.y, k.b, k.x, k.a)


def goeritz_form_from_block(block: Block2Matrix) -> GoeritzMatrix:
    if not block.is_unimodular():
        raise DeterminantError(f"{block.rows()} has determinant {block.det}, not +-1")
    return GoeritzMatrix(block, block.inverse_transpose())


def apply(matrix: GoeritzMatrix, k: HomologyVector) -> HomologyVector:
    a, x = matrix.first_block.apply(k.first_block)
    b, y = matrix.second_block.apply(k.second_block)
    return HomologyVector(a, x, b, y)


def dehn_twist(k: HomologyVector, curve: TwistCurve | str) -> HomologyVector:
    """Image of [K] under a positive Dehn twist about one of c1..c5.

    The split product changes by -b^2, +a^2, -(b-y)^2, +x^2, -y^2 respectively.
    """
    curve = TwistCurve(curve)
    a, x, b, y = k.as_tuple()
    if curve is TwistCurve.c1:
        return HomologyVector(a - b, x, b, y)
    if curve is TwistCurve.c2:
        return HomologyVector(a, x, b + a, y)
    if curve is TwistCurve.c3:
        w = y - b
        return HomologyVector(a + w, x - w, b, y)
    if curve is TwistCurve.c4:
        return HomologyVector(a, x, b, y + x)
    return HomologyVector(a, x - y, b, y)


def twist_slope_delta(k: HomologyVector, curve: TwistCurve | str) -> int:
    """Predicted change of surface slope for a twist, from linking numbers alone."""
    curve = TwistCurve(curve)
    a, x, b, y = k.as_tuple()
    return {
        TwistCurve.c1: -(b * b),
        TwistCurve.c2: a * a,
        TwistCurve.c3: -((b - y) ** 2),
        TwistCurve.c4: x * x,
        TwistCurve.c5: -(y * y),
    }[curve]


def gcd_pair(p: int, q: int) -> int:
    """Nonnegative gcd.  gcd(0, 0) is 0; callers should test :func:`is_degenerate`."""
    return math.gcd(_check_int("p", p), _check_int("q", q))


def is_degenerate(pair: tuple[int, int]) -> bool:
    return pair == (0, 0)
