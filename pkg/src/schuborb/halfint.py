"""Exact half-integers: elements of Z + 1/2, stored as their (odd) double."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class HalfInt:
    """A half-integer a/2 with a odd, kept exact via the integer `twice` = 2*value."""

    twice: int

    def __post_init__(self):
        if self.twice % 2 == 0:
            raise ValueError(f"not a half-integer: {self.twice}/2")

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __add__(self, n: int) -> "HalfInt":
        # shift by a whole integer
        return HalfInt(self.twice + 2 * n)

    def __sub__(self, other: "HalfInt") -> int:
        # the difference of two half-integers is a whole integer
        d = self.twice - other.twice
        return d // 2

    def plus_half(self) -> int:
        """The integer value + 1/2."""
        return (self.twice + 1) // 2

    def minus_half(self) -> int:
        """The integer value - 1/2."""
        return (self.twice - 1) // 2

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.twice})"


def half(twice: int) -> HalfInt:
    """Shorthand constructor from the doubled value."""
    return HalfInt(twice)


def parse_halfint(text: str) -> HalfInt:
    """Parse a literal like '-3/2' (whole integers are rejected)."""
    s = text.strip()
    if s.endswith("/2"):
        return HalfInt(int(s[:-2]))
    raise ValueError(f"expected a half-integer literal 'n/2', got {text!r}")


def halfint_range(lo: HalfInt, hi: HalfInt) -> list[HalfInt]:
    """All half-integers from lo to hi inclusive, ascending."""
    return [HalfInt(t) for t in range(lo.twice, hi.twice + 1, 2)]


def edge_sign(beta: HalfInt) -> int:
    """(-1)**(beta + 1/2), the sign attached to the upper entry of a pair."""
    return -1 if beta.plus_half() % 2 else 1
