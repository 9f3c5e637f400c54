"""Partitions, their boundary profiles, and the ambient boxes.

A partition is drawn as a Young diagram in matrix coordinates.  Walking its
outer boundary from lower left to upper right and writing -1 for every step up
and +1 for every step right produces a sign function on half-integers; the
step crossing the antidiagonal line through position a is the value at a.
Everything here works with that sign function exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .halfint import HalfInt, halfint_range


class InvalidProfileError(ValueError):
    """A sign sequence that is not the boundary profile of any partition."""


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing positive parts; () is the zero partition."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        p = self.parts
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)) or (p and p[-1] < 1):
            raise ValueError(f"not a partition: {p}")

    @staticmethod
    def of(*parts: int) -> "Partition":
        return Partition(tuple(x for x in parts if x))

    @staticmethod
    def parse(text: str) -> "Partition":
        """Parse a comma-separated literal; '0' (or '') is the zero partition."""
        s = text.strip()
        if s in ("0", ""):
            return Partition()
        return Partition.of(*(int(x) for x in s.split(",")))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """The i-th part, 1-indexed, zero beyond the last row."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def contains_cell(self, i: int, j: int) -> bool:
        """Is the cell (row i, column j), 1-indexed, inside the diagram?"""
        return 1 <= j <= self.part(i)

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def transpose(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for p in self.parts if p >= j)
                               for j in range(1, self.parts[0] + 1)))

    def contains(self, other: "Partition") -> bool:
        """Diagram containment: other fits inside self."""
        return all(other.part(i) <= self.part(i) for i in range(1, len(other) + 1))

    def diagonal_count(self) -> int:
        return sum(1 for i in range(1, len(self.parts) + 1) if self.part(i) >= i)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def phi(self, alpha: HalfInt) -> int:
        """Boundary profile: -1 exactly at the positions part(i) - i + 1/2."""
        # part(i) - i + 1/2 = alpha  <=>  part(i) - i = alpha - 1/2
        target = alpha.minus_half()
        for i, p in enumerate(self.parts, start=1):
            if p - i == target:
                return -1
        # rows below the last: p = 0, so alpha = 1/2 - i for i > len(parts)
        i = -target
        if i > len(self.parts) and i >= 1:
            return -1
        return +1

    def step_up_positions(self, lo: HalfInt, hi: HalfInt) -> list[HalfInt]:
        """Positions in [lo, hi] where the profile is -1, descending."""
        out = []
        i = 1
        while True:
            a = HalfInt(2 * (self.part(i) - i) + 1)
            if a < lo and i > len(self.parts):
                break
            if lo <= a <= hi:
                out.append(a)
            i += 1
        out.sort(reverse=True)
        return out

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "0"

    def __repr__(self) -> str:
        return f"Partition{self.parts!r}"


@dataclass(frozen=True)
class PhiProfile:
    """The boundary profile restricted to a window [lo, hi] of half-integers."""

    lo: HalfInt
    hi: HalfInt
    values: tuple[int, ...]

    def __post_init__(self):
        n = (self.hi.twice - self.lo.twice) // 2 + 1
        if len(self.values) != n:
            raise InvalidProfileError("window and value count disagree")
        if any(v not in (-1, 1) for v in self.values):
            raise InvalidProfileError("profile values must be +1 or -1")

    def positions(self) -> list[HalfInt]:
        return halfint_range(self.lo, self.hi)

    def value_at(self, alpha: HalfInt) -> int:
        if not (self.lo <= alpha <= self.hi):
            raise KeyError(f"{alpha} outside profile window")
        return self.values[(alpha.twice - self.lo.twice) // 2]


def phi(lam: Partition, alpha: HalfInt) -> int:
    """Boundary profile of lam at alpha."""
    return lam.phi(alpha)


def phi_profile(lam: Partition, lo: HalfInt, hi: HalfInt) -> PhiProfile:
    """Restrict the boundary profile of lam to [lo, hi].

    The window must show the whole shape: everything below lo is a step up and
    everything above hi a step right, so the restriction loses nothing.
    """
    if lam.parts and hi < HalfInt(2 * lam.parts[0] - 1):
        raise ValueError("window too short on the right for this partition")
    if lo > HalfInt(-2 * len(lam.parts) - 1):
        raise ValueError("window too short on the left for this partition")
    return PhiProfile(lo, hi, tuple(lam.phi(a) for a in halfint_range(lo, hi)))


def partition_from_phi(profile: PhiProfile) -> Partition:
    """Invert phi_profile.  Raises InvalidProfileError on malformed input.

    Validity: extending by -1 below the window and +1 above must balance,
    which pins the number of -1 values in the window to 1/2 - lo.
    """
    need = (1 - profile.lo.twice) // 2
    ups = [a for a in profile.positions() if profile.value_at(a) == -1]
    if need < 0 or len(ups) != need:
        raise InvalidProfileError(
            f"profile needs exactly {need} step-up positions in window, found {len(ups)}")
    ups.sort(reverse=True)
    parts = []
    for i, a in enumerate(ups, start=1):
        p = a.minus_half() + i
        if p < 0:
            raise InvalidProfileError("profile does not close up to a diagram")
        parts.append(p)
    while parts and parts[-1] == 0:
        parts.pop()
    return Partition(tuple(parts))


@dataclass(frozen=True)
class Box:
    """The ambient shape: 'A' is a k-by-l rectangle, 'D' a k-by-k symmetric one."""

    flavor: str
    k: int
    l: int = 0

    def __post_init__(self):
        if self.flavor not in ("A", "D"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.flavor == "D" and self.l not in (0, self.k):
            raise ValueError("a D box is square")
        if self.flavor == "D":
            object.__setattr__(self, "l", self.k)
        if self.k < 0 or self.l < 0:
            raise ValueError("box dimensions must be nonnegative")

    @staticmethod
    def parse(text: str) -> "Box":
        """Parse 'A{k}x{l}' or 'D{k}'."""
        s = text.strip().upper()
        if s.startswith("A") and "X" in s:
            k, l = s[1:].split("X")
            return Box("A", int(k), int(l))
        if s.startswith("D"):
            return Box("D", int(s[1:]))
        raise ValueError(f"cannot parse box literal {text!r}")

    def contains(self, lam: Partition) -> bool:
        if len(lam) > self.k or (lam.parts and lam.parts[0] > self.l):
            return False
        if self.flavor == "D":
            return lam.is_symmetric() and lam.diagonal_count() % 2 == 0
        return True

    def window(self) -> tuple[HalfInt, HalfInt]:
        """Default half-integer window wide enough for box pairs and parents."""
        r = self.k + self.l + 2 if self.flavor == "A" else 2 * self.k + 2
        return (HalfInt(-2 * r + 1), HalfInt(2 * r - 1))

    def pair_in_box(self, alpha: HalfInt, beta: HalfInt) -> bool:
        """Does the pair survive the box restriction?"""
        if self.flavor == "A":
            return alpha.twice > -2 * self.k and beta.twice < 2 * self.l
        return beta.twice < 2 * self.k

    def cell_dim(self, lam: Partition) -> int:
        """Dimension of the cell indexed by lam inside this box."""
        if not self.contains(lam):
            raise ValueError(f"{lam} does not fit in {self}")
        if self.flavor == "A":
            return lam.size
        return (lam.size - lam.diagonal_count()) // 2

    def __str__(self) -> str:
        return f"A{self.k}x{self.l}" if self.flavor == "A" else f"D{self.k}"


def _rect_partitions(k: int, l: int) -> Iterator[Partition]:
    def rec(row: int, maxpart: int, acc: list[int]) -> Iterator[Partition]:
        yield Partition.of(*acc)
        if row > k:
            return
        for p in range(1, maxpart + 1):
            acc.append(p)
            yield from rec(row + 1, p, acc)
            acc.pop()
    yield from rec(1, l, [])


@lru_cache(maxsize=None)
def enumerate_box(box: Box) -> tuple[Partition, ...]:
    """All partitions fitting in the box, sorted by (size, parts)."""
    if box.flavor == "A":
        out = set(_rect_partitions(box.k, box.l))
    else:
        out = {lam for lam in _rect_partitions(box.k, box.k) if box.contains(lam)}
    return tuple(sorted(out, key=lambda m: (m.size, m.parts)))


def cell_dim(lam: Partition, box: Box) -> int:
    return box.cell_dim(lam)
