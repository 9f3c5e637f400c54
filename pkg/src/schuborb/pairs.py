"""Matched pairs on the boundary profile, the moves they generate, and diamonds.

A -1 at alpha opens a bracket and a +1 at beta closes one; matched brackets
are the pairs.  They are nested, so the pairs in any window form a forest
under interval containment.  Flipping the profile at a pair (at the pair and
its mirror in the symmetric flavor) adds a ribbon to the diagram; these moves
generate the arrow graph on the partitions in a box.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .halfint import HalfInt, halfint_range
from .partitions import Box, Partition


class InvalidMoveError(ValueError):
    """The given pair is not a pair of the given partition."""


class NotSymmetricError(ValueError):
    """Flavor D needs a symmetric diagram with evenly many diagonal cells."""


class WindowError(ValueError):
    """The requested datum lies outside the materialized window."""


@dataclass(frozen=True, order=True)
class LambdaPair:
    alpha: HalfInt
    beta: HalfInt
    flavor: str = "A"

    def __post_init__(self):
        if not self.alpha < self.beta:
            raise ValueError(f"pair needs alpha < beta, got ({self.alpha},{self.beta})")
        if self.flavor not in ("A", "D"):
            raise ValueError(f"unknown flavor {self.flavor!r}")

    @property
    def width(self) -> int:
        return self.beta - self.alpha

    def interval_contains(self, other: "LambdaPair") -> bool:
        return self.alpha <= other.alpha and other.beta <= self.beta

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta})"


@dataclass(frozen=True)
class PairForest:
    """Pairs of one partition inside a window, with parent links and box flags."""

    owner: Partition
    flavor: str
    lo: HalfInt
    hi: HalfInt
    pairs: tuple[LambdaPair, ...]
    box: Optional[Box] = None

    def parent_of(self, pair: LambdaPair) -> Optional[LambdaPair]:
        """Smallest materialized pair strictly containing the given one."""
        best = None
        for q in self.pairs:
            if q != pair and q.interval_contains(pair):
                if best is None or best.interval_contains(q):
                    best = q
        return best

    def pair_containing(self, alpha: HalfInt) -> Optional[LambdaPair]:
        """The unique pair in which alpha (or -alpha in flavor D) appears."""
        for p in self.pairs:
            if alpha in (p.alpha, p.beta):
                return p
            if self.flavor == "D" and -alpha in (p.alpha, p.beta):
                return p
        return None

    def in_box(self, box: Optional[Box] = None) -> tuple[LambdaPair, ...]:
        box = box or self.box
        if box is None:
            raise ValueError("no box given")
        return tuple(p for p in self.pairs if box.pair_in_box(p.alpha, p.beta))


def default_window(lam: Partition, flavor: str = "A") -> tuple[HalfInt, HalfInt]:
    """Tight window showing every feature of the diagram boundary.

    Flavor D doubles the reach: its pairs splice two mirror-symmetric pairs,
    so they extend past the frame of the diagram.
    """
    r = max(len(lam) + 1, (lam.parts[0] + 1) if lam.parts else 1)
    if flavor == "D":
        r *= 2
    return (HalfInt(-2 * r + 1), HalfInt(2 * r - 1))


def _matched_pairs(lam: Partition, lo: HalfInt, hi: HalfInt, flavor: str) -> list[LambdaPair]:
    """Bracket-match the profile on [lo, hi]; drop pairs leaving the window."""
    out = []
    stack: list[HalfInt] = []
    for a in halfint_range(lo, hi):
        if lam.phi(a) == -1:
            stack.append(a)
        elif stack:
            out.append(LambdaPair(stack.pop(), a, flavor))
    return out


def lambda_pairs(lam: Partition, window: Optional[tuple[HalfInt, HalfInt]] = None,
                 box: Optional[Box] = None) -> PairForest:
    """All pairs of lam with both entries in the window (flavor A)."""
    if window is None:
        window = box.window() if box is not None else default_window(lam, "A")
    lo, hi = window
    pairs = sorted(_matched_pairs(lam, lo, hi, "A"), key=lambda p: (p.width, p.alpha))
    return PairForest(lam, "A", lo, hi, tuple(pairs), box)


def lambda_pairs_d(lam: Partition, window: Optional[tuple[HalfInt, HalfInt]] = None,
                   box: Optional[Box] = None) -> PairForest:
    """Pairs of a symmetric partition in flavor D.

    Pairs with two positive entries are kept as is; the symmetric pairs
    (a, -a) are chained from the inside out and consumed two at a time,
    the first contributing its lower entry and the second its upper one.
    """
    if not lam.is_symmetric() or lam.diagonal_count() % 2:
        raise NotSymmetricError(f"{lam} is not a flavor-D shape")
    if window is None:
        window = box.window() if box is not None else default_window(lam, "D")
    lo, hi = window
    plain = _matched_pairs(lam, lo, hi, "D")
    out = [p for p in plain if p.alpha.twice > 0]
    chain = sorted((p for p in plain if p.beta == -p.alpha), key=lambda p: p.width)
    for i in range(0, len(chain) - 1, 2):
        out.append(LambdaPair(chain[i].alpha, chain[i + 1].beta, "D"))
    out.sort(key=lambda p: (p.width, p.alpha))
    return PairForest(lam, "D", lo, hi, tuple(out), box)


@lru_cache(maxsize=None)
def pair_forest(lam: Partition, flavor: str,
                window: Optional[tuple[HalfInt, HalfInt]] = None,
                box: Optional[Box] = None) -> PairForest:
    if flavor == "A":
        return lambda_pairs(lam, window, box)
    return lambda_pairs_d(lam, window, box)


def _flip_positions(lam: Partition, flips: set[HalfInt], depth_hint: int) -> Partition:
    """Toggle the step-up set of lam at the given positions and rebuild."""
    depth = len(lam) + depth_hint + 4
    lo = HalfInt(-2 * depth - 1)
    hi_val = max([lam.parts[0] if lam.parts else 0] + [f.plus_half() for f in flips])
    hi = HalfInt(2 * hi_val + 2 * depth + 1)
    ups = set(lam.step_up_positions(lo, hi))
    for f in flips:
        if f in ups:
            ups.remove(f)
        else:
            ups.add(f)
    parts = []
    for i, a in enumerate(sorted(ups, reverse=True), start=1):
        p = a.minus_half() + i
        if p < 0 or (parts and p > parts[-1]):
            raise InvalidMoveError("flips do not produce a partition")
        parts.append(p)
    while parts and parts[-1] == 0:
        parts.pop()
    return Partition(tuple(parts))


def apply_move(lam: Partition, pair: LambdaPair, check: bool = True) -> Partition:
    """Flip the profile at the pair (and its mirror in flavor D)."""
    if check:
        forest = pair_forest(lam, pair.flavor,
                             window=(pair.alpha + (-2), pair.beta + 2))
        if LambdaPair(pair.alpha, pair.beta, pair.flavor) not in forest.pairs:
            raise InvalidMoveError(f"{pair} is not a pair of {lam}")
    flips = {pair.alpha, pair.beta}
    if pair.flavor == "D":
        flips |= {-pair.alpha, -pair.beta}
    result = _flip_positions(lam, flips, depth_hint=pair.width + 2)
    if pair.flavor == "D" and (not result.is_symmetric() or result.diagonal_count() % 2):
        raise InvalidMoveError(f"move {pair} leaves the symmetric family")
    return result


@lru_cache(maxsize=None)
def arrows_from(lam: Partition, box: Box) -> tuple[tuple[LambdaPair, Partition], ...]:
    """All moves from lam staying inside the box, as (pair, target) entries."""
    if not box.contains(lam):
        raise ValueError(f"{lam} not in {box}")
    forest = pair_forest(lam, box.flavor, box=box)
    out = []
    for p in forest.in_box():
        out.append((p, apply_move(lam, p, check=False)))
    return tuple(out)


@lru_cache(maxsize=None)
def _up_neighbors(lam: Partition, flavor: str, max_size: int) -> tuple[tuple[LambdaPair, Partition], ...]:
    stretch = max_size - lam.size
    if stretch < 0:
        return []
    lo = HalfInt(-2 * (len(lam) + stretch + 2) - 1)
    hi = HalfInt(2 * ((lam.parts[0] if lam.parts else 0) + stretch + 2) + 1)
    forest = pair_forest(lam, flavor, window=(lo, hi))
    out = []
    for p in forest.pairs:
        target = apply_move(lam, p, check=False)
        if target.size <= max_size:
            out.append((p, target))
    return tuple(out)


@lru_cache(maxsize=None)
def _down_neighbors(lam: Partition, flavor: str) -> tuple[tuple[LambdaPair, Partition], ...]:
    """All source partitions moving onto lam, found by reversing flips."""
    lo = HalfInt(-2 * (len(lam) + lam.size + 3) - 1)
    hi = HalfInt(2 * ((lam.parts[0] if lam.parts else 0) + lam.size + 3) + 1)
    out = []
    positions = halfint_range(lo, hi)
    downs = [a for a in positions if lam.phi(a) == -1]
    ups = [a for a in positions if lam.phi(a) == +1]
    for beta in downs:
        for alpha in ups:
            if not alpha < beta:
                continue
            if flavor == "D" and (lam.phi(-alpha) != -1 or lam.phi(-beta) != +1):
                continue
            flips = {alpha, beta} if flavor == "A" else {alpha, beta, -alpha, -beta}
            if flavor == "D" and len(flips) != 4:
                continue
            try:
                source = _flip_positions(lam, flips, depth_hint=beta - alpha + 2)
            except InvalidMoveError:
                continue
            pair = LambdaPair(alpha, beta, flavor)
            try:
                if apply_move(source, pair) == lam:
                    out.append((pair, source))
            except InvalidMoveError:
                continue
    return tuple(out)


def neighbors(lam: Partition, flavor: str, max_size: int) -> set[Partition]:
    """Partitions one move away from lam (either direction), size-capped."""
    ups = {t for _, t in _up_neighbors(lam, flavor, max_size)}
    dns = {s for _, s in _down_neighbors(lam, flavor)}
    return ups | dns


@dataclass(frozen=True)
class Diamond:
    """A four-cycle of moves among four distinct partitions."""

    nodes: tuple[Partition, Partition, Partition, Partition]

    def __post_init__(self):
        if len(set(self.nodes)) != 4:
            raise ValueError("diamond nodes must be distinct")

    def __str__(self) -> str:
        return "{" + ", ".join(str(n) for n in self.nodes) + "}"


def are_adjacent(a: Partition, b: Partition, flavor: str) -> bool:
    if a == b:
        return False
    big, small = (a, b) if a.size > b.size else (b, a)
    return big in {t for _, t in _up_neighbors(small, flavor, big.size)}


def complete_diamond(lam: Partition, lam1: Partition, lam2: Partition,
                     flavor: str = "A") -> list[Partition]:
    """All nu != lam with lam1 <-> nu <-> lam2, given lam <-> lam1, lam <-> lam2.

    Returns the empty list when no completion exists, which is a legitimate
    outcome for chains in flavor D.
    """
    if lam1 == lam2:
        raise ValueError("degenerate input: the two neighbors coincide")
    for other in (lam1, lam2):
        if not are_adjacent(lam, other, flavor):
            raise ValueError(f"{other} is not adjacent to {lam}")
    cap = lam.size + lam1.size + lam2.size + 8
    n1 = neighbors(lam1, flavor, cap)
    n2 = neighbors(lam2, flavor, cap)
    out = sorted((n1 & n2) - {lam}, key=lambda m: (m.size, m.parts))
    return out
