"""Brute-force orbit enumeration over a tiny finite field.

The triangular group acting on the fiber is generated by scalar row and
column scalings together with single row and column additions (downward and
rightward on the primal fiber; upward and leftward, with anything landing in
the diagram discarded, on the dual one).  At desk scale the whole orbit
partition is computable by breadth-first search and cross-checks the 0-1
classification exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .orbits import Region, ZeroOneMatrix, corner_counts, make_matrix
from .partitions import Box, Partition

Vector = tuple[int, ...]


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitPartition:
    region: Region
    field: int
    dual: bool
    orbits: tuple[frozenset[Vector], ...]
    cells: tuple[tuple[int, int], ...]

    def orbit_count(self) -> int:
        return len(self.orbits)


def _generators(region: Region, field: int, dual: bool):
    """All one-step moves as functions on support vectors."""
    cells = sorted(region.cells())
    index = {c: i for i, c in enumerate(cells)}
    k, l = region.box.k, region.box.l
    moves = []

    def add_row(src: int, dst: int, c: int):
        # entries pushed into the diagram are discarded (dual action only;
        # on the primal fiber downward moves never leave the region)
        def f(v: Vector) -> Vector:
            out = list(v)
            for (i, j), pos in index.items():
                if i == src and v[pos]:
                    tgt = (dst, j)
                    if tgt in index:
                        out[index[tgt]] = (out[index[tgt]] + c * v[pos]) % field
            return tuple(out)
        return f

    def add_col(src: int, dst: int, c: int):
        def f(v: Vector) -> Vector:
            out = list(v)
            for (i, j), pos in index.items():
                if j == src and v[pos]:
                    tgt = (i, dst)
                    if tgt in index:
                        out[index[tgt]] = (out[index[tgt]] + c * v[pos]) % field
            return tuple(out)
        return f

    def scale_line(row: bool, which: int, c: int):
        def f(v: Vector) -> Vector:
            out = list(v)
            for (i, j), pos in index.items():
                if (i if row else j) == which:
                    out[pos] = (out[pos] * c) % field
            return tuple(out)
        return f

    units = [c for c in range(1, field)]
    for c in units:
        if c != 1:
            for i in range(1, k + 1):
                moves.append(scale_line(True, i, c))
            for j in range(1, l + 1):
                moves.append(scale_line(False, j, c))
    for c in units:
        for a in range(1, k + 1):
            for b in range(1, k + 1):
                if (a < b and not dual) or (a > b and dual):
                    moves.append(add_row(a, b, c))
        for a in range(1, l + 1):
            for b in range(1, l + 1):
                if (a < b and not dual) or (a > b and dual):
                    moves.append(add_col(a, b, c))
    return cells, moves


def ff_orbit_oracle(lam: Partition, box: Box, field: int = 2,
                    dual: bool = False) -> OrbitPartition:
    """Partition the fiber over a finite field into group orbits by BFS."""
    if box.flavor != "A":
        raise OracleSizeError("the brute-force oracle runs on rectangular boxes only")
    if field not in (2, 3):
        raise OracleSizeError("field size must be 2 or 3")
    region = Region(lam, box)
    cells, moves = _generators(region, field, dual)
    if len(cells) > 9:
        raise OracleSizeError(f"region has {len(cells)} cells; the guard is 9")
    seen: set[Vector] = set()
    orbits = []
    total = field ** len(cells)
    for code in range(total):
        v = []
        c = code
        for _ in cells:
            v.append(c % field)
            c //= field
        v = tuple(v)
        if v in seen:
            continue
        frontier = [v]
        orbit = {v}
        while frontier:
            x = frontier.pop()
            for mv in moves:
                y = mv(x)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        orbits.append(frozenset(orbit))
    return OrbitPartition(region, field, dual, tuple(orbits), tuple(cells))


def zero_one_members(part: OrbitPartition) -> list[list[ZeroOneMatrix]]:
    """The 0-1 matrices inside each orbit (in region support form)."""
    out = []
    for orbit in part.orbits:
        found = []
        for v in orbit:
            if all(x in (0, 1) for x in v):
                supp = {c for c, x in zip(part.cells, v) if x == 1}
                try:
                    found.append(make_matrix(part.region, supp))
                except ValueError:
                    continue
        out.append(found)
    return out


def rank_vectors_constant(part: OrbitPartition) -> bool:
    """Corner-rectangle rank vectors are constant on every orbit."""
    from fractions import Fraction
    k, l = part.region.box.k, part.region.box.l
    idx = {c: i for i, c in enumerate(part.cells)}

    def ranks(v: Vector) -> tuple[int, ...]:
        out = []
        for p in range(1, k + 1):
            for q in range(1, l + 1):
                if part.dual:
                    # invariance only holds for rectangles avoiding the diagram
                    if part.region.lam.contains_cell(p, q):
                        continue
                    rows = list(range(p, k + 1))
                    colsel = list(range(q, l + 1))
                else:
                    rows = list(range(1, p + 1))
                    colsel = list(range(1, q + 1))
                m = [[Fraction(v[idx[(i, j)]]) if (i, j) in idx else Fraction(0)
                      for j in colsel] for i in rows]
                out.append(_rank_mod(m, part.field))
        return tuple(out)

    reprs = set()
    for orbit in part.orbits:
        vals = {ranks(v) for v in orbit}
        if len(vals) != 1:
            return False
        reprs.add(next(iter(vals)))
    # the rank vector must also separate distinct orbits
    return len(reprs) == len(part.orbits)


def _rank_mod(rows: list[list], p: int) -> int:
    """Rank of a small matrix over the p-element field."""
    m = [[int(x) % p for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(m)) if m[r][col] % p), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], -1, p)
        m[row] = [(x * inv) % p for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank
