"""Borel orbit combinatorics on the fiber over a torus-fixed point.

Orbits are represented by 0-1 matrices supported on the region R: the box
rectangle minus the diagram (flavor D: minus the main diagonal too, with
supports mirror-symmetric and only the upper triangle stored).  The reach
set tau gives dimensions, a greedy reconstruction inverts tau, completion to
a window permutation gives length and a rank-matrix order, and row swaps give
the covering degenerations.  Everything is exact and value-semantic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .halfint import HalfInt
from .partitions import Box, Partition
from .pairs import (LambdaPair, apply_move, arrows_from, complete_diamond,
                    pair_forest)

Cell = tuple[int, int]


class ReconstructionMismatchError(ValueError):
    """The given cell set is not the reach set of any 0-1 matrix."""


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Region:
    """Support region R for the fiber over the point indexed by lam."""

    lam: Partition
    box: Box

    def __post_init__(self):
        if not self.box.contains(self.lam):
            raise DomainError(f"{self.lam} not in {self.box}")

    @property
    def flavor(self) -> str:
        return self.box.flavor

    @lru_cache(maxsize=None)
    def cells(self) -> frozenset[Cell]:
        out = set()
        for i in range(1, self.box.k + 1):
            for j in range(1, self.box.l + 1):
                if self.lam.contains_cell(i, j):
                    continue
                if self.flavor == "D" and i == j:
                    continue
                out.add((i, j))
        return frozenset(out)

    def __str__(self) -> str:
        return f"R({self.lam}; {self.box})"


@dataclass(frozen=True)
class ZeroOneMatrix:
    """Orbit representative: at most one support cell per row and column.

    Flavor D stores only the cells above the diagonal; the mirrored negative
    entries are implied, never stored.
    """

    region: Region
    support: frozenset[Cell]

    def __post_init__(self):
        cells = self.region.cells()
        full = self.full_support()
        if not full <= cells:
            raise ValueError("support leaves the region")
        rows = [c[0] for c in full]
        cols = [c[1] for c in full]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("more than one support cell in a row or column")
        if self.region.flavor == "D" and any(i >= j for i, j in self.support):
            raise ValueError("flavor D stores upper-triangle support only")

    def full_support(self) -> frozenset[Cell]:
        if self.region.flavor == "A":
            return self.support
        return self.support | {(j, i) for i, j in self.support}

    def key(self) -> tuple[Cell, ...]:
        return tuple(sorted(self.support))

    def __str__(self) -> str:
        body = ",".join(f"({i},{j})" for i, j in self.key()) or "-"
        return f"[{body}]"


def make_matrix(region: Region, cells: Iterator[Cell] | frozenset[Cell]) -> ZeroOneMatrix:
    """Build a matrix from any support iterable, canonicalizing flavor D."""
    cs = set(cells)
    if region.flavor == "D":
        cs = {(min(i, j), max(i, j)) for i, j in cs}
    return ZeroOneMatrix(region, frozenset(cs))


def zero_matrix(region: Region) -> ZeroOneMatrix:
    return ZeroOneMatrix(region, frozenset())


def all_zero_one_matrices(region: Region) -> list[ZeroOneMatrix]:
    """Every 0-1 matrix on the region, flavor-aware."""
    cells = sorted(region.cells())
    out: list[ZeroOneMatrix] = []
    if region.flavor == "A":
        rows = sorted({i for i, _ in cells})

        def rec(idx: int, used_cols: set[int], acc: list[Cell]):
            if idx == len(rows):
                out.append(ZeroOneMatrix(region, frozenset(acc)))
                return
            i = rows[idx]
            rec(idx + 1, used_cols, acc)
            for (r, c) in cells:
                if r == i and c not in used_cols:
                    acc.append((r, c))
                    rec(idx + 1, used_cols | {c}, acc)
                    acc.pop()
        rec(0, set(), [])
    else:
        upper = [c for c in cells if c[0] < c[1]]
        idxs = sorted({i for c in upper for i in c})

        def rec_d(pos: int, used: set[int], acc: list[Cell]):
            if pos == len(idxs):
                out.append(ZeroOneMatrix(region, frozenset(acc)))
                return
            i = idxs[pos]
            if i in used:
                rec_d(pos + 1, used, acc)
                return
            rec_d(pos + 1, used | {i}, acc)
            for (a, b) in upper:
                if a == i and b not in used and b > i:
                    acc.append((a, b))
                    rec_d(pos + 1, used | {a, b}, acc)
                    acc.pop()
        rec_d(0, set(), [])
    uniq = {m.key(): m for m in out}
    return [uniq[k] for k in sorted(uniq)]


# --- the coordinate map between pairs and cells ---------------------------

def w_map(lam: Partition, alpha: HalfInt, beta: HalfInt) -> Cell:
    """Grid coordinates of a (step-up, step-right) position pair."""
    if lam.phi(alpha) != -1 or lam.phi(beta) != +1:
        raise DomainError(f"w needs phi({alpha})=-1 and phi({beta})=+1 on {lam}")
    row = 0
    a = alpha
    top = HalfInt(2 * (lam.parts[0] if lam.parts else 0) + 1)
    while a <= top:
        if lam.phi(a) == -1:
            row += 1
        a = a + 1
    col = 0
    b = beta
    bottom = HalfInt(-2 * len(lam) - 1)
    while b >= bottom:
        if lam.phi(b) == +1:
            col += 1
        b = b + (-1)
    return (row, col)


def w_inv(lam: Partition, cell: Cell) -> tuple[HalfInt, HalfInt]:
    """Inverse of w_map: the i-th step up from the top, j-th step right from the bottom."""
    i, j = cell
    count = 0
    a = HalfInt(2 * (lam.parts[0] if lam.parts else 0) + 1)
    while True:
        if lam.phi(a) == -1:
            count += 1
            if count == i:
                alpha = a
                break
        a = a + (-1)
    count = 0
    b = HalfInt(-2 * len(lam) - 1)
    while True:
        if lam.phi(b) == +1:
            count += 1
            if count == j:
                beta = b
                break
        b = b + 1
    return (alpha, beta)


def w_pair(lam: Partition, pair: LambdaPair) -> Cell:
    return w_map(lam, pair.alpha, pair.beta)


# --- reach sets, dimension, reconstruction --------------------------------

def tau(matrix: ZeroOneMatrix) -> frozenset[Cell]:
    """Region cells with a support cell weakly above in their column or
    weakly left in their row."""
    full = matrix.full_support()
    row_min: dict[int, int] = {}
    col_min: dict[int, int] = {}
    for i, j in full:
        row_min[i] = min(row_min.get(i, j), j)
        col_min[j] = min(col_min.get(j, i), i)
    out = set()
    for (i, j) in matrix.region.cells():
        if row_min.get(i, j + 1) <= j or col_min.get(j, i + 1) <= i:
            out.add((i, j))
    return frozenset(out)


def orbit_dim(matrix: ZeroOneMatrix) -> int:
    t = len(tau(matrix))
    if matrix.region.flavor == "A":
        return t
    if t % 2:
        raise AssertionError("flavor D reach set has odd size")
    return t // 2


def tau_dual(matrix: ZeroOneMatrix) -> frozenset[Cell]:
    """Mirror reach set, anchored at the lower-right corner: cells with a
    support cell weakly below in their column or weakly right in their row."""
    full = matrix.full_support()
    row_max: dict[int, int] = {}
    col_max: dict[int, int] = {}
    for i, j in full:
        row_max[i] = max(row_max.get(i, j), j)
        col_max[j] = max(col_max.get(j, i), i)
    out = set()
    for (i, j) in matrix.region.cells():
        if row_max.get(i, j - 1) >= j or col_max.get(j, i - 1) >= i:
            out.add((i, j))
    return frozenset(out)


def orbit_dim_dual(matrix: ZeroOneMatrix) -> int:
    t = len(tau_dual(matrix))
    return t if matrix.region.flavor == "A" else t // 2


def _greedy_support(cells: set[Cell], flavor: str, reverse: bool = False,
                    pick=None) -> set[Cell]:
    """Repeatedly place a minimal cell and discard its row and column.

    `pick` selects among the minimal cells; the default takes the smallest
    row, then column.  With reverse=True everything runs on the opposite
    order (used for the dual fiber).
    """
    remaining = set(cells)
    placed: set[Cell] = set()
    better = (lambda c, d: c[0] >= d[0] and c[1] >= d[1]) if reverse \
        else (lambda c, d: c[0] <= d[0] and c[1] <= d[1])
    if pick is None:
        pick = (lambda ms: max(ms)) if reverse else (lambda ms: min(ms))
    while remaining:
        minimal = [c for c in remaining
                   if not any(d != c and better(d, c) for d in remaining)]
        c = pick(minimal)
        placed.add(c)
        remaining = {d for d in remaining if d[0] != c[0] and d[1] != c[1]}
    return placed


def matrix_from_tau(cells: frozenset[Cell], region: Region,
                    pick=None) -> ZeroOneMatrix:
    """Invert tau by greedy placement; raises on unrealizable cell sets."""
    if not set(cells) <= region.cells():
        raise ReconstructionMismatchError("cells leave the region")
    placed = _greedy_support(set(cells), region.flavor, pick=pick)
    try:
        m = make_matrix(region, placed)
    except ValueError as e:
        raise ReconstructionMismatchError(str(e)) from e
    if tau(m) != frozenset(cells):
        raise ReconstructionMismatchError(
            f"cell set is not a reach set (got tau={sorted(tau(m))})")
    return m


def dual_representative(holes: frozenset[Cell], region: Region) -> ZeroOneMatrix:
    """Greedy reconstruction run from the lower-right corner.

    Applied to the complement of a reach set, it produces the 0-1 matrix of
    the mirror orbit in the dual fiber.
    """
    placed = _greedy_support(set(holes), region.flavor, reverse=True)
    try:
        return make_matrix(region, placed)
    except ValueError as e:
        raise ReconstructionMismatchError(str(e)) from e


# --- completion to a window permutation ------------------------------------

@dataclass(frozen=True)
class WindowPermutation:
    """A permutation of 1..n, stored in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("not a permutation of 1..n")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @property
    def n(self) -> int:
        return len(self.images)

    def length(self) -> int:
        """Inversion count within the window."""
        im = self.images
        return sum(1 for a in range(len(im)) for b in range(a + 1, len(im))
                   if im[a] > im[b])

    def rank(self, p: int, q: int) -> int:
        """Number of i <= p with image <= q."""
        return sum(1 for i in range(1, min(p, self.n) + 1) if self.images[i - 1] <= q)


def length(sigma: WindowPermutation) -> int:
    return sigma.length()


def rank_fn(sigma: WindowPermutation, p: int, q: int) -> int:
    return sigma.rank(p, q)


def bruhat_leq(sigma: WindowPermutation, tau_: WindowPermutation) -> bool:
    """Rank-matrix criterion; permutations must share a window."""
    if sigma.n != tau_.n:
        raise DomainError("window sizes differ")
    n = sigma.n
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if sigma.rank(p, q) < tau_.rank(p, q):
                return False
    return True


def default_completion_window(box: Box) -> int:
    return box.k + box.l + 2 if box.flavor == "A" else 2 * box.k + 2


def hat_support(matrix: ZeroOneMatrix, window: Optional[int] = None) -> frozenset[Cell]:
    """Support of the completion of the matrix to the window square."""
    region = matrix.region
    box = region.box
    n = window or default_completion_window(box)
    if n < box.k + box.l:
        raise DomainError("completion window too small")
    s = set(tau(matrix))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if region.flavor == "D" and i == j:
                continue
            if i > box.k or j > box.l:
                s.add((i, j))
    return frozenset(_greedy_support(s, region.flavor))


def hat_completion(matrix: ZeroOneMatrix, window: Optional[int] = None) -> WindowPermutation:
    """The window permutation sending each row to its support column."""
    n = window or default_completion_window(matrix.region.box)
    supp = hat_support(matrix, n)
    images = [0] * n
    for i, j in supp:
        images[i - 1] = j
    return WindowPermutation(tuple(images))


def restrict_to_region(cells: set[Cell], region: Region) -> ZeroOneMatrix:
    return make_matrix(region, {c for c in cells if c in region.cells()})


# --- closure order and degenerations ---------------------------------------

def corner_counts(matrix: ZeroOneMatrix, dual: bool = False) -> dict[Cell, int]:
    """Support counts over corner rectangles.

    The primal order uses every rectangle anchored at (1,1).  The dual order
    uses rectangles anchored at (k,l) that avoid the diagram: the truncated
    action discards entries landing there, so only those ranks are invariant.
    """
    box = matrix.region.box
    lam = matrix.region.lam
    full = matrix.full_support()
    out = {}
    for p in range(1, box.k + 1):
        for q in range(1, box.l + 1):
            if dual:
                if lam.contains_cell(p, q):
                    continue
                out[(p, q)] = sum(1 for i, j in full if i >= p and j >= q)
            else:
                out[(p, q)] = sum(1 for i, j in full if i <= p and j <= q)
    return out


def closure_leq(smaller: ZeroOneMatrix, larger: ZeroOneMatrix,
                dual: bool = False) -> bool:
    """Rank criterion for orbit closure; `dual` anchors rectangles at (k,l)."""
    if smaller.region != larger.region:
        raise DomainError("matrices live on different regions")
    a = corner_counts(smaller, dual)
    b = corner_counts(larger, dual)
    return all(a[c] <= b[c] for c in a)


def codim_one_degenerations(matrix: ZeroOneMatrix,
                            window: Optional[int] = None) -> list[ZeroOneMatrix]:
    """All 0-1 matrices one dimension down inside the orbit closure."""
    region = matrix.region
    hat = set(hat_support(matrix, window))
    out: dict[tuple[Cell, ...], ZeroOneMatrix] = {}
    anchors = sorted(matrix.support)
    for (i, j) in anchors:
        above = [c for c in hat if c[0] > i and c[1] > j]
        minimal = [c for c in above
                   if not any(d != c and d[0] <= c[0] and d[1] <= c[1] for d in above)]
        for (r, s) in minimal:
            if region.flavor == "A":
                swapped = set()
                for (x, y) in hat:
                    if x == i:
                        swapped.add((r, y))
                    elif x == r:
                        swapped.add((i, y))
                    else:
                        swapped.add((x, y))
            else:
                # mirror rule: avoid a corner of the swap rectangle landing in
                # the reflected rectangle
                other = s if j < r < s else r
                t = {i: other, other: i}
                swapped = {(t.get(x, x), t.get(y, y)) for (x, y) in hat}
            m = restrict_to_region(swapped, region)
            out[m.key()] = m
    return [out[k] for k in sorted(out)]


def degenerations_poset(region: Region) -> dict[tuple[Cell, ...], list[tuple[Cell, ...]]]:
    """Cover lists (by key) of every 0-1 matrix on the region."""
    return {m.key(): [d.key() for d in codim_one_degenerations(m)]
            for m in all_zero_one_matrices(region)}


# --- the named orbits -------------------------------------------------------

def top_matrix(lam: Partition, box: Box) -> ZeroOneMatrix:
    """Representative of the open orbit: the image of the box pairs."""
    region = Region(lam, box)
    forest = pair_forest(lam, box.flavor, box=box)
    cells = {w_pair(lam, p) for p in forest.in_box()}
    return make_matrix(region, cells)


@dataclass(frozen=True)
class CodimOneOrbit:
    pair: LambdaPair
    matrix: ZeroOneMatrix
    dual_cell: Cell
    target: Partition

    def label(self) -> str:
        return f"codim1 pi={self.pair}"


def codim_one_orbits(lam: Partition, box: Box) -> list[CodimOneOrbit]:
    """One orbit per box pair: the reach set loses exactly the pair's cell."""
    region = Region(lam, box)
    forest = pair_forest(lam, box.flavor, box=box)
    out = []
    for p in sorted(forest.in_box(), key=lambda q: (q.width, q.alpha)):
        cell = w_pair(lam, p)
        holes = {cell} if box.flavor == "A" else {cell, (cell[1], cell[0])}
        m = matrix_from_tau(frozenset(region.cells() - holes), region)
        out.append(CodimOneOrbit(p, m, cell, apply_move(lam, p, check=False)))
    return out


@dataclass(frozen=True)
class OrbitLabel:
    """Coarse classification of an orbit by its codimension pattern."""

    kind: str   # top | codim1 | siblings | same-col | same-row | parent | child | general
    pairs: tuple[LambdaPair, ...] = ()

    def __str__(self) -> str:
        if self.kind == "top":
            return "top"
        if self.kind == "codim1":
            return f"codim1 pi={self.pairs[0]}"
        if self.kind == "siblings":
            return f"codim2 pi1={self.pairs[0]} pi2={self.pairs[1]}"
        if self.kind in ("same-col", "same-row"):
            tag = "l" if self.kind == "same-col" else "r"
            return f"codim2 pi={self.pairs[0]} type={tag}"
        if self.kind in ("parent", "child"):
            return f"codim2 pi={self.pairs[0]} type={self.kind[0]}"
        return "general"


@dataclass(frozen=True)
class CodimTwoOrbit:
    label: OrbitLabel
    matrix: ZeroOneMatrix
    covering: tuple[LambdaPair, ...]     # pairs of the covering codim-1 orbits
    dual_target: Partition               # cell whose slice the dual orbit opens
    diamond: Optional[tuple[Partition, Partition, Partition, Partition]]


def _upper_holes(region: Region, holes: frozenset[Cell]) -> list[Cell]:
    if region.flavor == "A":
        return sorted(holes)
    return sorted(c for c in holes if c[0] < c[1])


def codim_two_orbits(lam: Partition, box: Box) -> list[CodimTwoOrbit]:
    """Classify all orbits two dimensions below the open one.

    Hole patterns in the reach-set complement decide the label: two box-pair
    cells in general position are siblings; a shared column or row points at
    the parent pair; a comparable chain or the second same-row pattern only
    occur in flavor D, where the parent pair is a spliced one.
    """
    region = Region(lam, box)
    top_dim = orbit_dim(top_matrix(lam, box))
    ones = codim_one_orbits(lam, box)
    reps: dict[tuple[Cell, ...], ZeroOneMatrix] = {}
    for o in ones:
        for m in codim_one_degenerations(o.matrix):
            if orbit_dim(m) == top_dim - 2:
                reps[m.key()] = m
    flavor = box.flavor
    forest = pair_forest(lam, flavor, box=box)
    out = []
    for key in sorted(reps):
        m = reps[key]
        holes = frozenset(region.cells() - tau(m))
        covering = tuple(o.pair for o in ones if closure_leq(m, o.matrix))
        dual_rep = dual_representative(holes, region)
        nu = is_open_in_slice(dual_rep)
        if nu is None:
            raise AssertionError(f"dual representative of {m} not open in a slice")
        u1, u2 = _upper_holes(region, holes)
        kind, pairs, lam2 = _classify_holes(lam, flavor, forest, u1, u2)
        if kind == "child":
            diamond = None
        else:
            lam1 = apply_move(lam, pairs[0], check=False)
            diamond = (lam, lam1, nu, lam2)
        out.append(CodimTwoOrbit(OrbitLabel(kind, pairs), m, covering, nu, diamond))
    return out


def _pair_at(lam: Partition, flavor: str, cell: Cell) -> LambdaPair:
    alpha, beta = w_inv(lam, cell)
    return LambdaPair(alpha, beta, flavor)


def _classify_holes(lam: Partition, flavor: str, forest, u1: Cell, u2: Cell):
    """Label a two-hole pattern; returns (kind, pairs, second diamond corner).

    Two holes in general position are the cells of two pairs, neither the
    immediate parent of the other (nesting deeper than one level still counts
    as siblings).  In flavor D the deeper hole of a spliced-parent pattern is
    not a pair cell at all, which separates the parent case.
    """
    if u1[0] != u2[0] and u1[1] != u2[1]:
        q1, q2 = _pair_at(lam, flavor, u1), _pair_at(lam, flavor, u2)
        known = set(forest.pairs)
        if q1 in known and q2 in known:
            p1, p2 = sorted((q1, q2))
            if forest.parent_of(p1) == p2 or forest.parent_of(p2) == p1:
                raise AssertionError(
                    f"holes {u1},{u2} sit on an immediate parent-child pair")
            return "siblings", (p1, p2), apply_move(lam, p2, check=False)
        if flavor == "A" or q1 not in known:
            raise AssertionError(f"unrecognized hole pattern {u1},{u2}")
        parent = forest.parent_of(q1)
        return "parent", (q1,), apply_move(lam, parent, check=False)
    if u1[1] == u2[1]:
        pi1 = _pair_at(lam, flavor, min(u1, u2))
        parent = forest.parent_of(pi1)
        other_row = max(u1, u2)[0]
        if w_map(lam, parent.alpha, parent.beta)[0] != other_row:
            raise AssertionError(f"column holes {u1},{u2} do not point at the parent")
        return "same-col", (pi1,), apply_move(lam, parent, check=False)
    u_left, u_right = (u1, u2) if u1[1] < u2[1] else (u2, u1)
    pi1 = _pair_at(lam, flavor, u_left)
    parent = forest.parent_of(pi1)
    beta2 = w_inv(lam, u_right)[1]
    if beta2 == parent.beta:
        return "same-row", (pi1,), apply_move(lam, parent, check=False)
    if flavor == "D" and beta2 == -parent.alpha:
        return "child", (pi1,), None
    raise AssertionError(f"row holes {u1},{u2} match neither parent coordinate")


# --- the dual fiber ---------------------------------------------------------

def is_open_in_slice(matrix: ZeroOneMatrix) -> Optional[Partition]:
    """Interpret the matrix in the dual fiber; if its orbit is open in the
    slice of some cell, return that cell's partition, else None."""
    region = matrix.region
    lam = region.lam
    full = sorted(matrix.full_support())
    for (i, j) in full:
        for (r, s) in full:
            if i < r and j > s and not (region.flavor == "D" and i == s):
                if not lam.contains_cell(i, s):
                    return None
    flips: set[HalfInt] = set()
    base = matrix.support if region.flavor == "D" else matrix.full_support()
    for cell in sorted(base):
        alpha, beta = w_inv(lam, cell)
        for f in ((alpha, beta) if region.flavor == "A"
                  else (alpha, beta, -alpha, -beta)):
            if f in flips:
                flips.remove(f)
            else:
                flips.add(f)
    from .pairs import _flip_positions
    depth = sum(abs(f.twice) for f in flips) // 2 + 2
    result = _flip_positions(lam, flips, depth_hint=depth)
    return result


def slice_census(lam: Partition, box: Box) -> dict[Partition, list[ZeroOneMatrix]]:
    """Assign every dual-fiber orbit to its slice.

    Open orbits are assigned by the openness test; the rest go to the
    smallest slice whose open orbit dominates them in the dual closure order.
    """
    region = Region(lam, box)
    mats = all_zero_one_matrices(region)
    open_of: dict[Partition, ZeroOneMatrix] = {}
    pending = []
    for m in mats:
        t = is_open_in_slice(m)
        if t is None:
            pending.append(m)
        else:
            if t in open_of:
                raise AssertionError(f"two open orbits for slice {t}")
            open_of[t] = m
    census = {t: [m] for t, m in open_of.items()}
    for m in pending:
        doms = [t for t, om in open_of.items() if closure_leq(m, om, dual=True)]
        minimal = [t for t in doms
                   if not any(u != t and t.contains(u) for u in doms)]
        if len(minimal) != 1:
            raise AssertionError(f"ambiguous slice for {m}: {minimal}")
        census[minimal[0]].append(m)
    return census
