"""Exact rewriting of arrow-path monomials into valley-free form.

A monomial in the arrow maps is a path through adjacent box partitions; it
is zero unless consecutive nodes are adjacent.  An interior node strictly
below both neighbors is a valley.  Two rewriting rules remove valleys:

* distinct shoulders: route the path across the completing corner of the
  four-cycle; if any completing corner leaves the box the monomial is zero,
* equal shoulders: the dip is mu - 1 on the shoulder space, and mu expands
  through the telescoping identity as a signed product of dips through
  strictly larger nodes, each inverse unrolled as a geometric series.

Both rules only create valleys above the removed one and never shorten
paths, and monomials longer than twice the box height vanish, so the
process terminates; an iteration cap guards the loop anyway.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional

from .halfint import HalfInt, edge_sign
from .partitions import Box, Partition, enumerate_box
from .pairs import arrows_from, complete_diamond, pair_forest
from .pi1 import zeta
from .quiver import QuiverRep, mu
from . import ratmat

Path = tuple[Partition, ...]


class RewriteLimitError(RuntimeError):
    """The iteration cap tripped; the input resisted a terminating rewrite."""


@dataclass(frozen=True)
class PathElement:
    """Finite rational combination of paths in the box arrow graph."""

    terms: tuple[tuple[Path, Fraction], ...]

    @staticmethod
    def of(mapping: dict[Path, Fraction]) -> "PathElement":
        cleaned = {p: Fraction(c) for p, c in mapping.items() if c != 0}
        return PathElement(tuple(sorted(cleaned.items())))

    @staticmethod
    def from_path(path: Iterable[Partition], coeff=1) -> "PathElement":
        return PathElement.of({tuple(path): Fraction(coeff)})

    def as_dict(self) -> dict[Path, Fraction]:
        return dict(self.terms)

    def __add__(self, other: "PathElement") -> "PathElement":
        acc = dict(self.terms)
        for p, c in other.terms:
            acc[p] = acc.get(p, Fraction(0)) + c
        return PathElement.of(acc)

    def scale(self, c) -> "PathElement":
        f = Fraction(c)
        return PathElement.of({p: f * x for p, x in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def min_length(self) -> Optional[int]:
        return min((len(p) - 1 for p, _ in self.terms), default=None)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for p, c in self.terms:
            body = "(" + ",".join(str(n) for n in p) + ")"
            bits.append(f"{c}*{body}")
        return " + ".join(bits)


def validate_path(path: Path, box: Box) -> None:
    if not path:
        raise ValueError("a path has at least one node")
    adj = _adjacency(box)
    for node in path:
        if not box.contains(node):
            raise ValueError(f"node {node} outside {box}")
    for a, b in zip(path, path[1:]):
        if b not in adj[a]:
            raise ValueError(f"nodes {a} and {b} are not adjacent in {box}")


@lru_cache(maxsize=None)
def _adjacency(box: Box) -> dict[Partition, frozenset[Partition]]:
    und: dict[Partition, set[Partition]] = {n: set() for n in enumerate_box(box)}
    for lam in enumerate_box(box):
        for _, t in arrows_from(lam, box):
            und[lam].add(t)
            und[t].add(lam)
    return {n: frozenset(s) for n, s in und.items()}


@lru_cache(maxsize=None)
def box_height(box: Box) -> int:
    """Longest ascending arrow chain in the box."""
    memo: dict[Partition, int] = {}

    def h(lam: Partition) -> int:
        if lam not in memo:
            memo[lam] = max((h(t) + 1 for _, t in arrows_from(lam, box)), default=0)
        return memo[lam]

    return max((h(n) for n in enumerate_box(box)), default=0)


def length_cap(box: Box) -> int:
    return 2 * box_height(box)


# --- valley-free enumeration ------------------------------------------------

@lru_cache(maxsize=None)
def _ascending_paths_to(lam: Partition, box: Box) -> tuple[Path, ...]:
    below = [(pair, src) for src in enumerate_box(box)
             for pair, t in arrows_from(src, box) if t == lam]
    out: list[Path] = [(lam,)]
    for _, src in below:
        for path in _ascending_paths_to(src, box):
            out.append(path + (lam,))
    return tuple(sorted(set(out)))


def valley_free_basis(box: Box) -> list[Path]:
    """Every valley-free path: an ascent to a peak followed by a descent."""
    out = []
    for peak in enumerate_box(box):
        ups = _ascending_paths_to(peak, box)
        for up in ups:
            for down in ups:
                out.append(up + tuple(reversed(down))[1:])
    return sorted(set(out), key=lambda p: (len(p), p))


def algebra_dim_bound(box: Box) -> int:
    """Upper bound for the algebra dimension: the valley-free path count."""
    return len(valley_free_basis(box))


def has_valley(path: Path) -> Optional[int]:
    """Position of the first valley, or None."""
    for i in range(1, len(path) - 1):
        if path[i - 1].contains(path[i]) and path[i + 1].contains(path[i]):
            return i
    return None


def _valley_positions(path: Path) -> list[int]:
    return [i for i in range(1, len(path) - 1)
            if path[i - 1].contains(path[i]) and path[i + 1].contains(path[i])]


# --- symbolic telescoping ---------------------------------------------------

def _telescope_exponents(nu: Partition, gamma: HalfInt, box: Box) -> Counter:
    """Exponent vector over arrow targets expressing the loop operator at
    gamma on the space at nu, with the overall sign folded in."""
    if box.flavor == "D" and gamma.twice < 0:
        c = _telescope_exponents(nu, -gamma, box)
        return Counter({k: -v for k, v in c.items()})
    c: Counter = Counter()
    for pair, target in arrows_from(nu, box):
        if pair.alpha <= gamma <= pair.beta:
            c[target] += edge_sign(pair.beta)
    sign = -nu.phi(gamma)
    return Counter({k: sign * v for k, v in c.items()}) if sign == -1 else c


@lru_cache(maxsize=None)
def mu_exponents(nu: Partition, low: Partition, box: Box) -> tuple[tuple[Partition, int], ...]:
    """mu(nu, low) for low -> nu, as a signed product of mu(nu, higher)."""
    pair = next((p for p, t in arrows_from(low, box) if t == nu), None)
    if pair is None:
        raise ValueError(f"no box arrow {low} -> {nu}")
    if box.flavor == "A":
        parent = pair_forest(low, "A", box=box).parent_of(pair)
        partner = parent.beta
    else:
        partner = zeta(low, pair, box)
    exps = _telescope_exponents(nu, pair.alpha, box)
    exps.update(_telescope_exponents(nu, partner, box))
    sign = edge_sign(pair.beta)
    items = {k: sign * v for k, v in exps.items() if v}
    return tuple(sorted(items.items(), key=lambda kv: (kv[0].size, kv[0].parts)))


def _series_coeff(e: int, m: int) -> int:
    """Coefficient of the m-th dip power in (1 + x)^e, e any integer."""
    if e >= 0:
        return comb(e, m) if m <= e else 0
    return (-1) ** m * comb(-e + m - 1, m)


def expand_mu_product(nu: Partition, exponents: tuple[tuple[Partition, int], ...],
                      budget: int) -> dict[Path, Fraction]:
    """Expand a signed product of mu's at nu into loops at nu of bounded
    length.  Keys are paths from nu to nu; the trivial path carries the
    constant term."""
    acc: dict[Path, Fraction] = {(nu,): Fraction(1)}
    for target, e in exponents:
        seg = (target, nu)
        new: dict[Path, Fraction] = {}
        for path, c in acc.items():
            room = budget - (len(path) - 1)
            m = 0
            while 2 * m <= room:
                k = _series_coeff(e, m)
                if k != 0:
                    ext = path + seg * m
                    new[ext] = new.get(ext, Fraction(0)) + c * k
                if e >= 0 and m >= e:
                    break
                m += 1
        acc = {p: c for p, c in new.items() if c}
    return acc


def reduce_to_valley_free(element: PathElement, box: Box,
                          max_steps: int = 10 ** 5) -> PathElement:
    """Rewrite until no term has a valley; exact and deterministic."""
    cap = length_cap(box)
    work = {p: c for p, c in element.terms if len(p) - 1 <= cap}
    for p in work:
        validate_path(p, box)
    steps = 0
    while True:
        item = None
        for p in sorted(work):
            vals = _valley_positions(p)
            if vals:
                pos = min(vals, key=lambda i: (p[i].size, p[i].parts, i))
                item = (p, pos)
                break
        if item is None:
            return PathElement.of(work)
        steps += 1
        if steps > max_steps:
            raise RewriteLimitError(f"no valley-free form within {max_steps} steps")
        path, i = item
        coeff = work.pop(path)
        low, left, right = path[i], path[i - 1], path[i + 1]
        if left != right:
            corners = complete_diamond(low, left, right, box.flavor)
            if any(not box.contains(c) for c in corners):
                continue  # the monomial vanishes
            newpath = path[:i] + (corners[0],) + path[i + 1:]
            work[newpath] = work.get(newpath, Fraction(0)) + coeff
            if work[newpath] == 0:
                del work[newpath]
            continue
        outer, tail = path[:i - 1], path[i + 2:]
        budget = cap - len(outer) - len(tail)
        loops = expand_mu_product(left, mu_exponents(left, low, box), budget)
        loops.pop((left,), None)  # the constant term cancels against -1
        for loop, c in loops.items():
            newpath = outer + loop + tail
            if len(newpath) - 1 > cap:
                continue
            work[newpath] = work.get(newpath, Fraction(0)) + coeff * c
            if work[newpath] == 0:
                del work[newpath]


def evaluate(element: PathElement, rep: QuiverRep) -> dict[tuple[Partition, Partition], ratmat.Matrix]:
    """Sum the matrix of every path, grouped by (start, end) nodes."""
    out: dict[tuple[Partition, Partition], ratmat.Matrix] = {}
    for path, c in element.terms:
        start, end = path[0], path[-1]
        if all(rep.dim(n) > 0 for n in path):
            m = ratmat.identity(rep.dim(end))
            for a, b in reversed(list(zip(path, path[1:]))):
                m = ratmat.mul(rep.p_at(a, b), m)
        else:
            m = ratmat.zeros(rep.dim(start), rep.dim(end))
        key = (start, end)
        cur = out.get(key, ratmat.zeros(rep.dim(start), rep.dim(end)))
        out[key] = ratmat.add(cur, ratmat.scale(c, m))
    return out


def evaluations_equal(a: PathElement, b: PathElement, rep: QuiverRep) -> bool:
    ea, eb = evaluate(a, rep), evaluate(b, rep)
    keys = set(ea) | set(eb)
    for k in keys:
        start, end = k
        za = ea.get(k, ratmat.zeros(rep.dim(start), rep.dim(end)))
        zb = eb.get(k, ratmat.zeros(rep.dim(start), rep.dim(end)))
        if za != zb:
            return False
    return True
