"""Abelian presentations of orbit fundamental groups.

Generators are torus loops indexed by half-integers in the box range; each
pair of the base partition ties two of them together, and loops indexed
outside the range die.  Flavor D folds a loop and its mirror into one
generator with opposite signs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .halfint import HalfInt
from .partitions import Box, Partition
from .pairs import LambdaPair, pair_forest, WindowError


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Pi1Presentation:
    generators: tuple[HalfInt, ...]
    relations: tuple[tuple[int, ...], ...]

    def _snf_diagonal(self) -> list[int]:
        """Diagonal of the Smith normal form of the relation matrix."""
        rows = [list(r) for r in self.relations]
        n = len(self.generators)
        diag = []
        r = 0
        cols = list(range(n))
        while r < len(rows) and cols:
            pivot = None
            for ri in range(r, len(rows)):
                for ci in cols:
                    if rows[ri][ci] != 0:
                        if pivot is None or abs(rows[ri][ci]) < abs(rows[pivot[0]][pivot[1]]):
                            pivot = (ri, ci)
            if pivot is None:
                break
            ri, ci = pivot
            rows[r], rows[ri] = rows[ri], rows[r]
            # clear the pivot column with integer row operations
            done = True
            for other in range(len(rows)):
                if other != r and rows[other][ci] % rows[r][ci] == 0:
                    f = rows[other][ci] // rows[r][ci]
                    rows[other] = [a - f * b for a, b in zip(rows[other], rows[r])]
                elif other != r and rows[other][ci] != 0:
                    done = False
            if not done:
                # swap in the smaller remainder and retry
                for other in range(len(rows)):
                    if other != r and rows[other][ci] != 0:
                        f = rows[other][ci] // rows[r][ci]
                        rows[other] = [a - f * b for a, b in zip(rows[other], rows[r])]
                continue
            diag.append(abs(rows[r][ci]))
            cols.remove(ci)
            r += 1
        return diag

    def quotient_rank(self) -> int:
        """Rank of the presented abelian group (it must be torsion free)."""
        diag = self._snf_diagonal()
        if any(d not in (0, 1) for d in diag):
            raise PresentationError(f"unexpected torsion: {diag}")
        return len(self.generators) - sum(1 for d in diag if d == 1)


def _fold(alpha: HalfInt, box: Box) -> tuple[HalfInt, int] | None:
    """Map a loop index to (generator, sign); None when the loop dies."""
    if box.flavor == "A":
        if -2 * box.k < alpha.twice < 2 * box.l:
            return (alpha, 1)
        return None
    a, sign = (alpha, 1) if alpha.twice > 0 else (-alpha, -1)
    if a.twice < 2 * box.k:
        return (a, sign)
    return None


def pi1_presentation(lam: Partition, box: Box) -> Pi1Presentation:
    """Presentation of the fundamental group of the open orbit over lam."""
    if not box.contains(lam):
        raise ValueError(f"{lam} not in {box}")
    if box.flavor == "A":
        gens = [HalfInt(t) for t in range(-2 * box.k + 1, 2 * box.l, 2)]
    else:
        gens = [HalfInt(t) for t in range(1, 2 * box.k, 2)]
    index = {g: i for i, g in enumerate(gens)}
    forest = pair_forest(lam, box.flavor, box=box)
    relations = []
    for p in forest.pairs:
        row = [0] * len(gens)
        touched = False
        for end in (p.alpha, p.beta):
            f = _fold(end, box)
            if f is not None:
                row[index[f[0]]] += f[1]
                touched = True
        if touched:
            relations.append(tuple(row))
    return Pi1Presentation(tuple(gens), tuple(relations))


def loop_class(lam: Partition, pair: LambdaPair, box: Box) -> dict[HalfInt, int]:
    """The loop around the codimension-one orbit of the pair, as a word.

    Flavor A: the pair's lower entry times the parent's upper entry.
    Flavor D: the lower entry times the partner picked by the nesting rule,
    both folded onto the positive generators.
    """
    forest = pair_forest(lam, box.flavor, box=box)
    if pair not in forest.in_box():
        raise ValueError(f"{pair} is not a box pair of {lam}")
    parent = forest.parent_of(pair)
    if parent is None:
        raise WindowError(f"parent of {pair} not materialized in the box window")
    if box.flavor == "A":
        word: dict[HalfInt, int] = {}
        for g in (pair.alpha, parent.beta):
            word[g] = word.get(g, 0) + 1
        return {g: c for g, c in word.items() if c}
    z = zeta(lam, pair, box)
    word = {}
    for g in (pair.alpha, z):
        key, sign = (g, 1) if g.twice > 0 else (-g, -1)
        word[key] = word.get(key, 0) + sign
    return {g: c for g, c in word.items() if c}


def zeta(lam: Partition, pair: LambdaPair, box: Box) -> HalfInt:
    """The partner entry used by the flavor-D wall relations.

    With parent (a', b'): the reflected interval (-b', -a') either strictly
    contains the pair, in which case the partner is -a', or it does not and
    the partner is b'.
    """
    forest = pair_forest(lam, "D", box=box)
    if pair not in forest.pairs:
        raise ValueError(f"{pair} is not a flavor-D pair of {lam}")
    parent = forest.parent_of(pair)
    if parent is None:
        raise WindowError(f"parent of {pair} not materialized; widen the window")
    ra, rb = -parent.beta, -parent.alpha
    if ra <= pair.alpha and pair.beta <= rb and (ra, rb) != (pair.alpha, pair.beta):
        return -parent.alpha
    return parent.beta
