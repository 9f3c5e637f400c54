"""Deterministic relation-satisfying representations used by the test suites.

Given arrow maps, the loop operators are forced by the telescoping identity,
so a fixture is a choice of arrow maps compatible with the diamond and
vanishing relations.  Families:

* simples (everything trivial),
* one fat arrow: a 2-dimensional space under a 1-dimensional one, with both
  arrow maps nonzero; the composite on the small side vanishes, the one on
  the fat side is a nonzero nilpotent, so mu is unipotent but not 1,
* scalar flows: dimension 1 at every node with 0/1 arrow maps, found by
  exhausting all assignments against the relation checker; the maximal
  solutions are frozen here and re-derivable with solve_scalar_flows.
"""

from __future__ import annotations

import itertools

from .partitions import Box, Partition, enumerate_box
from .pairs import arrows_from
from .quiver import QuiverRep, check_relations, derive_t_maps, enumerate_simples
from .ratmat import mat

# maximal-support scalar solutions, as "source>target" directed edges
_FROZEN_FLOWS: dict[str, list[list[str]]] = {
    "A2x2": [
        ["1>0", "1,1>1", "1,1>2,1", "2>1", "2>2,1", "2,1>0", "2,2>2,1"],
        ["0>1", "0>2,1", "1>1,1", "1>2", "2,1>1,1", "2,1>2", "2,1>2,2"],
    ],
    "D3": [
        ["2,2>0", "2,2>3,2,1", "3,3,2>3,2,1"],
        ["0>2,2", "3,2,1>2,2", "3,2,1>3,3,2"],
    ],
}


def directed_edges(box: Box) -> list[tuple[Partition, Partition]]:
    edges = set()
    for lam in enumerate_box(box):
        for _, t in arrows_from(lam, box):
            edges.add((lam, t))
            edges.add((t, lam))
    return sorted(edges, key=lambda e: (e[0].size, e[0].parts, e[1].size, e[1].parts))


def arrow_fixture(lam: Partition, target: Partition, box: Box) -> QuiverRep:
    """dim 2 at the arrow source, dim 1 at the target, both maps nonzero."""
    dims = {lam: 2, target: 1}
    p = {
        (lam, target): mat([[1], [0]]),
        (target, lam): mat([[0, 1]]),
    }
    return QuiverRep(box, dims, derive_t_maps(box, dims, p), p)


def flow_fixture(box: Box, edges: list[str]) -> QuiverRep:
    """dims 1 everywhere, arrow maps 1 exactly on the listed directed edges."""
    dims = {n: 1 for n in enumerate_box(box)}
    p = {}
    for e in edges:
        a, b = e.split(">")
        p[(Partition.parse(a), Partition.parse(b))] = mat([[1]])
    return QuiverRep(box, dims, derive_t_maps(box, dims, p), p)


def solve_scalar_flows(box: Box, limit: int | None = None) -> list[tuple[int, ...]]:
    """Exhaust 0/1 scalar assignments on all directed edges of the box.

    Returns the accepted assignment vectors (aligned with directed_edges).
    Exponential in the edge count; meant for small boxes and cross-checks.
    """
    dedges = directed_edges(box)
    dims = {n: 1 for n in enumerate_box(box)}
    out = []
    for bits in itertools.product((0, 1), repeat=len(dedges)):
        p = {e: mat([[v]]) for e, v in zip(dedges, bits) if v}
        rep = QuiverRep(box, dims, derive_t_maps(box, dims, p), p)
        if check_relations(rep).passed:
            out.append(bits)
            if limit is not None and len(out) >= limit:
                break
    return out


def fixture_reps(box: Box) -> list[tuple[str, QuiverRep]]:
    """All named fixtures for a box, simples included.

    Fat fixtures sit on arrows out of the box minimum: further up, the wall
    relation from the arrow below forces the dip at the fat node to vanish.
    """
    out = [(f"simple[{lam}]", rep)
           for lam, rep in zip(enumerate_box(box), enumerate_simples(box))]
    bottom = Partition()
    if box.contains(bottom):
        for _, target in arrows_from(bottom, box):
            out.append((f"arrow[{bottom}->{target}]",
                        arrow_fixture(bottom, target, box)))
    for i, edges in enumerate(_FROZEN_FLOWS.get(str(box), [])):
        out.append((f"flow[{i}]", flow_fixture(box, edges)))
    return out
