"""JSON and DOT serialization for forests, posets, and orbit data.

Every JSON payload carries a versioned schema tag and a provenance header;
DOT digraphs orient edges from the smaller element to the larger one and
rank nodes by dimension.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__
from .halfint import HalfInt
from .orbits import (CodimOneOrbit, CodimTwoOrbit, ZeroOneMatrix, orbit_dim,
                     tau)
from .pairs import LambdaPair, PairForest
from .partitions import Box, Partition

SCHEMA_PREFIX = "schuborb"


@dataclass(frozen=True)
class ExportBundle:
    fmt: str          # "json" | "dot" | "text"
    payload: str
    provenance: dict

    def write(self, path: str | None) -> None:
        if path:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(self.payload + "\n")
        else:
            print(self.payload)


def provenance(box: Box | None, flavor: str) -> dict:
    return {"schema_version": 1, "library": f"schuborb {__version__}",
            "box": str(box) if box else None, "flavor": flavor}


def pair_json(p: LambdaPair) -> dict:
    return {"alpha": p.alpha.twice, "beta": p.beta.twice}


def forest_json(forest: PairForest) -> dict:
    pairs = []
    for p in forest.pairs:
        parent = forest.parent_of(p)
        entry = pair_json(p)
        entry["parent"] = pair_json(parent) if parent else None
        if forest.box is not None:
            entry["in_box"] = forest.box.pair_in_box(p.alpha, p.beta)
        pairs.append(entry)
    return {
        "schema": f"{SCHEMA_PREFIX}.pairs/1",
        "provenance": provenance(forest.box, forest.flavor),
        "partition": [int(x) for x in forest.owner.parts],
        "window": [forest.lo.twice, forest.hi.twice],
        "pairs": pairs,
    }


def forest_from_json(data: dict) -> list[LambdaPair]:
    flavor = data["provenance"]["flavor"]
    return [LambdaPair(HalfInt(e["alpha"]), HalfInt(e["beta"]), flavor)
            for e in data["pairs"]]


def matrix_json(m: ZeroOneMatrix) -> list[list[int]]:
    return [[i, j] for i, j in m.key()]


def poset_json(nodes: list[dict], covers: list[list], box: Box, kind: str) -> str:
    doc = {
        "schema": f"{SCHEMA_PREFIX}.poset/1",
        "provenance": provenance(box, box.flavor),
        "kind": kind,
        "nodes": nodes,
        "covers": covers,
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def poset_dot(nodes: list[dict], covers: list[list], name: str) -> str:
    by_rank: dict[int, list[dict]] = {}
    for n in nodes:
        by_rank.setdefault(n.get("dim", 0), []).append(n)
    lines = [f'digraph "{name}" {{', "\trankdir=BT;"]
    for rank in sorted(by_rank):
        lines.append("\t{ rank = same;")
        for n in by_rank[rank]:
            label = n.get("label", n["id"])
            lines.append(f'\t\t"{n["id"]}" [label="{label}"];')
        lines.append("\t}")
    for a, b in covers:
        lines.append(f'\t"{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines)


def forest_text(forest: PairForest) -> str:
    lines = [f"pairs of {forest.owner} (flavor {forest.flavor}, "
             f"window [{forest.lo}, {forest.hi}])"]
    for p in forest.pairs:
        parent = forest.parent_of(p)
        flag = ""
        if forest.box is not None:
            flag = "  [box]" if forest.box.pair_in_box(p.alpha, p.beta) else ""
        lines.append(f"  {p}  parent={parent if parent else '-'}{flag}")
    return "\n".join(lines)
