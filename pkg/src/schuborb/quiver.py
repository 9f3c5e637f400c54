"""Representations of the box quiver and the relation checker.

A representation assigns a rational vector space to every partition in the
box, commuting loop operators t indexed by half-integers, and a pair of maps
p along every arrow.  The checker instantiates every relation over the box
and reports each instance; it verifies, it never solves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import ratmat
from .halfint import HalfInt, edge_sign
from .partitions import Box, Partition, enumerate_box
from .pairs import LambdaPair, arrows_from, complete_diamond, pair_forest
from .pi1 import zeta
from .ratmat import Matrix, SingularMatrixError


class StructuralError(ValueError):
    """Shape or key problems, as opposed to a relation failing."""


def t_generator_range(box: Box) -> list[HalfInt]:
    if box.flavor == "A":
        return [HalfInt(t) for t in range(-2 * box.k + 1, 2 * box.l, 2)]
    return [HalfInt(t) for t in range(1, 2 * box.k, 2)]


@dataclass(frozen=True)
class QuiverRep:
    box: Box
    dims: dict[Partition, int]
    t: dict[tuple[HalfInt, Partition], Matrix]
    p: dict[tuple[Partition, Partition], Matrix]

    def dim(self, lam: Partition) -> int:
        return self.dims.get(lam, 0)

    def t_at(self, alpha: HalfInt, lam: Partition) -> Matrix:
        n = self.dim(lam)
        if self.box.flavor == "D" and alpha.twice < 0:
            return ratmat.inverse(self.t_at(-alpha, lam))
        got = self.t.get((alpha, lam))
        return got if got is not None else ratmat.identity(n)

    def p_at(self, lam: Partition, other: Partition) -> Matrix:
        got = self.p.get((lam, other))
        return got if got is not None else ratmat.zeros(self.dim(lam), self.dim(other))

    def validate_shapes(self) -> None:
        gen_range = set(t_generator_range(self.box))
        for lam, d in self.dims.items():
            if d < 0 or not self.box.contains(lam):
                raise StructuralError(f"bad node {lam} (dim {d})")
        for (alpha, lam), m in self.t.items():
            if alpha not in gen_range:
                raise StructuralError(f"loop operator stored outside range: {alpha}")
            n = self.dim(lam)
            if ratmat.shape(m) != (n, n):
                raise StructuralError(f"t[{alpha},{lam}] has shape {ratmat.shape(m)}")
        arrow_edges = set()
        for lam in enumerate_box(self.box):
            for _, target in arrows_from(lam, self.box):
                arrow_edges.add((lam, target))
                arrow_edges.add((target, lam))
        for (lam, other), m in self.p.items():
            if (lam, other) not in arrow_edges:
                raise StructuralError(f"p stored on a non-edge {lam} | {other}")
            if ratmat.shape(m) != (self.dim(lam), self.dim(other)):
                raise StructuralError(f"p[{lam},{other}] has shape {ratmat.shape(m)}")

    def to_json(self) -> dict:
        return {
            "schema": "schuborb.rep/1",
            "box": str(self.box),
            "dims": {str(lam): d for lam, d in sorted(self.dims.items())},
            "t": [{"alpha": alpha.twice, "node": str(lam),
                   "matrix": ratmat.to_json(m)}
                  for (alpha, lam), m in sorted(self.t.items(),
                                                key=lambda kv: (kv[0][0], kv[0][1]))],
            "p": [{"from": str(a), "to": str(b), "matrix": ratmat.to_json(m)}
                  for (a, b), m in sorted(self.p.items())],
        }

    @staticmethod
    def from_json(data: dict) -> "QuiverRep":
        box = Box.parse(data["box"])
        dims = {Partition.parse(k): int(v) for k, v in data["dims"].items()}
        t = {(HalfInt(e["alpha"]), Partition.parse(e["node"])): ratmat.from_json(e["matrix"])
             for e in data["t"]}
        p = {(Partition.parse(e["from"]), Partition.parse(e["to"])): ratmat.from_json(e["matrix"])
             for e in data["p"]}
        return QuiverRep(box, dims, t, p)


def mu(rep: QuiverRep, lam: Partition, other: Partition) -> Matrix:
    """1 + p(lam, other) p(other, lam) on the space at lam."""
    if rep.dim(other) == 0:
        return ratmat.identity(rep.dim(lam))
    prod = ratmat.mul(rep.p_at(lam, other), rep.p_at(other, lam))
    return ratmat.add(ratmat.identity(rep.dim(lam)), prod)


def composite(rep: QuiverRep, a: Partition, b: Partition, c: Partition) -> Matrix:
    """p(a, b) p(b, c): the map through b from the space at c to the one at a."""
    if rep.dim(a) == 0 or rep.dim(b) == 0 or rep.dim(c) == 0:
        return ratmat.zeros(rep.dim(a), rep.dim(c))
    return ratmat.mul(rep.p_at(a, b), rep.p_at(b, c))


@dataclass(frozen=True)
class RelationInstance:
    relation: str
    instance: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class RelationReport:
    flavor: str
    instances: tuple[RelationInstance, ...]

    @property
    def failures(self) -> tuple[RelationInstance, ...]:
        return tuple(r for r in self.instances if not r.ok)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> list[dict]:
        return [{"relation": r.relation, "instance": r.instance,
                 "status": "pass" if r.ok else "fail", "detail": r.detail}
                for r in self.instances]


def _eq_instance(rel: str, desc: str, lhs: Matrix, rhs: Matrix) -> RelationInstance:
    ok = lhs == rhs
    return RelationInstance(rel, desc, ok, "" if ok else f"{lhs} != {rhs}")


def check_relations(rep: QuiverRep, box: Optional[Box] = None) -> RelationReport:
    """Instantiate every relation over the box and test it exactly."""
    box = box or rep.box
    rep.validate_shapes()
    flavor = box.flavor
    nodes = [lam for lam in enumerate_box(box) if rep.dim(lam) > 0]
    gen_range = t_generator_range(box)
    out: list[RelationInstance] = []
    suffix = "s" if flavor == "D" else ""

    # invertibility of stored loop operators comes first: flavor D needs it
    # to define the negative-index operators at all
    singular: set[tuple[HalfInt, Partition]] = set()
    if flavor == "D":
        for (alpha, lam), m in sorted(rep.t.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            try:
                ratmat.inverse(m)
                ok = True
            except SingularMatrixError:
                ok = False
                singular.add((alpha, lam))
            out.append(RelationInstance("R2s", f"t[{alpha}] invertible on V[{lam}]", ok))

    def t_of(alpha: HalfInt, lam: Partition) -> Optional[Matrix]:
        if flavor == "D" and (-alpha if alpha.twice < 0 else alpha, lam) in singular:
            return None
        if flavor == "A" and not (-2 * box.k < alpha.twice < 2 * box.l):
            return ratmat.identity(rep.dim(lam))
        if flavor == "D" and abs(alpha.twice) > 2 * box.k:
            return ratmat.identity(rep.dim(lam))
        return rep.t_at(alpha, lam)

    # R1: loop operators commute with each other and with the arrow maps
    for lam in nodes:
        for i, a in enumerate(gen_range):
            ta = t_of(a, lam)
            if ta is None:
                continue
            for b in gen_range[i + 1:]:
                tb = t_of(b, lam)
                if tb is None:
                    continue
                out.append(_eq_instance(
                    "R1", f"t[{a}] t[{b}] commute on V[{lam}]",
                    ratmat.mul(ta, tb), ratmat.mul(tb, ta)))
    for lam in nodes:
        for pair_, target in arrows_from(lam, box):
            for (src, dst) in ((lam, target), (target, lam)):
                if rep.dim(src) == 0 or rep.dim(dst) == 0:
                    continue
                pm = rep.p_at(src, dst)
                for a in gen_range:
                    ts, td = t_of(a, src), t_of(a, dst)
                    if ts is None or td is None:
                        continue
                    out.append(_eq_instance(
                        "R1", f"t[{a}] commutes with p[{src} <- {dst}]",
                        ratmat.mul(ts, pm), ratmat.mul(pm, td)))

    # R2: pair relations on each node, plus triviality outside the box range
    for lam in nodes:
        forest = pair_forest(lam, flavor, box=box)
        for q in forest.pairs:
            ta, tb = t_of(q.alpha, lam), t_of(q.beta, lam)
            if ta is None or tb is None:
                continue
            if ratmat.is_identity(ta) and ratmat.is_identity(tb):
                continue
            out.append(_eq_instance(
                f"R2{suffix}", f"t[{q.alpha}] t[{q.beta}] = 1 on V[{lam}]",
                ratmat.mul(ta, tb), ratmat.identity(rep.dim(lam))))

    # R3: wall relations along every arrow; an arrow out of a trivial space
    # still constrains the space at its head
    for lam in enumerate_box(box):
        if rep.dim(lam) == 0 and all(rep.dim(t) == 0 for _, t in arrows_from(lam, box)):
            continue
        forest = pair_forest(lam, flavor, box=box)
        for pair_, target in arrows_from(lam, box):
            partner = _wall_partner(lam, pair_, forest, box)
            sign = edge_sign(pair_.beta)
            for space in (lam, target):
                if rep.dim(space) == 0:
                    continue
                ta = t_of(pair_.alpha, space)
                tz = t_of(partner, space)
                if ta is None or tz is None:
                    continue
                m = mu(rep, space, target if space == lam else lam)
                desc = (f"mu[{space}|{target if space == lam else lam}]^({sign}) "
                        f"= t[{pair_.alpha}] t[{partner}] on V[{space}]")
                try:
                    lhs = ratmat.power(m, sign)
                except SingularMatrixError:
                    out.append(RelationInstance(f"R3{suffix}", desc, False,
                                                "mu is singular"))
                    continue
                out.append(_eq_instance(f"R3{suffix}", desc, lhs, ratmat.mul(ta, tz)))

    # R4 first part: both routes across a box diamond agree
    box_nodes = list(enumerate_box(box))
    und: dict[Partition, set[Partition]] = {lam: set() for lam in box_nodes}
    for lam in box_nodes:
        for _, t_ in arrows_from(lam, box):
            und[lam].add(t_)
            und[t_].add(lam)
    rel4a = f"R4{suffix}-a" if flavor == "D" else "R4a"
    rel4b = f"R4{suffix}-b" if flavor == "D" else "R4b"
    for a in box_nodes:
        for c in box_nodes:
            if a == c:
                continue
            commons = sorted(und[a] & und[c], key=lambda m: (m.size, m.parts))
            for i, b1 in enumerate(commons):
                for b2 in commons[i + 1:]:
                    if {rep.dim(a), rep.dim(c)} == {0} or \
                       (rep.dim(b1) == 0 and rep.dim(b2) == 0):
                        continue
                    lhs = composite(rep, c, b1, a)
                    rhs = composite(rep, c, b2, a)
                    out.append(_eq_instance(
                        rel4a, f"routes {a} -> {b1}|{b2} -> {c} agree", lhs, rhs))

    # R4 second part: composites vanish when the completing corner leaves the
    # box (flavor D adds the ascending chains whose second step is foreign)
    for b in box_nodes:
        partners = sorted(und[b], key=lambda m: (m.size, m.parts))
        for i, a in enumerate(partners):
            for c in partners[i + 1:]:
                if rep.dim(b) == 0 or (rep.dim(a) == 0 and rep.dim(c) == 0):
                    continue
                completions = complete_diamond(b, a, c, flavor)
                if any(not box.contains(nu) for nu in completions):
                    out.append(_eq_instance(
                        rel4b, f"composite {a} -> {b} -> {c} vanishes (corner leaves box)",
                        composite(rep, a, b, c),
                        ratmat.zeros(rep.dim(a), rep.dim(c))))
                    out.append(_eq_instance(
                        rel4b, f"composite {c} -> {b} -> {a} vanishes (corner leaves box)",
                        composite(rep, c, b, a),
                        ratmat.zeros(rep.dim(c), rep.dim(a))))
    if flavor == "D":
        for lam in box_nodes:
            for pair_, mid in arrows_from(lam, box):
                if pair_.alpha.twice >= 0:
                    continue
                lam_pairs = set(pair_forest(lam, "D", box=box).pairs)
                for pair2, top_ in arrows_from(mid, box):
                    if LambdaPair(pair2.alpha, pair2.beta, "D") in lam_pairs:
                        continue
                    if rep.dim(mid) == 0 or (rep.dim(lam) == 0 and rep.dim(top_) == 0):
                        continue
                    out.append(_eq_instance(
                        rel4b, f"composite {lam} -> {mid} -> {top_} vanishes (foreign step)",
                        composite(rep, lam, mid, top_),
                        ratmat.zeros(rep.dim(lam), rep.dim(top_))))
                    out.append(_eq_instance(
                        rel4b, f"composite {top_} -> {mid} -> {lam} vanishes (foreign step)",
                        composite(rep, top_, mid, lam),
                        ratmat.zeros(rep.dim(top_), rep.dim(lam))))
    return RelationReport(flavor, tuple(out))


def _wall_partner(lam: Partition, pair_: LambdaPair, forest, box: Box) -> HalfInt:
    """The second loop index in the wall relation of an arrow."""
    if box.flavor == "A":
        parent = forest.parent_of(pair_)
        if parent is None:
            raise StructuralError(f"parent of {pair_} missing from window")
        return parent.beta
    return zeta(lam, pair_, box)


def simple_rep(mu_: Partition, box: Box) -> QuiverRep:
    """One-dimensional space at a single node, everything else trivial."""
    if not box.contains(mu_):
        raise ValueError(f"{mu_} not in {box}")
    return QuiverRep(box, {mu_: 1}, {}, {})


def enumerate_simples(box: Box) -> list[QuiverRep]:
    return [simple_rep(lam, box) for lam in enumerate_box(box)]


def check_unipotence(rep: QuiverRep, box: Optional[Box] = None) -> bool:
    """Every mu, both orientations of every arrow, is unipotent."""
    box = box or rep.box
    for lam in enumerate_box(box):
        for _, target in arrows_from(lam, box):
            for (a, b) in ((lam, target), (target, lam)):
                if rep.dim(a) and not ratmat.is_unipotent(mu(rep, a, b)):
                    return False
    return True


def t_from_mu_identity(rep: QuiverRep, lam: Partition, gamma: HalfInt,
                       box: Optional[Box] = None) -> bool:
    """Loop operators against the telescoping product over covering arrows.

    Exact identity: t[gamma]^(-phi(gamma)) on V[lam] equals the product of
    mu(lam, target)^(sign) over the box arrows whose pair straddles gamma.
    Flavor D requires gamma > 0.
    """
    box = box or rep.box
    if box.flavor == "D" and gamma.twice <= 0:
        raise ValueError("flavor D telescopes need a positive index")
    n = rep.dim(lam)
    prod = ratmat.identity(n)
    for pair_, target in arrows_from(lam, box):
        if pair_.alpha <= gamma <= pair_.beta:
            prod = ratmat.mul(prod, ratmat.power(mu(rep, lam, target),
                                                 edge_sign(pair_.beta)))
    lhs = ratmat.power(rep.t_at(gamma, lam), -lam.phi(gamma))
    return lhs == prod


def derive_t_maps(box: Box, dims: dict[Partition, int],
                  p: dict[tuple[Partition, Partition], Matrix]) -> dict:
    """Loop operators forced by the telescoping identity, given the p maps."""
    probe = QuiverRep(box, dims, {}, p)
    t: dict[tuple[HalfInt, Partition], Matrix] = {}
    for lam, d in dims.items():
        if d == 0:
            continue
        for gamma in t_generator_range(box):
            prod = ratmat.identity(d)
            for pair_, target in arrows_from(lam, box):
                if pair_.alpha <= gamma <= pair_.beta:
                    prod = ratmat.mul(prod, ratmat.power(mu(probe, lam, target),
                                                         edge_sign(pair_.beta)))
            value = ratmat.power(prod, -lam.phi(gamma))
            if not ratmat.is_identity(value):
                t[(gamma, lam)] = value
    return t
