"""Command line explorer: pair forests, moves, posets, orbit censuses,
fundamental groups, the path algebra, consistency suites, and the
finite-field oracle.

Exit codes: 0 on success, 1 when a check or suite fails, 2 on usage errors.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import __version__
from .export import (ExportBundle, forest_json, forest_text, matrix_json,
                     poset_dot, poset_json, provenance)
from .fforacle import ff_orbit_oracle, rank_vectors_constant, zero_one_members
from .halfint import HalfInt, parse_halfint
from .orbits import (Region, all_zero_one_matrices, closure_leq,
                     codim_one_degenerations, codim_one_orbits,
                     codim_two_orbits, is_open_in_slice, orbit_dim,
                     orbit_dim_dual, slice_census, top_matrix)
from .pairs import LambdaPair, apply_move, arrows_from, complete_diamond, pair_forest
from .partitions import Box, Partition, enumerate_box
from .paths import (PathElement, algebra_dim_bound, reduce_to_valley_free,
                    valley_free_basis, validate_path)
from .pi1 import loop_class, pi1_presentation
from .quiver import QuiverRep, check_relations
from .suites import SUITES, SizeGuardError, run_suite


def _parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as e:
        raise click.UsageError(str(e))


def _parse_box(text: str | None, flavor: str | None, need: bool = True) -> Box | None:
    if text is None:
        if need:
            raise click.UsageError("--box is required")
        return None
    try:
        box = Box.parse(text)
    except ValueError as e:
        raise click.UsageError(str(e))
    if flavor and box.flavor != flavor:
        raise click.UsageError(f"box {box} conflicts with --type {flavor}")
    return box


def _parse_pair(text: str, flavor: str) -> LambdaPair:
    try:
        a, b = text.split(",")
        return LambdaPair(parse_halfint(a), parse_halfint(b), flavor)
    except ValueError as e:
        raise click.UsageError(f"bad pair literal {text!r}: {e}")


def _emit(bundle: ExportBundle, out: str | None) -> None:
    bundle.write(out)


@click.group()
@click.version_option(version=__version__)
def main():
    """Exact combinatorics of cell posets, orbit fibers, and their algebras."""


@main.command("pairs")
@click.argument("lam")
@click.option("--type", "flavor", type=click.Choice(["A", "D"]), default="A")
@click.option("--box", "boxtext", default=None, help="box literal, e.g. A2x2 or D3")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--out", default=None)
def cmd_pairs(lam, flavor, boxtext, fmt, out):
    """Pair forest of a partition, with parents and box flags."""
    p = _parse_partition(lam)
    box = _parse_box(boxtext, flavor, need=False)
    try:
        forest = pair_forest(p, flavor, box=box)
    except ValueError as e:
        raise click.UsageError(str(e))
    payload = (json.dumps(forest_json(forest), indent=2, sort_keys=True)
               if fmt == "json" else forest_text(forest))
    _emit(ExportBundle(fmt, payload, provenance(box, flavor)), out)


@main.command("move")
@click.argument("lam")
@click.option("--pair", "pairtext", required=True, help="e.g. -3/2,3/2")
@click.option("--type", "flavor", type=click.Choice(["A", "D"]), default="A")
def cmd_move(lam, pairtext, flavor):
    """Apply a pair move to a partition."""
    p = _parse_partition(lam)
    pr = _parse_pair(pairtext, flavor)
    try:
        click.echo(str(apply_move(p, pr)))
    except ValueError as e:
        raise click.UsageError(str(e))


@main.command("diamond")
@click.argument("lam")
@click.argument("lam1")
@click.argument("lam2")
@click.option("--type", "flavor", type=click.Choice(["A", "D"]), default="A")
def cmd_diamond(lam, lam1, lam2, flavor):
    """Complete two neighbors of a partition to four-cycles."""
    try:
        found = complete_diamond(_parse_partition(lam), _parse_partition(lam1),
                                 _parse_partition(lam2), flavor)
    except ValueError as e:
        raise click.UsageError(str(e))
    if not found:
        click.echo("no completion")
    for nu in found:
        click.echo(str(nu))


def _orbit_nodes(lam: Partition, box: Box, dual: bool):
    region = Region(lam, box)
    mats = all_zero_one_matrices(region)
    labels = {}
    top = top_matrix(lam, box)
    labels[top.key()] = "top"
    for o in codim_one_orbits(lam, box):
        labels[o.matrix.key()] = o.label()
    for o in codim_two_orbits(lam, box):
        labels[o.matrix.key()] = str(o.label)
    slices = slice_census(lam, box) if dual else {}
    slice_of = {m.key(): str(t) for t, ms in slices.items() for m in ms}
    nodes = []
    for m in mats:
        dim = orbit_dim_dual(m) if dual else orbit_dim(m)
        node = {"id": str(m), "support": matrix_json(m), "dim": dim,
                "label": slice_of[m.key()] if dual else labels.get(m.key(), "general")}
        nodes.append(node)
    order = {}
    for a in mats:
        for b in mats:
            if a.key() != b.key() and closure_leq(a, b, dual=dual):
                order.setdefault(b.key(), set()).add(a.key())
    covers = []
    for b in mats:
        below = order.get(b.key(), set())
        for ak in sorted(below):
            if not any(ak in order.get(mk, set()) for mk in below if mk != ak):
                covers.append([str(dict((m.key(), m) for m in mats)[ak]), str(b)])
    return mats, nodes, sorted(covers)


@main.command("poset")
@click.argument("scope", type=click.Choice(["cells", "orbits"]))
@click.option("--box", "boxtext", required=True)
@click.option("--lambda", "lamtext", default=None)
@click.option("--fiber", type=click.Choice(["primal", "dual"]), default="primal")
@click.option("--format", "fmt", type=click.Choice(["json", "dot", "text"]), default="text")
@click.option("--out", default=None)
def cmd_poset(scope, boxtext, lamtext, fiber, fmt, out):
    """Hasse data of the cell arrow graph or of one fiber's orbit poset."""
    box = _parse_box(boxtext, None)
    if len(enumerate_box(box)) > 10 ** 4:
        raise click.UsageError(f"{box} is too large; the guard is 10^4 partitions")
    if scope == "cells":
        nodes = [{"id": str(m), "dim": box.cell_dim(m), "label": str(m)}
                 for m in enumerate_box(box)]
        covers = sorted([str(lam), str(t)] for lam in enumerate_box(box)
                        for _, t in arrows_from(lam, box))
        kind = "cells"
    else:
        if lamtext is None:
            raise click.UsageError("poset orbits needs --lambda")
        lam = _parse_partition(lamtext)
        if not box.contains(lam):
            raise click.UsageError(f"{lam} is not in {box}")
        _, nodes, covers = _orbit_nodes(lam, box, fiber == "dual")
        kind = f"orbits:{fiber}"
    if fmt == "json":
        payload = poset_json(nodes, covers, box, kind)
    elif fmt == "dot":
        payload = poset_dot(nodes, covers, f"{kind} {box}")
    else:
        lines = [f"{kind} in {box}: {len(nodes)} nodes"]
        for n in nodes:
            lines.append(f"  {n['id']}  dim={n['dim']}  {n['label']}")
        lines.append(f"covers: {len(covers)}")
        lines.extend(f"  {a} -> {b}" for a, b in covers)
        payload = "\n".join(lines)
    _emit(ExportBundle(fmt, payload, provenance(box, box.flavor)), out)


@main.command("orbits")
@click.option("--box", "boxtext", required=True)
@click.option("--lambda", "lamtext", required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--out", default=None)
def cmd_orbits(boxtext, lamtext, fmt, out):
    """Codimension <= 2 classification of the fiber over one cell."""
    box = _parse_box(boxtext, None)
    lam = _parse_partition(lamtext)
    if not box.contains(lam):
        raise click.UsageError(f"{lam} is not in {box}")
    top = top_matrix(lam, box)
    ones = codim_one_orbits(lam, box)
    twos = codim_two_orbits(lam, box)
    if fmt == "json":
        doc = {
            "schema": "schuborb.orbits/1",
            "provenance": provenance(box, box.flavor),
            "cell": str(lam),
            "top": {"support": matrix_json(top), "dim": orbit_dim(top)},
            "codim1": [{"pair": str(o.pair), "support": matrix_json(o.matrix),
                        "dual_cell": list(o.dual_cell), "target": str(o.target)}
                       for o in ones],
            "codim2": [{"label": str(o.label), "support": matrix_json(o.matrix),
                        "covering": [str(p) for p in o.covering],
                        "dual_target": str(o.dual_target),
                        "diamond": [str(x) for x in o.diamond] if o.diamond else None}
                       for o in twos],
        }
        payload = json.dumps(doc, indent=2, sort_keys=True)
    else:
        lines = [f"fiber over {lam} in {box}: open orbit {top}, dim {orbit_dim(top)}"]
        for o in ones:
            lines.append(f"  codim1 {o.pair}: {o.matrix} dual cell {o.dual_cell}"
                         f" slice {o.target}")
        for o in twos:
            dia = " diamond " + "{" + ",".join(str(x) for x in o.diamond) + "}" \
                if o.diamond else " (no diamond)"
            lines.append(f"  {o.label}: {o.matrix} covers "
                         f"{[str(p) for p in o.covering]} slice {o.dual_target}{dia}")
        payload = "\n".join(lines)
    _emit(ExportBundle(fmt, payload, provenance(box, box.flavor)), out)


@main.command("pi1")
@click.option("--box", "boxtext", required=True)
@click.option("--lambda", "lamtext", required=True)
@click.option("--loop", "looptext", default=None, help="pair literal for a loop class")
def cmd_pi1(boxtext, lamtext, looptext):
    """Abelian presentation of the open orbit's fundamental group."""
    box = _parse_box(boxtext, None)
    lam = _parse_partition(lamtext)
    if not box.contains(lam):
        raise click.UsageError(f"{lam} is not in {box}")
    pres = pi1_presentation(lam, box)
    click.echo(f"generators: {[str(g) for g in pres.generators]}")
    for row in pres.relations:
        word = " ".join(f"g[{g}]^{c}" for g, c in zip(pres.generators, row) if c)
        click.echo(f"relation: {word or '1'} = 1")
    click.echo(f"free abelian of rank {pres.quotient_rank()}")
    if looptext:
        pr = _parse_pair(looptext, box.flavor)
        try:
            word = loop_class(lam, pr, box)
        except ValueError as e:
            raise click.UsageError(str(e))
        body = " ".join(f"g[{g}]^{c}" for g, c in sorted(word.items(),
                                                         key=lambda kv: kv[0].twice))
        click.echo(f"loop around wall {pr}: {body}")


@main.group("algebra")
def cmd_algebra():
    """Valley-free basis, path reduction, and representation checking."""


@cmd_algebra.command("basis")
@click.option("--box", "boxtext", required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--out", default=None)
def cmd_algebra_basis(boxtext, fmt, out):
    box = _parse_box(boxtext, None)
    basis = valley_free_basis(box)
    if fmt == "json":
        doc = {"schema": "schuborb.basis/1", "provenance": provenance(box, box.flavor),
               "dim_bound": algebra_dim_bound(box),
               "paths": [[str(n) for n in p] for p in basis]}
        payload = json.dumps(doc, indent=2, sort_keys=True)
    else:
        lines = [f"{len(basis)} valley-free paths in {box} "
                 f"(spanning bound for the algebra dimension)"]
        lines.extend("  (" + " | ".join(str(n) for n in p) + ")" for p in basis)
        payload = "\n".join(lines)
    _emit(ExportBundle(fmt, payload, provenance(box, box.flavor)), out)


@cmd_algebra.command("reduce")
@click.option("--box", "boxtext", required=True)
@click.option("--path", "pathtext", required=True,
              help="semicolon-separated partitions, e.g. '1;0;1'")
def cmd_algebra_reduce(boxtext, pathtext, out=None):
    box = _parse_box(boxtext, None)
    try:
        nodes = tuple(Partition.parse(s) for s in pathtext.split(";"))
        validate_path(nodes, box)
    except ValueError as e:
        raise click.UsageError(str(e))
    reduced = reduce_to_valley_free(PathElement.from_path(nodes), box)
    if reduced.is_zero():
        click.echo("0")
    for p, c in reduced.terms:
        click.echo(f"{c} * (" + " | ".join(str(n) for n in p) + ")")


@cmd_algebra.command("check-rep")
@click.argument("repfile", type=click.Path(exists=True))
def cmd_algebra_check_rep(repfile):
    """Check a representation (JSON) against every relation instance."""
    with open(repfile, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        rep = QuiverRep.from_json(data)
        report = check_relations(rep)
    except (KeyError, ValueError) as e:
        raise click.UsageError(f"malformed representation: {e}")
    for inst in report.failures:
        click.echo(f"FAIL {inst.relation}: {inst.instance} ({inst.detail})")
    click.echo(f"{len(report.instances)} instances, "
               f"{len(report.failures)} failures")
    if report.failures:
        sys.exit(1)


@main.command("check")
@click.argument("suite", type=click.Choice(sorted(SUITES)))
@click.option("--box", "boxtext", required=True)
@click.option("--jobs", type=int, default=1)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def cmd_check(suite, boxtext, jobs, fmt):
    """Run one registered consistency suite over a box."""
    box = _parse_box(boxtext, None)
    try:
        result = run_suite(suite, box, jobs=jobs)
    except SizeGuardError as e:
        raise click.UsageError(str(e))
    if fmt == "json":
        click.echo(json.dumps(result.to_json(), indent=2, sort_keys=True))
    else:
        click.echo(f"suite {suite} on {box}: {result.cases} cases, "
                   f"{len(result.failures)} failures, {result.seconds:.2f}s")
        for case, msg in result.failures:
            click.echo(f"  FAIL {case}: {msg}")
    if not result.passed:
        sys.exit(1)


@main.command("oracle")
@click.option("--box", "boxtext", required=True)
@click.option("--lambda", "lamtext", required=True)
@click.option("--field", type=click.Choice(["2", "3"]), default="2")
@click.option("--dual", is_flag=True, default=False)
def cmd_oracle(boxtext, lamtext, field, dual):
    """Brute-force finite-field orbit partition of one fiber."""
    box = _parse_box(boxtext, None)
    lam = _parse_partition(lamtext)
    if not box.contains(lam):
        raise click.UsageError(f"{lam} is not in {box}")
    try:
        part = ff_orbit_oracle(lam, box, int(field), dual=dual)
    except ValueError as e:
        raise click.UsageError(str(e))
    members = zero_one_members(part)
    expected = len(all_zero_one_matrices(Region(lam, box)))
    ranks_ok = rank_vectors_constant(part)
    unique = all(len(ms) == 1 for ms in members)
    click.echo(f"{part.orbit_count()} orbits over F{field} "
               f"({'dual' if dual else 'primal'} fiber), "
               f"{expected} 0-1 matrices")
    click.echo(f"one 0-1 point per orbit: {unique}; rank vectors constant "
               f"and separating: {ranks_ok}")
    if part.orbit_count() != expected or not unique or not ranks_ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
