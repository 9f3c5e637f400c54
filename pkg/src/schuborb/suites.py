"""Machine-checkable consistency suites over a whole box.

Each suite replays one family of invariants exhaustively at box scale and
reports failures with reproduction data.  Cases are pure and shard by
partition across worker threads; results merge by sorted case id.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .fforacle import ff_orbit_oracle, rank_vectors_constant, zero_one_members
from .fixtures import fixture_reps
from .halfint import HalfInt
from .orbits import (Region, all_zero_one_matrices, bruhat_leq, closure_leq,
                     codim_one_degenerations, codim_one_orbits,
                     codim_two_orbits, hat_completion, is_open_in_slice,
                     matrix_from_tau, orbit_dim, slice_census, tau,
                     top_matrix, zero_matrix)
from .pairs import apply_move, arrows_from, pair_forest
from .partitions import Box, Partition, enumerate_box
from .paths import (PathElement, evaluations_equal, has_valley, length_cap,
                    reduce_to_valley_free, valley_free_basis, _adjacency)
from .pi1 import loop_class, pi1_presentation
from .quiver import (check_relations, check_unipotence, enumerate_simples,
                     simple_rep, t_generator_range, t_from_mu_identity)
from . import ratmat


class SizeGuardError(ValueError):
    pass


@dataclass
class SuiteResult:
    suite: str
    box: str
    cases: int
    failures: list[tuple[str, str]]
    seconds: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"schema": "schuborb.suite/1", "suite": self.suite,
                "box": self.box, "cases": self.cases,
                "failures": [{"case": c, "message": m} for c, m in self.failures],
                "seconds": round(self.seconds, 3),
                "status": "pass" if self.passed else "fail"}


def _run_sharded(name: str, box: Box, case_fn, case_ids, jobs: int = 1) -> SuiteResult:
    """Run case_fn(case_id) -> list[(case, message)] over all ids."""
    t0 = time.perf_counter()
    results: dict = {}
    ids = list(case_ids)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for cid, fails in zip(ids, pool.map(case_fn, ids)):
                results[str(cid)] = fails
    else:
        for cid in ids:
            results[str(cid)] = case_fn(cid)
    failures = []
    for cid in sorted(results):
        failures.extend(results[cid])
    return SuiteResult(name, str(box), len(ids), failures,
                       time.perf_counter() - t0)


def _guard_box(box: Box, limit: int = 10 ** 4) -> None:
    if len(enumerate_box(box)) > limit:
        raise SizeGuardError(f"{box} has more than {limit} partitions")


def suite_pairs(box: Box, jobs: int = 1) -> SuiteResult:
    """Every window position sits in exactly one pair; pairs nest; results
    are stable under window enlargement."""
    _guard_box(box)
    lo, hi = box.window()

    def case(lam: Partition):
        fails = []
        forest = pair_forest(lam, box.flavor, box=box)
        covered: dict[int, int] = {}
        for p in forest.pairs:
            for end in (p.alpha, p.beta):
                covered[end.twice] = covered.get(end.twice, 0) + 1
        if box.flavor == "D":
            folded: dict[int, int] = {}
            for t, n in covered.items():
                folded[abs(t)] = folded.get(abs(t), 0) + n
            covered = folded
        for t, n in covered.items():
            if n != 1:
                fails.append((f"{lam}", f"position {t}/2 sits in {n} pairs"))
        # positions in the box range must be covered by materialized pairs
        if box.flavor == "A":
            inner = range(-2 * box.k + 1, 2 * box.l, 2)
        else:
            inner = range(1, 2 * box.k, 2)
        missing = [t for t in inner if t not in covered]
        if missing:
            fails.append((f"{lam}", f"uncovered box positions {missing}"))
        for p in forest.pairs:
            for q in forest.pairs:
                if p.alpha < q.alpha <= p.beta and not q.beta <= p.beta:
                    fails.append((f"{lam}", f"pairs {p} and {q} overlap"))
        wide = pair_forest(lam, box.flavor,
                           window=(lo + (-2), hi + 2), box=box)
        if set(forest.in_box()) != set(wide.in_box()):
            fails.append((f"{lam}", "box pairs unstable under window growth"))
        return fails

    return _run_sharded("pairs", box, case, enumerate_box(box), jobs)


def suite_closure_triple(box: Box, jobs: int = 1) -> SuiteResult:
    """Rank order == window permutation order == degeneration reachability."""
    _guard_box(box, 200)

    def case(lam: Partition):
        fails = []
        region = Region(lam, box)
        mats = all_zero_one_matrices(region)
        if len(mats) > 2000:
            return [(f"{lam}", f"{len(mats)} matrices exceeds the guard")]
        sig = {m.key(): hat_completion(m) for m in mats}
        reach = {m.key(): {m.key()} for m in mats}
        for m in mats:
            for d in codim_one_degenerations(m):
                reach[m.key()].add(d.key())
        changed = True
        while changed:
            changed = False
            for k in reach:
                add = set()
                for j in reach[k]:
                    add |= reach[j]
                if not add <= reach[k]:
                    reach[k] |= add
                    changed = True
        for a in mats:
            for b in mats:
                by_rank = closure_leq(b, a)
                by_perm = bruhat_leq(sig[a.key()], sig[b.key()])
                by_reach = b.key() in reach[a.key()]
                if not (by_rank == by_perm == by_reach):
                    fails.append((f"{lam}|{a}|{b}",
                                  f"rank={by_rank} perm={by_perm} reach={by_reach}"))
        return fails

    return _run_sharded("closure-triple", box, case, enumerate_box(box), jobs)


def suite_tau_roundtrip(box: Box, jobs: int = 1) -> SuiteResult:
    _guard_box(box, 200)

    def case(lam: Partition):
        fails = []
        region = Region(lam, box)
        for m in all_zero_one_matrices(region):
            if matrix_from_tau(tau(m), region).key() != m.key():
                fails.append((f"{lam}|{m}", "reach-set roundtrip failed"))
        return fails

    return _run_sharded("tau-roundtrip", box, case, enumerate_box(box), jobs)


def suite_dim_length(box: Box, jobs: int = 1) -> SuiteResult:
    """Inversion count against orbit dimension.

    Rectangular boxes satisfy len = k*l - dim on the nose.  The mirror-
    symmetric window permutations have no stable absolute length, so flavor
    D checks the base-point-relative form len(zero) - len(A) = 2 dim."""
    _guard_box(box, 200)

    def case(lam: Partition):
        fails = []
        region = Region(lam, box)
        base = hat_completion(zero_matrix(region)).length()
        for m in all_zero_one_matrices(region):
            ln = hat_completion(m).length()
            dim = orbit_dim(m)
            if box.flavor == "A":
                ok = ln == box.k * box.l - dim
            else:
                ok = base - ln == 2 * dim
            if not ok:
                fails.append((f"{lam}|{m}", f"length {ln}, dim {dim}, base {base}"))
        return fails

    return _run_sharded("dim-length", box, case, enumerate_box(box), jobs)


def suite_codim1_count(box: Box, jobs: int = 1) -> SuiteResult:
    _guard_box(box, 500)

    def case(lam: Partition):
        fails = []
        ones = codim_one_orbits(lam, box)
        forest = pair_forest(lam, box.flavor, box=box)
        if len(ones) != len(forest.in_box()):
            fails.append((f"{lam}", f"{len(ones)} orbits vs "
                          f"{len(forest.in_box())} box pairs"))
        top_dim = orbit_dim(top_matrix(lam, box))
        neighbors = {t for _, t in arrows_from(lam, box)}
        if {o.target for o in ones} != neighbors:
            fails.append((f"{lam}", "dual labels differ from arrow targets"))
        for o in ones:
            if orbit_dim(o.matrix) != top_dim - 1:
                fails.append((f"{lam}|{o.pair}", "dimension is not top-1"))
        return fails

    return _run_sharded("codim1-count", box, case, enumerate_box(box), jobs)


def suite_codim2_class(box: Box, jobs: int = 1) -> SuiteResult:
    def case(lam: Partition):
        fails = []
        for orb in codim_two_orbits(lam, box):
            cid = f"{lam}|{orb.label}"
            if len(orb.covering) not in (1, 2):
                fails.append((cid, f"{len(orb.covering)} covering orbits"))
            if orb.label.kind == "child":
                if orb.diamond is not None or len(orb.covering) != 1:
                    fails.append((cid, "chain orbit must have one cover, no diamond"))
            elif orb.diamond is None:
                fails.append((cid, "missing diamond"))
            else:
                a, b, c, d = orb.diamond
                from .pairs import are_adjacent
                edges = [(a, b), (b, c), (c, d), (d, a)]
                if len({a, b, c, d}) != 4 or \
                   not all(are_adjacent(x, y, box.flavor) for x, y in edges):
                    fails.append((cid, f"diamond {orb.diamond} is not a four-cycle"))
        return fails

    return _run_sharded("codim2-class", box, case, enumerate_box(box), jobs)


def suite_parity(box: Box, jobs: int = 1) -> SuiteResult:
    def case(lam: Partition):
        fails = []
        for pair, target in arrows_from(lam, box):
            d = box.cell_dim(target) - box.cell_dim(lam)
            if d % 2 == 0 or d <= 0:
                fails.append((f"{lam}|{pair}", f"cell dimension change {d}"))
        return fails

    return _run_sharded("parity", box, case, enumerate_box(box), jobs)


def suite_pi1(box: Box, jobs: int = 1) -> SuiteResult:
    def case(lam: Partition):
        fails = []
        pres = pi1_presentation(lam, box)
        rank = pres.quotient_rank()
        expected = len(top_matrix(lam, box).support)
        if rank != expected:
            fails.append((f"{lam}", f"rank {rank} != support size {expected}"))
        for pair in pair_forest(lam, box.flavor, box=box).in_box():
            word = loop_class(lam, pair, box)
            if not word:
                fails.append((f"{lam}|{pair}", "empty loop word"))
        return fails

    return _run_sharded("pi1", box, case, enumerate_box(box), jobs)


def suite_relations(box: Box, jobs: int = 1) -> SuiteResult:
    fixtures = dict(fixture_reps(box))

    def case(name: str):
        rep = fixtures[name]
        fails = []
        report = check_relations(rep)
        for f in report.failures:
            fails.append((name, f"{f.relation}: {f.instance}"))
        if not check_unipotence(rep):
            fails.append((name, "a dip operator is not unipotent"))
        for lam in enumerate_box(box):
            if rep.dim(lam) == 0:
                continue
            for g in t_generator_range(box):
                if not t_from_mu_identity(rep, lam, g):
                    fails.append((name, f"telescope fails at ({lam}, {g})"))
        return fails

    return _run_sharded("relations", box, case, sorted(fixtures), jobs)


def suite_rewrite(box: Box, jobs: int = 1, max_len: int = 4) -> SuiteResult:
    fixtures = fixture_reps(box)
    adj = _adjacency(box)

    def paths_from(start: Partition):
        out = []

        def rec(path):
            if len(path) >= 2:
                out.append(tuple(path))
            if len(path) - 1 == max_len:
                return
            for nxt in sorted(adj[path[-1]], key=lambda m: (m.size, m.parts)):
                path.append(nxt)
                rec(path)
                path.pop()
        rec([start])
        return out

    def case(lam: Partition):
        fails = []
        for p in paths_from(lam):
            e = PathElement.from_path(p)
            r = reduce_to_valley_free(e, box)
            for q, _ in r.terms:
                if has_valley(q) is not None:
                    fails.append((f"{lam}|{p}", f"valley survives in {q}"))
                if len(q) < len(p):
                    fails.append((f"{lam}|{p}", "rewriting shortened a path"))
            if reduce_to_valley_free(r, box) != r:
                fails.append((f"{lam}|{p}", "rewriting is not idempotent"))
            for name, rep in fixtures:
                if not evaluations_equal(e, r, rep):
                    fails.append((f"{lam}|{p}", f"evaluation differs on {name}"))
        return fails

    return _run_sharded("rewrite", box, case, enumerate_box(box), jobs)


def suite_simples(box: Box, jobs: int = 1) -> SuiteResult:
    from .quiver import QuiverRep

    def case(lam: Partition):
        fails = []
        rep = simple_rep(lam, box)
        if not check_relations(rep).passed:
            fails.append((f"{lam}", "simple fails the relations"))
        # a one-dimensional object at this node with a twisted loop operator
        # must be rejected: the simples exhaust the one-dimensional objects
        for g in t_generator_range(box):
            twisted = QuiverRep(box, dict(rep.dims),
                                {(g, lam): ratmat.mat([[Fraction(2)]])},
                                dict(rep.p))
            if check_relations(twisted).passed:
                fails.append((f"{lam}", f"twisted t[{g}] passes unexpectedly"))
        return fails

    ids = enumerate_box(box)
    result = _run_sharded("simples", box, case, ids, jobs)
    if len(enumerate_simples(box)) != len(ids):
        result.failures.append(("count", "simple count differs from node count"))
    return result


def suite_ff_oracle(box: Box, jobs: int = 1, field: int = 2) -> SuiteResult:
    if box.flavor != "A":
        raise SizeGuardError("the finite-field oracle covers rectangular boxes")

    def case(lam: Partition):
        fails = []
        region = Region(lam, box)
        if len(region.cells()) > 9:
            return [(f"{lam}", "region exceeds the oracle guard")]
        expected = len(all_zero_one_matrices(region))
        for dual in (False, True):
            part = ff_orbit_oracle(lam, box, field, dual=dual)
            tag = "dual" if dual else "primal"
            if part.orbit_count() != expected:
                fails.append((f"{lam}|{tag}",
                              f"{part.orbit_count()} orbits vs {expected} matrices"))
            members = zero_one_members(part)
            if any(len(ms) != 1 for ms in members):
                fails.append((f"{lam}|{tag}", "an orbit misses a unique 0-1 point"))
            if not rank_vectors_constant(part):
                fails.append((f"{lam}|{tag}", "rank vector varies inside an orbit"))
        return fails

    return _run_sharded("ff-oracle", box, case, enumerate_box(box), jobs)


SUITES = {
    "pairs": suite_pairs,
    "closure-triple": suite_closure_triple,
    "tau-roundtrip": suite_tau_roundtrip,
    "dim-length": suite_dim_length,
    "codim1-count": suite_codim1_count,
    "codim2-class": suite_codim2_class,
    "parity": suite_parity,
    "pi1": suite_pi1,
    "relations": suite_relations,
    "rewrite": suite_rewrite,
    "simples": suite_simples,
    "ff-oracle": suite_ff_oracle,
}


def run_suite(name: str, box: Box, jobs: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](box, jobs=jobs)
