"""Pairs, moves, arrows, diamonds; definitions replayed as oracles."""

import pytest
from hypothesis import given, settings, strategies as st

from schuborb import (Box, LambdaPair, Partition, apply_move, arrows_from,
                      complete_diamond, enumerate_box, lambda_pairs,
                      lambda_pairs_d, phi)
from schuborb.halfint import HalfInt, halfint_range
from schuborb.pairs import (InvalidMoveError, NotSymmetricError, neighbors,
                            pair_forest)

H = HalfInt


def P(*parts):
    return Partition.of(*parts)


def oracle_pairs(lam, lo, hi):
    """Definition replay: the partner of a step up is the first position to
    its right with balanced profile sum in between."""
    out = set()
    for a in halfint_range(lo, hi):
        if phi(lam, a) != -1:
            continue
        total = 0
        b = a
        while b <= hi:
            total += phi(lam, b)
            if total == 0 and b > a:
                out.add((a, b))
                break
            b = b + 1
    return out


def oracle_pairs_d(lam, lo, hi):
    """The two membership clauses, verbatim."""
    plain = oracle_pairs(lam, lo, hi)
    out = set()
    for (a, b) in plain:
        if a.twice > 0 and b.twice > 0:
            out.add((a, b))
    for a in halfint_range(lo, HalfInt(-1)):
        for b in halfint_range(HalfInt(1), hi):
            if not (b > -a and (-a).twice > 0):
                continue
            if (a, -a) not in plain or (-b, b) not in plain:
                continue
            if a.plus_half() % 2:
                continue
            total = 0
            g = -a + 1
            while g <= b:
                total += phi(lam, g)
                g = g + 1
            if total == 1:
                out.add((a, b))
    return out


class TestPairsA:
    def test_worked_example_311(self):
        got = {(p.alpha, p.beta) for p in lambda_pairs(P(3, 1, 1)).pairs}
        assert got == {(H(-1), H(1)), (H(-3), H(3)), (H(-7), H(-5)), (H(5), H(7))}

    def test_zero_partition_chain(self):
        forest = lambda_pairs(Partition(), window=(H(-11), H(11)))
        got = [(p.alpha, p.beta) for p in forest.pairs]
        assert got == [(H(-2 * i - 1), H(2 * i + 1)) for i in range(6)]

    def test_box_filter_311(self):
        forest = lambda_pairs(P(3, 1, 1), box=Box("A", 3, 3))
        got = {(p.alpha, p.beta) for p in forest.in_box()}
        assert got == {(H(-1), H(1)), (H(-3), H(3))}

    def test_matches_definition_oracle(self):
        lo, hi = H(-17), H(17)
        for lam in enumerate_box(Box("A", 3, 3)):
            got = {(p.alpha, p.beta) for p in lambda_pairs(lam, window=(lo, hi)).pairs}
            assert got == oracle_pairs(lam, lo, hi)

    def test_every_position_in_one_pair(self):
        # inner positions are covered exactly once
        for lam in enumerate_box(Box("A", 4, 4)):
            forest = lambda_pairs(lam, window=(H(-21), H(21)))
            seen = {}
            for p in forest.pairs:
                for end in (p.alpha, p.beta):
                    seen[end] = seen.get(end, 0) + 1
            for t in range(-13, 14, 2):
                assert seen.get(H(t), 0) == 1, (lam, t)
            assert all(n == 1 for n in seen.values())

    def test_nesting(self):
        for lam in enumerate_box(Box("A", 4, 4)):
            forest = lambda_pairs(lam, window=(H(-21), H(21)))
            for p in forest.pairs:
                for q in forest.pairs:
                    if p.alpha < q.alpha <= p.beta:
                        assert q.beta <= p.beta, (lam, p, q)


class TestPairsD:
    def test_worked_example_332(self):
        forest = lambda_pairs_d(P(3, 3, 2), window=(H(-25), H(25)))
        small = {(p.alpha, p.beta) for p in forest.pairs if p.beta < H(13)}
        assert small == {(H(5), H(7)), (H(3), H(9)), (H(-1), H(11))}

    def test_zero_partition(self):
        forest = lambda_pairs_d(Partition(), window=(H(-25), H(25)))
        got = [(p.alpha, p.beta) for p in forest.pairs][:3]
        assert got == [(H(-1), H(3)), (H(-5), H(7)), (H(-9), H(11))]

    def test_two_kinds_in_22(self):
        forest = lambda_pairs_d(P(2, 2), window=(H(-25), H(25)))
        got = {(p.alpha, p.beta) for p in forest.pairs}
        assert (H(3), H(5)) in got          # both entries positive
        assert (H(-9), H(11)) in got        # spliced mirror pairs

    def test_rejects_asymmetric(self):
        with pytest.raises(NotSymmetricError):
            lambda_pairs_d(P(2, 1))
        with pytest.raises(NotSymmetricError):
            lambda_pairs_d(P(1))  # symmetric but odd diagonal

    def test_matches_definition_oracle(self):
        lo, hi = H(-29), H(29)
        for k in (2, 3, 4):
            for lam in enumerate_box(Box("D", k)):
                got = {(p.alpha, p.beta)
                       for p in lambda_pairs_d(lam, window=(lo, hi)).pairs}
                want = oracle_pairs_d(lam, lo, hi)
                # drop oracle pairs whose defining mirror data leaves the window
                assert {g for g in got if g[1] < H(25)} >= \
                    {w for w in want if w[1] < H(25)}
                assert got <= want

    def test_every_magnitude_once(self):
        for lam in enumerate_box(Box("D", 4)):
            forest = lambda_pairs_d(lam, window=(H(-29), H(29)))
            seen = {}
            for p in forest.pairs:
                for end in (p.alpha, p.beta):
                    seen[abs(end.twice)] = seen.get(abs(end.twice), 0) + 1
            for t in range(1, 20, 2):
                assert seen.get(t, 0) == 1, (lam, t)


class TestMoves:
    def test_fig_move_311(self):
        assert apply_move(P(3, 1, 1), LambdaPair(H(-3), H(3))) == P(3, 3, 2)

    def test_single_box(self):
        assert apply_move(Partition(), LambdaPair(H(-1), H(1))) == P(1)

    def test_d_move_makes_22(self):
        assert apply_move(Partition(), LambdaPair(H(-1), H(3), "D")) == P(2, 2)

    def test_invalid_move_rejected(self):
        with pytest.raises(InvalidMoveError):
            apply_move(P(3, 1, 1), LambdaPair(H(-1), H(3)))

    def test_move_against_profile_flip_oracle(self):
        # recompute the target profile from scratch and compare pointwise
        window = halfint_range(H(-21), H(21))
        for lam in enumerate_box(Box("A", 3, 3)):
            for pair, target in arrows_from(lam, Box("A", 3, 3)):
                for a in window:
                    want = -phi(lam, a) if a in (pair.alpha, pair.beta) else phi(lam, a)
                    assert phi(target, a) == want, (lam, pair, a)

    def test_d_move_against_profile_flip_oracle(self):
        window = halfint_range(H(-21), H(21))
        for lam in enumerate_box(Box("D", 4)):
            for pair, target in arrows_from(lam, Box("D", 4)):
                flips = {pair.alpha, pair.beta, -pair.alpha, -pair.beta}
                for a in window:
                    want = -phi(lam, a) if a in flips else phi(lam, a)
                    assert phi(target, a) == want, (lam, pair, a)

    def test_size_change_is_pair_width_and_odd(self):
        box = Box("A", 4, 4)
        for lam in enumerate_box(box):
            for pair, target in arrows_from(lam, box):
                d = target.size - lam.size
                assert d == pair.beta - pair.alpha
                assert d % 2 == 1

    def test_d_cell_dim_change_odd(self):
        box = Box("D", 4)
        for lam in enumerate_box(box):
            for _, target in arrows_from(lam, box):
                d = box.cell_dim(target) - box.cell_dim(lam)
                assert d % 2 == 1, (lam, target)


class TestArrows:
    def test_zero_in_a22(self):
        got = {(str(p), str(t)) for p, t in arrows_from(Partition(), Box("A", 2, 2))}
        assert got == {("(-1/2,1/2)", "1"), ("(-3/2,3/2)", "2,1")}

    def test_22_in_d3(self):
        got = [(str(p), str(t)) for p, t in arrows_from(P(2, 2), Box("D", 3))]
        assert got == [("(3/2,5/2)", "3,2,1")]

    def test_top_has_none(self):
        assert arrows_from(P(2, 2), Box("A", 2, 2)) == ()
        assert arrows_from(P(3, 3, 2), Box("D", 3)) == ()

    def test_antisymmetry(self):
        box = Box("A", 3, 3)
        for lam in enumerate_box(box):
            for _, t in arrows_from(lam, box):
                assert t.size > lam.size
                assert t.contains(lam)

    def test_window_stability(self):
        for lam in enumerate_box(Box("A", 3, 3)):
            base = pair_forest(lam, "A", box=Box("A", 3, 3)).in_box()
            lo, hi = Box("A", 3, 3).window()
            wide = pair_forest(lam, "A", window=(lo + (-2), hi + 2),
                               box=Box("A", 3, 3)).in_box()
            assert set(base) == set(wide)


class TestDiamonds:
    def test_completion_contains_11(self):
        got = complete_diamond(Partition(), P(1), P(2, 1))
        assert P(1, 1) in got
        assert Partition() not in got

    def test_sibling_case_unique_and_order_free(self):
        lam = P(1)
        p1, p2 = LambdaPair(H(-3), H(-1)), LambdaPair(H(1), H(3))
        lam1, lam2 = apply_move(lam, p1), apply_move(lam, p2)
        got = complete_diamond(lam, lam1, lam2)
        assert got == [apply_move(lam1, p2)]
        assert apply_move(lam1, p2) == apply_move(lam2, p1)

    def test_d_chain_has_no_completion(self):
        assert complete_diamond(P(2, 2), Partition(), P(3, 2, 1), "D") == []

    def test_degenerate_input(self):
        with pytest.raises(ValueError):
            complete_diamond(Partition(), P(1), P(1))

    def test_every_up_up_corner_completes(self):
        # two distinct moves out of one partition always close up
        for flavor, box in (("A", Box("A", 3, 3)), ("D", Box("D", 4))):
            for lam in enumerate_box(box):
                ups = arrows_from(lam, box)
                for i, (p1, t1) in enumerate(ups):
                    for (p2, t2) in ups[i + 1:]:
                        got = complete_diamond(lam, t1, t2, flavor)
                        assert got, (lam, t1, t2)
                        for nu in got:
                            assert nu.contains(t1) or nu.contains(t2)
