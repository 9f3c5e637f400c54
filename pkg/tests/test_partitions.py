"""Profiles, boxes, and dimensions, cross-checked against independent oracles."""

import pytest
from hypothesis import given, settings, strategies as st

from schuborb import (Box, Partition, PhiProfile, cell_dim, enumerate_box,
                      partition_from_phi, phi, phi_profile)
from schuborb.halfint import HalfInt, halfint_range
from schuborb.partitions import InvalidProfileError


def oracle_phi(lam: Partition, alpha: HalfInt) -> int:
    """Independent route: +1 exactly at the conjugate positions j - t(j) - 1/2."""
    t = lam.transpose()
    j = 1
    while True:
        pos = HalfInt(2 * (j - t.part(j)) - 1)
        if pos == alpha:
            return +1
        if pos > alpha and j > len(t.parts):
            return -1
        j += 1


PARTS = st.lists(st.integers(min_value=1, max_value=6), max_size=5)


def to_partition(parts):
    return Partition(tuple(sorted(parts, reverse=True)))


class TestPhi:
    def test_zero_partition_staircase(self):
        assert phi(Partition(), HalfInt(-5)) == -1
        assert phi(Partition(), HalfInt(1)) == +1

    def test_first_row_step(self):
        assert phi(Partition.of(3, 1, 1), HalfInt(5)) == -1

    def test_two_two_value(self):
        # the step-up set of (2,2) is {3/2, 1/2} plus everything below -5/2
        assert phi(Partition.of(2, 2), HalfInt(-1)) == +1
        assert phi(Partition.of(2, 2), HalfInt(3)) == -1
        assert phi(Partition.of(2, 2), HalfInt(-5)) == -1

    @given(PARTS)
    @settings(max_examples=60)
    def test_matches_conjugate_oracle(self, parts):
        lam = to_partition(parts)
        for a in halfint_range(HalfInt(-19), HalfInt(19)):
            assert phi(lam, a) == oracle_phi(lam, a)


class TestProfileRoundtrip:
    def test_zero(self):
        prof = phi_profile(Partition(), HalfInt(-5), HalfInt(5))
        assert partition_from_phi(prof) == Partition()

    def test_explicit_311(self):
        lo, hi = HalfInt(-9), HalfInt(9)
        ups = {5, -1, -3, -7, -9}
        values = tuple(-1 if a.twice in ups else 1 for a in halfint_range(lo, hi))
        assert partition_from_phi(PhiProfile(lo, hi, values)) == Partition.of(3, 1, 1)

    def test_roundtrip_two_two(self):
        prof = phi_profile(Partition.of(2, 2), HalfInt(-7), HalfInt(7))
        assert partition_from_phi(prof) == Partition.of(2, 2)

    def test_roundtrip_all_in_boxes_up_to_4x4(self):
        for lam in enumerate_box(Box("A", 4, 4)):
            prof = phi_profile(lam, HalfInt(-13), HalfInt(13))
            assert partition_from_phi(prof) == lam

    def test_malformed_rejected(self):
        lo, hi = HalfInt(-5), HalfInt(5)
        n = len(halfint_range(lo, hi))
        with pytest.raises(InvalidProfileError):
            partition_from_phi(PhiProfile(lo, hi, (1,) * n))
        with pytest.raises(InvalidProfileError):
            partition_from_phi(PhiProfile(lo, hi, (-1,) * n))

    @given(PARTS, st.integers(min_value=0, max_value=4))
    @settings(max_examples=60)
    def test_roundtrip_random(self, parts, pad):
        lam = to_partition(parts)
        lo = HalfInt(-2 * (len(lam) + 1 + pad) - 1)
        hi = HalfInt(2 * ((lam.parts[0] if lam.parts else 0) + pad) + 1)
        assert partition_from_phi(phi_profile(lam, lo, hi)) == lam


class TestBoxes:
    def test_a22_count(self):
        assert len(enumerate_box(Box("A", 2, 2))) == 6

    def test_a33_binomial(self):
        assert len(enumerate_box(Box("A", 3, 3))) == 20

    def test_d2(self):
        assert [str(p) for p in enumerate_box(Box("D", 2))] == ["0", "2,2"]

    def test_d3(self):
        assert [str(p) for p in enumerate_box(Box("D", 3))] == \
            ["0", "2,2", "3,2,1", "3,3,2"]

    def test_d_membership(self):
        box = Box("D", 4)
        assert not box.contains(Partition.of(1))          # odd diagonal
        assert not box.contains(Partition.of(2, 1, 1))    # not symmetric
        assert box.contains(Partition.of(4, 3, 2, 1))

    def test_parse(self):
        assert Box.parse("A2x3") == Box("A", 2, 3)
        assert Box.parse("d4") == Box("D", 4)
        with pytest.raises(ValueError):
            Box.parse("Q7")


class TestCellDim:
    def test_flavor_a_size(self):
        assert cell_dim(Partition.of(3, 1, 1), Box("A", 3, 3)) == 5

    def test_flavor_d_examples(self):
        assert cell_dim(Partition.of(2, 2), Box("D", 3)) == 1
        assert cell_dim(Partition.of(3, 3, 2), Box("D", 3)) == 3

    def test_outside_box(self):
        with pytest.raises(ValueError):
            cell_dim(Partition.of(5), Box("A", 2, 2))
