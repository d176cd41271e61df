"""Shattering, VC-dimension, sandwich bounds, ampleness, fibers."""

import random

import pytest

from omcube.errors import PreconditionError, ResourceLimitError
from omcube.family import (
    Family,
    fibers,
    is_ample,
    mask_to_str,
    phi,
    sandwich_report,
    shattered_sets,
    shattering_complexes,
    str_to_mask,
    strongly_shattered_sets,
    vc_dim,
)

from _oracles import (
    ample_oracle,
    set_to_mask,
    shattered_oracle,
    strongly_shattered_oracle,
    vcd_oracle,
)

# C_6 written with element 1 = rightmost bit, i.e. plain binary numerals
C6 = Family(3, [0b000, 0b001, 0b011, 0b111, 0b110, 0b100])


def masks(sets, m):
    return Family(m, [set_to_mask(s) for s in sets])


class TestBitConventions:
    def test_element_1_leftmost(self):
        assert str_to_mask("10000", 5) == 1  # the set {1}
        assert mask_to_str(1, 5) == "10000"

    def test_msb_element_m_reads_binary_numerals(self):
        assert str_to_mask("001", 3, "msb_element_m") == 1
        assert str_to_mask("110", 3, "msb_element_m") == 6

    def test_roundtrip(self):
        for v in range(16):
            assert str_to_mask(mask_to_str(v, 4), 4) == v


class TestVcDim:
    def test_full_cube(self):
        for d in range(5):
            assert vc_dim(Family(d, range(1 << d))) == d

    def test_c6_against_oracle(self):
        expected = vcd_oracle(C6.vertices, range(1, 4))
        assert expected == 2
        assert vc_dim(C6) == 2

    def test_single_empty_set(self):
        assert vc_dim(Family(3, [0])) == 0

    def test_empty_family_sentinel(self):
        assert vc_dim(Family(3, [])) == -1

    def test_monotone_under_subfamilies(self):
        rng = random.Random(11)
        for _ in range(50):
            verts = rng.sample(range(32), rng.randint(2, 20))
            sub = rng.sample(verts, rng.randint(1, len(verts)))
            assert vc_dim(Family(5, sub)) <= vc_dim(Family(5, verts))

    def test_matches_oracle_randomized(self):
        rng = random.Random(7)
        for _ in range(60):
            verts = rng.sample(range(32), rng.randint(1, 24))
            assert vc_dim(Family(5, verts)) == vcd_oracle(verts, range(1, 6))


class TestShatteringComplexes:
    def test_three_singletons(self):
        f = masks([set(), {1}, {2}], 2)
        shat, strong = shattering_complexes(f)
        expected = {set_to_mask(s) for s in shattered_oracle(f.vertices, range(1, 3))}
        assert shat == expected == {0, 1, 2}
        assert strong == shat

    def test_q3_minus_vertex(self):
        f = Family(3, set(range(8)) - {5})
        shat, strong = shattering_complexes(f)
        oracle_shat = {set_to_mask(s) for s in shattered_oracle(f.vertices, range(1, 4))}
        oracle_strong = {
            set_to_mask(s) for s in strongly_shattered_oracle(f.vertices, range(1, 4))
        }
        assert shat == oracle_shat
        assert strong == oracle_strong
        assert shat == strong  # ample
        assert shat == {x for x in range(8) if x.bit_count() <= 2}

    def test_c6_not_ample(self):
        shat, strong = shattering_complexes(C6)
        assert len(shat) == 7  # everything of size <= 2
        assert strong < shat
        assert len(strong) <= 6
        assert strong == {
            set_to_mask(s) for s in strongly_shattered_oracle(C6.vertices, range(1, 4))
        }

    def test_downward_closed(self):
        rng = random.Random(3)
        for _ in range(30):
            f = Family(5, rng.sample(range(32), rng.randint(1, 20)))
            for complex_ in shattering_complexes(f):
                for x in complex_:
                    sub = x
                    while sub:
                        sub = (sub - 1) & x
                        assert sub in complex_


class TestPhi:
    def test_values(self):
        assert phi(2, 5) == 16
        assert phi(3, 5) == 26

    def test_saturates_at_power(self):
        for m in range(7):
            for d in range(m, m + 3):
                assert phi(d, m) == 1 << m

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            phi(-1, 3)


class TestSandwich:
    def test_three_singletons(self):
        rep = sandwich_report(masks([set(), {1}, {2}], 2))
        assert rep == (3, 3, 3, 3)

    def test_c6(self):
        rep = sandwich_report(C6)
        assert rep.family_count == 6
        assert rep.shattered_count == 7
        assert rep.strong_count <= 6
        assert rep.sauer_bound == phi(2, 3) == 7

    def test_q3_minus_vertex(self):
        rep = sandwich_report(Family(3, set(range(8)) - {3}))
        assert rep == (7, 7, 7, 7)

    def test_randomized(self):
        rng = random.Random(5)
        for _ in range(200):
            f = Family(6, rng.sample(range(64), rng.randint(1, 40)))
            rep = sandwich_report(f)  # asserts internally
            assert rep.strong_count <= rep.family_count <= rep.shattered_count


class TestIsAmple:
    def test_single_vertex(self):
        assert is_ample(Family(4, [9]), "all")

    def test_diagonal_pair_fails_lawrence(self):
        f = masks([set(), {1, 2}], 2)
        assert not is_ample(f, "lawrence")
        assert not is_ample(f, "counting")

    def test_q3_minus_vertex_and_c6(self):
        assert is_ample(Family(3, set(range(8)) - {1}), "all")
        assert not is_ample(C6, "all")

    def test_methods_agree_randomized(self):
        rng = random.Random(13)
        for _ in range(150):
            f = Family(4, rng.sample(range(16), rng.randint(1, 13)))
            expected = ample_oracle(f.vertices, range(1, 5))
            assert is_ample(f, "all") == expected

    def test_gallery_needs_partial_cube(self):
        with pytest.raises(PreconditionError):
            is_ample(masks([set(), {1, 2}], 2), "gallery")

    def test_lawrence_guard(self):
        f = Family(14, [0, (1 << 14) - 1, 1, 2, 4, 8, 16, 32, 64, 128, 256,
                        512, 1024, 2048, 4096, 8192])
        with pytest.raises(ResourceLimitError):
            is_ample(f, "lawrence")

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            is_ample(C6, "magic")


class TestFibers:
    def test_q2_on_first_coordinate(self):
        out = fibers(Family(2, range(4)), [1])
        assert out[0].vertices == {0, 2}
        assert out[1].vertices == {1, 3}

    def test_c6_two_coordinates(self):
        out = fibers(C6, [1, 2])
        assert len(out) == 4
        assert all(len(f) > 0 for f in out.values())

    def test_empty_fiber_means_not_shattered(self):
        out = fibers(Family(1, [0]), [1])
        assert len(out[1]) == 0

    def test_partition(self):
        rng = random.Random(2)
        for _ in range(20):
            f = Family(5, rng.sample(range(32), rng.randint(1, 20)))
            x = rng.randint(1, 31)
            out = fibers(f, x)
            union = set()
            for fam in out.values():
                assert not union & fam.vertices
                union |= fam.vertices
            assert union == f.vertices


class TestFamilyType:
    def test_dedup_and_bounds(self):
        f = Family(3, [1, 1, 7])
        assert len(f) == 2
        with pytest.raises(ValueError):
            Family(3, [8])
        with pytest.raises(ValueError):
            Family(33, [])

    def test_span_base_normalize(self):
        f = Family(4, [0b1010, 0b1000])  # only coordinate 2 varies
        assert f.span == 0b0010
        assert f.base == 0b1000
        norm = f.normalized()
        assert norm.m == 1 and norm.vertices == {0, 1}
