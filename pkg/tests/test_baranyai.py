import pytest

from kneser_minors import (
    ParameterError,
    Params,
    PartitionPlan,
    ResourceCapError,
    almost_regular_partition,
    binomial,
    covered_labels,
    enumerate_family,
    exhaustive_partition_feasible,
    kset_mask,
    partition_A,
    partition_C,
    uniform_sizes,
    verify_partition,
)
from kneser_minors.serialize import dumps_canonical, partition_to_dict


def degree_profile(cls, lo, hi):
    degs = {x: 0 for x in range(lo, hi + 1)}
    for mask in cls:
        for x in range(lo, hi + 1):
            if mask & (1 << (x - 1)):
                degs[x] += 1
    return degs


class TestPlan:
    def test_sum_mismatch(self):
        with pytest.raises(ParameterError):
            PartitionPlan((1, 4), 2, (2, 2))

    def test_nonpositive_size(self):
        with pytest.raises(ParameterError):
            PartitionPlan((1, 4), 2, (6, 0))

    def test_uniform_sizes(self):
        assert uniform_sizes(10, 3) == (3, 3, 3, 1)
        assert uniform_sizes(6, 3) == (3, 3)
        assert uniform_sizes(2, 5) == (2,)


class TestEngine:
    def test_single_hyperedge(self):
        part = almost_regular_partition(PartitionPlan((1, 3), 3, (1,)))
        assert part.classes == ((kset_mask([1, 2, 3]),),)

    def test_k4_one_factorization(self):
        part = almost_regular_partition(PartitionPlan((1, 4), 2, (2, 2, 2)))
        assert len(part.classes) == 3
        for cls in part.classes:
            # each class is a perfect matching: every degree exactly 1
            assert set(degree_profile(cls, 1, 4).values()) == {1}
        assert verify_partition(part).passed

    def test_resolution_into_triples(self):
        # 28 classes of three triples each; 3*3 = 9 forces every degree to 1.
        part = almost_regular_partition(PartitionPlan((1, 9), 3, (3,) * 28))
        assert len(part.classes) == 28
        for cls in part.classes:
            assert set(degree_profile(cls, 1, 9).values()) == {1}
        assert verify_partition(part).passed

    def test_cap(self):
        plan = PartitionPlan((1, 9), 3, (3,) * 28)
        with pytest.raises(ResourceCapError):
            almost_regular_partition(plan, cap=10)

    def test_deterministic_bytes(self):
        plan = PartitionPlan((1, 8), 3, uniform_sizes(binomial(8, 3), 4))
        one = dumps_canonical(partition_to_dict(almost_regular_partition(plan)))
        two = dumps_canonical(partition_to_dict(almost_regular_partition(plan)))
        assert one == two

    @pytest.mark.parametrize("g,k,l", [(5, 2, 2), (6, 3, 4), (7, 3, 3), (8, 2, 5), (10, 4, 6)])
    def test_uniform_plans_verify(self, g, k, l):
        plan = PartitionPlan((1, g), k, uniform_sizes(binomial(g, k), l))
        part = almost_regular_partition(plan)
        report = verify_partition(part)
        assert report.passed, report.summary_lines()

    def test_shifted_ground(self):
        plan = PartitionPlan((4, 9), 2, uniform_sizes(binomial(6, 2), 3))
        part = almost_regular_partition(plan)
        assert verify_partition(part).passed
        assert sorted(m for cls in part.classes for m in cls) == enumerate_family(4, 9, 2)


class TestOracle:
    def test_small_plans_feasible_and_engine_agrees(self):
        for g in range(3, 8):
            for k in range(1, g + 1):
                total = binomial(g, k)
                if total > 30:
                    continue
                for l in (1, 2, 3):
                    plan = PartitionPlan((1, g), k, uniform_sizes(total, l))
                    assert exhaustive_partition_feasible(plan)
                    assert verify_partition(almost_regular_partition(plan)).passed

    def test_oracle_cap(self):
        with pytest.raises(ResourceCapError):
            exhaustive_partition_feasible(PartitionPlan((1, 10), 3, (120,)))


class TestPartitionA:
    def test_singleton_family(self):
        cov = partition_A(5, Params(7, 3), 1)
        assert cov.guaranteed_blocks == 1
        assert cov.blocks == ((kset_mask([5, 6, 7]),),)
        assert cov.coverage_floor == 3  # min(3, 3)

    def test_seven_triples(self):
        cov = partition_A(2, Params(9, 3), 3)
        assert cov.guaranteed_blocks == 7
        assert cov.remainder_block is None
        assert cov.coverage_floor == 7  # min(8, 7)
        for block in cov.blocks:
            assert len(block) == 3
            assert len(covered_labels(block)) >= 7

    def test_remainder_and_exact_coverage(self):
        cov = partition_A(1, Params(13, 3), 4)
        assert cov.guaranteed_blocks == 16  # floor(66 / 4)
        assert cov.remainder_block is not None and len(cov.remainder_block) == 2
        assert cov.coverage_floor == 9  # min(13, 9)
        for block in cov.blocks[:16]:
            # n - i > l(k-1), so members minus the anchor are pairwise
            # disjoint and coverage is exactly l(k-1) + 1
            assert len(covered_labels(block)) == 9

    def test_covers_whole_interval_when_blocks_are_large(self):
        # n - i <= l(k-1): every guaranteed block covers all of [i, n]
        cov = partition_A(1, Params(9, 3), 5)
        assert cov.coverage_floor == 9
        for block in cov.blocks[: cov.guaranteed_blocks]:
            assert covered_labels(block) == set(range(1, 10))

    def test_strip_anchor_recovers_base(self):
        p = Params(11, 3)
        cov = partition_A(3, p, 4)
        bit = 1 << 2
        stripped = tuple(tuple(m & ~bit for m in block) for block in cov.blocks)
        assert stripped == cov.base.classes
        assert verify_partition(cov.base).passed

    def test_bad_arguments(self):
        p = Params(9, 3)
        with pytest.raises(ParameterError):
            partition_A(0, p, 2)
        with pytest.raises(ParameterError):
            partition_A(8, p, 2)
        with pytest.raises(ParameterError):
            partition_A(1, p, 29)  # C(8,2) = 28


class TestPartitionC:
    def test_14_3(self):
        cov = partition_C(Params(14, 3), 4)
        assert cov.guaranteed_blocks == 19
        assert cov.remainder_block is not None and len(cov.remainder_block) == 2
        assert cov.coverage_floor == 9  # min(14, 9)
        anchor_bit = 1 << 13
        for block in cov.blocks[:19]:
            assert all(m & anchor_bit for m in block)
            assert len(covered_labels(block)) >= 9

    def test_11_3(self):
        cov = partition_C(Params(11, 3), 3)
        assert cov.guaranteed_blocks == 15
        assert cov.coverage_floor == 7
        for block in cov.blocks[:15]:
            assert len(covered_labels(block)) >= 7

    def test_full_coverage_when_interval_small(self):
        # n = 3k - 1 with l = 3: blocks cover min(n, 3k-2) = 3k-2 labels
        for k in (3, 4):
            p = Params(3 * k - 1, k)
            cov = partition_C(p, 3)
            assert cov.coverage_floor == 3 * k - 2
            for block in cov.blocks[: cov.guaranteed_blocks]:
                assert len(covered_labels(block)) >= 3 * k - 2

    def test_union_is_the_anchored_family(self):
        p = Params(9, 3)
        cov = partition_C(p, 4)
        members = sorted(m for block in cov.blocks for m in block)
        anchor_bit = 1 << 8
        expected = sorted(anchor_bit | m for m in enumerate_family(1, 8, 2))
        assert members == expected

    def test_l_must_be_at_least_two(self):
        with pytest.raises(ParameterError):
            partition_C(Params(9, 3), 1)
