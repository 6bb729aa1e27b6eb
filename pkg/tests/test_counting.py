import math
import random
from math import comb

import pytest

from cubeconv.core import SetFamily, exponent
from cubeconv.counting import (
    bound_report,
    count_disjoint_tuples,
    extremal_family,
)


def extremal_count_closed_form(n, t):
    """Choose the (n-1)t-element union inside [nt], then split it into
    n-1 ordered size-t blocks."""
    count = comb(n * t, (n - 1) * t)
    remaining = (n - 1) * t
    for _ in range(n - 1):
        count *= comb(remaining, t)
        remaining -= t
    return count


def random_family(rng, max_m=10):
    m = rng.randint(1, max_m)
    pool = range(1 << m)
    size = rng.randint(1, min(1 << m, 24))
    return SetFamily.from_masks(m, rng.sample(pool, size))


class TestCount:
    def test_empty_set_only(self):
        fam = SetFamily(1, (0,))
        assert count_disjoint_tuples(fam, 3, "fast") == 1
        assert count_disjoint_tuples(fam, 3, "brute") == 1

    def test_full_powerset_of_two(self):
        fam = SetFamily(2, (0, 1, 2, 3))
        # hand oracle: enumerate all 4^3 triples directly
        members = fam.members
        expected = sum(
            1
            for a in members
            for b in members
            if a & b == 0 and (a | b) in members
        )
        assert expected == 9
        assert count_disjoint_tuples(fam, 3, "fast") == 9
        assert count_disjoint_tuples(fam, 3, "brute") == 9

    def test_three_sets(self):
        fam = SetFamily.from_masks(2, [0b01, 0b10, 0b11])
        assert count_disjoint_tuples(fam, 3, "fast") == 2  # ({1},{2}) in both orders
        assert count_disjoint_tuples(fam, 3, "brute") == 2

    def test_rejects_n1(self):
        with pytest.raises(ValueError):
            count_disjoint_tuples(SetFamily(1, (0,)), 1)

    def test_fast_equals_brute_random(self):
        rng = random.Random(2024)
        for trial in range(60):
            fam = random_family(rng)
            n = rng.choice([2, 3, 4])
            assert count_disjoint_tuples(fam, n, "fast") == count_disjoint_tuples(
                fam, n, "brute"
            ), (fam.m, fam.members, n)


class TestBoundReport:
    def test_singleton_family_equality(self):
        rep = bound_report(SetFamily(1, (0,)), 3)
        assert rep.count == 1
        assert rep.bound_log == 0.0
        assert rep.holds
        assert rep.ratio is None  # |X| = 1: undefined

    def test_powerset_of_two(self):
        rep = bound_report(SetFamily(2, (0, 1, 2, 3)), 3)
        assert rep.count == 9
        assert rep.bound_log == pytest.approx(exponent(3).c * math.log(4))
        assert math.exp(rep.bound_log) == pytest.approx(10.95, abs=0.01)
        assert rep.holds

    def test_no_decomposable_sets(self):
        # singletons only: no set is a disjoint union of two members
        fam = SetFamily.from_masks(3, [1, 2, 4])
        rep = bound_report(fam, 3)
        assert rep.count == 0
        assert rep.holds
        assert rep.ratio is None

    def test_bound_holds_on_random_families(self):
        rng = random.Random(99)
        for _ in range(80):
            rep = bound_report(random_family(rng), rng.choice([2, 3, 4]))
            assert rep.log_count <= rep.bound_log + 1e-9


class TestExtremalFamily:
    def test_n3_t1(self):
        fam = extremal_family(3, 1)
        assert len(fam) == 6
        rep = bound_report(fam, 3)
        assert rep.count == 6
        assert rep.ratio == pytest.approx(1.0)

    def test_n3_t2(self):
        rep = bound_report(extremal_family(3, 2), 3)
        assert rep.family_size == 30
        assert rep.count == 90
        assert rep.ratio == pytest.approx(1.323, abs=1e-3)

    def test_count_matches_closed_form(self):
        for n, t in [(2, 1), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)]:
            fam = extremal_family(n, t)
            assert count_disjoint_tuples(fam, n, "fast") == extremal_count_closed_form(n, t)

    def test_ratio_increasing_in_t_and_below_c(self):
        c3 = exponent(3).c
        prev = 0.0
        for t in range(1, 8):
            fam = extremal_family(3, t)
            size = 2 * comb(3 * t, t)
            count = extremal_count_closed_form(3, t)
            ratio = math.log(count) / math.log(size)
            assert ratio > prev
            assert ratio < c3
            prev = ratio
        assert prev == pytest.approx(1.60, abs=0.01)

    def test_m_cap(self):
        with pytest.raises(ValueError):
            extremal_family(3, 9)  # m = 27

    def test_bad_args(self):
        with pytest.raises(ValueError):
            extremal_family(1, 2)
        with pytest.raises(ValueError):
            extremal_family(3, 0)
