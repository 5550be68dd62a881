import dataclasses
from fractions import Fraction

import pytest

from affcopy.cantor import (CantorConstruction, FinitePointsOracle, MiddleThirdOracle,
                            OracleViolationError, TernaryCantorOracle, build_cantor,
                            in_ternary_cantor, largest_unit_fraction_at_most,
                            middle_third, ternary_gap_containing, truncated_union_cover,
                            verify_cantor)
from affcopy.intervals import Interval, IntervalSet, union_all

F = Fraction
TWO_THIRDS = F(2, 3)


@pytest.fixture(scope="module")
def default6():
    return build_cantor(MiddleThirdOracle(), depth=6)


class TestTernaryHelpers:
    def test_known_members(self):
        for x in [0, 1, F(1, 3), F(2, 3), F(1, 4), F(3, 4), F(1, 9), F(7, 9)]:
            assert in_ternary_cantor(x), x

    def test_known_non_members(self):
        for x in [F(1, 2), F(2, 5), F(5, 9), F(1, 5), F(-1, 3), F(3, 2)]:
            assert not in_ternary_cantor(x), x

    def test_gap_containing_midpoint(self):
        assert ternary_gap_containing(F(1, 2)) == Interval.open(F(1, 3), F(2, 3))
        assert ternary_gap_containing(F(4, 27)) == Interval.open(F(1, 9), F(2, 9))
        assert ternary_gap_containing(F(1, 4)) is None

    def test_largest_unit_fraction(self):
        assert largest_unit_fraction_at_most(F(1, 9)) == F(1, 9)
        assert largest_unit_fraction_at_most(F(4, 81)) == F(1, 21)
        assert largest_unit_fraction_at_most(F(5, 3)) == 1


class TestBuild:
    def test_depth_one_default(self):
        c = build_cantor(MiddleThirdOracle(), depth=1)
        assert c.open_set(1) == IntervalSet((Interval.open(F(4, 9), F(5, 9)),))
        assert c.gap_length(1) == F(1, 9)
        assert c.remnant(1, 1) == Interval.closed(0, F(4, 9))
        assert c.remnant(1, 2) == Interval.closed(F(5, 9), 1)

    @pytest.mark.parametrize("oracle", [MiddleThirdOracle(), TernaryCantorOracle(),
                                        FinitePointsOracle((F(1, 2), F(2, 5)))])
    def test_depth_one_remnant_lengths(self, oracle):
        c = build_cantor(oracle, depth=1)
        for j in (1, 2):
            assert F(1, 3) <= c.remnant(1, j).length < F(2, 3)

    def test_tree_counts(self, default6):
        assert len(default6.remnant_set(6)) == 2 ** 6
        assert sum(len(default6.open_set(n)) for n in range(1, 7)) == 2 ** 6 - 1

    def test_oracle_gaps_avoid_ternary_target(self):
        oracle = TernaryCantorOracle()
        c = build_cantor(oracle, depth=6)
        for n in range(1, 7):
            for gap in c.open_set(n):
                assert oracle.interval_avoids_target(gap)
        # members of the target stay inside every remnant stage
        for x in [0, 1, F(1, 3), F(1, 4), F(3, 4), F(2, 9)]:
            for n in range(1, 7):
                assert c.remnant_set(n).contains_point(x)

    def test_finite_points_never_deleted(self):
        points = (F(1, 2), F(1, 7), F(5, 6), F(13, 27))
        c = build_cantor(FinitePointsOracle(points), depth=6)
        for n in range(1, 7):
            for p in points:
                assert not c.open_set(n).contains_point(p)
                assert c.remnant_set(n).contains_point(p)

    def test_build_deterministic(self):
        assert build_cantor(TernaryCantorOracle(), 4) == build_cantor(TernaryCantorOracle(), 4)

    def test_bad_oracle_rejected(self):
        class Offside(MiddleThirdOracle):
            def __call__(self, k):
                inner = middle_third(k)
                return Interval.open(inner.hi, k.hi)  # outside the middle third

        with pytest.raises(OracleViolationError) as err:
            build_cantor(Offside(), depth=1)
        assert err.value.n == 1 and err.value.j == 1


class TestVerify:
    def test_default_depth_six_clean(self, default6):
        report = verify_cantor(default6, k_max=3)
        assert report.passed, report.violations

    def test_depth_one_vacuous_monotone_check(self):
        c = build_cantor(MiddleThirdOracle(), depth=1)
        assert verify_cantor(c, k_max=1).passed

    def test_tampered_gap_flagged(self, default6):
        # shove the level-2 first gap to the right edge of its parent,
        # outside the middle third, keeping everything else intact
        lv = default6.levels[1]
        parent = default6.remnant(1, 1)
        bad = Interval.open(parent.hi - lv.gap_length, parent.hi)
        gaps = (bad,) + lv.gaps[1:]
        remnants = (Interval.closed(parent.lo, bad.lo),
                    Interval.closed(bad.hi, parent.hi)) + lv.remnants[2:]
        tampered_level = dataclasses.replace(lv, gaps=gaps, remnants=remnants)
        tampered = CantorConstruction(
            depth=2, levels=(default6.levels[0], tampered_level))
        report = verify_cantor(tampered, k_max=1)
        assert not report.passed
        assert any("neighborhood misses" in v for v in report.violations)

    def test_adjacency_of_gap_and_right_child(self, default6):
        c = default6
        for n in range(1, c.depth + 1):
            for j in range(1, 2 ** (n - 1) + 1):
                assert c.gap(n, j).hi == c.remnant(n, 2 * j).lo

    def test_telescoping_left_neighborhoods(self, default6):
        c = default6
        for n in range(1, c.depth):
            for j in range(1, 2 ** n + 1):
                for k_top in range(1, c.depth - n + 1):
                    pieces = []
                    chain = []
                    for k in range(1, k_top + 1):
                        parent = c.remnant(n + k - 1, 2 ** (k - 1) * j)
                        gap = c.gap(n + k, 2 ** (k - 1) * j)
                        pieces.append(IntervalSet((gap,)).left_neighborhood(
                            TWO_THIRDS * parent.length))
                        chain.append(IntervalSet((Interval.half_open(parent.lo, gap.hi),)))
                    got = union_all(pieces)
                    want = IntervalSet((Interval.half_open(
                        c.remnant(n, j).lo,
                        c.remnant(n + k_top, 2 ** k_top * j).lo),))
                    # the adjacent half-open pieces tile the block exactly
                    assert union_all(chain) == want
                    assert got.issuperset(want)
                    # and the covered half-open block is exactly the union's
                    # intersection with the parent remnant skeleton
                    assert got.intersect(IntervalSet((Interval.half_open(
                        c.remnant(n, j).lo, c.remnant(n, j).hi),))) == want


class TestCover:
    def test_depth_insufficient(self, default6):
        with pytest.raises(ValueError):
            truncated_union_cover(default6, N=6, k_max=1)

    def test_two_four(self, default6):
        report = truncated_union_cover(default6, N=2, k_max=4)
        assert report.enclosure_ok
        assert report.bound == 4 * TWO_THIRDS ** 6
        assert report.uncovered_measure < report.bound
        assert report.passed

    def test_monotone_in_k_max(self, default6):
        measures = [truncated_union_cover(default6, N=2, k_max=k).uncovered_measure
                    for k in range(1, 5)]
        assert all(b <= a for a, b in zip(measures, measures[1:]))

    def test_json_round_trip_shape(self, default6):
        d = truncated_union_cover(default6, N=1, k_max=2).to_json_dict()
        assert set(d) == {"N", "k_max", "uncovered", "uncovered_measure",
                          "enclosure_ok", "bound", "within_bound", "pass"}
        d2 = default6.to_json_dict()
        assert d2["depth"] == 6
        assert d2["levels"][0]["l"] == "1/9"
        assert d2["levels"][0]["gaps"] == ["(4/9,5/9)"]
