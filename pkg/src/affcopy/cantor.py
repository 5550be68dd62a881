"""Gap-ladder construction: repeatedly delete an oracle-chosen open interval
from the middle third of every remaining closed interval of [0,1].

Level n deletes 2^(n-1) open gaps of one common length l_n (1/l_n a positive
integer, l_n at most half the previous length), leaving 2^n closed remnants.
The oracle supplies, for any closed interval K, an open subinterval of the
closed middle third of K that misses the oracle's target set; three concrete
oracles are provided (empty target, the classical ternary middle-thirds set,
and finite point sets). Verification replays every structural claim of the
construction exactly, and the truncated cover report measures how much of the
level-N remnant skeleton the left neighborhoods of deeper gaps fail to reach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from affcopy.intervals import (Interval, IntervalSet, RationalLike, as_fraction,
                               normalize, union_all)

UNIT = Interval.closed(0, 1)
TWO_THIRDS = Fraction(2, 3)


class OracleViolationError(Exception):
    """An oracle broke its contract while building level n, gap j."""

    def __init__(self, n: int, j: int, reason: str):
        super().__init__(f"oracle violation at level {n}, gap {j}: {reason}")
        self.n = n
        self.j = j
        self.reason = reason


def middle_third(k: Interval) -> Interval:
    """Closed middle third of a closed interval."""
    step = k.length / 3
    return Interval.closed(k.lo + step, k.lo + 2 * step)


# ---------------------------------------------------------------------------
# ternary middle-thirds set helpers
# ---------------------------------------------------------------------------

def in_ternary_cantor(x: RationalLike) -> bool:
    """Exact membership of a rational in the classical middle-thirds set.

    Follows the orbit x -> 3x (low branch) / 3x-2 (high branch); a rational
    orbit either revisits a state (never leaving the two outer thirds, so x
    is a member) or falls strictly inside a deleted middle third.
    """
    x = as_fraction(x)
    if x < 0 or x > 1:
        return False
    third, two_thirds = Fraction(1, 3), Fraction(2, 3)
    seen = set()
    while x not in seen:
        seen.add(x)
        if x <= third:
            x = 3 * x
        elif x >= two_thirds:
            x = 3 * x - 2
        else:
            return False
    return True


def ternary_gap_containing(x: RationalLike) -> Optional[Interval]:
    """The deleted middle third (a component of [0,1] minus the ternary set)
    containing x, or None when x is a member or outside (0,1)."""
    x = as_fraction(x)
    if x <= 0 or x >= 1 or in_ternary_cantor(x):
        return None
    lo = Fraction(0)
    scale = Fraction(1)
    while True:
        y = (x - lo) / scale
        if y < Fraction(1, 3):
            scale /= 3
        elif y > Fraction(2, 3):
            lo += 2 * scale / 3
            scale /= 3
        else:
            return Interval.open(lo + scale / 3, lo + 2 * scale / 3)


# ---------------------------------------------------------------------------
# gap oracles
# ---------------------------------------------------------------------------

class GapOracle:
    """Contract: given a closed interval K, return an open rational interval
    inside the closed middle third of K and disjoint from the target set.
    The same K must always yield the same interval."""

    name = "oracle"

    def __call__(self, k: Interval) -> Interval:
        raise NotImplementedError

    def point_in_target(self, x: Fraction) -> Optional[bool]:
        """Exact membership in the target set, or None if not checkable."""
        return None

    def interval_avoids_target(self, iv: Interval) -> Optional[bool]:
        """Whether iv is disjoint from the target set, or None if not checkable."""
        return None


class MiddleThirdOracle(GapOracle):
    """Target set is empty; the gap is the open middle third of the closed
    middle third of K (the open middle ninth, centered)."""

    name = "middle-third"

    def __call__(self, k: Interval) -> Interval:
        inner = middle_third(k)
        step = inner.length / 3
        return Interval.open(inner.lo + step, inner.lo + 2 * step)

    def point_in_target(self, x: Fraction) -> bool:
        return False

    def interval_avoids_target(self, iv: Interval) -> bool:
        return True


class TernaryCantorOracle(GapOracle):
    """Target set is the classical middle-thirds set.

    Inside the middle third of K, locate a full ternary block [i/3^g,
    (i+1)/3^g] (taking the smallest g whose blocks fit twice over) and return
    its open middle third, which is deleted from the target no matter whether
    the block survives. Only meaningful for K inside [0,1].
    """

    name = "ternary-cantor"

    def __call__(self, k: Interval) -> Interval:
        inner = middle_third(k)
        g = 0
        width = Fraction(1)
        while 2 * width > inner.length:
            g += 1
            width /= 3
        i = math.ceil(inner.lo / width)
        block_lo = i * width
        gap = Interval.open(block_lo + width / 3, block_lo + 2 * width / 3)
        assert inner.lo <= block_lo and block_lo + width <= inner.hi
        return gap

    def point_in_target(self, x: Fraction) -> bool:
        return in_ternary_cantor(x)

    def interval_avoids_target(self, iv: Interval) -> bool:
        if iv.hi <= 0 or iv.lo >= 1:
            return True
        mid = iv.midpoint()
        gap = ternary_gap_containing(mid)
        if gap is None:
            return False
        return gap.lo <= iv.lo and iv.hi <= gap.hi


class FinitePointsOracle(GapOracle):
    """Target set is a finite set of rationals. The gap is the open middle
    third of the longest point-free stretch of the middle third of K
    (leftmost on ties)."""

    name = "finite-points"

    def __init__(self, points: "tuple[RationalLike, ...]"):
        self.points = tuple(sorted(as_fraction(p) for p in points))

    def __call__(self, k: Interval) -> Interval:
        inner = middle_third(k)
        stops = [inner.lo] + [p for p in self.points if inner.lo < p < inner.hi] + [inner.hi]
        best_lo, best_hi = stops[0], stops[1]
        for lo, hi in zip(stops, stops[1:]):
            if hi - lo > best_hi - best_lo:
                best_lo, best_hi = lo, hi
        step = (best_hi - best_lo) / 3
        return Interval.open(best_lo + step, best_lo + 2 * step)

    def point_in_target(self, x: Fraction) -> bool:
        return x in self.points

    def interval_avoids_target(self, iv: Interval) -> bool:
        return not any(iv.contains(p) for p in self.points)


DEFAULT_ORACLE = MiddleThirdOracle()


# ---------------------------------------------------------------------------
# the construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CantorLevel:
    """Level n of the ladder: the gaps deleted at this level (left to right,
    all of length gap_length) and the closed remnants left afterwards."""

    n: int
    gap_length: Fraction
    gaps: Tuple[Interval, ...]
    remnants: Tuple[Interval, ...]


@dataclass(frozen=True)
class CantorConstruction:
    depth: int
    levels: Tuple[CantorLevel, ...]

    def gap(self, n: int, j: int) -> Interval:
        """The j-th gap of level n (1-based, left to right)."""
        return self.levels[n - 1].gaps[j - 1]

    def remnant(self, n: int, j: int) -> Interval:
        """The j-th closed remnant after level n; level 0 is [0,1] itself."""
        if n == 0:
            if j != 1:
                raise IndexError("level 0 has a single remnant")
            return UNIT
        return self.levels[n - 1].remnants[j - 1]

    def gap_length(self, n: int) -> Fraction:
        return self.levels[n - 1].gap_length

    def open_set(self, n: int) -> IntervalSet:
        """The union of the level-n gaps."""
        return IntervalSet(self.levels[n - 1].gaps)

    def remnant_set(self, n: int) -> IntervalSet:
        if n == 0:
            return IntervalSet((UNIT,))
        return IntervalSet(self.levels[n - 1].remnants)

    def open_sets_through(self, n: int) -> IntervalSet:
        """Union of all gaps of levels 1..n."""
        return union_all([self.open_set(i) for i in range(1, n + 1)])

    def to_json_dict(self) -> dict:
        return {
            "depth": self.depth,
            "levels": [
                {
                    "n": lv.n,
                    "l": str(lv.gap_length),
                    "gaps": [str(g) for g in lv.gaps],
                    "remnants": [str(r) for r in lv.remnants],
                }
                for lv in self.levels
            ],
        }


def largest_unit_fraction_at_most(x: Fraction) -> Fraction:
    """The largest 1/m (m a positive integer) with 1/m <= x."""
    if x <= 0:
        raise ValueError("need a positive bound")
    return Fraction(1, math.ceil(1 / x))


def build_cantor(oracle: GapOracle, depth: int) -> CantorConstruction:
    """Run the ladder to the given depth.

    Each level queries the oracle once per remnant, takes the largest
    reciprocal-of-integer length not exceeding half the previous level's
    length nor any oracle gap, and shrinks every oracle gap to its centered
    subinterval of that length.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    remnants: Tuple[Interval, ...] = (UNIT,)
    levels = []
    prev_length: Optional[Fraction] = None
    for n in range(1, depth + 1):
        raw = []
        for j, k in enumerate(remnants, 1):
            gap = oracle(k)
            if not gap.is_open or gap.lo >= gap.hi:
                raise OracleViolationError(n, j, f"gap {gap} is not a nondegenerate open interval")
            inner = middle_third(k)
            if gap.lo < inner.lo or gap.hi > inner.hi:
                raise OracleViolationError(
                    n, j, f"gap {gap} leaves the closed middle third {inner} of {k}")
            avoids = oracle.interval_avoids_target(gap)
            if avoids is False:
                raise OracleViolationError(n, j, f"gap {gap} meets the target set")
            raw.append(gap)
        bound = min(g.length for g in raw)
        if prev_length is not None:
            bound = min(bound, prev_length / 2)
        length = largest_unit_fraction_at_most(bound)
        gaps = []
        next_remnants = []
        for k, g in zip(remnants, raw):
            center = g.midpoint()
            shrunk = Interval.open(center - length / 2, center + length / 2)
            gaps.append(shrunk)
            next_remnants.append(Interval.closed(k.lo, shrunk.lo))
            next_remnants.append(Interval.closed(shrunk.hi, k.hi))
        levels.append(CantorLevel(n=n, gap_length=length, gaps=tuple(gaps),
                                  remnants=tuple(next_remnants)))
        remnants = tuple(next_remnants)
        prev_length = length
    return CantorConstruction(depth=depth, levels=tuple(levels))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantReport:
    depth: int
    k_max: int
    checks_run: int
    violations: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "depth": self.depth,
            "k_max": self.k_max,
            "checks_run": self.checks_run,
            "violations": list(self.violations),
            "pass": self.passed,
        }


def verify_cantor(construction: CantorConstruction, k_max: int) -> InvariantReport:
    """Re-check every structural claim of the ladder, exactly.

    Covers the per-level shape (counts, equal gap lengths, disjoint closures,
    halving reciprocal lengths), the cross-level disjointness of gap
    closures, the remnant decomposition of [0,1], the remnant-size bound
    (2/3)^n, the child indexing, the monotone right-edge approach
    sup K(n,j) - inf K(n+k, 2^k j) < (2/3)^(n+k) for k up to k_max, and the
    per-gap left-neighborhood coverage of [inf parent, sup gap).
    """
    c = construction
    violations = []
    checks = 0

    def flag(msg: str) -> None:
        violations.append(msg)

    # per-level shape
    for lv in c.levels:
        n = lv.n
        checks += 1
        if len(lv.gaps) != 2 ** (n - 1):
            flag(f"level {n}: expected {2 ** (n - 1)} gaps, found {len(lv.gaps)}")
        if len(lv.remnants) != 2 ** n:
            flag(f"level {n}: expected {2 ** n} remnants, found {len(lv.remnants)}")
        if lv.gap_length.numerator != 1 or lv.gap_length <= 0:
            flag(f"level {n}: gap length {lv.gap_length} is not a unit fraction")
        if n >= 2 and lv.gap_length > c.gap_length(n - 1) / 2:
            flag(f"level {n}: gap length {lv.gap_length} exceeds half of "
                 f"{c.gap_length(n - 1)}")
        for j, g in enumerate(lv.gaps, 1):
            checks += 1
            if not g.is_open:
                flag(f"level {n} gap {j}: {g} is not open")
            if g.length != lv.gap_length:
                flag(f"level {n} gap {j}: length {g.length} != {lv.gap_length}")
        for j, (a, b) in enumerate(zip(lv.gaps, lv.gaps[1:]), 1):
            checks += 1
            if a.hi >= b.lo:
                flag(f"level {n}: closures of gaps {j} and {j + 1} meet")

    # closures of different levels are disjoint
    closures = [c.open_set(n).closure() for n in range(1, c.depth + 1)]
    for n in range(1, c.depth + 1):
        for m in range(n + 1, c.depth + 1):
            checks += 1
            if not closures[n - 1].intersect(closures[m - 1]).is_empty:
                flag(f"closures of level {n} and level {m} gap unions intersect")

    # remnant decomposition and size bound
    for n in range(1, c.depth + 1):
        checks += 1
        expected = c.open_sets_through(n).complement_within(UNIT)
        if expected != c.remnant_set(n):
            flag(f"level {n}: [0,1] minus gaps does not equal the remnant union")
        limit = TWO_THIRDS ** n
        for j, r in enumerate(c.remnant_set(n).parts, 1):
            checks += 1
            if not (r.lo_closed and r.hi_closed):
                flag(f"level {n} remnant {j}: {r} is not closed")
            if r.length >= limit:
                flag(f"level {n} remnant {j}: length {r.length} >= (2/3)^{n}")

    # child indexing
    for n in range(0, c.depth):
        for j in range(1, 2 ** n + 1):
            checks += 1
            parent = c.remnant(n, j)
            left, right = c.remnant(n + 1, 2 * j - 1), c.remnant(n + 1, 2 * j)
            if not (parent.lo == left.lo and left.hi < right.lo and right.hi == parent.hi):
                flag(f"children of remnant ({n},{j}) misplaced: {left}, {right}")

    # monotone approach of descendant left edges to the parent's right edge
    for n in range(1, c.depth):
        for j in range(1, 2 ** n + 1):
            top = c.remnant(n, j).hi
            prev_inf = None
            for k in range(1, min(k_max, c.depth - n) + 1):
                checks += 1
                inf_k = c.remnant(n + k, (2 ** k) * j).lo
                if prev_inf is not None and inf_k < prev_inf:
                    flag(f"inf of rightmost descendant of ({n},{j}) decreased at k={k}")
                prev_inf = inf_k
                if top - inf_k >= TWO_THIRDS ** (n + k):
                    flag(f"remnant ({n},{j}): sup - inf of level-{n + k} rightmost "
                         f"descendant is not below (2/3)^{n + k}")

    # left neighborhood of each gap covers [inf parent, sup gap)
    for n in range(1, c.depth + 1):
        for j in range(1, 2 ** (n - 1) + 1):
            checks += 1
            parent = c.remnant(n - 1, j)
            gap = c.gap(n, j)
            covered = IntervalSet((gap,)).left_neighborhood(TWO_THIRDS * parent.length)
            target = IntervalSet((Interval.half_open(parent.lo, gap.hi),))
            if not covered.issuperset(target):
                flag(f"level {n} gap {j}: left 2/3|K|-neighborhood misses "
                     f"[{parent.lo},{gap.hi})")

    return InvariantReport(depth=c.depth, k_max=k_max, checks_run=checks,
                           violations=tuple(violations))


@dataclass(frozen=True)
class CoverReport:
    """How much of the level-N half-open remnant skeleton the left
    (2/3)^n-neighborhoods of gap levels N+1..N+k_max fail to cover."""

    N: int
    k_max: int
    uncovered: IntervalSet
    uncovered_measure: Fraction
    enclosure_ok: bool
    bound: Fraction
    within_bound: bool

    @property
    def passed(self) -> bool:
        return self.enclosure_ok and self.within_bound

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "k_max": self.k_max,
            "uncovered": self.uncovered.to_strings(),
            "uncovered_measure": str(self.uncovered_measure),
            "enclosure_ok": self.enclosure_ok,
            "bound": str(self.bound),
            "within_bound": self.within_bound,
            "pass": self.passed,
        }


def truncated_union_cover(construction: CantorConstruction, N: int,
                          k_max: int) -> CoverReport:
    """Compute the remainder of the star skeleton at level N not reached by
    the left (2/3)^n-neighborhoods of levels N+1 .. N+k_max.

    The remainder must sit inside the right-edge slivers
    [inf K(N+k_max, 2^k_max j), sup K(N,j)), so its measure stays below
    2^N * (2/3)^(N+k_max).
    """
    c = construction
    if N < 1 or k_max < 1:
        raise ValueError("N and k_max must be positive")
    if N + k_max > c.depth:
        raise ValueError(f"depth {c.depth} insufficient for N={N}, k_max={k_max}")
    covered = union_all([
        c.open_set(n).left_neighborhood(TWO_THIRDS ** n)
        for n in range(N + 1, N + k_max + 1)
    ])
    skeleton = c.remnant_set(N).star()
    remainder = skeleton.difference(covered)
    enclosure = IntervalSet(tuple(
        Interval.half_open(c.remnant(N + k_max, (2 ** k_max) * j).lo, c.remnant(N, j).hi)
        for j in range(1, 2 ** N + 1)
    ))
    bound = (2 ** N) * TWO_THIRDS ** (N + k_max)
    measure = remainder.measure()
    return CoverReport(
        N=N,
        k_max=k_max,
        uncovered=remainder,
        uncovered_measure=measure,
        enclosure_ok=enclosure.issuperset(remainder),
        bound=bound,
        within_bound=measure < bound,
    )
