"""A closed, nowhere dense subset of [0,1] that still absorbs affine copies
of every sequence dominated by a prescribed decay.

The recipe: convexify the prescribed decay beta into a threshold sequence eta
(strictly decreasing to zero with non-increasing gaps), enumerate a dyadic
base V_n of (0,1), and punch one centered hole J_n into each V_n whose length
lambda_n is budgeted so that the total measure swept by the translates
J_n - eta_m stays summable. The complement A = [0,1] minus the holes is
closed and misses an open piece of every base interval, yet for any rational
vector alpha with |alpha_m| <= eta_m/(2*delta0) a small positive delta and a
translation t with t + delta*alpha_m in A can be found by exact search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

from affcopy.intervals import (Interval, IntervalSet, RationalLike, as_fraction,
                               normalize)
from affcopy.slowseq import HorizonError, threshold_index

#: Horizon used for formula-backed sequences, large enough that every budget
#: search below is limited by arithmetic, not by an artificial cap.
FORMULA_HORIZON = 2 ** 62

#: How many leading gaps of a formula-backed sequence are checked eagerly.
CONVEXITY_SPOT_CHECKS = 128


class EmbeddingSearchError(Exception):
    """The delta ladder ran out before a positive-measure residual appeared."""

    def __init__(self, trace: Tuple[Tuple[Fraction, Fraction], ...]):
        tried = ", ".join(f"delta={d}: measure={m}" for d, m in trace)
        super().__init__(f"no delta on the ladder succeeded ({tried})")
        self.trace = trace


class ThresholdSequence:
    """A strictly decreasing positive null sequence with non-increasing gaps.

    Built either from explicit source values via the convexification
    recurrence eta_m = max(beta_m, 2*eta_(m-1) - eta_(m-2)), or directly from
    a formula that is already convex (then eta coincides with the source and
    arbitrary indices can be evaluated without materializing a prefix).
    """

    def __init__(self, beta: Callable[[int], Fraction], eta: Callable[[int], Fraction],
                 horizon: int, source: str,
                 beta_values: Optional[Tuple[Fraction, ...]] = None,
                 eta_values: Optional[Tuple[Fraction, ...]] = None):
        self._beta = beta
        self._eta = eta
        self.horizon = horizon
        self.source = source
        self._beta_values = beta_values
        self._eta_values = eta_values

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_values(cls, values: Sequence[RationalLike]) -> "ThresholdSequence":
        beta_values = tuple(as_fraction(v) for v in values)
        if len(beta_values) < 2:
            raise ValueError("need at least two source values")
        for i, v in enumerate(beta_values):
            if v <= 0:
                raise ValueError(f"source value {i + 1} is not positive")
            if i and v >= beta_values[i - 1]:
                raise ValueError(f"source not strictly decreasing at index {i + 1}")
        eta: List[Fraction] = [beta_values[0], beta_values[1]]
        for m in range(3, len(beta_values) + 1):
            eta.append(max(beta_values[m - 1], 2 * eta[-1] - eta[-2]))
        eta_values = tuple(eta)
        return cls(beta=lambda m: beta_values[m - 1], eta=lambda m: eta_values[m - 1],
                   horizon=len(beta_values), source="recurrence",
                   beta_values=beta_values, eta_values=eta_values)

    @classmethod
    def from_convex(cls, fn: Callable[[int], Fraction],
                    horizon: int = FORMULA_HORIZON) -> "ThresholdSequence":
        """Wrap an already-convex formula (non-increasing gaps), so eta = beta.

        The gap condition is spot-checked on a leading stretch; beyond that
        the formula is trusted, which is what allows threshold searches at
        indices far past anything a materialized prefix could reach.
        """
        prev = None
        prev_gap = None
        for m in range(1, min(horizon, CONVEXITY_SPOT_CHECKS) + 1):
            v = as_fraction(fn(m))
            if v <= 0:
                raise ValueError(f"formula not positive at m={m}")
            if prev is not None:
                gap = prev - v
                if gap <= 0:
                    raise ValueError(f"formula not strictly decreasing at m={m}")
                if prev_gap is not None and gap > prev_gap:
                    raise ValueError(f"formula gaps increase at m={m}")
                prev_gap = gap
            prev = v
        wrapped = lambda m: as_fraction(fn(m))
        return cls(beta=wrapped, eta=wrapped, horizon=horizon, source="convex")

    # -- evaluation -----------------------------------------------------------

    def _check_index(self, m: int) -> None:
        if not 1 <= m <= self.horizon:
            raise HorizonError(f"index {m} outside 1..{self.horizon}")

    def beta(self, m: int) -> Fraction:
        self._check_index(m)
        return self._beta(m)

    def eta(self, m: int) -> Fraction:
        self._check_index(m)
        return self._eta(m)

    def eta_gap(self, m: int) -> Fraction:
        self._check_index(m + 1)
        return self._eta(m) - self._eta(m + 1)

    def first_index_below(self, x: RationalLike) -> int:
        """Least m with eta_m < x (eta is strictly decreasing)."""
        target = as_fraction(x)
        if self.eta(1) < target:
            return 1
        if not self.eta(self.horizon) < target:
            raise HorizonError(f"eta never drops below {target} within the horizon")
        lo, hi = 1, self.horizon
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.eta(mid) < target:
                hi = mid
            else:
                lo = mid
        return hi

    def convergence_prognosis(self) -> dict:
        """Finite stand-in for the null limit, which no prefix can certify.

        Either the sequence still touches its source near the end of the
        horizon (the source drags it to zero), or it ends in an arithmetic
        tail whose extrapolated zero crossing is reported.
        """
        if self._eta_values is None:
            return {"kind": "follows-source", "detail": "eta equals the convex source"}
        h = self.horizon
        tail_start = max(1, h - h // 10)
        for m in range(h, tail_start - 1, -1):
            if self._eta_values[m - 1] == self._beta_values[m - 1]:
                return {"kind": "follows-source",
                        "detail": f"eta_m = beta_m at m={m} within the final tenth"}
        last_gap = self._eta_values[-2] - self._eta_values[-1]
        crossing = h + -(-self._eta_values[-1].numerator * last_gap.denominator
                         // (self._eta_values[-1].denominator * last_gap.numerator))
        return {"kind": "linear-tail",
                "detail": f"final gap {last_gap} extrapolates to zero by m={crossing}"}


def thresholdize(beta: Union[Sequence[RationalLike], Callable[[int], Fraction]],
                 horizon: Optional[int] = None) -> ThresholdSequence:
    """Convexify a strictly decreasing positive source into a threshold
    sequence via eta_m = max(beta_m, 2*eta_(m-1) - eta_(m-2))."""
    if callable(beta):
        if horizon is None:
            raise ValueError("a callable source needs an explicit horizon")
        values = [beta(m) for m in range(1, horizon + 1)]
    else:
        values = list(beta)
        if horizon is not None:
            values = values[:horizon]
    return ThresholdSequence.from_values(values)


# ---------------------------------------------------------------------------
# base enumeration and hole budget
# ---------------------------------------------------------------------------

def enumerate_base(n: int) -> Interval:
    """The n-th interval of the dyadic base of (0,1).

    Level L contributes the 2^L - 1 intervals centered at i/2^L with radius
    1/2^(L+1), ordered by (L, i); every open subinterval of (0,1) contains
    one of them.
    """
    if n < 1:
        raise ValueError("base index starts at 1")
    level = 1
    idx = n
    while idx > 2 ** level - 1:
        idx -= 2 ** level - 1
        level += 1
    center = Fraction(idx, 2 ** level)
    radius = Fraction(1, 2 ** (level + 1))
    return Interval.open(center - radius, center + radius)


@dataclass(frozen=True)
class HoleBudget:
    """Per-index budget: the even cutoff K after which eta sinks below 1/n^2,
    the hole length lambda, and the overlap threshold T of the eta-translates
    of a length-lambda interval. T > K always."""

    n: int
    base: Interval
    K: int
    lam: Fraction
    T: int

    def to_json_dict(self) -> dict:
        return {"n": self.n, "V": str(self.base), "lambda": str(self.lam),
                "K": self.K, "T": self.T}


def plan_budget(t: ThresholdSequence, n: int) -> HoleBudget:
    """K(n) = 2 * (first m with eta_m < 1/n^2); lambda_n = min(|V_n|, 2^-n,
    eta-gap at K(n)); T(n) = first m whose eta-gap drops below lambda_n."""
    if n < 1:
        raise ValueError("budget index starts at 1")
    base = enumerate_base(n)
    K = 2 * t.first_index_below(Fraction(1, n * n))
    lam = min(base.length, Fraction(1, 2 ** n), t.eta_gap(K))
    T = threshold_index(t.eta_gap, 1, 1, lam, t.horizon - 1)
    if T <= K:
        raise RuntimeError(f"budget invariant broken at n={n}: T={T} <= K={K}")
    return HoleBudget(n=n, base=base, K=K, lam=lam, T=T)


@dataclass(frozen=True)
class Hole:
    budget: HoleBudget
    interval: Interval  # the centered open hole J_n inside V_n

    def to_json_dict(self) -> dict:
        d = self.budget.to_json_dict()
        return {"n": d["n"], "V": d["V"], "J": str(self.interval),
                "lambda": d["lambda"], "K": d["K"], "T": d["T"]}


@dataclass
class AvoiderConstruction:
    """Depth-N truncation of the avoider: [0,1] minus the first N holes.

    The truncation contains the full set, so any embedding certificate for a
    deeper truncation remains valid here; reports label results with the
    depth they were checked at. ``delta0`` records the scale cap of the most
    recent embedding query.
    """

    depth: int
    holes: Tuple[Hole, ...]
    avoider: IntervalSet
    delta0: Optional[Fraction] = field(default=None, compare=False)

    def to_json_dict(self) -> dict:
        return {"depth": self.depth, "holes": [h.to_json_dict() for h in self.holes]}


def build_avoider(t: ThresholdSequence, depth: int) -> AvoiderConstruction:
    """Punch the first `depth` budgeted holes into [0,1]."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    holes = []
    for n in range(1, depth + 1):
        budget = plan_budget(t, n)
        center = budget.base.midpoint()
        hole = Interval.open(center - budget.lam / 2, center + budget.lam / 2)
        holes.append(Hole(budget=budget, interval=hole))
    removed = normalize([h.interval for h in holes])
    avoider = removed.complement_within(Interval.closed(0, 1))
    return AvoiderConstruction(depth=depth, holes=tuple(holes), avoider=avoider)


# ---------------------------------------------------------------------------
# measure identity, summability, embedding search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TranslateMeasure:
    threshold: int
    kernel_measure: Fraction
    closed_form: Fraction
    limit: Fraction
    identity_ok: bool

    def to_json_dict(self) -> dict:
        return {"T": self.threshold, "kernel_measure": str(self.kernel_measure),
                "closed_form": str(self.closed_form), "limit": str(self.limit),
                "identity_ok": self.identity_ok}


def measure_union_translates(hole: Interval, t: ThresholdSequence,
                             M: int) -> TranslateMeasure:
    """Union of hole - eta_m for m = 1..M, measured two ways.

    The sweep over the exact kernel union must equal T*lambda + eta_T - eta_M
    where T is the overlap threshold; the full-union limit T*lambda + eta_T
    is reported alongside.
    """
    if not hole.is_open or hole.is_point:
        raise ValueError("need a nondegenerate open interval")
    lam = hole.length
    T = threshold_index(t.eta_gap, 1, 1, lam, t.horizon - 1)
    if M < T:
        raise ValueError(f"M={M} is below the overlap threshold {T}")
    kernel = normalize([hole.translate(-t.eta(m)) for m in range(1, M + 1)]).measure()
    closed = T * lam + t.eta(T) - t.eta(M)
    return TranslateMeasure(threshold=T, kernel_measure=kernel, closed_form=closed,
                            limit=T * lam + t.eta(T), identity_ok=kernel == closed)


@dataclass(frozen=True)
class SummabilityEntry:
    n: int
    K: int
    lam: Fraction
    T: int
    tail_measure: Fraction  # T*lambda + eta_T

    def to_json_dict(self) -> dict:
        return {"n": self.n, "K": self.K, "lambda": str(self.lam), "T": self.T,
                "tail_measure": str(self.tail_measure)}


@dataclass(frozen=True)
class SummabilityReport:
    """Exact partial sums and the termwise inequalities that make the total
    translate measure finite: eta at half-T is dominated by eta at half-K,
    which sits below 1/n^2, and T*lambda telescopes into twice the eta drop
    from half-T to T."""

    depth: int
    entries: Tuple[SummabilityEntry, ...]
    sum_eta_half_T: Fraction
    sum_inverse_squares: Fraction
    sum_tail_measures: Fraction
    violations: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "depth": self.depth,
            "entries": [e.to_json_dict() for e in self.entries],
            "sum_eta_half_T": str(self.sum_eta_half_T),
            "sum_inverse_squares": str(self.sum_inverse_squares),
            "sum_tail_measures": str(self.sum_tail_measures),
            "violations": list(self.violations),
            "pass": self.passed,
        }


def summability_report(t: ThresholdSequence, depth: int) -> SummabilityReport:
    entries = []
    violations = []
    sum_half = Fraction(0)
    sum_squares = Fraction(0)
    sum_tails = Fraction(0)
    for n in range(1, depth + 1):
        b = plan_budget(t, n)
        eta_half_T = t.eta(b.T // 2)
        eta_half_K = t.eta(b.K // 2)
        eta_T = t.eta(b.T)
        tail = b.T * b.lam + eta_T
        entries.append(SummabilityEntry(n=n, K=b.K, lam=b.lam, T=b.T, tail_measure=tail))
        sum_half += eta_half_T
        sum_squares += Fraction(1, n * n)
        sum_tails += tail
        if b.K % 2 != 0:
            violations.append(f"n={n}: K={b.K} is odd")
        if eta_half_T > eta_half_K:
            violations.append(f"n={n}: eta at T/2 exceeds eta at K/2")
        if not eta_half_K < Fraction(1, n * n):
            violations.append(f"n={n}: eta at K/2 not below 1/{n * n}")
        if not b.T * b.lam <= 2 * eta_half_T - 2 * eta_T:
            violations.append(f"n={n}: T*lambda exceeds the telescoped eta drop")
    return SummabilityReport(depth=depth, entries=tuple(entries),
                             sum_eta_half_T=sum_half,
                             sum_inverse_squares=sum_squares,
                             sum_tail_measures=sum_tails,
                             violations=tuple(violations))


def delta0_of(alpha: Sequence[RationalLike], t: ThresholdSequence) -> Optional[Fraction]:
    """Largest delta0 with |alpha_m| <= eta_m/(2*delta0) over the vector, or
    None when every entry is zero (unconstrained)."""
    best: Optional[Fraction] = None
    for m, a in enumerate(alpha, 1):
        a = as_fraction(a)
        if a == 0:
            continue
        cap = t.eta(m) / (2 * abs(a))
        best = cap if best is None else min(best, cap)
    return best


@dataclass(frozen=True)
class EmbeddingCertificate:
    """An exactly verified depth-N certificate: every t + delta*alpha_m lies
    in the truncated avoider."""

    delta: Fraction
    t: Fraction
    checked_points: int
    residual_measure: Fraction
    trace: Tuple[Tuple[Fraction, Fraction], ...]
    budget_lower_bound: Fraction

    def to_json_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "t": str(self.t),
            "checked_points": self.checked_points,
            "residual_measure": str(self.residual_measure),
            "trace": [[str(d), str(m)] for d, m in self.trace],
            "budget_lower_bound": str(self.budget_lower_bound),
        }


def find_embedding(construction: AvoiderConstruction, alpha: Sequence[RationalLike],
                   t: ThresholdSequence, i_max: int = 40) -> EmbeddingCertificate:
    """Search the geometric delta ladder for a verified affine embedding.

    delta runs over delta0 * 2^-i (capped below 1); at each rung the residual
    [0,1] intersected with every translate A - delta*alpha_m is computed
    exactly, and the first rung with positive measure yields t* at the
    midpoint of a largest component. Every translated point is then checked
    for membership before the certificate is returned; exhausting the ladder
    raises with the full measure trace.
    """
    vector = [as_fraction(a) for a in alpha]
    if not vector:
        raise ValueError("need at least one alpha entry")
    delta0 = delta0_of(vector, t)
    construction.delta0 = delta0
    base = delta0 if delta0 is not None else Fraction(1)
    unit = IntervalSet((Interval.closed(0, 1),))
    trace: List[Tuple[Fraction, Fraction]] = []
    budget_bound = Fraction(1) - sum(
        (e.T * e.lam + t.eta(e.T) for e in
         (h.budget for h in construction.holes)), Fraction(0))
    for i in range(1, i_max + 1):
        delta = base / 2 ** i
        if delta >= 1:
            continue
        residual = unit
        for a in vector:
            residual = residual.intersect(construction.avoider.translate(-delta * a))
            if residual.is_empty:
                break
        measure = residual.measure()
        trace.append((delta, measure))
        if measure > 0:
            best = max(residual.parts, key=lambda p: p.length)
            t_star = best.midpoint()
            for m, a in enumerate(vector, 1):
                if not construction.avoider.contains_point(t_star + delta * a):
                    raise RuntimeError(
                        f"witness failed exact membership at m={m}; kernel bug")
            return EmbeddingCertificate(delta=delta, t=t_star,
                                        checked_points=len(vector),
                                        residual_measure=measure,
                                        trace=tuple(trace),
                                        budget_lower_bound=budget_bound)
    raise EmbeddingSearchError(tuple(trace))
