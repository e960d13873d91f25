"""Factor-price aggregation and the single-switch property.

When the inputs of a lag group keep fixed internal proportions across every
technique that uses them (the discrete form of the Leontief-Sono
separability condition), the group admits a scalar price aggregate F: the
cost of the group's reference bundle at current factor prices. Dividing F
by the rental of a single complementary input yields a relative factor
price, and plotting the technique cost ratio against it collapses the
multi-valued interest-rate picture into a single-valued, strictly monotone
curve with at most one switch.

Naming note: the aggregate combines the post-factum wage (wage compounded to
period end) with rentals; the ante-factum wage never enters it directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DomainError,
    NoRootError,
    NonScalarComplementError,
    NotAggregableError,
)
from .model import FactorPricePoint, Technique, TechnologySet
from .polynomial import (
    Polynomial,
    RootInterval,
    isolate_roots_closed,
    refine_root,
)

MIN_REFINE_TOL = Fraction(1, 10**12)


@dataclass(frozen=True)
class FactorGroup:
    """A nonempty set of input lags considered for price aggregation."""

    lags: frozenset[int]

    @classmethod
    def of(cls, *lags: int) -> "FactorGroup":
        return cls(frozenset(int(x) for x in lags))

    def sorted_lags(self) -> tuple[int, ...]:
        return tuple(sorted(self.lags))


@dataclass(frozen=True)
class AggregateCurvePoint:
    interest: Fraction
    relative_price: Fraction
    cost_ratio: Fraction


@dataclass(frozen=True)
class Crossing:
    relative_price: Fraction
    interest_preimages: tuple[RootInterval, ...]  # interest units


@dataclass(frozen=True)
class TheoremVerdict:
    """Outcome of checking for a single switch in factor-price space.

    single_switch is only meaningful when the preconditions hold (reason is
    None); when they fail no claim is made either way.
    """

    pair: tuple[str, ...]
    aggregable: bool
    single_switch: Optional[bool]
    crossing: Optional[Crossing]
    counterexample: Optional[str]
    reason: Optional[str] = None


def _validate_group(ts: TechnologySet, group: FactorGroup) -> tuple[int, ...]:
    lags = group.sorted_lags()
    if not lags:
        raise ValueError("factor group must be nonempty")
    if any(t < 1 or t > ts.horizon for t in lags):
        raise ValueError(f"group lags {lags} outside horizon 1..{ts.horizon}")
    if len(lags) >= ts.horizon:
        raise ValueError("factor group must be a proper subset of the lags")
    return lags


def _group_subvector(tech: Technique, lags: Sequence[int]) -> tuple[Fraction, ...]:
    return tuple(tech.lag(t) for t in lags)


def leontief_sono_check(ts: TechnologySet, group: FactorGroup) -> bool:
    """True iff all techniques use the group's inputs in the same proportions.

    All-zero sub-vectors are compatible with any proportions. This is the
    discrete-technology condition under which a group price aggregate is
    well defined.
    """
    lags = _validate_group(ts, group)
    nonzero = [
        _group_subvector(t, lags)
        for t in ts.techniques
        if any(v > 0 for v in _group_subvector(t, lags))
    ]
    if len(nonzero) <= 1:
        return True
    ref = nonzero[0]
    for vec in nonzero[1:]:
        for i in range(len(lags)):
            for j in range(i + 1, len(lags)):
                if ref[i] * vec[j] != ref[j] * vec[i]:
                    return False
    return True


def _reference_bundle(ts: TechnologySet, group: FactorGroup) -> dict[int, Fraction]:
    """The group's common proportion vector, scaled to the first technique
    that actually uses the group."""
    lags = _validate_group(ts, group)
    if not leontief_sono_check(ts, group):
        raise NotAggregableError(
            f"group {lags}: input proportions differ across techniques"
        )
    for tech in ts.techniques:
        sub = _group_subvector(tech, lags)
        if any(v > 0 for v in sub):
            return dict(zip(lags, sub))
    raise NotAggregableError(f"group {lags}: no technique uses these inputs")


def aggregate_price(
    ts: TechnologySet, group: FactorGroup, prices: FactorPricePoint
) -> Fraction:
    """The group price aggregate F: cost of the reference bundle at `prices`.

    When the group equals the positive support of one technique, F is
    identically that technique's unit cost.
    """
    bundle = _reference_bundle(ts, group)
    return sum(
        (qty * prices.price_of_lag(t) for t, qty in bundle.items()), Fraction(0)
    )


def scalar_complement_lag(ts: TechnologySet, group: FactorGroup) -> int:
    """The single positive lag outside the group, used to normalize F."""
    lags = set(_validate_group(ts, group))
    outside = [t for t in ts.positive_lags() if t not in lags]
    if len(outside) != 1:
        raise NonScalarComplementError(
            f"complement of group {sorted(lags)} holds {len(outside)} positive "
            "lags; a scalar relative price needs exactly one"
        )
    return outside[0]


def _curve_techniques(ts: TechnologySet, group: FactorGroup) -> tuple[Technique, Technique]:
    if len(ts) == 1:
        # degenerate single-technique curve: the cost ratio is identically 1
        return ts.techniques[0], ts.techniques[0]
    if len(ts) != 2:
        raise ValueError("the relative-price curve compares exactly two techniques")
    lags = _validate_group(ts, group)
    first, second = ts.techniques
    if any(v > 0 for v in _group_subvector(first, lags)):
        return first, second
    return second, first


def aggregate_polynomial(ts: TechnologySet, group: FactorGroup) -> Polynomial:
    """F at unit wage as a polynomial in x = 1 + i."""
    bundle = _reference_bundle(ts, group)
    coeffs = [Fraction(0)] * (max(bundle) + 1)
    for t, qty in bundle.items():
        coeffs[t] = qty
    return Polynomial(coeffs)


def relative_price_curve(
    ts: TechnologySet, group: FactorGroup, interest_grid: Sequence[Fraction]
) -> list[AggregateCurvePoint]:
    """Exact (interest, F/complement-rental, cost ratio) triples.

    The cost ratio is group-using technique over the other one.
    """
    owner, other = _curve_techniques(ts, group)
    lag = scalar_complement_lag(ts, group)
    bundle = _reference_bundle(ts, group)
    out = []
    for i in interest_grid:
        fp = ts.factor_prices(i)
        f_value = sum(
            (qty * fp.price_of_lag(t) for t, qty in bundle.items()), Fraction(0)
        )
        rel = f_value / fp.price_of_lag(lag)
        ratio = owner.cost_at(ts.wage, i) / other.cost_at(ts.wage, i)
        out.append(AggregateCurvePoint(Fraction(i), rel, ratio))
    return out


def interest_rates_for_relative_price(
    ts: TechnologySet,
    group: FactorGroup,
    target: Fraction,
    lo: Fraction = Fraction(0),
    hi: Fraction = Fraction(2),
) -> list[RootInterval]:
    """All interest rates in [lo, hi] where F/complement-rental hits target.

    Roots come back as certificates (exact rationals have lo == hi). Raises
    NoRootError when the target is never attained, e.g. below the curve
    minimum.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo <= -1:
        raise DomainError(f"domain start {lo} is at or below -100%")
    lag = scalar_complement_lag(ts, group)
    f_poly = aggregate_polynomial(ts, group)
    cleared = f_poly - Fraction(target) * Polynomial.monomial(lag)
    roots = isolate_roots_closed(cleared, 1 + lo, 1 + hi)
    if not roots:
        raise NoRootError(
            f"relative price {target} is not attained for interest in [{lo}, {hi}]"
        )
    return [RootInterval(r.lo - 1, r.hi - 1, r.parity) for r in roots]


@dataclass(frozen=True)
class CurveMinimum:
    """Interior minimum of the relative-price curve, refined to high precision."""

    certificate: RootInterval  # interest units, bracket for the minimizer
    interest: Fraction  # refined approximation
    relative_price: Fraction
    cost_ratio: Fraction


def curve_minimum(
    ts: TechnologySet,
    group: FactorGroup,
    lo: Fraction = Fraction(0),
    hi: Fraction = Fraction(2),
) -> Optional[CurveMinimum]:
    """The interior global minimum of F/complement-rental on [lo, hi], if any.

    Found by clearing the derivative of sum b_t x**(t-c) to the polynomial
    sum b_t (t-c) x**t and isolating its roots. The minimizer is refined
    until the second-order error in the price value is negligible (the
    derivative vanishes there, so the value converges quadratically).
    """
    lag = scalar_complement_lag(ts, group)
    bundle = _reference_bundle(ts, group)
    owner, other = _curve_techniques(ts, group)
    coeffs = [Fraction(0)] * (max(bundle) + 1)
    for t, qty in bundle.items():
        coeffs[t] = qty * (t - lag)
    cleared = Polynomial(coeffs)
    if cleared.is_zero:
        return None
    xlo, xhi = 1 + Fraction(lo), 1 + Fraction(hi)
    candidates = [
        r for r in isolate_roots_closed(cleared, xlo, xhi) if xlo < r.hi and r.lo < xhi
    ]

    def rel_at(x: Fraction) -> Fraction:
        f = sum((qty * x**t for t, qty in bundle.items()), Fraction(0))
        return f / x**lag

    best: Optional[tuple[Fraction, Fraction, RootInterval]] = None
    for cand in candidates:
        x_star = refine_root(cand, cleared, MIN_REFINE_TOL)
        if not (xlo < x_star < xhi):
            continue
        value = rel_at(x_star)
        if best is None or value < best[0]:
            best = (value, x_star, cand)
    if best is None:
        return None
    value, x_star, cand = best
    if value >= rel_at(xlo) or value >= rel_at(xhi):
        return None
    ratio = owner.cost_polynomial(ts.wage)(x_star) / other.cost_polynomial(ts.wage)(x_star)
    return CurveMinimum(
        certificate=RootInterval(cand.lo - 1, cand.hi - 1, cand.parity),
        interest=x_star - 1,
        relative_price=value,
        cost_ratio=ratio,
    )


def _integer_nth_root(n: int, k: int) -> Optional[int]:
    if n < 0:
        return None
    if n in (0, 1):
        return n
    low, high = 0, 1
    while high**k <= n:
        high *= 2
    while low + 1 < high:
        mid = (low + high) // 2
        if mid**k <= n:
            low = mid
        else:
            high = mid
    return low if low**k == n else None


def symmetric_interest_pairs(
    ts: TechnologySet,
    group: FactorGroup,
    count: int,
    lo: Fraction = Fraction(0),
    hi: Fraction = Fraction(2),
) -> list[tuple[Fraction, Fraction]]:
    """Exact pairs of distinct interest rates with identical relative price.

    Exists in closed form when the group holds exactly two lags placed
    symmetrically around the complement lag: with price factors x, x' the
    aggregate ratio coincides exactly when (x * x')**a equals the bundle
    coefficient ratio, so rational pairs satisfy x * x' = constant.
    """
    lag = scalar_complement_lag(ts, group)
    bundle = _reference_bundle(ts, group)
    lags = sorted(bundle)
    if len(lags) != 2:
        return []
    s, u = lags
    alpha = lag - s
    if alpha <= 0 or u - lag != alpha:
        return []
    q = bundle[s] / bundle[u]
    num = _integer_nth_root(q.numerator, alpha)
    den = _integer_nth_root(q.denominator, alpha)
    if num is None or den is None or den == 0:
        return []
    product = Fraction(num, den)  # x * x' on every equal-price pair

    xlo, xhi = 1 + Fraction(lo), 1 + Fraction(hi)
    left = max(xlo, product / xhi)
    right = min(xhi, product / xlo)
    if left >= right:
        return []
    pairs = []
    for k in range(1, count + 1):
        x = left + (right - left) * Fraction(k, 2 * (count + 1))
        if x * x == product:
            continue
        partner = product / x
        if xlo <= partner <= xhi and partner != x:
            pairs.append((x - 1, partner - 1))
    return pairs


def support_groups(ts: TechnologySet) -> list[FactorGroup]:
    """Candidate aggregation groups: each technique's positive support, when
    it is a proper subset of the lags."""
    out = []
    seen = set()
    for tech in ts.techniques:
        support = frozenset(tech.support)
        if 0 < len(support) < ts.horizon and support not in seen:
            seen.add(support)
            out.append(FactorGroup(support))
    return out


def verify_single_switch(
    ts: TechnologySet,
    group: FactorGroup,
    lo: Fraction = Fraction(0),
    hi: Fraction = Fraction(2),
    grid_points: int = 41,
) -> TheoremVerdict:
    """Check that the cost ratio is a single-valued, strictly monotone
    function of the relative factor price, crossing 1 at most once.

    Preconditions (two techniques, disjoint positive supports, the group
    exactly equal to one support, a scalar complement) are verified first;
    when any fails the verdict carries a reason and makes no claim. All
    verification arithmetic is exact: the collapse of the cost ratio onto
    the relative price is certified as a polynomial identity and then
    witnessed on an exact grid, including equal-price pairs when they are
    rationally constructible.
    """
    names = tuple(ts.names)
    if len(ts) != 2:
        return TheoremVerdict(names, False, None, None, None, "needs exactly two techniques")
    try:
        lags = _validate_group(ts, group)
    except ValueError as exc:
        return TheoremVerdict(names, False, None, None, None, str(exc))
    if not leontief_sono_check(ts, group):
        return TheoremVerdict(
            names, False, None, None, None, "group fails the price-aggregation check"
        )
    owner, other = _curve_techniques(ts, group)
    if set(owner.support) & set(other.support):
        return TheoremVerdict(
            names, True, None, None, None, "technique supports are not disjoint"
        )
    if set(owner.support) != set(lags):
        return TheoremVerdict(
            names, True, None, None, None,
            "group must equal the positive support of one technique",
        )
    try:
        lag = scalar_complement_lag(ts, group)
    except NonScalarComplementError as exc:
        return TheoremVerdict(names, True, None, None, None, str(exc))

    # Collapse identity: F coincides with the owner's unit cost, and the
    # other technique's cost is a single monomial, so the cost ratio equals
    # relative_price / other_coefficient identically.
    f_poly = aggregate_polynomial(ts, group)
    other_coeff = other.lag(lag)
    if f_poly != owner.cost_polynomial(Fraction(1)) or other.cost_polynomial(
        Fraction(1)
    ) != other_coeff * Polynomial.monomial(lag):
        return TheoremVerdict(
            names, True, False, None,
            "collapse identity failed: cost ratio is not a function of the "
            "relative price", None,
        )

    # Exact grid evidence plus constructed equal-price pairs.
    lo, hi = Fraction(lo), Fraction(hi)
    step = (hi - lo) / (grid_points - 1)
    grid = [lo + k * step for k in range(grid_points)]
    points = relative_price_curve(ts, group, grid)
    for pt in points:
        if pt.cost_ratio * other_coeff != pt.relative_price:
            return TheoremVerdict(
                names, True, False, None,
                f"exact collapse check failed at interest {pt.interest}", None,
            )
    ordered = sorted(points, key=lambda p: p.relative_price)
    for a, b in zip(ordered, ordered[1:]):
        if a.relative_price == b.relative_price:
            if a.cost_ratio != b.cost_ratio:
                return TheoremVerdict(
                    names, True, False, None,
                    "equal relative prices with different cost ratios", None,
                )
        elif not a.cost_ratio < b.cost_ratio:
            return TheoremVerdict(
                names, True, False, None,
                "cost ratio not strictly increasing in relative price", None,
            )
    for i1, i2 in symmetric_interest_pairs(ts, group, 25, lo, hi):
        p1 = relative_price_curve(ts, group, [i1])[0]
        p2 = relative_price_curve(ts, group, [i2])[0]
        if p1.relative_price != p2.relative_price or p1.cost_ratio != p2.cost_ratio:
            return TheoremVerdict(
                names, True, False, None,
                f"equal-price pair ({i1}, {i2}) broke single-valuedness", None,
            )

    crossing = None
    try:
        preimages = interest_rates_for_relative_price(
            ts, group, other_coeff, lo, hi
        )
        crossing = Crossing(Fraction(other_coeff), tuple(preimages))
    except NoRootError:
        crossing = None
    return TheoremVerdict(names, True, True, crossing, None, None)
