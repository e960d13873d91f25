"""Switch points, cost dominance over the interest axis, and reswitching.

All comparisons are exact. Boundary points between dominance segments are
either exact rationals or carried as certified isolating intervals; segment
winners are decided by evaluating costs at exact rational sample points that
provably lie strictly between consecutive tie points. Even-multiplicity
tie points (tangencies, where two cost curves touch without crossing) never
enter the dominance map; they are reported separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import DivisionByZeroError, DomainError, IdenticalTechniquesError
from .model import Technique, TechnologySet
from .polynomial import (
    ODD,
    Polynomial,
    RootInterval,
    cauchy_root_bound,
    count_distinct_roots,
    isolate_real_roots,
    poly_gcd,
    refine_root,
    squarefree_part,
)

APPROX_TOL = Fraction(1, 10**9)

DEFAULT_LO = Fraction(0)
DEFAULT_HI = Fraction(2)


@dataclass(frozen=True)
class SwitchPoint:
    """An interest rate where two techniques tie with a genuine crossing."""

    certificate: RootInterval  # in interest units; exact when lo == hi
    interest_exact: Optional[Fraction]
    interest_approx: Fraction
    cheaper_below: str
    cheaper_above: str
    tie_cost_exact: Optional[Fraction]
    tie_cost_approx: Fraction

    @property
    def is_exact(self) -> bool:
        return self.interest_exact is not None


@dataclass(frozen=True)
class Tangency:
    """A tie of even multiplicity: costs touch but dominance does not switch."""

    pair: tuple[str, str]
    certificate: RootInterval
    interest_exact: Optional[Fraction]
    interest_approx: Fraction


@dataclass(frozen=True)
class Boundary:
    interest_exact: Optional[Fraction]
    interest_approx: Fraction
    certificate: RootInterval
    ties: tuple[str, ...]
    tie_cost_exact: Optional[Fraction]
    tie_cost_approx: Fraction


@dataclass(frozen=True)
class Segment:
    lo: Fraction
    hi: Fraction
    winner: str
    co_winners: tuple[str, ...] = ()


@dataclass(frozen=True)
class DominanceMap:
    domain: tuple[Fraction, Fraction]
    segments: tuple[Segment, ...]
    boundaries: tuple[Boundary, ...]

    @property
    def winners(self) -> tuple[str, ...]:
        return tuple(s.winner for s in self.segments)


@dataclass(frozen=True)
class ReswitchReport:
    reswitching: bool
    recurring: Optional[str]
    map: DominanceMap
    tangencies: tuple[Tangency, ...]


def _check_domain(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    lo, hi = Fraction(lo), Fraction(hi)
    if lo <= -1:
        raise DomainError(f"domain start {lo} is at or below -100%")
    if hi <= lo:
        raise DomainError("domain must have positive width")
    return lo, hi


def _pad_pair(a: Technique, b: Technique) -> tuple[Technique, Technique]:
    horizon = max(a.horizon, b.horizon)
    return a.padded(horizon), b.padded(horizon)


def _all_real_roots(p: Polynomial) -> list[RootInterval]:
    bound = cauchy_root_bound(p) + 1
    return isolate_real_roots(p, -bound, bound)


def _clip_bracket(
    sf: Polynomial, lo_b: Fraction, hi_b: Fraction, xlo: Fraction, xhi: Fraction
) -> Optional[tuple[Fraction, Fraction]]:
    """Narrow a sign-change bracket until fully inside or outside [xlo, xhi]."""
    sa = sf(lo_b)
    while True:
        if hi_b < xlo or lo_b > xhi:
            return None
        if xlo <= lo_b and hi_b <= xhi:
            return lo_b, hi_b
        m = (lo_b + hi_b) / 2
        sm = sf(m)
        assert sm != 0, "bracket midpoint cannot be a root"
        if (sa < 0) != (sm < 0):
            hi_b = m
        else:
            lo_b, sa = m, sm


def _gap_sample(full: Sequence[RootInterval], k: int) -> Fraction:
    """A rational strictly between the (k-1)-th and k-th real root; k = 0
    reaches below the first root, k = len(full) above the last."""
    if k == 0:
        return full[0].lo - 1
    if k == len(full):
        return full[-1].hi + 1
    right_edge = full[k - 1].hi
    left_edge = full[k].lo
    if right_edge < left_edge:
        return (right_edge + left_edge) / 2
    # touching brackets: both roots lie strictly beyond the shared edge
    assert right_edge == left_edge
    return right_edge


def _difference(a: Technique, b: Technique) -> Polynomial:
    a, b = _pad_pair(a, b)
    return a.cost_polynomial(Fraction(1)) - b.cost_polynomial(Fraction(1))


def _pair_tie_points(
    a: Technique, b: Technique, lo: Fraction, hi: Fraction
) -> tuple[list[RootInterval], list[tuple[int, RootInterval]], Polynomial]:
    """All real roots of the cost difference plus the (index, clipped root)
    pairs lying inside the closed interest interval [lo, hi]."""
    d = _difference(a, b)
    if d.is_zero:
        raise IdenticalTechniquesError(
            f"techniques {a.name!r} and {b.name!r} have identical costs everywhere"
        )
    xlo, xhi = 1 + lo, 1 + hi
    full = _all_real_roots(d)
    sf = squarefree_part(d)
    in_domain: list[tuple[int, RootInterval]] = []
    for k, iv in enumerate(full):
        if iv.is_exact:
            if xlo <= iv.lo <= xhi:
                in_domain.append((k, iv))
        else:
            clipped = _clip_bracket(sf, iv.lo, iv.hi, xlo, xhi)
            if clipped is not None:
                in_domain.append((k, RootInterval(clipped[0], clipped[1], iv.parity)))
    return full, in_domain, d


def _to_interest(iv: RootInterval) -> RootInterval:
    return RootInterval(iv.lo - 1, iv.hi - 1, iv.parity)


def pairwise_switch_points(
    a: Technique,
    b: Technique,
    lo: Fraction = DEFAULT_LO,
    hi: Fraction = DEFAULT_HI,
    wage: Fraction = Fraction(1),
) -> list[SwitchPoint]:
    """All odd-multiplicity tie points of the two cost curves in [lo, hi].

    Switch locations do not depend on the wage (the cost difference is
    homogeneous in it); tie costs are reported at the given wage.
    """
    lo, hi = _check_domain(lo, hi)
    wage = Fraction(wage)
    full, in_domain, d = _pair_tie_points(a, b, lo, hi)
    a_pad, _ = _pad_pair(a, b)
    cost_a = a_pad.cost_polynomial(wage)
    out = []
    for k, iv in in_domain:
        if iv.parity != ODD:
            continue
        below = d(_gap_sample(full, k))
        above = d(_gap_sample(full, k + 1))
        assert below != 0 and above != 0 and (below < 0) != (above < 0)
        cheaper_below = a.name if below < 0 else b.name
        cheaper_above = b.name if below < 0 else a.name
        if iv.is_exact:
            approx_x = iv.lo
            tie_exact: Optional[Fraction] = cost_a(approx_x)
        else:
            approx_x = refine_root(iv, d, APPROX_TOL)
            tie_exact = None
        out.append(
            SwitchPoint(
                certificate=_to_interest(iv),
                interest_exact=iv.lo - 1 if iv.is_exact else None,
                interest_approx=approx_x - 1,
                cheaper_below=cheaper_below,
                cheaper_above=cheaper_above,
                tie_cost_exact=tie_exact,
                tie_cost_approx=cost_a(approx_x),
            )
        )
    return out


def pairwise_tangencies(
    a: Technique, b: Technique, lo: Fraction = DEFAULT_LO, hi: Fraction = DEFAULT_HI
) -> list[Tangency]:
    """Even-multiplicity tie points of the pair in [lo, hi]."""
    lo, hi = _check_domain(lo, hi)
    _, in_domain, d = _pair_tie_points(a, b, lo, hi)
    out = []
    for _, iv in in_domain:
        if iv.parity == ODD:
            continue
        approx_x = iv.lo if iv.is_exact else refine_root(iv, d, APPROX_TOL)
        out.append(
            Tangency(
                pair=(a.name, b.name),
                certificate=_to_interest(iv),
                interest_exact=iv.lo - 1 if iv.is_exact else None,
                interest_approx=approx_x - 1,
            )
        )
    return out


class _Cut:
    """A candidate dominance boundary: one certified tie point in x-space."""

    __slots__ = ("poly", "exact", "lo", "hi", "_sf")

    def __init__(self, poly: Polynomial, exact: Optional[Fraction], lo, hi):
        self.poly = poly  # vanishes at the point; basis for gcd tie tests
        self.exact = exact
        self.lo = lo
        self.hi = hi
        self._sf: Optional[Polynomial] = None

    @property
    def left(self) -> Fraction:
        return self.exact if self.exact is not None else self.lo

    @property
    def right(self) -> Fraction:
        return self.exact if self.exact is not None else self.hi

    def narrow(self) -> None:
        assert self.exact is None
        if self._sf is None:
            self._sf = squarefree_part(self.poly)
        sf = self._sf
        m = (self.lo + self.hi) / 2
        sm = sf(m)
        assert sm != 0
        if (sf(self.lo) < 0) != (sm < 0):
            self.hi = m
        else:
            self.lo = m

    def overlaps(self, other: "_Cut") -> bool:
        return not (self.right < other.left or other.right < self.left)


def _merge_or_separate(cuts: list[_Cut]) -> list[_Cut]:
    """Make all cuts pairwise disjoint, merging cuts that provably carry the
    same root (the gcd of the two defining polynomials keeps the root)."""
    exact_values = sorted({c.exact for c in cuts if c.exact is not None})
    for c in cuts:
        if c.exact is None:
            while any(c.lo <= e <= c.hi for e in exact_values):
                c.narrow()
    work = list(cuts)
    while True:
        for ci, cj in combinations(work, 2):
            if not ci.overlaps(cj):
                continue
            if ci.exact is not None and cj.exact is not None:
                # identical rational tie points from two different pairs
                work.remove(cj)
                break
            if ci.exact is not None or cj.exact is not None:
                interval = ci if ci.exact is None else cj
                point = ci.exact if ci.exact is not None else cj.exact
                while interval.lo <= point <= interval.hi:
                    interval.narrow()
                break
            g = poly_gcd(ci.poly, cj.poly)
            same = False
            if g.degree is not None and g.degree > 0:
                c1 = count_distinct_roots(g, ci.lo, ci.hi)
                c2 = count_distinct_roots(g, cj.lo, cj.hi)
                if c1 == 1 and c2 == 1:
                    hull_lo = min(ci.lo, cj.lo)
                    hull_hi = max(ci.hi, cj.hi)
                    if count_distinct_roots(g, hull_lo, hull_hi) == 1:
                        same = True
            if same:
                merged = _Cut(g, None, max(ci.lo, cj.lo), min(ci.hi, cj.hi))
                work.remove(ci)
                work.remove(cj)
                work.append(merged)
            else:
                ci.narrow()
                cj.narrow()
            break
        else:
            break
    work.sort(key=lambda c: (c.left, c.right))
    return work


def _separate_strictly(cuts: list[_Cut], xlo: Fraction, xhi: Fraction) -> None:
    """Open strict gaps between consecutive cuts and keep non-exact cuts off
    the domain edges, so every gap admits a rational interior sample."""
    for k in range(len(cuts) - 1):
        while cuts[k].right >= cuts[k + 1].left:
            target = cuts[k] if cuts[k].exact is None else cuts[k + 1]
            target.narrow()
    if cuts:
        first, last = cuts[0], cuts[-1]
        while first.exact is None and first.lo <= xlo:
            first.narrow()
        while last.exact is None and last.hi >= xhi:
            last.narrow()


def _dedupe_identical(ts: TechnologySet) -> tuple[list[Technique], dict[str, list[str]]]:
    reps: list[Technique] = []
    aliases: dict[str, list[str]] = {}
    for tech in ts.techniques:
        for rep in reps:
            if rep.labor == tech.labor:
                aliases[rep.name].append(tech.name)
                break
        else:
            reps.append(tech)
            aliases[tech.name] = []
    return reps, aliases


def dominance_map(
    ts: TechnologySet, lo: Fraction = DEFAULT_LO, hi: Fraction = DEFAULT_HI
) -> DominanceMap:
    """Partition [lo, hi] into segments whose interior has a strict unique
    cost minimizer; ties occur only at the recorded boundaries.

    Techniques with identical profiles are collapsed into one competitor and
    reported as co-winners of its segments.
    """
    lo, hi = _check_domain(lo, hi)
    xlo, xhi = 1 + lo, 1 + hi
    reps, aliases = _dedupe_identical(ts)
    wage = ts.wage

    if len(reps) == 1:
        seg = Segment(lo, hi, reps[0].name, tuple(aliases[reps[0].name]))
        return DominanceMap((lo, hi), (seg,), ())

    cuts: list[_Cut] = []
    for u, v in combinations(reps, 2):
        _, in_domain, d = _pair_tie_points(u, v, lo, hi)
        for _, iv in in_domain:
            if iv.parity != ODD:
                continue
            if iv.is_exact:
                cuts.append(_Cut(d, iv.lo, iv.lo, iv.lo))
            else:
                cuts.append(_Cut(d, None, iv.lo, iv.hi))
    cuts = _merge_or_separate(cuts)
    _separate_strictly(cuts, xlo, xhi)

    def costs_at(x: Fraction) -> list[Fraction]:
        return [r.cost_polynomial(wage)(x) for r in reps]

    def min_owners(x: Fraction) -> list[Technique]:
        values = costs_at(x)
        best = min(values)
        return [r for r, c in zip(reps, values) if c == best]

    def winner_at(x: Fraction, right_limit: Fraction) -> Technique:
        # Move toward (never onto) the right gap edge if the sample happens
        # to hit a tangency tie; tie points in the open gap are finite.
        point = x
        while True:
            owners = min_owners(point)
            if len(owners) == 1:
                return owners[0]
            point = (point + right_limit) / 2

    # Gap k lies before cut k; one final gap follows the last cut. A gap is
    # empty only when an exact cut sits precisely on a domain edge.
    samples: list[Optional[Fraction]] = []
    gap_bounds: list[tuple[Fraction, Fraction]] = []
    prev_right = xlo
    for cut in cuts:
        left = cut.left
        if left > prev_right:
            samples.append((prev_right + left) / 2)
        else:
            samples.append(None)
        gap_bounds.append((prev_right, left))
        prev_right = cut.right
    if xhi > prev_right:
        samples.append((prev_right + xhi) / 2)
    else:
        samples.append(None)
    gap_bounds.append((prev_right, xhi))

    gap_winners: list[Optional[Technique]] = [
        None if s is None else winner_at(s, gap_bounds[k][1])
        for k, s in enumerate(samples)
    ]

    def tie_set(cut: _Cut, anchor: Technique) -> tuple[str, ...]:
        names = []
        anchor_poly = anchor.cost_polynomial(Fraction(1))
        for tech in ts.techniques:
            if tech.labor == anchor.labor:
                names.append(tech.name)
                continue
            dd = anchor_poly - tech.cost_polynomial(Fraction(1))
            if cut.exact is not None:
                if dd(cut.exact) == 0:
                    names.append(tech.name)
                continue
            h = poly_gcd(cut.poly, dd)
            if h.degree is not None and h.degree > 0:
                if count_distinct_roots(h, cut.lo, cut.hi) == 1:
                    names.append(tech.name)
        return tuple(names)

    def boundary_from(cut: _Cut, anchor: Technique) -> Boundary:
        if cut.exact is not None:
            x = cut.exact
            cost = anchor.cost_polynomial(wage)(x)
            cert = RootInterval(x - 1, x - 1, ODD)
            return Boundary(x - 1, x - 1, cert, tie_set(cut, anchor), cost, cost)
        approx_x = refine_root(RootInterval(cut.lo, cut.hi, ODD), cut.poly, APPROX_TOL)
        cert = RootInterval(cut.lo - 1, cut.hi - 1, ODD)
        cost = anchor.cost_polynomial(wage)(approx_x)
        return Boundary(None, approx_x - 1, cert, tie_set(cut, anchor), None, cost)

    segments: list[Segment] = []
    boundaries: list[Boundary] = []
    current: Optional[Technique] = None
    open_display: Optional[Fraction] = None

    for idx, win in enumerate(gap_winners):
        if win is None:
            # exact cut on a domain edge; record it when the minimum is tied
            cut = cuts[idx] if idx < len(cuts) else cuts[-1]
            owners = min_owners(cut.exact)
            tset = tie_set(cut, owners[0])
            if len(tset) > 1:
                boundaries.append(boundary_from(cut, owners[0]))
            continue
        if current is None:
            current = win
            open_display = gap_bounds[idx][0] - 1
        elif win.name != current.name:
            boundary = boundary_from(cuts[idx - 1], current)
            boundaries.append(boundary)
            segments.append(
                Segment(
                    open_display,
                    boundary.interest_approx,
                    current.name,
                    tuple(aliases[current.name]),
                )
            )
            current = win
            open_display = boundary.interest_approx
    if current is not None:
        segments.append(
            Segment(open_display, hi, current.name, tuple(aliases[current.name]))
        )

    boundaries.sort(key=lambda b: b.interest_approx)
    return DominanceMap((lo, hi), tuple(segments), tuple(boundaries))


def detect_reswitching(
    ts: TechnologySet, lo: Fraction = DEFAULT_LO, hi: Fraction = DEFAULT_HI
) -> ReswitchReport:
    """Dominance map plus recurrence verdict: does any technique win on two
    non-adjacent segments?"""
    dom = dominance_map(ts, lo, hi)
    recurring = None
    seen: list[str] = []
    for name in dom.winners:
        if seen and seen[-1] == name:
            continue
        if name in seen:
            recurring = name
            break
        seen.append(name)

    reps, _ = _dedupe_identical(ts)
    tangencies: list[Tangency] = []
    for u, v in combinations(reps, 2):
        tangencies.extend(pairwise_tangencies(u, v, lo, hi))
    tangencies.sort(key=lambda t: t.interest_approx)
    return ReswitchReport(recurring is not None, recurring, dom, tuple(tangencies))


def cost_ratio_curve(
    numerator: Technique,
    denominator: Technique,
    interest_grid: Sequence[Fraction],
    wage: Fraction = Fraction(1),
) -> list[tuple[Fraction, Fraction]]:
    """Exact cost ratio numerator/denominator at each grid interest rate."""
    num, den = _pad_pair(numerator, denominator)
    out = []
    for i in interest_grid:
        below = den.cost_at(wage, i)
        if below == 0:
            raise DivisionByZeroError(
                f"cost of {denominator.name!r} vanishes at interest {i}"
            )
        out.append((Fraction(i), num.cost_at(wage, i) / below))
    return out
