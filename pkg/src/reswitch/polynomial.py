"""Dense univariate polynomials over the rationals, with certified real-root
isolation.

The isolation routine combines three exact ingredients:

* rational roots are found by the rational-root theorem and returned as
  degenerate (point) intervals;
* the remaining (irrational) roots of the square-free part are bracketed by
  Sturm-count bisection, so the interval count is provably exhaustive;
* multiplicity parity comes from the Yun square-free decomposition, since a
  technique tie only flips dominance when the crossing has odd multiplicity.

Every interval produced contains exactly one distinct real root of the input
polynomial and has rational, non-root endpoints (except the degenerate exact
case lo == hi).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Optional, Sequence

from .errors import ZeroPolynomialError

ODD = "odd"
EVEN = "even"


class Polynomial:
    """Coefficient sequence over Fraction; index k holds the x**k coefficient.

    The zero polynomial is the empty sequence and reports degree None.
    Trailing zero coefficients are stripped on construction, so equality is
    structural equality of normalized coefficient tuples.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Polynomial(out)
        return Polynomial(c * Fraction(other) for c in self.coeffs)

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero polynomial")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        dlead = other.coeffs[-1]
        dn = len(other.coeffs)
        while len(rem) >= dn and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < dn:
                break
            f = rem[-1] / dlead
            shift = len(rem) - dn
            quo[shift] = f
            for j, c in enumerate(other.coeffs):
                rem[shift + j] -= f * c
            rem.pop()
        return Polynomial(quo), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        return Polynomial(c / lead for c in self.coeffs)

    def primitive(self) -> "Polynomial":
        """Scale by a positive rational to coprime integer coefficients.

        The scale is positive, so signs at every point are preserved; this
        keeps Sturm chains in small integers.
        """
        if self.is_zero:
            return self
        den_lcm = 1
        for c in self.coeffs:
            den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
        ints = [int(c * den_lcm) for c in self.coeffs]
        g = 0
        for v in ints:
            g = _int_gcd(g, abs(v))
        return Polynomial(Fraction(v, g) for v in ints)

    def int_coeffs(self) -> tuple[int, ...]:
        prim = self.primitive()
        return tuple(int(c) for c in prim.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            term = "x" if k == 1 else f"x^{k}" if k > 1 else ""
            coef = "" if mag == 1 and term else str(mag)
            body = coef + ("*" if coef and term else "") + term
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor over Q (gcd with zero is the other)."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero:
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    if p.is_zero:
        raise ZeroPolynomialError("square-free part of the zero polynomial")
    if p.degree == 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun decomposition: [(f_k, k)] with p proportional to prod f_k**k."""
    if p.is_zero:
        raise ZeroPolynomialError("decomposition of the zero polynomial")
    f = p.monic()
    if f.degree == 0:
        return []
    df = f.derivative()
    g = poly_gcd(f, df)
    if g.degree == 0:
        return [(f, 1)]
    out = []
    c = (f // g).monic()
    d = (df // g) - c.derivative()
    k = 1
    while c.degree and c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree and a.degree > 0:
            out.append((a.monic(), k))
        c_next = (c // a).monic()
        d = (d // a) - c_next.derivative()
        c = c_next
        k += 1
    return out


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    chain = [p.primitive()]
    d = p.derivative()
    if not d.is_zero:
        chain.append(d.primitive())
        while True:
            rem = chain[-2] % chain[-1]
            if rem.is_zero:
                break
            chain.append((-rem).primitive())
    return chain


def sign_variations(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(chain: Sequence[Polynomial], a: Fraction, b: Fraction) -> int:
    """Distinct real roots of chain[0] in (a, b); endpoints must not be roots."""
    va = sign_variations([q(a) for q in chain])
    vb = sign_variations([q(b) for q in chain])
    return va - vb


def count_distinct_roots(p: Polynomial, a: Fraction, b: Fraction) -> int:
    return sturm_count(sturm_chain(p), a, b)


def cauchy_root_bound(p: Polynomial) -> Fraction:
    """Every real root r of p satisfies |r| < bound."""
    if p.is_zero or p.degree == 0:
        return Fraction(1)
    lead = abs(p.coeffs[-1])
    top = max(abs(c) for c in p.coeffs[:-1])
    return 1 + top / lead


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _rational_roots_of_squarefree(q: Polynomial) -> list[Fraction]:
    """All rational roots of a square-free polynomial, each simple."""
    coeffs = list(q.int_coeffs())
    roots = []
    k = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        k += 1
    if k:
        roots.append(Fraction(0))
    if len(coeffs) <= 1:
        return sorted(roots)
    trimmed = Polynomial(coeffs)
    for num in _divisors(coeffs[0]):
        for den in _divisors(coeffs[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and trimmed(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _deflate(p: Polynomial, root: Fraction) -> Polynomial:
    quo, rem = divmod(p, Polynomial([-root, 1]))
    assert rem.is_zero
    return quo


@dataclass(frozen=True)
class RootInterval:
    """Certificate for one distinct real root.

    lo == hi marks an exact rational root; otherwise the root lies strictly
    inside (lo, hi) and is the only root of the source polynomial there.
    """

    lo: Fraction
    hi: Fraction
    parity: str  # ODD or EVEN multiplicity

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def _shrink_excluding(
    a: Fraction, b: Fraction, q: Polynomial, excluded: Sequence[Fraction]
) -> tuple[Fraction, Fraction]:
    """Bisect [a, b] (keeping q's sign change) until no excluded point remains.

    q has no rational roots, so every midpoint is a valid non-root pivot and
    the loop terminates once the width drops below the distance from the root
    to the nearest excluded point.
    """
    sa = q(a)
    while any(a <= e <= b for e in excluded):
        m = (a + b) / 2
        sm = q(m)
        assert sm != 0
        if (sa < 0) != (sm < 0):
            b = m
        else:
            a, sa = m, sm
    return a, b


def _isolate_irrational(
    q: Polynomial, lo: Fraction, hi: Fraction, excluded: Sequence[Fraction]
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint sign-change brackets for every root of q in (lo, hi).

    q must be square-free with no rational roots in the range.
    """
    if q.degree is None or q.degree < 1 or hi <= lo:
        return []
    chain = sturm_chain(q)
    cache: dict[Fraction, int] = {}

    def var(point: Fraction) -> int:
        if point not in cache:
            cache[point] = sign_variations([g(point) for g in chain])
        return cache[point]

    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = var(a) - var(b)
        if n == 0:
            continue
        if n == 1:
            out.append(_shrink_excluding(a, b, q, excluded))
            continue
        m = (a + b) / 2
        assert q(m) != 0
        stack.append((a, m))
        stack.append((m, b))
    out.sort()
    return out


def _parity_of(k: int) -> str:
    return ODD if k % 2 else EVEN


def isolate_real_roots(
    p: Polynomial, lo: Fraction = Fraction(1), hi: Optional[Fraction] = None
) -> list[RootInterval]:
    """All distinct real roots of p in the half-open domain [lo, hi).

    hi=None means unbounded above (a Cauchy bound caps the search). Exact
    rational roots come back as point intervals; irrationals as sign-change
    brackets. Parity is the multiplicity parity in p itself.
    """
    if p.is_zero:
        raise ZeroPolynomialError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    lo = Fraction(lo)
    if hi is not None:
        hi = Fraction(hi)

    factors = squarefree_decomposition(p)
    sf = squarefree_part(p)

    def in_domain(r: Fraction) -> bool:
        return r >= lo and (hi is None or r < hi)

    rational = _rational_roots_of_squarefree(sf)
    deflated = sf
    for r in rational:
        deflated = _deflate(deflated, r)

    bound = hi if hi is not None else max(lo + 1, cauchy_root_bound(deflated))
    brackets = _isolate_irrational(deflated, lo, bound, rational)

    def parity_exact(r: Fraction) -> str:
        for f, k in factors:
            if f(r) == 0:
                return _parity_of(k)
        raise AssertionError("exact root not in any square-free factor")

    def parity_bracket(a: Fraction, b: Fraction) -> str:
        for f, k in factors:
            fa, fb = f(a), f(b)
            if fa != 0 and fb != 0 and (fa < 0) != (fb < 0):
                return _parity_of(k)
        raise AssertionError("bracketed root not in any square-free factor")

    found: list[RootInterval] = []
    for r in rational:
        if in_domain(r):
            found.append(RootInterval(r, r, parity_exact(r)))
    for a, b in brackets:
        found.append(RootInterval(a, b, parity_bracket(a, b)))
    found.sort(key=lambda iv: (iv.lo, iv.hi))
    return found


def isolate_roots_closed(
    p: Polynomial, lo: Fraction, hi: Fraction
) -> list[RootInterval]:
    """Distinct real roots in the closed interval [lo, hi]."""
    out = isolate_real_roots(p, lo, hi)
    if p(Fraction(hi)) == 0:
        parity = root_parity_at(p, Fraction(hi))
        out.append(RootInterval(Fraction(hi), Fraction(hi), parity))
    return out


def refine_root(interval: RootInterval, p: Polynomial, tol: Fraction) -> Fraction:
    """Rational approximation within tol of the root certified by `interval`.

    Exact roots are returned unchanged; brackets are bisected on the
    square-free part of p (which changes sign at every real root, including
    even-multiplicity ones of p).
    """
    if interval.is_exact:
        return interval.lo
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    s = squarefree_part(p)
    a, b = interval.lo, interval.hi
    sa, sb = s(a), s(b)
    if sa == 0 or sb == 0 or (sa < 0) == (sb < 0):
        raise ValueError("interval is not an isolating interval for p")
    while b - a >= tol:
        m = (a + b) / 2
        sm = s(m)
        if sm == 0:
            return m
        if (sa < 0) != (sm < 0):
            b = m
        else:
            a, sa = m, sm
    return (a + b) / 2


def root_parity_at(p: Polynomial, point: Fraction) -> Optional[str]:
    """Parity of p's root at an exact rational point, or None if not a root."""
    if p.is_zero:
        raise ZeroPolynomialError("zero polynomial has no isolated roots")
    if p(point) != 0:
        return None
    for f, k in squarefree_decomposition(p):
        if f(point) == 0:
            return _parity_of(k)
    raise AssertionError("unreachable: root must divide a square-free factor")
