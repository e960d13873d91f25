import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oracles import bisect_root, oracle_root_value, scan_sign_roots
from reswitch import (
    EVEN,
    ODD,
    Polynomial,
    RootInterval,
    ZeroPolynomialError,
    isolate_real_roots,
    refine_root,
)
from reswitch.polynomial import (
    cauchy_root_bound,
    count_distinct_roots,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
)

X = Polynomial.monomial(1)


def poly(*coeffs):
    return Polynomial(coeffs)


class TestArithmetic:
    def test_subtract_cost_polynomials(self):
        a = poly(0, 0, 7)  # 7x^2
        b = poly(0, 6, 0, 2)  # 6x + 2x^3
        assert a - b == poly(0, -6, 7, -2)

    def test_self_cancellation(self):
        p = poly(0, 6, 0, 2)
        assert (p - p).is_zero

    def test_scale(self):
        assert F(1, 2) * poly(0, 6, 0, 2) == poly(0, 3, 0, 1)

    def test_eval_examples(self):
        assert poly(0, 0, 7)(F(5, 2)) == F(175, 4)
        assert poly(0, 6, 0, 2)(F(1)) == 8
        assert Polynomial()(F(17, 3)) == 0

    def test_degree_and_zero(self):
        assert Polynomial().degree is None
        assert poly(5).degree == 0
        assert poly(0, 1).degree == 1
        assert poly(1, 0, 0).degree == 0  # trailing zeros stripped

    def test_divmod_roundtrip(self):
        p = poly(-6, 11, -6, 1)  # (x-1)(x-2)(x-3)
        d = poly(-2, 1)
        q, r = divmod(p, d)
        assert r.is_zero
        assert q * d == p

    @given(
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), max_size=5),
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), max_size=5),
        st.fractions(min_value=-3, max_value=3, max_denominator=8),
    )
    @settings(max_examples=120)
    def test_eval_is_additive_and_multiplicative(self, cs, ds, x):
        p, q = Polynomial(cs), Polynomial(ds)
        assert (p + q)(x) == p(x) + q(x)
        assert (p * q)(x) == p(x) * q(x)


class TestStructure:
    def test_gcd(self):
        p = poly(-2, 1) * poly(-3, 1) * poly(1, 1)
        q = poly(-2, 1) * poly(5, 1)
        assert poly_gcd(p, q) == poly(-2, 1)

    def test_squarefree_decomposition(self):
        p = poly(0, 1) * poly(-2, 1) * poly(-2, 1)  # x (x-2)^2
        factors = squarefree_decomposition(p)
        assert factors == [(poly(0, 1), 1), (poly(-2, 1), 2)]
        assert squarefree_part(p) == poly(0, 1) * poly(-2, 1)

    def test_cauchy_bound_contains_roots(self):
        p = poly(-6, 11, -6, 1)
        assert cauchy_root_bound(p) > 3


class TestIsolation:
    def test_cost_difference_roots(self):
        d = poly(0, -6, 7, -2)  # -2x^3 + 7x^2 - 6x, roots 0, 3/2, 2
        roots = isolate_real_roots(d, F(1), None)
        assert [(r.lo, r.hi) for r in roots] == [(F(3, 2), F(3, 2)), (F(2), F(2))]
        assert all(r.parity == ODD for r in roots)

    def test_linear(self):
        roots = isolate_real_roots(poly(-1, 1), F(0), None)
        assert [(r.lo, r.hi) for r in roots] == [(F(1), F(1))]

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            isolate_real_roots(Polynomial(), F(0), None)

    def test_domain_is_half_open(self):
        p = poly(-2, 1) * poly(-3, 1)
        assert len(isolate_real_roots(p, F(2), F(3))) == 1  # root at 3 excluded
        assert len(isolate_real_roots(p, F(2), F(7, 2))) == 2

    def test_even_parity_flagged(self):
        p = poly(0, 1) * poly(-2, 1) * poly(-2, 1)
        roots = isolate_real_roots(p, F(-1), None)
        by_value = {r.lo: r.parity for r in roots}
        assert by_value[F(0)] == ODD
        assert by_value[F(2)] == EVEN

    def test_irrational_roots_bracketed(self):
        p = poly(-2, 0, 1)  # x^2 - 2
        roots = isolate_real_roots(p, F(0), None)
        assert len(roots) == 1
        r = roots[0]
        assert not r.is_exact and r.parity == ODD
        assert p(r.lo) * p(r.hi) < 0

    def test_random_degree_five_matches_sign_scan(self):
        rng = random.Random(505)
        checked = 0
        while checked < 40:
            coeffs = [rng.randint(-9, 9) for _ in range(5)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
            p = Polynomial(coeffs)
            if poly_gcd(p, p.derivative()).degree != 0:
                continue  # sign scans cannot see even-multiplicity roots
            checked += 1
            expected = scan_sign_roots(coeffs, F(-8), F(8), denom=1024)
            expected = [e for e in expected if oracle_root_value(e) < 8]
            got = isolate_real_roots(p, F(-8), F(8))
            assert len(got) == len(expected)
            for iv, entry in zip(got, expected):
                target = oracle_root_value(entry)
                approx = refine_root(iv, p, F(1, 2**40))
                assert abs(approx - target) < F(1, 1024)

    @given(
        st.lists(
            st.fractions(min_value=-6, max_value=6, max_denominator=4),
            min_size=2,
            max_size=7,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_sturm_count_matches_interval_count(self, cs):
        p = Polynomial(cs)
        if p.is_zero or p.degree == 0:
            return
        sf = squarefree_part(p)
        lo, hi = F(-20), F(20)
        if sf(lo) == 0 or sf(hi) == 0:
            return
        assert count_distinct_roots(sf, lo, hi) == len(isolate_real_roots(p, lo, hi))


class TestRefinement:
    def test_sqrt3_to_tolerance(self):
        p = poly(-6, 0, 2)  # 2x^2 - 6
        (root,) = isolate_real_roots(p, F(0), None)
        approx = refine_root(root, p, F(1, 10**6))
        target = bisect_root(lambda x: 2 * x * x - 6, F(1), F(2), F(1, 10**12))
        assert abs(approx - target) <= F(1, 10**6)
        tight = refine_root(root, p, F(1, 10**9))
        assert f"{float(tight):.6f}" == "1.732051"

    def test_exact_root_returned_unchanged(self):
        r = RootInterval(F(3, 2), F(3, 2), ODD)
        assert refine_root(r, poly(0, -6, 7, -2), F(1, 10)) == F(3, 2)

    def test_sqrt2_against_bisection_oracle(self):
        p = poly(-2, 0, 1)
        (root,) = isolate_real_roots(p, F(1), F(2))
        approx = refine_root(root, p, F(1, 10**4))
        target = bisect_root(lambda x: x * x - 2, F(1), F(2), F(1, 10**9))
        assert abs(approx - target) <= F(1, 10**4)

    def test_even_root_refinable(self):
        p = poly(0, 1) * poly(-2, 1) * poly(-2, 1)
        roots = isolate_real_roots(p, F(1), None)
        (double,) = [r for r in roots if r.parity == EVEN]
        if not double.is_exact:  # rational extraction returns it exactly
            assert refine_root(double, p, F(1, 100)) == pytest.approx(2)
        else:
            assert refine_root(double, p, F(1, 100)) == 2

    def test_sign_change_across_odd_interval(self):
        # round-trip invariant: odd certificates always show a sign change
        p = poly(0, -6, 7, -2) * poly(-5, 0, 1)
        for r in isolate_real_roots(p, F(-10), F(10)):
            if r.parity == ODD and not r.is_exact:
                assert p(r.lo) * p(r.hi) < 0
