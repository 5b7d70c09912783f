"""Kernel tests: containment, tightness, exactness of the directed rounding."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orbitcert.interval import (
    DomainError,
    Interval,
    IntervalMatrix,
    IntervalVector,
    UnboundedResultError,
    iv_arith,
    iv_exp,
    iv_sqrt,
    op_norm1,
    sqrt3_over_18,
    vec_norm1,
)

finite = st.floats(
    allow_nan=False, allow_infinity=False, min_value=-1e12, max_value=1e12
)


def ivs(draw_lo, draw_hi):
    lo, hi = sorted((draw_lo, draw_hi))
    return Interval(lo, hi)


interval_st = st.builds(ivs, finite, finite)


class TestArith:
    def test_add_exact(self):
        assert iv_arith("add", Interval(1, 2), Interval(3, 4)) == Interval(4, 6)

    def test_mul_sign_cases(self):
        assert iv_arith("mul", Interval(1, 2), Interval(-1, 1)) == Interval(-2, 2)

    def test_div_third_tight(self):
        third = iv_arith("div", Interval(1), Interval(3))
        assert Fraction(third.lo) <= Fraction(1, 3) <= Fraction(third.hi)
        assert third.hi - third.lo <= 2 * math.ulp(third.hi)

    def test_div_by_zero_interval(self):
        with pytest.raises(DomainError):
            iv_arith("div", Interval(1), Interval(-1, 1))

    def test_overflow_raises(self):
        big = Interval(1e308)
        with pytest.raises(UnboundedResultError):
            iv_arith("mul", big, big)

    @given(interval_st, interval_st, st.sampled_from(["add", "sub", "mul", "div"]),
           st.floats(0, 1), st.floats(0, 1))
    def test_containment(self, X, Y, op, tx, ty):
        if op == "div" and Y.lo <= 0.0 <= Y.hi:
            return
        Z = iv_arith(op, X, Y)
        x = X.lo + tx * (X.hi - X.lo)
        y = Y.lo + ty * (Y.hi - Y.lo)
        x = min(max(x, X.lo), X.hi)
        y = min(max(y, Y.lo), Y.hi)
        fx, fy = Fraction(x), Fraction(y)
        ops = {"add": lambda: fx + fy, "sub": lambda: fx - fy,
               "mul": lambda: fx * fy, "div": lambda: fx / fy}
        exact = ops[op]()
        assert Fraction(Z.lo) <= exact <= Fraction(Z.hi)

    @given(interval_st, interval_st, st.sampled_from(["add", "sub", "mul", "div"]),
           st.floats(1.0, 3.0))
    def test_inclusion_monotonicity(self, X, Y, op, widen):
        if op == "div" and Y.lo <= 0.0 <= Y.hi:
            return
        Xp = Interval(X.lo - abs(X.lo) * (widen - 1) - 1e-3,
                      X.hi + abs(X.hi) * (widen - 1) + 1e-3)
        Yp = Interval(Y.lo, Y.hi + abs(Y.hi) * (widen - 1) + 1e-3)
        if op == "div" and Yp.lo <= 0.0 <= Yp.hi:
            return
        Z = iv_arith(op, X, Y)
        Zp = iv_arith(op, Xp, Yp)
        assert Z.issubset(Zp)

    def test_point_ops_within_one_ulp(self, rng):
        for _ in range(2000):
            x = float(rng.uniform(-1e3, 1e3))
            y = float(rng.uniform(-1e3, 1e3))
            p = Interval.point(x) * Interval.point(y)
            assert Fraction(p.lo) <= Fraction(x) * Fraction(y) <= Fraction(p.hi)
            assert p.hi - p.lo <= math.ulp(max(abs(p.lo), abs(p.hi), 1e-300))
            if y != 0.0:
                q = Interval.point(x) / Interval.point(y)
                assert Fraction(q.lo) <= Fraction(x) / Fraction(y) <= Fraction(q.hi)


class TestExp:
    def test_exp_zero_exact(self):
        e0 = iv_exp(Interval(0, 0))
        assert 1.0 in e0 and e0.width <= 2 * math.ulp(1.0)

    def test_exp_ln2_contains_two(self):
        import mpmath

        with mpmath.workdps(40):
            v = mpmath.log(2)
            lo = float(mpmath.mpf(v) - mpmath.mpf("1e-30"))
            hi = float(mpmath.mpf(v) + mpmath.mpf("1e-30"))
        assert 2.0 in iv_exp(Interval(lo, hi))

    def test_exp_sym_interval(self):
        import mpmath

        em = iv_exp(Interval(-1, 1))
        with mpmath.workdps(40):
            assert em.lo <= float(mpmath.e ** -1) <= em.hi
            assert em.lo <= float(mpmath.e) <= em.hi
        assert em.lo > 0

    def test_exp_oracle_points(self, rng):
        import mpmath

        with mpmath.workdps(40):
            for _ in range(10_000):
                x = float(rng.uniform(-30, 30))
                enc = iv_exp(Interval.point(x))
                exact = mpmath.exp(x)
                assert mpmath.mpf(enc.lo) <= exact <= mpmath.mpf(enc.hi)

    def test_exp_overflow(self):
        with pytest.raises(UnboundedResultError):
            iv_exp(Interval(0, 800))


class TestSqrt:
    def test_sqrt_three_over_18(self):
        s = sqrt3_over_18()
        assert Fraction(s.lo) ** 2 * 18 ** 2 <= 3 <= Fraction(s.hi) ** 2 * 18 ** 2

    def test_sqrt_negative(self):
        with pytest.raises(DomainError):
            iv_sqrt(Interval(-1, 1))

    def test_sqrt_exact_square(self):
        assert iv_sqrt(Interval(4, 9)) == Interval(2, 3)


class TestNorms:
    def test_vec_norm_exact(self):
        v = IntervalVector.from_floats([1.0, -2.0, 3.0])
        assert vec_norm1(v) == Interval(6, 6)

    def test_op_norm_exact(self):
        m = IntervalMatrix.from_floats([[1.0, -2.0], [3.0, 4.0]])
        assert op_norm1(m) == Interval(6, 6)

    def test_op_norm_reference_inverse(self):
        a = IntervalMatrix.from_floats(
            [[2.10618055051, -1.1347955552327],
             [-1.1347955552327, 0.07262691553489]]
        )
        enc = op_norm1(a)
        assert abs(enc.mid - 3.2409761057427) < 1e-10 and enc.width < 1e-14

    def test_norm_contains_point_selections(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 6))
            mid = rng.uniform(-5, 5, size=(n, n))
            rad = rng.uniform(0, 0.1, size=(n, n))
            M = IntervalMatrix(mid - rad, mid + rad)
            enc = op_norm1(M)
            for _ in range(5):
                pick = rng.uniform(mid - rad, mid + rad)
                val = np.abs(pick).sum(axis=0).max()
                assert enc.lo - 1e-12 <= val <= enc.hi + 1e-12

    def test_matvec_exact_integers(self):
        m = IntervalMatrix.from_floats([[1.0, 2.0], [3.0, 4.0]])
        v = IntervalVector.from_floats([5.0, -6.0])
        out = m.matvec(v)
        assert out[0] == Interval(-7, -7)
        assert out[1] == Interval(-9, -9)

    def test_matmul_contains(self, rng):
        a = rng.uniform(-2, 2, size=(4, 4))
        b = rng.uniform(-2, 2, size=(4, 4))
        A = IntervalMatrix.from_floats(a)
        B = IntervalMatrix.from_floats(b)
        P = A @ B
        assert P.contains_point(a @ b) or np.allclose(a @ b, 0.5 * (P.lo + P.hi), atol=1e-12)


class TestConstructors:
    def test_decimal_enclosure(self):
        d = Interval.from_decimal("3.2")
        assert Fraction(d.lo) <= Fraction(16, 5) <= Fraction(d.hi)
        assert d.width == math.ulp(3.2)

    def test_decimal_exact(self):
        assert Interval.from_decimal("0.25") == Interval(0.25)

    def test_rational_literal(self):
        assert Interval.from_decimal("32/10") == Interval.from_decimal("3.2")

    def test_hex_roundtrip(self):
        iv = Interval.from_decimal("0.1") * Interval.from_decimal("7.3")
        assert Interval.from_hex(iv.to_hex()) == iv

    def test_invalid(self):
        with pytest.raises(ValueError):
            Interval(2.0, 1.0)
        with pytest.raises(UnboundedResultError):
            Interval(0.0, math.inf)
