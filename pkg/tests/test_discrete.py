import itertools
import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symreg.discrete import (
    DivergenceError,
    SumSpec,
    ToleranceError,
    bernoulli,
    cutoff_sum,
    cutoff_sum_family,
    discrete_chen_sum,
    discrete_p,
    em_interpolant,
    mixable_shuffles,
    mzv,
    rb_residuals,
    stuffle_terms,
    strict_p,
    verify_stuffle,
    weak_p,
)
from symreg.symbols import Exponent, LogSymbol, TensorWord

mpmath.mp.dps = 30
Z = lambda s: float(mpmath.zeta(s))


def mono(a, l=0, c=1):
    return LogSymbol.monomial(F(a), logpow=l, coeff=c)


def mzv2_oracle(s1, s2, strict=True):
    """Double zeta by summing the inner index against a Hurwitz tail."""
    off = 1 if strict else 0
    return float(mpmath.nsum(lambda m: m ** -s2 * mpmath.zeta(s1, m + off), [1, mpmath.inf]))


def symmetric_sum_oracle(s, N=10 ** 6):
    """sum_{j != 0} s(|j|) to 1e6 terms in floats, plus exact Hurwitz-derivative tails."""
    total = 0.0
    tail = mpmath.mpf(0)
    for (e, l), c in s.terms.items():
        a, cf = float(e.a), float(c.constant_value())
        total += cf * math.fsum(j ** a * math.log(j) ** l for j in range(1, N + 1))
        tail += cf * (-1) ** l * mpmath.zeta(-a, N + 1, l)
    return 2 * (total + float(tail))


class TestBernoulli:
    def test_values(self):
        assert [bernoulli(m) for m in range(5)] == [1, F(-1, 2), F(1, 6), 0, F(-1, 30)]

    @pytest.mark.parametrize("m", range(0, 31))
    def test_against_mpmath(self, m):
        p, q = mpmath.bernfrac(m)
        assert bernoulli(m) == F(int(p), int(q))

    def test_odd_vanish(self):
        assert all(bernoulli(m) == 0 for m in range(3, 40, 2))

    def test_negative(self):
        with pytest.raises(ValueError):
            bernoulli(-1)


class TestCutoffSums:
    def test_zeta2(self):
        r = cutoff_sum(mono(-2), 3)
        assert abs(r.value - math.pi ** 2 / 3) < 1e-10
        assert r.error < 1e-10

    def test_harmonic(self):
        # sum_{1<=|j|<=N} 1/|j| = 2 log N + 2 gamma + o(1)
        assert abs(cutoff_sum(mono(-1), 3).value - 2 * float(mpmath.euler)) < 1e-10

    def test_zero(self):
        assert cutoff_sum(LogSymbol.zero(1)).value == 0

    @pytest.mark.parametrize("N", [10, 100])
    def test_interpolant_at_integers(self, N):
        interp = em_interpolant(mono(-2), 2)
        direct = math.fsum(2 / j ** 2 for j in range(1, N + 1))
        assert abs(interp(N) - direct) <= interp.remainder_bound(N) + interp.constant_error + 1e-14

    def test_interpolant_log_part(self):
        interp = em_interpolant(mono(-1), 1)
        assert interp.closed_part.terms[(Exponent(0), 1)].constant_value() == 2

    def test_remainder_decreasing(self):
        interp = em_interpolant(mono(F(-3, 2), 1), 3)
        b = [interp.remainder_bound(N) for N in (5, 10, 20, 40, 80)]
        assert all(x > y for x, y in zip(b, b[1:]))

    def test_dimension_guard(self):
        with pytest.raises(ValueError):
            cutoff_sum(LogSymbol.monomial(-3, dim=2))

    @settings(max_examples=12)
    @given(st.lists(st.tuples(st.fractions(F(-5), F(-5, 4), max_denominator=4), st.integers(0, 2),
                              st.sampled_from((1, -1, 2, F(1, 3)))), min_size=1, max_size=3))
    def test_matches_direct_summation(self, spec):
        s = LogSymbol(1, [((Exponent(a), l), c) for a, l, c in spec])
        if s.is_zero():
            return
        r = cutoff_sum(s, 5)
        # the float oracle carries its own rounding error of order 1e-10
        assert abs(r.value - symmetric_sum_oracle(s)) < r.error + 1e-9

    @settings(max_examples=10)
    @given(st.fractions(F(-4), F(1), max_denominator=3), st.integers(0, 2), st.integers(2, 4))
    def test_depth_stability(self, a, l, k):
        s = mono(a, l) + mono(a - 2, 0, 3)
        r1, r2 = cutoff_sum(s, k), cutoff_sum(s, k + 1)
        assert abs(r1.value - r2.value) <= r1.error + r2.error

    @settings(max_examples=8)
    @given(st.fractions(F(-3), F(1, 2), max_denominator=4), st.integers(0, 1))
    def test_two_constant_methods(self, a, l):
        s = mono(a, l)
        q = cutoff_sum(s, 4, "quadrature")
        p = cutoff_sum(s, 4, "partial-sums")
        assert abs(q.value - p.value) <= q.error + p.error + 1e-12

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            cutoff_sum(mono(-2), 2, "magic")


class TestZetaContinuation:
    @pytest.mark.parametrize("z", [2, 3, 4, F(5, 2)])
    def test_convergent_region(self, z):
        assert abs(cutoff_sum_family(mono(0), 1, z, 5).value - 2 * Z(float(z))) < 1e-10

    @pytest.mark.parametrize("z,ref", [(0, -1.0), (-1, -1 / 6), (F(1, 2), 2 * Z(0.5)), (-2, 0.0)])
    def test_continuation(self, z, ref):
        a = cutoff_sum_family(mono(0), 1, z, 5).value
        b = cutoff_sum_family(mono(0), 1, z, 6).value
        assert abs(a - b) < 1e-8
        assert abs(a - ref) < 1e-8

    def test_complex(self):
        v = cutoff_sum_family(mono(0), 1, 2 + 1j, 5).value
        assert abs(v - 2 * complex(mpmath.zeta(2 + 1j))) < 1e-10

    def test_pole(self):
        with pytest.raises(ValueError):
            cutoff_sum_family(mono(0), 1, 1, 5)


class TestDiscreteOperators:
    def test_symmetric_partial_sum(self):
        assert discrete_p(mono(-2), 2) == pytest.approx(2.5, abs=1e-15)
        assert discrete_p(mono(-2), 0) == 0

    def test_one_sided(self):
        f = lambda n: 1.0 / n
        assert strict_p(f, 3) == pytest.approx(1.5)
        assert weak_p(f, 3) == pytest.approx(1.5 + 1 / 3)

    @pytest.mark.parametrize("f,g", [
        (lambda n: n ** -2.0, lambda n: n ** -3.0),
        (lambda n: 1.0 / (n * (n + 1)), lambda n: 2.0 ** -n),
        (lambda n: math.sin(n) / n ** 2, lambda n: math.log(n + 1) / n ** 3),
    ])
    def test_weight_identities(self, f, g):
        r = rb_residuals(f, g, 50)
        assert r.strict < 1e-12 and r.weak < 1e-12 and r.symmetric < 1e-12

    def test_literal_symmetric_form_fails(self):
        r = rb_residuals(lambda n: n ** -2.0, lambda n: n ** -3.0, 10)
        assert r.symmetric_literal > 1e-3


class TestChenSums:
    def test_pair(self):
        r = discrete_chen_sum(TensorWord((mono(-2), mono(-3))))
        assert abs(r.value - 4 * mzv2_oracle(2, 3, strict=False)) < 1e-8
        assert r.error < 1e-8

    def test_strict_pair(self):
        r = discrete_chen_sum(TensorWord((mono(-2), mono(-3))), strict=True)
        assert abs(r.value - 4 * mzv2_oracle(2, 3)) < 1e-8

    def test_single_letter(self):
        assert discrete_chen_sum(TensorWord((mono(-2),))).value == cutoff_sum(mono(-2)).value

    def test_zero_factor(self):
        assert discrete_chen_sum(TensorWord((mono(-2), LogSymbol.zero(1)))).value == 0

    def test_divergent(self):
        with pytest.raises(DivergenceError):
            discrete_chen_sum(TensorWord((mono(-1), mono(-2))))
        with pytest.raises(DivergenceError):
            discrete_chen_sum(TensorWord((mono(-2), mono(F(-1, 2)))))

    def test_log_factor(self):
        # sum_{n>=m>=1} 4 log(n) n^-3 m^-2, oracle by Hurwitz
        r = discrete_chen_sum(TensorWord((mono(-3, 1), mono(-2))))
        ref = 4 * float(mpmath.nsum(lambda m: m ** -2 * -mpmath.zeta(3, m, 1), [1, mpmath.inf]))
        assert abs(r.value - ref) < max(r.error, 1e-8)


class TestMZV:
    def test_zeta2(self):
        r = mzv(SumSpec((2,), True, 1e-11))
        assert abs(r.value - math.pi ** 2 / 6) < 1e-10

    def test_euler(self):
        assert abs(mzv(SumSpec((2, 1), True, 1e-11)).value - Z(3)) < 1e-9

    @pytest.mark.parametrize("s1,s2", [(3, 2), (2, 3), (2, 2), (4, 1)])
    def test_double_against_hurwitz(self, s1, s2):
        for strict in (True, False):
            assert abs(mzv(SumSpec((s1, s2), strict, 1e-11)).value - mzv2_oracle(s1, s2, strict)) < 1e-9

    def test_euler_reductions(self):
        z = lambda e: mzv(SumSpec(e, True, 1e-11)).value
        assert abs(z((3, 2)) - (3 * Z(2) * Z(3) - 5.5 * Z(5))) < 1e-9
        assert abs(z((2, 3)) - (4.5 * Z(5) - 2 * Z(2) * Z(3))) < 1e-9

    def test_weak_splitting(self):
        w = mzv(SumSpec((3, 2), False, 1e-11)).value
        s = mzv(SumSpec((3, 2), True, 1e-11)).value
        assert abs(w - s - Z(5)) < 1e-10

    def test_complex_exponent(self):
        assert abs(mzv(SumSpec((2 + 1j,), True, 1e-11)).value - complex(mpmath.zeta(2 + 1j))) < 1e-10

    def test_depth_three(self):
        # zeta(2,1,1) = zeta(4)
        assert abs(mzv(SumSpec((2, 1, 1), True, 1e-9)).value - Z(4)) < 1e-9

    def test_errors(self):
        with pytest.raises(DivergenceError):
            mzv(SumSpec((1, 2)))
        with pytest.raises(ValueError):
            SumSpec((2,), True, 0)
        with pytest.raises(ToleranceError):
            mzv(SumSpec((2, 1), True, 1e-40), max_rounds=1)


def brute_force_shuffles(k, l):
    out = set()
    for m in range(max(k, l), k + l + 1):
        for f in itertools.product(range(1, m + 1), repeat=k + l):
            if set(f) != set(range(1, m + 1)):
                continue
            a, b = f[:k], f[k:]
            if all(x < y for x, y in zip(a, a[1:])) and all(x < y for x, y in zip(b, b[1:])):
                out.add(f)
    return sorted(out)


class TestStuffle:
    @pytest.mark.parametrize("k,l", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 2), (2, 3)])
    def test_generator_matches_brute_force(self, k, l):
        assert mixable_shuffles(k, l) == brute_force_shuffles(k, l)

    @pytest.mark.parametrize("k,l,n", [(1, 1, 3), (2, 1, 5), (2, 2, 13), (3, 3, 63)])
    def test_delannoy_counts(self, k, l, n):
        assert len(mixable_shuffles(k, l)) == n == sum(math.comb(k, j) * math.comb(l, j) * 2 ** j
                                                        for j in range(min(k, l) + 1))

    def test_one_one(self):
        assert set(mixable_shuffles(1, 1)) == {(1, 2), (2, 1), (1, 1)}

    def test_guards(self):
        with pytest.raises(ValueError):
            mixable_shuffles(1, 0)
        with pytest.raises(ValueError):
            mixable_shuffles(5, 4)

    def test_terms(self):
        assert sorted(stuffle_terms((2,), (3,))) == [(2, 3), (3, 2), (5,)]

    def test_two_three(self):
        r = verify_stuffle((2,), (3,), 1e-9)
        assert r.ok and abs(r.residual) < 1e-9 and r.terms == 3

    def test_symmetric(self):
        terms = stuffle_terms((2,), (2,))
        assert terms.count((2, 2)) == 2
        assert verify_stuffle((2,), (2,), 1e-9).ok

    def test_depth_two_by_one(self):
        r = verify_stuffle((2, 2), (3,), 1e-8)
        assert r.terms == 5 and abs(r.residual) < 1e-8

    def test_thirteen_terms(self):
        r = verify_stuffle((2, 2), (3, 3), 1e-8)
        assert r.terms == 13 and abs(r.residual) < 1e-8

    def test_weight_identities(self):
        r = verify_stuffle((3,), (2,), 1e-9)
        assert abs(r.weight_plus_residual) < 1e-9 and abs(r.weight_minus_residual) < 1e-9
