from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from symreg.chen import resonance_free
from symreg.cutoff import cutoff_integral
from symreg.meromorphic import (
    MeromorphicGerm,
    chen_germ,
    common_slope,
    germ_of_integral,
    kv_coefficients,
    product_germ,
    regularised_integral,
    riesz_family,
)
from symreg.scalars import LaurentSeries, RationalFunction
from symreg.symbols import Exponent, LogSymbol, TensorWord, specialize, wodzicki_residue
from oracles import mp, radial_integral_inf
from strategies import symbols

z = RationalFunction.z()
qs = st.sampled_from((F(1), F(2), F(1, 2), F(-1), F(-3, 2)))
Hs = st.sampled_from((RationalFunction.const(1), RationalFunction.linear(1, 1), RationalFunction.linear(1, F(-2, 3)),
                      RationalFunction.linear(1, 2) / RationalFunction.linear(1, F(1, 3))))


def mono(a, l=0, c=1, n=1):
    return LogSymbol.monomial(F(a), logpow=l, coeff=c, dim=n)


@st.composite
def families(draw, max_logpow=3):
    s = draw(symbols(max_logpow=max_logpow))
    if draw(st.booleans()):
        s = s + LogSymbol(s.dim, [((Exponent(-s.dim), draw(st.integers(0, max_logpow))), draw(st.sampled_from((1, -2, F(3, 2)))))])
    assume(not s.is_zero())
    return riesz_family(s, draw(qs), draw(Hs))


class TestRiesz:
    def test_anchor(self):
        fam = riesz_family(mono(-2, n=2), 1)
        assert fam == LogSymbol(2, [((Exponent(-2, -1), 0), 1)])
        assert common_slope(fam) == -1

    def test_errors(self):
        with pytest.raises(ValueError):
            riesz_family(mono(-1), 0)
        with pytest.raises(ValueError):
            riesz_family(mono(-1), 1, RationalFunction.linear(2, 1))
        with pytest.raises(ValueError):
            riesz_family(riesz_family(mono(-1)), 1)

    @given(symbols(), qs, Hs)
    def test_specialises_back(self, s, q, H):
        assert specialize(riesz_family(s, q, H), 0) == s


class TestGerms:
    def test_riesz_anchor(self):
        g = germ_of_integral(riesz_family(mono(-3, n=3)), 4)
        assert g.series.coeffs == {-1: 1} and g.pole_order == 1 and g.omega_power == 1
        assert regularised_integral(riesz_family(mono(-3, n=3))) == 0

    def test_H_twist(self):
        fam = riesz_family(mono(-1), 1, RationalFunction.linear(1, 1))
        g = germ_of_integral(fam, 3)
        assert g.series.coeffs == {-1: 1, 0: 1}
        assert regularised_integral(fam) == 1

    def test_geometric(self):
        g = germ_of_integral(riesz_family(mono("-5/2")), 3).series
        # 1/(3/2 + z) = 2/3 - 4/9 z + 8/27 z^2 - ...
        assert [g[d] for d in range(4)] == [F(2, 3), F(-4, 9), F(8, 27), F(-16, 81)]

    def test_convergent_constant(self):
        g = germ_of_integral(mono(-3, 1), 3).series
        assert g.coeffs == {0: F(1, 4)}

    def test_certified_pole(self):
        with pytest.raises(ValueError):
            MeromorphicGerm(LaurentSeries({-2: 1}, 2, 2), 1, 0)

    @given(families())
    def test_pole_order_bound(self, fam):
        g = germ_of_integral(fam, 2)
        assert g.pole_order <= fam.max_logpow() + 1

    @given(families(max_logpow=1), st.sampled_from((F(3, 2), F(5, 2))))
    def test_continuation_matches_quadrature(self, fam, zr):
        # where the family converges, the rational function equals the numerical integral
        slope = common_slope(fam)
        z0 = zr if slope < 0 else -zr
        assume(all(e.at(z0) + fam.dim < F(-1, 4) for e, _ in fam.terms))
        assert mpmath.almosteq(mp(cutoff_integral(fam)(z0)), radial_integral_inf(fam, mp(z0)), 1e-10, 1e-10)


class TestKV:
    def test_riesz_example(self):
        kv = kv_coefficients(riesz_family(mono(-1)), K=2)
        assert kv.residues == {1: 1} and kv.finite_part == 0 and kv.slope == -1

    def test_log_example(self):
        fam = riesz_family(mono(-1, 2, 3) + mono(-3), 1)
        kv = kv_coefficients(fam, K=2)
        g = germ_of_integral(fam, 2).series
        assert kv.residues[3] == g[-3] == 6
        assert kv.finite_part == g[0] == F(1, 2)

    def test_convergent_family(self):
        kv = kv_coefficients(riesz_family(mono(-3, 1, 2), 2), K=2)
        assert all(r == 0 for r in kv.residues.values())

    def test_zero_slope(self):
        with pytest.raises(ValueError):
            kv_coefficients(mono(-1))

    @given(families(), st.integers(1, 4))
    def test_agrees_with_laurent(self, fam, K):
        kv = kv_coefficients(fam, K=K)
        g = germ_of_integral(fam, K).series
        assert all(kv.residues[j] == g[-j] for j in kv.residues)
        assert kv.finite_part == g[0]
        assert all(kv.taylor[j] == g[j] for j in range(1, K + 1))

    @given(symbols(max_logpow=0), qs)
    def test_residue_theorem(self, s, q):
        fam = riesz_family(s, q)
        assert germ_of_integral(fam, 0).series[-1] == -wodzicki_residue(s, 0).constant_value() / common_slope(fam)


def word_of(draw, k, q):
    ss = [draw(symbols(dim=1, max_logpow=0, max_terms=2)) for _ in range(k)]
    return TensorWord(tuple(riesz_family(s, q) for s in ss))


class TestChenGerm:
    def test_square_of_anchor(self):
        fam = riesz_family(mono(-2, n=2))
        g = chen_germ(TensorWord((fam, fam)), 3)
        assert g.series.coeffs == {-2: 1} and g.pole_order == 2 and g.omega_power == 2

    def test_half_integer_pair(self):
        w = TensorWord((riesz_family(mono("-5/2")), riesz_family(mono("-7/2"))))
        g = chen_germ(w, 2)
        assert g.pole_order == 0 and g.series[0] == F(4, 15)

    def test_single_factor(self):
        fam = riesz_family(mono(-1, 1) + mono(F(-1, 2)), 2)
        assert chen_germ(TensorWord((fam,)), 3).series == germ_of_integral(fam, 3).series

    def test_mixed_slopes_rejected(self):
        with pytest.raises(ValueError):
            chen_germ(TensorWord((riesz_family(mono(-1), 1), riesz_family(mono(-1), 2))))

    @given(st.integers(1, 3), qs, st.data())
    def test_shuffle_and_pole_bound(self, k, q, data):
        w = word_of(data.draw, k, q)
        g = chen_germ(w, 3)
        assert g.pole_order <= k
        # sums over >= 2 factors carry slope -mq != 0, so Riesz words never resonate
        assert resonance_free(w)
        assert g.series == product_germ(w, 3).series
