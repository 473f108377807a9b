from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from symreg.scalars import RationalFunction
from symreg.symbols import (
    Exponent,
    LogSymbol,
    OrderSet,
    TensorWord,
    d_param,
    d_radial,
    d_radial_n,
    log_slice,
    order,
    specialize,
    substitute_omega,
    sym_add,
    sym_mul,
    sym_sum,
    wodzicki_residue,
)
from oracles import eval_symbol
from strategies import nonzero, symbols

z = RationalFunction.z()


def mono(a, l=0, c=1, n=1, b=0):
    return LogSymbol.monomial(F(a), b=b, logpow=l, coeff=c, dim=n)


class TestConstruction:
    def test_zero_terms_dropped(self):
        s = mono(-1) + mono(-1, c=-1)
        assert s.is_zero()
        assert not s.terms

    def test_zero_symbols_equal_across_omega(self):
        assert LogSymbol.zero(1, 0) == LogSymbol.zero(1, 3)

    def test_negative_logpow_rejected(self):
        with pytest.raises(ValueError):
            LogSymbol(1, [((Exponent(0), -1), 1)])

    def test_word_requires_equal_dims(self):
        with pytest.raises(ValueError):
            TensorWord((mono(0, n=1), mono(0, n=2)))
        with pytest.raises(ValueError):
            TensorWord(())

    def test_hashable(self):
        assert len({mono(-2), mono(-2), mono(-3)}) == 2


class TestAlgebra:
    def test_omega_mismatch(self):
        s = LogSymbol.monomial(1, omega_power=1)
        with pytest.raises(ValueError):
            sym_add(s, mono(0))

    def test_zero_adopts_omega(self):
        s = LogSymbol.monomial(1, omega_power=2)
        assert sym_add(LogSymbol.zero(1), s).omega_power == 2

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            sym_mul(mono(0, n=1), mono(0, n=2))

    def test_product_adds_exponents_and_logs(self):
        p = sym_mul(mono(-2, 1, 3), mono(F(1, 2), 2, 5))
        assert p == mono(F(-3, 2), 3, 15)

    def test_omega_powers_add(self):
        a = LogSymbol.monomial(0, omega_power=1)
        b = LogSymbol.monomial(0, omega_power=2)
        assert sym_mul(a, b).omega_power == 3

    @given(symbols(dim=2), symbols(dim=2), symbols(dim=2))
    def test_ring_axioms(self, a, b, c):
        assert sym_mul(a, b) == sym_mul(b, a)
        assert sym_mul(sym_mul(a, b), c) == sym_mul(a, sym_mul(b, c))
        assert sym_mul(a, b + c) == sym_mul(a, b) + sym_mul(a, c)
        assert sym_mul(a, LogSymbol.one(2)) == a

    @given(symbols(dim=1), symbols(dim=1), st.floats(1.0, 50.0))
    def test_product_is_pointwise(self, a, b, r):
        assert mpmath.almosteq(eval_symbol(sym_mul(a, b), r), eval_symbol(a, r) * eval_symbol(b, r), 1e-20, 1e-20)

    def test_sym_sum_empty(self):
        assert sym_sum([], 3).is_zero()


class TestOrder:
    def test_leading(self):
        assert order(mono(-1) + mono(F(-5, 2), 2)) == Exponent(-1)

    def test_orderset_on_ties(self):
        s = LogSymbol(1, [((Exponent(-1, 1), 0), 1), ((Exponent(-1, -1), 0), 1)])
        o = order(s)
        assert isinstance(o, OrderSet)
        assert o == {Exponent(-1, 1), Exponent(-1, -1)}

    def test_zero_has_no_order(self):
        with pytest.raises(ValueError):
            order(LogSymbol.zero(1))


class TestResidue:
    def test_picks_critical_coefficient(self):
        s = mono(-2, 0, 7, n=2) + mono(-2, 1, 3, n=2) + mono(-1, 0, 5, n=2)
        assert wodzicki_residue(s, 0) == RationalFunction.const(7)
        assert wodzicki_residue(s, 1) == RationalFunction.const(3)
        assert wodzicki_residue(s, 2).is_zero()

    def test_z_dependent_exponent_not_critical(self):
        s = mono(-1, b=-1)
        assert wodzicki_residue(s).is_zero()

    @given(symbols(), symbols(), nonzero, st.integers(0, 2))
    def test_linear(self, a, b, c, l):
        if a.dim != b.dim:
            b = LogSymbol(a.dim, b.terms)
        assert wodzicki_residue(a + b.scale(c), l) == wodzicki_residue(a, l) + wodzicki_residue(b, l) * c


class TestDerivatives:
    @given(symbols(dim=1), st.floats(1.5, 20.0))
    def test_radial_matches_numeric(self, s, r):
        num = mpmath.diff(lambda x: eval_symbol(s, x), r)
        assert mpmath.almosteq(eval_symbol(d_radial(s), r), num, 1e-12, 1e-12)

    def test_radial_dim_guard(self):
        with pytest.raises(ValueError):
            d_radial(mono(0, n=2))

    def test_radial_kills_constants(self):
        assert d_radial(mono(0)).is_zero()
        assert d_radial_n(mono(3), 4).is_zero()

    @given(symbols(dim=1, z_dependent=True), st.floats(1.5, 10.0), st.floats(0.1, 0.4))
    def test_param_matches_numeric(self, s, r, z0):
        num = mpmath.diff(lambda t: eval_symbol(s, r, t), z0)
        assert mpmath.almosteq(eval_symbol(d_param(s), r, z0), num, 1e-10, 1e-10)

    def test_param_of_riesz_power(self):
        s = mono(-1, b=-1)  # |xi|^{-1-z}
        assert d_param(s) == LogSymbol(1, [((Exponent(-1, -1), 1), -1)])


class TestSpecialise:
    def test_specialise(self):
        s = LogSymbol(1, [((Exponent(-1, 2), 1), RationalFunction.linear(1, 3))])
        assert specialize(s, F(1, 2)) == mono(0, 1, F(5, 2))

    def test_log_slice(self):
        s = mono(-1, 0, 2) + mono(-3, 1, 5) + mono(-2, 1, 7)
        assert log_slice(s, 1) == mono(-3, 0, 5) + mono(-2, 0, 7)

    def test_substitute_omega(self):
        s = LogSymbol.monomial(-2, coeff=3, omega_power=2)
        t = substitute_omega(s, 2)
        assert t.omega_power == 0 and t == mono(-2, 0, 12)
