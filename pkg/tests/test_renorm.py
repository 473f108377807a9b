from fractions import Fraction as F
from itertools import product as iproduct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symreg.meromorphic import germ_of_integral, riesz_family
from symreg.renorm import (
    GermWord,
    birkhoff,
    counterterm,
    germ_word_of,
    naive_finite_part,
    obstruction,
    rbar,
    renormalise,
    renormalised_value,
)
from symreg.scalars import LaurentSeries, MultiLaurent, TruncationError, multi_constant_term, pole_part, regular_part
from symreg.symbols import LogSymbol, TensorWord
from strategies import small

Z_1 = LaurentSeries({-1: 1}, 1, 4)


def mono(a, n=1):
    return LogSymbol.monomial(F(a), dim=n)


@st.composite
def germ_words(draw, max_k=4, max_pole=3, extra=2):
    k = draw(st.integers(1, max_k))
    poles = [draw(st.integers(0, max_pole)) for _ in range(k)]
    K = sum(poles) + extra
    out = []
    for p in poles:
        coeffs = {d: draw(small) for d in range(-p, K + 1)}
        if p:
            coeffs[-p] = draw(small.filter(bool))
        out.append(LaurentSeries(coeffs, p, K))
    return out


@st.composite
def multi_germs(draw, max_k=3, max_pole=2):
    k = draw(st.integers(1, max_k))
    poles = [draw(st.integers(0, max_pole)) for _ in range(k)]
    truncs = [sum(poles) - p + 1 for p in poles]
    coeffs = {}
    for e in iproduct(*(range(-p, t + 1) for p, t in zip(poles, truncs))):
        if draw(st.integers(0, 3)):
            coeffs[e] = draw(small)
    return MultiLaurent(coeffs, tuple(poles), tuple(truncs))


def prod_series(fs):
    out = fs[0]
    for f in fs[1:]:
        out = out * f
    return out


class TestExamples:
    f1 = LaurentSeries({-1: 1, 1: 1}, 1, 4)
    f2 = LaurentSeries({-1: 1}, 1, 4)

    def test_worked_pair(self):
        assert rbar([self.f1, self.f2]).coeffs == {-2: -1}
        assert counterterm([self.f1, self.f2]).coeffs == {-2: 1}
        assert renormalise([self.f1, self.f2]).is_zero()
        assert renormalised_value([self.f1, self.f2]) == 0
        assert naive_finite_part([self.f1, self.f2]) == 1
        assert obstruction([self.f1, self.f2]) == 1

    def test_single_factor(self):
        assert rbar([self.f1]) == self.f1
        assert counterterm(Z_1) == -Z_1

    def test_double_simple_pole(self):
        assert counterterm([Z_1, Z_1]).coeffs == {-2: 1}

    def test_holomorphic_factors(self):
        a = LaurentSeries({0: 2, 1: 3}, 0, 4)
        b = LaurentSeries({0: -1, 2: 1}, 0, 4)
        assert rbar([a, b]) == a * b
        assert renormalise([a, b]) == a * b
        assert obstruction([a, b]) == 0

    def test_generic_simple_poles(self):
        a = LaurentSeries({-1: 2, 0: 3, 1: 5}, 1, 3)
        b = LaurentSeries({-1: -1, 0: 7, 1: 1}, 1, 3)
        assert renormalised_value([a, b]) == multi_constant_term(MultiLaurent.tensor([a, b])) == 21

    def test_truncation_guard(self):
        with pytest.raises(TruncationError):
            obstruction([LaurentSeries({-3: 1}, 3, 1), LaurentSeries({-1: 1}, 1, 1)])

    def test_germword_cap(self):
        with pytest.raises(ValueError):
            GermWord(tuple([Z_1] * 11))
        with pytest.raises(ValueError):
            GermWord(())


class TestProperties:
    @given(germ_words())
    def test_pole_free_and_value(self, fs):
        r = renormalise(fs)
        assert all(d >= 0 for d in r.coeffs)
        value = prod_series([LaurentSeries({0: f[0]}, 0, 0) for f in fs])[0]
        assert r[0] == value == multi_constant_term(MultiLaurent.tensor(fs))

    @given(germ_words(max_k=3))
    def test_character_oracle(self, fs):
        # a tensor word is a product of primitives, so R(f) = prod (1 - T) f_i
        assert renormalise(fs) == prod_series([regular_part(f) for f in fs])

    @given(germ_words(max_k=3))
    def test_multi_path_agrees(self, fs):
        assert renormalise(MultiLaurent.tensor(fs)) == renormalise(fs)

    @given(multi_germs())
    def test_general_multivariate(self, f):
        r = renormalise(f)
        assert all(d >= 0 for d in r.coeffs)
        assert r[0] == multi_constant_term(f)

    @given(germ_words())
    def test_obstruction_formula(self, fs):
        assert obstruction(fs) == naive_finite_part(fs) - prod_series([LaurentSeries({0: f[0]}, 0, 0) for f in fs])[0]

    @given(germ_words())
    def test_birkhoff_agrees(self, fs):
        b = birkhoff(fs)
        assert b.phi_plus == renormalise(fs)
        assert b.phi_minus == -pole_part(rbar(fs))

    @given(germ_words(max_k=3))
    def test_permutation_invariance(self, fs):
        assert renormalise(fs) == renormalise(list(reversed(fs)))


class TestWords:
    def test_riesz_pair(self):
        fam = riesz_family(mono(-1))
        b = birkhoff(TensorWord((fam, fam)), 4)
        assert b.phi_plus[0] == 0
        assert b.phi_minus.coeffs == {-2: 1}
        assert b.omega_power == 2

    def test_single_factor_word(self):
        fam = riesz_family(mono(-1) + mono(F(-3, 2)))
        g = germ_of_integral(fam, 4).series
        b = birkhoff(TensorWord((fam,)), 4)
        assert b.phi_minus == -pole_part(g) and b.phi_plus == regular_part(g)

    def test_residue_free(self):
        w = TensorWord((riesz_family(mono("-5/2")), riesz_family(mono("-7/2"))))
        b = birkhoff(w, 4)
        gw = germ_word_of(w, 4)
        assert b.phi_minus.is_zero()
        assert b.phi_plus == prod_series(list(gw.factors))
        assert obstruction(gw) == 0
