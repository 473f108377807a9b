"""Holomorphic regularisation and Laurent expansion of regularised integrals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Dict, Optional

from .chen import _check_length, nested_chen
from .cutoff import cutoff_integral, multi_cutoff_integral, primitive_terms
from .scalars import DEFAULT_TRUNC, ONE_RF, LaurentSeries, RationalFunction, as_fraction, finite_part, laurent_of_rational
from .symbols import Exponent, LogSymbol, TensorWord, d_param, d_param_n, log_slice, specialize, wodzicki_residue


@dataclass(frozen=True)
class MeromorphicGerm:
    series: LaurentSeries
    pole_order: int
    omega_power: int

    def __post_init__(self):
        if self.series.pole_order() > self.pole_order:
            raise ValueError("series pole exceeds the certified pole order")


def riesz_family(s: LogSymbol, q=1, H: RationalFunction = ONE_RF) -> LogSymbol:
    """``H(z) s(xi) |xi|^(-q z)``; the order slope is ``-q``."""
    q = as_fraction(q)
    if q == 0:
        raise ValueError("Riesz slope q must be nonzero")
    H = RationalFunction.coerce(H)
    if H(0) != 1:
        raise ValueError("H must satisfy H(0) = 1")
    if not s.is_z_independent():
        raise ValueError("riesz_family expects a z-independent symbol")
    return LogSymbol(s.dim, {(Exponent(e.a, -q), l): c * H for (e, l), c in s.terms.items()}, s.omega_power)


def cutoff_germ(s: LogSymbol, K: int = DEFAULT_TRUNC) -> LaurentSeries:
    """Laurent series of ``cutoff_integral(s)`` at 0, expanded term by term.

    Same result as expanding the assembled rational function, but avoids
    building a common denominator over many distinct linear factors.
    """
    out = LaurentSeries({}, 0, K)
    for (e, l), c in s.terms.items():
        k = primitive_terms(e, l, s.dim)[2]
        if not k.is_zero():
            out = out + laurent_of_rational(c * k, K)
    return out


def germ_of_integral(s: LogSymbol, K: int = DEFAULT_TRUNC) -> MeromorphicGerm:
    ser = cutoff_germ(s, K)
    return MeromorphicGerm(ser, ser.pole_order(), s.omega_power + 1)


def regularised_integral(s: LogSymbol) -> Fraction:
    """Finite part at ``z = 0`` of the regularised cut-off integral."""
    return finite_part(germ_of_integral(s, 0).series)


def common_slope(s: LogSymbol) -> Fraction:
    slopes = s.slopes()
    if len(slopes) != 1:
        raise ValueError(f"family has no common order slope: {sorted(slopes)}")
    (b,) = slopes
    return b


def _res0_at_zero(s: LogSymbol) -> Fraction:
    """``res_0`` of the z = 0 specialisation (units ``Omega ** (omega_power+1)``)."""
    return wodzicki_residue(specialize(s, 0), 0).constant_value() if not s.is_zero() else Fraction(0)


@dataclass(frozen=True)
class KVCoefficients:
    slope: Fraction
    residues: Dict[int, Fraction]      # j -> r_j, coefficient of z^-j
    finite_part: Fraction
    taylor: Dict[int, Fraction]        # j -> s_j, coefficient of z^j
    omega_power: int


def kv_coefficients(s: LogSymbol, k: Optional[int] = None, K: int = 4) -> KVCoefficients:
    """Laurent coefficients at ``z = 0`` from local residue data.

    With ``alpha' = `` the common slope and ``s_(l)`` the log-free symbol in
    front of ``log^l``:

    * ``r_j = sum_{l >= j-1} (-1)^(l+1) l! / (alpha'^(l+1) (l+1-j)!) res_0(s_(l)^(l+1-j)(0))``
    * ``fp  = cutoff(s(0)) + sum_l (-1)^(l+1) / (alpha'^(l+1) (l+1)) res_0(s_(l)^(l+1)(0))``
    * ``s_j = cutoff(s^(j)(0)) / j! + sum_l (-1)^(l+1) l! / (alpha'^(l+1) (j+l+1)!) res_0(s_(l)^(j+l+1)(0))``

    Derivatives are taken with :func:`d_param`.  ``s_j`` is normalised as a
    Taylor coefficient, i.e. the ``j``-th derivative divided by ``j!``.
    """
    slope = common_slope(s)
    if slope == 0:
        raise ValueError("order slope alpha'(0) must be nonzero")
    if k is None:
        k = s.max_logpow()
    slices = [log_slice(s, l) for l in range(k + 1)]

    def res_deriv(l: int, m: int) -> Fraction:
        return _res0_at_zero(d_param_n(slices[l], m))

    def pref(l: int) -> Fraction:
        return Fraction((-1) ** (l + 1)) / slope ** (l + 1)

    residues = {}
    for j in range(1, k + 2):
        tot = Fraction(0)
        for l in range(j - 1, k + 1):
            tot += pref(l) * Fraction(factorial(l), factorial(l + 1 - j)) * res_deriv(l, l + 1 - j)
        residues[j] = tot

    fp = cutoff_integral(specialize(s, 0)).constant_value()
    for l in range(k + 1):
        fp += pref(l) * Fraction(1, l + 1) * res_deriv(l, l + 1)

    taylor = {}
    deriv = s
    for j in range(1, K + 1):
        deriv = d_param(deriv)
        tot = cutoff_integral(specialize(deriv, 0)).constant_value() / factorial(j)
        for l in range(k + 1):
            tot += pref(l) * Fraction(factorial(l), factorial(j + l + 1)) * res_deriv(l, j + l + 1)
        taylor[j] = tot
    return KVCoefficients(slope, residues, fp, taylor, s.omega_power + 1)


def common_riesz_slope(w: TensorWord) -> Fraction:
    slopes = set()
    for f in w:
        slopes |= f.slopes()
    if len(slopes) != 1:
        raise ValueError(f"factors do not share a single order slope: {sorted(slopes)}")
    (b,) = slopes
    if b == 0:
        raise ValueError("factors are not regularised (slope 0)")
    return b


def chen_germ(w: TensorWord, K: int = DEFAULT_TRUNC) -> MeromorphicGerm:
    """Laurent germ at 0 of the regularised cut-off Chen integral of a word."""
    common_riesz_slope(w)
    _check_length(len(w))
    ser = LaurentSeries({}, 0, K)
    for perm in permutations(range(len(w))):
        ser = ser + cutoff_germ(nested_chen(w.permuted(perm)), K)
    return MeromorphicGerm(ser, ser.pole_order(), sum(f.omega_power + 1 for f in w))


def product_germ(w: TensorWord, K: int = DEFAULT_TRUNC) -> MeromorphicGerm:
    ser = laurent_of_rational(multi_cutoff_integral(w), K)
    return MeromorphicGerm(ser, ser.pole_order(), sum(f.omega_power + 1 for f in w))
