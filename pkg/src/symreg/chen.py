"""The operator P, nested Chen compositions and shuffle checks."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import List, Sequence, Tuple

from .cutoff import cutoff_integral, multi_cutoff_integral, primitive_terms
from .scalars import ZERO_RF, RationalFunction
from .symbols import ZERO_EXP, Exponent, LogSymbol, TensorWord, order, sym_add, sym_mul, sym_sum, wodzicki_residue

DEFAULT_MAX_K = 7


def max_word_length() -> int:
    return int(os.environ.get("SYMREG_MAX_K", DEFAULT_MAX_K))


def _check_length(k: int):
    cap = max_word_length()
    if k > cap:
        raise ValueError(f"word length {k} exceeds SYMREG_MAX_K={cap}")


@lru_cache(maxsize=4096)
def p_operator(s: LogSymbol) -> LogSymbol:
    """``P(s)(eta) = int_{1 <= |xi| <= |eta|} s(xi) d xi`` on ``|eta| >= 1``.

    The angular integral contributes one power of ``Omega_n``.
    """
    out = []
    for (e, l), c in s.terms.items():
        div, logdiv, const = primitive_terms(e, l, s.dim)
        for (w, j), v in div.items():
            out.append(((w, j), c * v))
        for q, v in logdiv.items():
            out.append(((ZERO_EXP, q), c * v))
        if not const.is_zero():
            out.append(((ZERO_EXP, 0), c * const))
    return LogSymbol(s.dim, out, s.omega_power + 1)


@lru_cache(maxsize=4096)
def _nested(factors: Tuple[LogSymbol, ...]) -> LogSymbol:
    if len(factors) == 1:
        return factors[0]
    return sym_mul(factors[0], p_operator(_nested(factors[1:])))


def nested_chen(w: TensorWord) -> LogSymbol:
    """``s1 P(s2 P(... P(sk)))``: the nested integral over ``|xi_k| <= ... <= |xi_1|``, on the diagonal."""
    return _nested(tuple(w.factors))


def _permutation_sum(w: TensorWord, fn):
    _check_length(len(w))
    return [fn(_nested(tuple(w.factors[i] for i in perm))) for perm in permutations(range(len(w)))]


def chen_cutoff_integral(w: TensorWord) -> RationalFunction:
    """Sum over all orderings of the cut-off integral of the nested Chen symbol."""
    total = ZERO_RF
    for v in _permutation_sum(w, cutoff_integral):
        total = total + v
    return total


@dataclass(frozen=True)
class SymbolShuffleReport:
    lhs: LogSymbol
    rhs: LogSymbol
    equal: bool
    terms: int


def verify_symbol_shuffle(w: TensorWord) -> SymbolShuffleReport:
    """``prod_i P(s_i) == sum_tau P(nested_chen(w o tau))`` as exact symbols."""
    lhs = p_operator(w[0])
    for s in w.factors[1:]:
        lhs = sym_mul(lhs, p_operator(s))
    parts = _permutation_sum(w, p_operator)
    rhs = sym_sum(parts, w.dim)
    return SymbolShuffleReport(lhs, rhs, lhs == rhs, len(parts))


def _orders(w: TensorWord) -> List[Fraction]:
    out = []
    for s in w:
        o = order(s)
        out.append(max(e.a for e in o) if not isinstance(o, Exponent) else o.a)
    return out


def partial_sums_nonintegral(w: TensorWord) -> bool:
    """Every left partial sum of the orders ``a_1 + ... + a_j`` is a non-integer.

    Zero factors make the condition vacuous for the remaining sums; the
    condition is then evaluated on the nonzero factors only.
    """
    nonzero = TensorWord(tuple(s for s in w if not s.is_zero())) if any(not s.is_zero() for s in w) else None
    if nonzero is None:
        return True
    acc = Fraction(0)
    for a in _orders(nonzero):
        acc += a
        if acc.denominator == 1:
            return False
    return True


def resonance_free(w: TensorWord) -> bool:
    """No cross terms can reach ``R^0`` in the product of ball expansions.

    For each factor collect the noncritical shifted exponents ``a + b z + n``;
    the word is resonance free when no choice of one exponent from each of at
    least two distinct factors sums to the zero exponent.  This is sufficient
    for ``prod cutoff_integral == chen_cutoff_integral``.
    """
    sets = []
    for s in w:
        ex = {e.shift(s.dim) for e, _ in s.terms}
        sets.append(sorted(x for x in ex if not x.is_zero()))
    k = len(sets)
    for size in range(2, k + 1):
        for idx in combinations(range(k), size):
            for choice in product(*(sets[i] for i in idx)):
                tot = choice[0]
                for x in choice[1:]:
                    tot = tot + x
                if tot.is_zero():
                    return False
    return True


@dataclass(frozen=True)
class IntegralShuffleReport:
    product: RationalFunction
    shuffle_sum: RationalFunction
    equal: bool
    partial_sums_nonintegral: bool
    resonance_free: bool
    omega_power: int


def verify_integral_shuffle(w: TensorWord) -> IntegralShuffleReport:
    prod_ = multi_cutoff_integral(w)
    shuf = chen_cutoff_integral(w)
    return IntegralShuffleReport(prod_, shuf, prod_ == shuf, partial_sums_nonintegral(w),
                                 resonance_free(w), sum(s.omega_power + 1 for s in w))


def order_bound(w: TensorWord) -> Fraction:
    """Upper bound on the exponents of ``nested_chen(w)`` from the factor orders.

    ``b_k = a_k`` and ``b_j = a_j + max(0, b_{j+1} + n)``.
    """
    a = _orders(w)
    b = a[-1]
    for aj in reversed(a[:-1]):
        b = aj + max(Fraction(0), b + w.dim)
    return b


def top_log_coefficient(w: TensorWord) -> LogSymbol:
    """Coefficient of ``log^(k-1)|xi|`` in ``nested_chen(w)`` for log-free factors.

    Only critical terms raise the log power under ``P``, so the recursion
    ``t_k = s_k``, ``t_j = s_j res_0(t_{j+1}) / (k - j)`` closes and gives
    ``s_1 * prod_{j>=2} res_0(s_j) / (k-1)!`` in units of ``Omega_n ** (k-1)``
    on top of the factors' own powers.
    """
    if any(s.max_logpow() > 0 for s in w if not s.is_zero()):
        raise ValueError("top_log_coefficient expects log-free factors")
    k = len(w)
    t = w[k - 1]
    for j in range(k - 2, -1, -1):
        r = wodzicki_residue(t, 0) * Fraction(1, k - 1 - j)
        t = sym_mul(w[j], LogSymbol(w.dim, {(ZERO_EXP, 0): r}, t.omega_power + 1))
    return t
