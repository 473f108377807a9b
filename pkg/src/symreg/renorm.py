"""Minimal-subtraction renormalisation of multivariate Laurent germs.

For a germ ``f(z_1, ..., z_k)`` and a nonempty set ``J`` of variables,
``f_J`` denotes ``f`` with ``z_i = z`` for all ``i`` in ``J``.  Recursively,

    Rbar(f) = f|_{diagonal} + sum_{J proper} C(f_J) * (rest on the diagonal)
    C(f)    = -T(Rbar(f))
    R(f)    = Rbar(f) + C(f)

with ``T`` the projection onto strictly negative powers.  ``R(f)`` is
holomorphic at 0 and ``R(f)(0)`` is the constant term of ``f``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Sequence, Tuple, Union

from .meromorphic import MeromorphicGerm, germ_of_integral
from .scalars import (
    LaurentSeries,
    MultiLaurent,
    TruncationError,
    finite_part,
    multi_pole_part,
    multi_restrict,
    pole_part,
)
from .symbols import LogSymbol, TensorWord

MAX_SUBSET_K = 10


@dataclass(frozen=True)
class GermWord:
    """``f_1(z_1) ... f_k(z_k)``: one univariate germ per variable."""

    factors: Tuple[LaurentSeries, ...]

    def __post_init__(self):
        fs = tuple(f.series if isinstance(f, MeromorphicGerm) else f for f in self.factors)
        if not fs:
            raise ValueError("a germ word needs at least one factor")
        if len(fs) > MAX_SUBSET_K:
            raise ValueError(f"germ words are capped at {MAX_SUBSET_K} factors")
        object.__setattr__(self, "factors", fs)

    def __len__(self):
        return len(self.factors)

    def pole_budget(self) -> int:
        return sum(f.pole_order() for f in self.factors)

    def to_multi(self) -> MultiLaurent:
        return MultiLaurent.tensor(self.factors)


def _product(fs: Sequence[LaurentSeries]) -> LaurentSeries:
    out = fs[0]
    for f in fs[1:]:
        out = out * f
    return out


def _key(fs: Sequence[LaurentSeries]) -> Tuple:
    return tuple(sorted((tuple(sorted(f.coeffs.items())), f.trunc) for f in fs))


class _Renormaliser:
    """Memoised subset recursion for a factorised word."""

    def __init__(self):
        self.rbar_memo: Dict[Tuple, LaurentSeries] = {}

    def rbar(self, fs: Tuple[LaurentSeries, ...]) -> LaurentSeries:
        key = _key(fs)
        if key in self.rbar_memo:
            return self.rbar_memo[key]
        k = len(fs)
        out = _product(fs)
        for size in range(1, k):
            for J in combinations(range(k), size):
                rest = [fs[i] for i in range(k) if i not in J]
                out = out + self.counterterm(tuple(fs[i] for i in J)) * _product(rest)
        self.rbar_memo[key] = out
        return out

    def counterterm(self, fs: Tuple[LaurentSeries, ...]) -> LaurentSeries:
        return -pole_part(self.rbar(fs))


def _factors(f) -> Tuple[LaurentSeries, ...]:
    if isinstance(f, GermWord):
        return f.factors
    if isinstance(f, LaurentSeries):
        return (f,)
    return GermWord(tuple(f)).factors


def rbar(f) -> LaurentSeries:
    """Prepared germ.  Accepts a :class:`GermWord`, a sequence of series or a :class:`MultiLaurent`."""
    if isinstance(f, MultiLaurent):
        return _multi_rbar(f)
    return _Renormaliser().rbar(_factors(f))


def counterterm(f) -> LaurentSeries:
    """``C(f) = -T(Rbar(f))``; a univariate series is treated as a one-factor word."""
    return -pole_part(rbar(f))


def _check_holomorphic(r: LaurentSeries):
    if r.trunc < 0:
        raise TruncationError(f"truncation order {r.trunc} too small to read the value at 0")
    bad = {d: c for d, c in r.coeffs.items() if d < 0}
    if bad:
        raise AssertionError(f"renormalised germ has a pole part {bad}")


def renormalise(f) -> LaurentSeries:
    """``R(f) = Rbar(f) + C(f)``; holomorphic at 0 by construction (checked)."""
    if isinstance(f, MultiLaurent):
        rb = _multi_rbar(f)
    else:
        rb = _Renormaliser().rbar(_factors(f))
    r = rb - pole_part(rb)
    _check_holomorphic(r)
    return r


def renormalised_value(f) -> Fraction:
    return finite_part(renormalise(f))


def naive_finite_part(f) -> Fraction:
    """Finite part of the plain diagonal product."""
    prod_ = _product(_factors(f))
    if prod_.trunc < 0:
        raise TruncationError("truncation order too small for the diagonal product")
    return finite_part(prod_)


def obstruction(f) -> Fraction:
    """``sum a^1_{i_1} ... a^k_{i_k}`` over ``i_1 + ... + i_k = 0`` with ``i != 0``."""
    fs = _factors(f)
    budget = sum(g.pole_order() for g in fs)
    for g in fs:
        if g.trunc < budget - g.pole_order():
            raise TruncationError(
                f"factor truncation {g.trunc} below the pole budget {budget - g.pole_order()} of the others")
    total = Fraction(0)
    items = [sorted(g.coeffs.items()) for g in fs]
    for combo in product(*items):
        if sum(d for d, _ in combo) == 0 and any(d for d, _ in combo):
            c = Fraction(1)
            for _, v in combo:
                c *= v
            total += c
    return total


# ---------------------------------------------------------------------------
# general multivariate path
# ---------------------------------------------------------------------------


def _multi_rbar(f: MultiLaurent) -> LaurentSeries:
    if f.nvars > MAX_SUBSET_K:
        raise ValueError(f"germs are capped at {MAX_SUBSET_K} variables")
    memo: Dict[FrozenSet[int], MultiLaurent] = {}

    def rbar_set(S: FrozenSet[int]) -> MultiLaurent:
        """Rbar over the variables in ``S``; merged ``S`` variable first, the rest untouched."""
        if S in memo:
            return memo[S]
        out = multi_restrict(f, sorted(S))
        members = sorted(S)
        for size in range(1, len(members)):
            for J in combinations(members, size):
                c = -multi_pole_part(rbar_set(frozenset(J)), 0)
                # identify the J variable with the remaining variables of S
                idx = [0] + [i for i, lab in enumerate(c.labels) if i and lab <= S]
                out = out + multi_restrict(c, idx)
        memo[S] = out
        return out

    full = rbar_set(frozenset(range(f.nvars)))
    return full.to_laurent()


# ---------------------------------------------------------------------------
# Birkhoff decomposition on regularised words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Birkhoff:
    phi_minus: LaurentSeries
    phi_plus: LaurentSeries
    omega_power: int


def birkhoff(w: Union[TensorWord, GermWord, Sequence[LaurentSeries]], K: int = 8) -> Birkhoff:
    """Bogoliubov recursion over sub-multisets of a word.

    ``Phi_-(S) = -T(Phi(S) + sum_{S' proper} Phi_-(S') Phi(S \\ S'))`` and
    ``Phi_+(S) = Phi(S) + Phi_-(S) + sum Phi_-(S') Phi(S \\ S')`` where
    ``Phi`` is the character sending a factor to its regularised-integral germ.
    """
    if isinstance(w, TensorWord):
        germs = [germ_of_integral(s, K) for s in w]
        phi = tuple(g.series for g in germs)
        om = sum(g.omega_power for g in germs)
    else:
        phi = _factors(w)
        om = 0
    memo: Dict[Tuple, LaurentSeries] = {}

    def minus(fs: Tuple[LaurentSeries, ...]) -> LaurentSeries:
        key = _key(fs)
        if key not in memo:
            memo[key] = -pole_part(prepared(fs))
        return memo[key]

    def prepared(fs: Tuple[LaurentSeries, ...]) -> LaurentSeries:
        k = len(fs)
        out = _product(fs)
        for size in range(1, k):
            for J in combinations(range(k), size):
                out = out + minus(tuple(fs[i] for i in J)) * _product([fs[i] for i in range(k) if i not in J])
        return out

    pre = prepared(phi)
    m = -pole_part(pre)
    plus = pre + m
    _check_holomorphic(plus)
    return Birkhoff(m, plus, om)


def germ_word_of(w: TensorWord, K: int = 8) -> GermWord:
    return GermWord(tuple(germ_of_integral(s, K).series for s in w))
