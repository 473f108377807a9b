"""Seeded random generators for symbols, words and germs."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .meromorphic import riesz_family
from .scalars import LaurentSeries, RationalFunction
from .symbols import Exponent, LogSymbol, TensorWord


@dataclass(frozen=True)
class SymbolConfig:
    dims: Sequence[int] = (1, 2, 3)
    order_range: tuple = (-6, 2)
    denominators: Sequence[int] = (1, 2, 3, 4, 6)
    max_terms: int = 3
    max_logpow: int = 2
    max_coeff: int = 5


def random_rational(rng: random.Random, lo, hi, denominators: Sequence[int] = (1, 2, 3, 4)) -> Fraction:
    q = rng.choice(denominators)
    p = rng.randint(int(lo * q), int(hi * q))
    return Fraction(p, q)


def random_coeff(rng: random.Random, bound: int = 5) -> Fraction:
    c = Fraction(0)
    while c == 0:
        c = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
    return c


def random_symbol(rng: random.Random, cfg: SymbolConfig = SymbolConfig(), dim: int | None = None) -> LogSymbol:
    """z-independent symbol with a few terms; occasionally hits the critical exponent ``-n``."""
    n = dim if dim is not None else rng.choice(cfg.dims)
    terms = []
    for _ in range(rng.randint(1, cfg.max_terms)):
        if rng.random() < 0.25:
            a = Fraction(-n)
        else:
            a = random_rational(rng, *cfg.order_range, cfg.denominators)
        terms.append(((Exponent(a), rng.randint(0, cfg.max_logpow)), random_coeff(rng, cfg.max_coeff)))
    s = LogSymbol(n, terms)
    return s if not s.is_zero() else random_symbol(rng, cfg, n)


def random_word(rng: random.Random, k: int, cfg: SymbolConfig = SymbolConfig(), dim: int | None = None) -> TensorWord:
    n = dim if dim is not None else rng.choice(cfg.dims)
    return TensorWord(tuple(random_symbol(rng, cfg, n) for _ in range(k)))


def random_polyhomogeneous(rng: random.Random, alpha: Fraction, dim: int, max_terms: int = 3,
                           max_logpow: int = 1) -> LogSymbol:
    """``sum_j c_j |xi|^(alpha - j) log^l`` with exponents in ``alpha - N``."""
    terms = [((Exponent(alpha), rng.randint(0, max_logpow)), random_coeff(rng))]
    for _ in range(rng.randint(0, max_terms - 1)):
        terms.append(((Exponent(alpha - rng.randint(1, 4)), rng.randint(0, max_logpow)), random_coeff(rng)))
    s = LogSymbol(dim, terms)
    return s if not s.is_zero() else random_polyhomogeneous(rng, alpha, dim, max_terms, max_logpow)


def random_nonintegral_word(rng: random.Random, k: int, dim: int = 1) -> TensorWord:
    """Word whose factor orders have fractional parts ``1/2, 1/4, 1/8, ...`` (shuffled).

    No nonempty subset of the orders, and in particular no left partial sum,
    is an integer.
    """
    fracs = [Fraction(1, 2 ** (i + 1)) for i in range(k)]
    rng.shuffle(fracs)
    factors = []
    for fr in fracs:
        alpha = rng.randint(-5, 1) + fr
        factors.append(random_polyhomogeneous(rng, alpha, dim))
    return TensorWord(tuple(factors))


def random_H(rng: random.Random) -> RationalFunction:
    """Holomorphic prefactor with ``H(0) = 1``."""
    kind = rng.randint(0, 2)
    c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    if kind == 0:
        return RationalFunction.const(1)
    if kind == 1:
        return RationalFunction.linear(1, c)
    d = Fraction(rng.randint(1, 3), rng.randint(1, 4))
    return RationalFunction.linear(1, c) / RationalFunction.linear(1, d)


def random_riesz_family(rng: random.Random, dim: int | None = None, max_logpow: int = 3,
                        with_H: bool = True, q=None) -> LogSymbol:
    n = dim if dim is not None else rng.choice((1, 2, 3))
    terms = [((Exponent(-n), rng.randint(0, max_logpow)), random_coeff(rng))]
    for _ in range(rng.randint(0, 2)):
        a = random_rational(rng, -6, 2, (1, 2, 3))
        terms.append(((Exponent(a), rng.randint(0, max_logpow)), random_coeff(rng)))
    s = LogSymbol(n, terms)
    if s.is_zero():
        return random_riesz_family(rng, dim, max_logpow, with_H, q)
    if q is None:
        q = Fraction(rng.choice((1, 2, 3, -1, -2)), rng.choice((1, 2)))
    return riesz_family(s, q, random_H(rng) if with_H else 1)


def random_germ(rng: random.Random, max_pole: int = 3, K: int = 8) -> LaurentSeries:
    p = rng.randint(0, max_pole)
    coeffs = {d: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for d in range(-p, K + 1) if rng.random() < 0.8}
    if p:
        coeffs[-p] = Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 2))
    return LaurentSeries(coeffs, p, K)


def random_germ_word(rng: random.Random, k: int, max_pole: int = 3, extra: int = 2) -> List[LaurentSeries]:
    """Germs with enough truncation for the diagonal product to reach degree ``extra``."""
    poles = [rng.randint(0, max_pole) for _ in range(k)]
    K = sum(poles) + extra
    out = []
    for p in poles:
        coeffs = {d: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for d in range(-p, K + 1) if rng.random() < 0.8}
        if p:
            coeffs[-p] = Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 2))
        out.append(LaurentSeries(coeffs, p, K))
    return out
