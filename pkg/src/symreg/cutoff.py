"""Ball integrals, their large-radius expansion and the cut-off integral.

The cutoff is the indicator of ``|xi| >= 1``, so every ball integral reduces
to one-dimensional integrals

    int_1^R r^(w-1) log^l r dr,      w = a + b z + n,

which have the closed-form primitive

    sum_j (-1)^(l-j) l!/(j! w^(l-j+1)) R^w log^j R  +  (-1)^(l+1) l!/w^(l+1)

for ``w`` not identically zero, and ``log^(l+1) R / (l+1)`` otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Mapping, Tuple

from .scalars import ONE_RF, ZERO_RF, RationalFunction, as_fraction
from .symbols import Exponent, LogSymbol, TensorWord, wodzicki_residue


def primitive_terms(e: Exponent, l: int, n: int):
    """Radial primitive of one term, as ``(divergent, log_divergent, constant)``.

    ``divergent`` maps ``(Exponent, j)`` to the coefficient of ``R^w log^j R``;
    ``log_divergent`` maps ``q`` to the coefficient of ``log^q R``.
    """
    w = e.shift(n)
    if w.is_zero():
        return {}, {l + 1: RationalFunction.const(Fraction(1, l + 1))}, ZERO_RF
    inv = w.as_rf().inverse()
    powers = [ONE_RF]
    for _ in range(l + 1):
        powers.append(powers[-1] * inv)
    lf = factorial(l)
    div = {}
    for j in range(l + 1):
        div[(w, j)] = powers[l - j + 1] * Fraction((-1) ** (l - j) * lf, factorial(j))
    const = powers[l + 1] * ((-1) ** (l + 1) * lf)
    return div, {}, const


@dataclass(frozen=True)
class AsymptoticExpansion:
    """``int_{|xi|<=R} sigma`` as ``R -> oo``, in units of ``Omega_n ** omega_power``.

    The expansion is exact for the model class (no remainder):
    ``sum divergent[(w,p)] R^w log^p R + sum log_divergent[q] log^q R + constant``.
    """

    divergent: Mapping[Tuple[Exponent, int], RationalFunction]
    log_divergent: Mapping[int, RationalFunction]
    constant: RationalFunction
    omega_power: int

    def log_sector(self) -> "LogPolynomial":
        """The constant plus pure-log part, as a polynomial in ``log R``."""
        terms = {(): self.constant} if not self.constant.is_zero() else {}
        for q, c in self.log_divergent.items():
            terms[(("logR", q),)] = c
        return LogPolynomial(terms)


def ball_expansion(s: LogSymbol) -> AsymptoticExpansion:
    div: Dict[Tuple[Exponent, int], RationalFunction] = {}
    logdiv: Dict[int, RationalFunction] = {}
    const = ZERO_RF
    for (e, l), c in s.terms.items():
        d, ld, k = primitive_terms(e, l, s.dim)
        for key, v in d.items():
            div[key] = div.get(key, ZERO_RF) + c * v
        for q, v in ld.items():
            logdiv[q] = logdiv.get(q, ZERO_RF) + c * v
        if not k.is_zero():
            const = const + c * k
    div = {k: v for k, v in div.items() if not v.is_zero()}
    logdiv = {k: v for k, v in logdiv.items() if not v.is_zero()}
    return AsymptoticExpansion(div, logdiv, const, s.omega_power + 1)


def cutoff_integral(s: LogSymbol) -> RationalFunction:
    """Finite part of the ball integral, in units of ``Omega_n ** (omega_power + 1)``."""
    const = ZERO_RF
    for (e, l), c in s.terms.items():
        k = primitive_terms(e, l, s.dim)[2]
        if not k.is_zero():
            const = const + c * k
    return const


def multi_cutoff_integral(w: TensorWord) -> RationalFunction:
    """Product of the factor cut-off integrals (units ``Omega_n ** sum(omega_power + 1)``)."""
    out = ONE_RF
    for s in w:
        out = out * cutoff_integral(s)
        if out.is_zero():
            break
    return out


def integral_omega_power(w) -> int:
    if isinstance(w, LogSymbol):
        return w.omega_power + 1
    return sum(s.omega_power + 1 for s in w)


# ---------------------------------------------------------------------------
# formal logarithms
# ---------------------------------------------------------------------------

Monomial = Tuple[Tuple[str, int], ...]


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    d = dict(m1)
    for v, p in m2:
        d[v] = d.get(v, 0) + p
    return tuple(sorted(d.items()))


class LogPolynomial:
    """Polynomial with :class:`RationalFunction` coefficients in formal logarithms.

    Variables are strings such as ``"logR"`` or ``"log3"``.  Logarithms of
    positive rationals are expanded over primes (``log 12 = 2 log2 + log3``),
    so ``log(mu mu') = log mu + log mu'`` holds identically in this ring.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] = ()):
        clean = {}
        for m, c in dict(terms).items():
            c = RationalFunction.coerce(c)
            m = tuple(sorted((v, p) for v, p in m if p))
            if m in clean:
                c = clean[m] + c
            if c.is_zero():
                clean.pop(m, None)
            else:
                clean[m] = c
        self.terms: Dict[Monomial, RationalFunction] = clean

    @classmethod
    def const(cls, c) -> "LogPolynomial":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "LogPolynomial":
        return cls({((name, 1),): 1})

    def __add__(self, other):
        other = other if isinstance(other, LogPolynomial) else LogPolynomial.const(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return LogPolynomial(t)

    __radd__ = __add__

    def __neg__(self):
        return LogPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, LogPolynomial) else LogPolynomial.const(other)
        t: Dict[Monomial, RationalFunction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                t[m] = t[m] + c if m in t else c
        return LogPolynomial(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LogPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, name: str, value: "LogPolynomial") -> "LogPolynomial":
        out = LogPolynomial()
        for m, c in self.terms.items():
            d = dict(m)
            p = d.pop(name, 0)
            rest = LogPolynomial({tuple(sorted(d.items())): c})
            out = out + rest * (value ** p)
        return out

    def constant_term(self) -> RationalFunction:
        return self.terms.get((), ZERO_RF)

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def __eq__(self, other):
        if not isinstance(other, LogPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "LogPolynomial(0)"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"{v}^{p}" if p > 1 else v for v, p in m)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "LogPolynomial(" + " + ".join(parts) + ")"


def _prime_exponents(n: int) -> Dict[int, int]:
    from sympy import factorint
    return {int(p): int(k) for p, k in factorint(n).items()}


def log_of_rational(mu) -> LogPolynomial:
    """``log mu`` for positive rational ``mu``, expanded over primes."""
    mu = as_fraction(mu)
    if mu <= 0:
        raise ValueError("mu must be positive")
    terms = {}
    for p, k in _prime_exponents(mu.numerator).items():
        terms[((f"log{p}", 1),)] = k
    for p, k in _prime_exponents(mu.denominator).items():
        key = ((f"log{p}", 1),)
        terms[key] = terms.get(key, 0) - k
    return LogPolynomial(terms)


def rescale_log_sector(sector: LogPolynomial, log_mu: LogPolynomial) -> LogPolynomial:
    """Substitute ``log R -> log R + log mu``, i.e. ``R -> mu R``."""
    return sector.substitute("logR", LogPolynomial.var("logR") + log_mu)


def rescaled_finite_part(s: LogSymbol, mu) -> LogPolynomial:
    """Finite part of ``int_{|xi| <= mu R} s`` as ``R -> oo``.

    Equals ``cutoff_integral(s) + sum_l res_l(s) log^(l+1)(mu) / (l+1)``;
    returned as a polynomial in the prime logarithms of ``mu``.
    """
    mu = as_fraction(mu)
    if mu <= 0:
        raise ValueError("mu must be positive")
    lm = log_of_rational(mu)
    out = LogPolynomial.const(cutoff_integral(s))
    for l in range(s.max_logpow() + 1):
        r = wodzicki_residue(s, l)
        if not r.is_zero():
            out = out + (lm ** (l + 1)) * (r * Fraction(1, l + 1))
    return out
