"""Discrete sums of symbols: Euler-MacLaurin, cut-off sums, Chen sums and MZVs.

On the integers a radial symbol ``s`` with ``s(0) = 0`` satisfies
``sum_{|j| <= N} s(j) = sum_{m=1}^N tau(m)`` with ``tau = 2 s``.  For
``h`` smooth on ``[a, oo)`` we use

    sum_{m=a+1}^{N} h(m) = E(h)(N) - E(h)(a) + R,
    E(h) = Prim(h) + h/2 + sum_{r=1}^{k} B_{2r}/(2r)! h^(2r-1),
    |R| <= 2 |B_{2k+2}| / (2k+2)! * int_a^oo |h^(2k+2)|,

with ``B_m`` the Bernoulli numbers of ``t/(e^t - 1)``.  All symbols involved
stay in the class ``c x^s log^l x`` so every piece is closed form except the
Euler-MacLaurin constant, which is computed by quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import mpmath

from .chen import p_operator
from .cutoff import cutoff_integral
from .meromorphic import riesz_family
from .scalars import ZERO_RF, RationalFunction, as_fraction, poly_eval
from .symbols import ZERO_EXP, Exponent, LogSymbol, TensorWord, d_radial_n, order, substitute_omega, sym_sum

WORKDPS = 40
OMEGA_1 = 2
DEFAULT_DEPTH = 5
DEFAULT_N0 = 40


class ToleranceError(RuntimeError):
    """The requested accuracy could not be certified."""


class DivergenceError(ValueError):
    """The sum does not converge; it needs the regularised (cut-off) treatment."""


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> Tuple[Fraction, ...]:
    B = [Fraction(1)]
    for n in range(1, m + 1):
        B.append(-sum(comb(n + 1, j) * B[j] for j in range(n)) / (n + 1))
    return tuple(B)


def bernoulli(m: int) -> Fraction:
    """``B_m`` with ``t/(e^t - 1) = sum B_m t^m / m!`` (so ``B_1 = -1/2``)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _bernoulli_table(m)[m]


def em_weight(r: int) -> Fraction:
    """``B_{2r} / (2r)!``."""
    return bernoulli(2 * r) / factorial(2 * r)


def em_remainder_factor(k: int) -> Fraction:
    """``2 |B_{2k+2}| / (2k+2)!``, bounding ``|B_{2k+2}({x}) - B_{2k+2}| / (2k+2)!``."""
    return 2 * abs(bernoulli(2 * k + 2)) / factorial(2 * k + 2)


# ---------------------------------------------------------------------------
# numeric symbols in one variable
# ---------------------------------------------------------------------------

NKey = Tuple[Fraction, Fraction, int]   # (Re s, Im s, log power)


def _mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    if isinstance(c, int):
        return mpmath.mpf(c)
    return mpmath.mpmathify(c)


def _frac_parts(z) -> Tuple[Fraction, Fraction]:
    if isinstance(z, (complex, mpmath.mpc)):
        return Fraction(float(z.real)), Fraction(float(z.imag))
    if isinstance(z, mpmath.mpf):
        return Fraction(float(z)), Fraction(0)
    return as_fraction(z), Fraction(0)


class NumSymbol:
    """``sum c x^s log^l x`` on ``x >= 1`` with exact exponents and mpmath coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        t: Dict[NKey, object] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for k, c in items:
            if k in t:
                t[k] = t[k] + c
            else:
                t[k] = c
        self.terms = {k: c for k, c in t.items() if c != 0}

    @classmethod
    def power(cls, s, coeff=1) -> "NumSymbol":
        re, im = _frac_parts(s)
        return cls({(re, im, 0): _mp(coeff)})

    @classmethod
    def from_logsymbol(cls, s: LogSymbol, z=0, omega=OMEGA_1) -> "NumSymbol":
        """Evaluate ``z`` and ``Omega_1`` numerically; exponents stay exact."""
        if s.dim != 1:
            raise ValueError("discrete sums need dimension-1 symbols")
        zr, zi = _frac_parts(z)
        zmp = mpmath.mpc(_mp(zr), _mp(zi)) if zi else _mp(zr)
        om = _mp(as_fraction(omega)) ** s.omega_power
        out = []
        for (e, l), c in s.terms.items():
            if c.is_constant():
                cv = _mp(c.constant_value())
            else:
                den = poly_eval(tuple(_mp(x) for x in c.den), zmp)
                if den == 0:
                    raise ValueError(f"z={z} is a pole of a coefficient")
                cv = poly_eval(tuple(_mp(x) for x in c.num), zmp) / den
            out.append(((e.a + e.b * zr, e.b * zi, l), cv * om))
        return cls(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NumSymbol") -> "NumSymbol":
        return NumSymbol(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return NumSymbol({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NumSymbol":
        c = _mp(c)
        return NumSymbol({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "NumSymbol") -> "NumSymbol":
        out = []
        for (r1, i1, l1), c1 in self.terms.items():
            for (r2, i2, l2), c2 in other.terms.items():
                out.append(((r1 + r2, i1 + i2, l1 + l2), c1 * c2))
        return NumSymbol(out)

    def deriv(self, m: int = 1) -> "NumSymbol":
        s = self
        for _ in range(m):
            out = []
            for (re, im, l), c in s.terms.items():
                if re or im:
                    ex = mpmath.mpc(_mp(re), _mp(im)) if im else _mp(re)
                    out.append(((re - 1, im, l), c * ex))
                if l:
                    out.append(((re - 1, im, l - 1), c * l))
            s = NumSymbol(out)
        return s

    def primitive(self) -> "NumSymbol":
        """An antiderivative without integration constant."""
        out = []
        for (re, im, l), c in self.terms.items():
            wr, wi = re + 1, im
            if wr == 0 and wi == 0:
                out.append(((Fraction(0), Fraction(0), l + 1), c / (l + 1)))
                continue
            w = mpmath.mpc(_mp(wr), _mp(wi)) if wi else _mp(wr)
            for j in range(l + 1):
                coef = (-1) ** (l - j) * mpmath.factorial(l) / (mpmath.factorial(j) * w ** (l - j + 1))
                out.append(((wr, wi, j), c * coef))
        return NumSymbol(out)

    def __call__(self, x):
        x = _mp(x) if not isinstance(x, (mpmath.mpf, mpmath.mpc)) else x
        if x < 1:
            return mpmath.mpf(0)
        lx = mpmath.log(x)
        tot = mpmath.mpf(0)
        for (re, im, l), c in self.terms.items():
            ex = mpmath.mpc(_mp(re), _mp(im)) if im else _mp(re)
            tot += c * mpmath.exp(ex * lx) * lx ** l
        return tot

    def constant_term(self):
        return self.terms.get((Fraction(0), Fraction(0), 0), mpmath.mpf(0))

    def abs_bound(self) -> "NumSymbol":
        """Termwise ``|c| x^{Re s} log^l x``, a nonnegative majorant on ``x >= 1``."""
        return NumSymbol([((re, Fraction(0), l), abs(c)) for (re, im, l), c in self.terms.items()])

    def max_re_exponent(self):
        return max((re for re, _, _ in self.terms), default=None)

    def __repr__(self):
        parts = [f"{mpmath.nstr(c, 8)}*x^({re}{'+' + str(im) + 'i' if im else ''})*log^{l}"
                 for (re, im, l), c in sorted(self.terms.items(), key=lambda kv: kv[0])]
        return "NumSymbol(" + " + ".join(parts) + ")" if parts else "NumSymbol(0)"


def tail_integral_abs(h: NumSymbol, M) -> object:
    """``int_M^oo`` of the termwise majorant of ``|h|``; needs every ``Re s < -1``."""
    M = _mp(M)
    lm = mpmath.log(M)
    tot = mpmath.mpf(0)
    for (re, _, l), c in h.abs_bound().terms.items():
        u = -(_mp(re) + 1)
        if u <= 0:
            raise DivergenceError(f"x^{re} log^{l} x is not integrable at infinity")
        s = sum(mpmath.factorial(l) / mpmath.factorial(j) * lm ** j / u ** (l - j + 1) for j in range(l + 1))
        tot += abs(c) * M ** (-u) * s
    return tot


def em_closed(h: NumSymbol, k: int) -> NumSymbol:
    out = h.primitive() + h.scale(mpmath.mpf(1) / 2)
    for r in range(1, k + 1):
        out = out + h.deriv(2 * r - 1).scale(_mp(em_weight(r)))
    return out


def em_remainder_bound(h: NumSymbol, k: int, N) -> object:
    d = h.deriv(2 * k + 2)
    if d.is_zero():
        return mpmath.mpf(0)
    try:
        return _mp(em_remainder_factor(k)) * tail_integral_abs(d, N)
    except DivergenceError as exc:
        raise DivergenceError(f"derivative of order {2 * k + 2} is not integrable; increase depth k") from exc


# ---------------------------------------------------------------------------
# Euler-MacLaurin interpolant and cut-off sums
# ---------------------------------------------------------------------------


def _tau(s: LogSymbol) -> LogSymbol:
    """``tau = 2 s`` with ``Omega_1 = 2`` absorbed."""
    return substitute_omega(s, OMEGA_1).scale(2)


def exact_closed_part(s: LogSymbol, k: int) -> LogSymbol:
    """``P(s) + tau/2 + sum_r B_{2r}/(2r)! tau^(2r-1)`` with ``Omega_1 = 2``."""
    if s.dim != 1:
        raise ValueError("discrete sums need dimension-1 symbols")
    tau = _tau(s)
    parts = [substitute_omega(p_operator(s), OMEGA_1), tau.scale(Fraction(1, 2))]
    for r in range(1, k + 1):
        parts.append(d_radial_n(tau, 2 * r - 1).scale(em_weight(r)))
    return sym_sum(parts, 1)


def _em_constant_quadrature(tau: NumSymbol, k: int, M: int = 48):
    """``C = tau(1)/2 - sum beta_r tau^(2r-1)(1) - int_1^oo psi_{2k+2} tau^(2k+2) / (2k+2)!``.

    ``psi_m(x) = B_m(x - floor x) - B_m``.  Unit intervals up to ``M`` are
    integrated numerically; the rest is bounded.
    """
    m2 = 2 * k + 2
    d = tau.deriv(m2)
    C = tau(1) / 2
    for r in range(1, k + 1):
        C -= _mp(em_weight(r)) * tau.deriv(2 * r - 1)(1)
    if d.is_zero():
        return C, mpmath.mpf(0)
    tail = em_remainder_bound(tau, k, M)
    Bm = _mp(bernoulli(m2))
    integral = mpmath.mpf(0)
    qerr = mpmath.mpf(0)
    for m in range(1, M):
        val, err = mpmath.quad(lambda x, m=m: (mpmath.bernpoly(m2, x - m) - Bm) * d(x), [m, m + 1], error=True)
        integral += val
        qerr += err
    C -= integral / mpmath.factorial(m2)
    return C, tail + qerr / mpmath.factorial(m2)


def _em_constant_partial_sums(tau: NumSymbol, k: int, M: int = 200):
    """Same constant from ``sum_{m<=M} tau(m) - E(tau)(M)``; error ``|T_M|``.

    ``em_closed`` uses a primitive without integration constant, whereas the
    closed part integrates from 1; the two differ by the primitive at 1.
    """
    closed = em_closed(tau, k)
    s = mpmath.fsum(tau(m) for m in range(1, M + 1))
    return s - closed(M) + tau.primitive()(1), em_remainder_bound(tau, k, M)


@dataclass(frozen=True)
class EMInterpolant:
    closed_part: LogSymbol
    em_depth: int
    constant: float
    constant_error: float
    numeric_tau: NumSymbol = field(repr=False)

    def remainder_bound(self, N) -> float:
        return float(em_remainder_bound(self.numeric_tau, self.em_depth, N))

    def __call__(self, N) -> float:
        with mpmath.workdps(WORKDPS):
            return float(NumSymbol.from_logsymbol(self.closed_part)(N) + self.constant)


def em_interpolant(s: LogSymbol, k: int = DEFAULT_DEPTH, method: str = "quadrature") -> EMInterpolant:
    """Interpolant of ``N -> sum_{|j| <= N} s(j)`` for a z-independent dimension-1 symbol."""
    if not s.is_z_independent():
        raise ValueError("em_interpolant expects a z-independent symbol")
    closed = exact_closed_part(s, k)
    with mpmath.workdps(WORKDPS):
        tau = NumSymbol.from_logsymbol(_tau(s), omega=1)
        if method == "quadrature":
            C, err = _em_constant_quadrature(tau, k)
        elif method == "partial-sums":
            C, err = _em_constant_partial_sums(tau, k)
        else:
            raise ValueError(f"unknown method {method!r}")
        return EMInterpolant(closed, k, float(C), float(err), tau)


@dataclass(frozen=True)
class SumResult:
    value: Union[float, complex]
    error: float


def _finish(v, err) -> SumResult:
    if isinstance(v, mpmath.mpc) and abs(v.imag) > 0:
        return SumResult(complex(v), float(err))
    return SumResult(float(v.real if isinstance(v, mpmath.mpc) else v), float(err))


def cutoff_sum(s: LogSymbol, k: int = DEFAULT_DEPTH, method: str = "quadrature") -> SumResult:
    """Finite part as ``N -> oo`` of ``sum_{|j| <= N} s(j)``."""
    if s.is_zero():
        return SumResult(0.0, 0.0)
    interp = em_interpolant(s, k, method)
    fp = interp.closed_part.terms.get((ZERO_EXP, 0), ZERO_RF).constant_value()
    err = interp.constant_error + 1e-25
    return SumResult(float(fp) + interp.constant, err)


def cutoff_sum_family(s: LogSymbol, q=1, z=0.0, k: int = DEFAULT_DEPTH) -> SumResult:
    """Meromorphic continuation in ``z`` of the cut-off sum of ``s |xi|^(-q z)``.

    The rational part (constant term of the closed part, a rational function
    of ``z``) is exact; the Euler-MacLaurin constant is evaluated at ``z``.
    """
    fam = riesz_family(s, q)
    closed = exact_closed_part(fam, k)
    rf = closed.terms.get((ZERO_EXP, 0), ZERO_RF)
    with mpmath.workdps(WORKDPS):
        zr, zi = _frac_parts(z)
        zmp = mpmath.mpc(_mp(zr), _mp(zi)) if zi else _mp(zr)
        den = poly_eval(tuple(_mp(x) for x in rf.den), zmp)
        if den == 0:
            raise ValueError(f"z={z} is a pole of the cut-off sum")
        fp = poly_eval(tuple(_mp(x) for x in rf.num), zmp) / den
        tau = NumSymbol.from_logsymbol(_tau(fam), z=z, omega=1)
        C, err = _em_constant_quadrature(tau, k)
        return _finish(fp + C, err + mpmath.mpf(10) ** (-25))


# ---------------------------------------------------------------------------
# discrete operators
# ---------------------------------------------------------------------------


def _as_function(f) -> Callable[[int], float]:
    if isinstance(f, LogSymbol):
        return lambda n: float(NumSymbol.from_logsymbol(f)(abs(n))) if n else 0.0
    return f


def discrete_p(s, n: int) -> float:
    """``sum_{|k| <= |n|} s(k)`` for a symbol or an even function on the integers."""
    f = _as_function(s)
    return math.fsum(f(j) for j in range(-abs(n), abs(n) + 1))


def strict_p(f: Callable[[int], float], n: int) -> float:
    """``sum_{0 < m < n} f(m)``."""
    return math.fsum(f(m) for m in range(1, n))


def weak_p(f: Callable[[int], float], n: int) -> float:
    """``sum_{0 < m <= n} f(m)``."""
    return math.fsum(f(m) for m in range(1, n + 1))


def _tabulate(op, f, n_max):
    vals = [op(f, n) for n in range(n_max + 1)]
    return lambda n: vals[abs(n)]


@dataclass(frozen=True)
class RBResiduals:
    strict: float          # P(f)P(g) - P(fP(g)) - P(gP(f)) - P(fg)
    weak: float            # ~P(f)~P(g) - ~P(f~P(g)) - ~P(g~P(f)) + ~P(fg)
    symmetric: float       # PP - P(sP(t)) - P(tP(s)) + 2 P(st), symmetric operator on Z
    symmetric_literal: float  # same with "+ P(st)" in place of "- 2 P(st)"


def rb_residuals(f: Callable[[int], float], g: Callable[[int], float], n_max: int = 50) -> RBResiduals:
    """Maximal pointwise residuals over ``n = 1..n_max`` of the discrete Rota-Baxter identities."""
    fg = lambda n: f(n) * g(n)
    out = {}
    for name, op in (("strict", strict_p), ("weak", weak_p)):
        Pf, Pg = _tabulate(op, f, n_max), _tabulate(op, g, n_max)
        a = lambda n: f(n) * Pg(n)
        b = lambda n: g(n) * Pf(n)
        sign = 1 if name == "strict" else -1
        out[name] = max(abs(Pf(n) * Pg(n) - op(a, n) - op(b, n) - sign * op(fg, n)) for n in range(1, n_max + 1))
    # symmetric operator on Z for even f, g vanishing at 0
    fe = lambda n: f(abs(n)) if n else 0.0
    ge = lambda n: g(abs(n)) if n else 0.0
    Pf, Pg = _tabulate(discrete_p, fe, n_max), _tabulate(discrete_p, ge, n_max)
    a = lambda n: fe(n) * Pg(n)
    b = lambda n: ge(n) * Pf(n)
    st = lambda n: fe(n) * ge(n)
    sym, lit = 0.0, 0.0
    for n in range(1, n_max + 1):
        base = Pf(n) * Pg(n) - discrete_p(a, n) - discrete_p(b, n)
        ps = discrete_p(st, n)
        sym = max(sym, abs(base + 2 * ps))
        lit = max(lit, abs(base - ps))
    return RBResiduals(out["strict"], out["weak"], sym, lit)


# ---------------------------------------------------------------------------
# nested (Chen) sums
# ---------------------------------------------------------------------------

Envelope = Dict[int, object]   # l -> c >= 0, meaning sum c log^l n for n >= N0


def _unimodal_max(re: Fraction, l: int, N0) -> object:
    """Maximum of ``x^re log^l x`` on ``[N0, oo)`` for ``re < 0``."""
    if l == 0:
        return _mp(N0) ** _mp(re)
    xs = mpmath.exp(mpmath.mpf(l) / -_mp(re))
    x = max(xs, _mp(N0))
    return x ** _mp(re) * mpmath.log(x) ** l


def _env_product(tau_abs: NumSymbol, env: Envelope) -> NumSymbol:
    return tau_abs * NumSymbol({(Fraction(0), Fraction(0), l): c for l, c in env.items()})


def _env_partial_sum(f: NumSymbol, N0) -> Envelope:
    """Bound ``sum_{N0 < m <= n} f(m)`` for a nonnegative majorant ``f`` by an envelope."""
    out: Envelope = {}
    lN = mpmath.log(_mp(N0))
    for (re, _, l), c in f.terms.items():
        if re > -1:
            raise DivergenceError("inner sums grow faster than logarithmically; requires regularised mode")
        extra = c * _unimodal_max(re, l, N0) if _mp(N0) < mpmath.exp(mpmath.mpf(l) / -_mp(re)) else 0
        if re == -1:
            out[l + 1] = out.get(l + 1, 0) + c / (l + 1)
        else:
            out[0] = out.get(0, 0) + tail_integral_abs(NumSymbol({(re, Fraction(0), l): c}), N0)
        out[0] = out.get(0, 0) + extra
    return out


def _env_pointwise(f: NumSymbol, N0) -> Envelope:
    out: Envelope = {}
    for (re, _, l), c in f.terms.items():
        if re > 0:
            raise DivergenceError("pointwise envelope needs nonpositive exponents")
        out[l] = out.get(l, 0) + c * (_unimodal_max(re, 0, N0) if re < 0 else 1)
    return out


def _env_add(a: Envelope, b: Envelope) -> Envelope:
    out = dict(a)
    for l, c in b.items():
        out[l] = out.get(l, 0) + c
    return out


def _chen_sum(taus: Sequence[NumSymbol], k: int, N0: int, strict: bool):
    """``sum_{n_1 >= ... >= n_L >= 1} tau_1(n_1) ... tau_L(n_L)`` (strict: ``>``), with a rigorous error bound."""
    L = len(taus)
    for t in taus[1:]:
        m = t.max_re_exponent()
        if m is not None and m > -1:
            raise DivergenceError("inner factors must have order <= -1; requires regularised mode")
    m = taus[0].max_re_exponent()
    if m is not None and m >= -1:
        raise DivergenceError("outer factor must have order < -1; requires regularised mode")

    g = [taus[-1](n) for n in range(N0 + 1)]   # g[0] unused
    h = taus[-1]
    env: Envelope = {}
    for j in range(L - 1, 0, -1):
        # A_j(n) = sum_{m <= n} g(m) exactly for n <= N0
        A = [mpmath.mpf(0)] * (N0 + 1)
        for n in range(1, N0 + 1):
            A[n] = A[n - 1] + g[n]
        closed = em_closed(h, k)
        S = closed + NumSymbol({(Fraction(0), Fraction(0), 0): A[N0] - closed(N0)})
        e_new: Envelope = {0: em_remainder_bound(h, k, N0)}
        if env:
            e_new = _env_add(e_new, _env_partial_sum(_env_product(taus[j].abs_bound(), env), N0))
        if strict:
            A = [A[n] - g[n] for n in range(N0 + 1)]
            S = S - h
            if env:
                e_new = _env_add(e_new, _env_pointwise(_env_product(taus[j].abs_bound(), env), N0))
        env = e_new
        t = taus[j - 1]
        g = [t(n) * A[n] if n else mpmath.mpf(0) for n in range(N0 + 1)]
        h = t * S
    closed = em_closed(h, k)
    if any(re >= 0 for re, _, _ in closed.terms):
        raise DivergenceError("outer sum diverges; requires regularised mode")
    head = mpmath.fsum(g[1:])
    tail = -closed(N0)
    err = em_remainder_bound(h, k, N0)
    if env:
        f = _env_product(taus[0].abs_bound(), env)
        err += tail_integral_abs(f, N0)
        for (re, _, l), c in f.terms.items():
            if _mp(N0) < mpmath.exp(mpmath.mpf(l) / -_mp(re)):
                err += c * _unimodal_max(re, l, N0)
    return head + tail, err


def discrete_chen_sum(w: TensorWord, k: int = DEFAULT_DEPTH, N0: int = DEFAULT_N0, strict: bool = False) -> SumResult:
    """Cut-off Chen sum ``sum_{|n_1| >= ... >= |n_k|} s_1(n_1) ... s_k(n_k)``.

    Weak nesting by default (``strict=True`` uses ``>``).  A one-letter word
    reduces to :func:`cutoff_sum`.
    """
    if any(s.is_zero() for s in w):
        return SumResult(0.0, 0.0)
    if len(w) == 1 and not strict:
        return cutoff_sum(w[0], k)
    if w.dim != 1 or any(not s.is_z_independent() for s in w):
        raise ValueError("discrete Chen sums take z-independent dimension-1 symbols")
    with mpmath.workdps(WORKDPS):
        taus = [NumSymbol.from_logsymbol(_tau(s), omega=1) for s in w]
        v, e = _chen_sum(taus, k, N0, strict)
        return _finish(v, e + mpmath.mpf(10) ** (-25))


# ---------------------------------------------------------------------------
# multiple zeta values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SumSpec:
    exponents: Tuple[Union[float, complex, Fraction], ...]
    strict: bool = True
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if not self.exponents:
            raise ValueError("at least one exponent is required")
        object.__setattr__(self, "exponents", tuple(self.exponents))


def _re(s) -> float:
    return s.real if isinstance(s, complex) else float(s)


def mzv(spec: SumSpec, N0: int = DEFAULT_N0, k: int = DEFAULT_DEPTH, max_rounds: int = 6) -> SumResult:
    """``zeta(s_1, ..., s_k)`` (strict, ``n_1 > ... > n_k``) or the weak variant.

    The nested sum is evaluated with Euler-MacLaurin tails; ``N0`` and the
    depth are raised until the certified error is below the tolerance.
    """
    s = spec.exponents
    if _re(s[0]) <= 1 or any(_re(x) < 1 for x in s[1:]):
        raise DivergenceError("need Re s_1 > 1 and Re s_i >= 1")
    L = len(s)
    scale = mpmath.mpf(2) ** L
    with mpmath.workdps(WORKDPS):
        taus = [NumSymbol.power(-x, 2) for x in s]
        best = None
        for _ in range(max_rounds):
            if L == 1:
                h = taus[0]
                v = mpmath.fsum(h(n) for n in range(1, N0 + 1)) - em_closed(h, k)(N0)
                e = em_remainder_bound(h, k, N0)
            else:
                v, e = _chen_sum(taus, k, N0, spec.strict)
            e = e + abs(v) * mpmath.mpf(10) ** (-30)
            best = (v / scale, e / scale)
            if best[1] < spec.tolerance:
                return _finish(*best)
            N0 *= 2
            k += 2
        raise ToleranceError(f"could not certify error {spec.tolerance}; best bound {float(best[1]):.3g}")


def mixable_shuffles(k: int, l: int) -> List[Tuple[int, ...]]:
    """Surjections ``{1..k+l} -> {1..m}`` increasing on ``{1..k}`` and on ``{k+1..k+l}``.

    Each map is returned as the tuple of its values.  The count is the
    Delannoy number ``sum_j C(k,j) C(l,j) 2^j``.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be at least 1")
    if k + l > 8:
        raise ValueError("k + l is capped at 8")

    def merge(i: int, j: int, slot: int, acc: Tuple[Tuple[int, int], ...]):
        if i == k and j == l:
            yield acc
            return
        if i < k:
            yield from merge(i + 1, j, slot + 1, acc + ((i, slot),))
        if j < l:
            yield from merge(i, j + 1, slot + 1, acc + ((k + j, slot),))
        if i < k and j < l:
            yield from merge(i + 1, j + 1, slot + 1, acc + ((i, slot), (k + j, slot)))

    out = []
    for assignment in merge(0, 0, 1, ()):
        f = [0] * (k + l)
        for pos, slot in assignment:
            f[pos] = slot
        out.append(tuple(f))
    return sorted(out)


def stuffle_terms(left: Sequence, right: Sequence) -> List[Tuple]:
    """Exponent tuples ``Z_f`` of the mixable shuffles of two exponent tuples."""
    k, l = len(left), len(right)
    seq = list(left) + list(right)
    out = []
    for f in mixable_shuffles(k, l):
        m = max(f)
        z = [0] * m
        for pos, slot in enumerate(f):
            z[slot - 1] = z[slot - 1] + seq[pos]
        out.append(tuple(z))
    return out


@dataclass(frozen=True)
class StuffleReport:
    lhs: float
    rhs: float
    residual: float
    error_bound: float
    terms: int
    weight_plus_residual: float    # zeta(s)zeta(t) - zeta(s,t) - zeta(t,s) - zeta(s+t)
    weight_minus_residual: float   # zeta~(s)zeta~(t) - zeta~(s,t) - zeta~(t,s) + zeta~(s+t)
    tolerance: float

    @property
    def ok(self) -> bool:
        return max(abs(self.residual), abs(self.weight_plus_residual), abs(self.weight_minus_residual)) < self.tolerance


def verify_stuffle(left: Sequence, right: Sequence, tolerance: float = 1e-9) -> StuffleReport:
    """Check ``zeta(left) zeta(right) = sum_f zeta(Z_f)`` plus the depth-one weight +-1 identities."""
    terms = stuffle_terms(left, right)
    n_eval = len(terms) + 2 + 7
    tol = tolerance / (4 * n_eval)
    z = lambda e, strict=True: mzv(SumSpec(tuple(e), strict, tol))
    a, b = z(left), z(right)
    parts = [z(t) for t in terms]
    lhs = a.value * b.value
    rhs = math.fsum(p.value for p in parts) if not any(isinstance(p.value, complex) for p in parts) \
        else sum(p.value for p in parts)
    err = sum(p.error for p in parts) + abs(a.value) * b.error + abs(b.value) * a.error + a.error * b.error
    s, t = left[0], right[0]
    zs, zt, zst, zts, zsum = z((s,)), z((t,)), z((s, t)), z((t, s)), z((s + t,))
    wplus = zs.value * zt.value - zst.value - zts.value - zsum.value
    ws, wt = z((s, t), False), z((t, s), False)
    wminus = zs.value * zt.value - ws.value - wt.value + zsum.value
    return StuffleReport(lhs, rhs, lhs - rhs, err, len(terms), wplus, wminus, tolerance)
