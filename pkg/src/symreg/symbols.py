"""Radial log-polyhomogeneous model symbols.

A :class:`LogSymbol` in dimension ``n`` is the function

    xi -> sum c(z) |xi|^(a + b z) log^l |xi|      for |xi| >= 1,

extended by zero on the open unit ball.  Coefficients are rational functions
of the regularisation parameter ``z``.  The angular volume ``Omega_n`` of the
unit sphere is never evaluated; each symbol records the power of ``Omega_n``
its coefficients implicitly carry.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .scalars import ONE_RF, ZERO_RF, RationalFunction, as_fraction

Key = Tuple["Exponent", int]


@dataclass(frozen=True, order=True)
class Exponent:
    """Affine exponent ``a + b z``."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    def __add__(self, other: "Exponent") -> "Exponent":
        return Exponent(self.a + other.a, self.b + other.b)

    def shift(self, da) -> "Exponent":
        return Exponent(self.a + da, self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def as_rf(self) -> RationalFunction:
        return RationalFunction.linear(self.a, self.b)

    def at(self, z0) -> Fraction:
        return self.a + self.b * z0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}z"


ZERO_EXP = Exponent(Fraction(0), Fraction(0))


class LogSymbol:
    """Finite sum of radial terms ``c(z) |xi|^(a+bz) log^l|xi|`` on ``|xi| >= 1``."""

    __slots__ = ("dim", "terms", "omega_power", "_hash")

    def __init__(self, dim: int, terms: Mapping[Key, object] | Iterable[Tuple[Key, object]] = (),
                 omega_power: int = 0):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if omega_power < 0:
            raise ValueError("omega_power must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Key, RationalFunction] = {}
        for (e, l), c in items:
            if l < 0:
                raise ValueError("log power must be nonnegative")
            c = RationalFunction.coerce(c)
            key = (e, int(l))
            if key in clean:
                c = clean[key] + c
            if c.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = c
        self.dim = dim
        self.terms: Dict[Key, RationalFunction] = clean
        self.omega_power = omega_power
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, dim: int = 1, omega_power: int = 0) -> "LogSymbol":
        return cls(dim, {}, omega_power)

    @classmethod
    def one(cls, dim: int = 1) -> "LogSymbol":
        return cls(dim, {(ZERO_EXP, 0): ONE_RF})

    @classmethod
    def monomial(cls, a, b=0, logpow: int = 0, coeff=1, dim: int = 1, omega_power: int = 0) -> "LogSymbol":
        return cls(dim, {(Exponent(a, b), logpow): coeff}, omega_power)

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[Tuple[Key, RationalFunction]]:
        """Terms in a canonical order: by exponent, then log power."""
        return iter(sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1])))

    def max_logpow(self) -> int:
        return max((l for _, l in self.terms), default=0)

    def is_z_independent(self) -> bool:
        return all(e.b == 0 and c.is_constant() for (e, _), c in self.terms.items())

    def slopes(self) -> FrozenSet[Fraction]:
        return frozenset(e.b for e, _ in self.terms)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "LogSymbol") -> "LogSymbol":
        return sym_add(self, other)

    def __neg__(self) -> "LogSymbol":
        return LogSymbol(self.dim, {k: -c for k, c in self.terms.items()}, self.omega_power)

    def __sub__(self, other: "LogSymbol") -> "LogSymbol":
        return sym_add(self, -other)

    def __mul__(self, other) -> "LogSymbol":
        if isinstance(other, LogSymbol):
            return sym_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "LogSymbol":
        return self.scale(other)

    def scale(self, c) -> "LogSymbol":
        c = RationalFunction.coerce(c)
        return LogSymbol(self.dim, {k: c * v for k, v in self.terms.items()}, self.omega_power)

    def with_omega_power(self, p: int) -> "LogSymbol":
        return LogSymbol(self.dim, self.terms, p)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LogSymbol):
            return NotImplemented
        if self.dim != other.dim or self.terms != other.terms:
            return False
        return self.omega_power == other.omega_power or not self.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.terms.items()),
                               self.omega_power if self.terms else 0))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return f"LogSymbol(0, n={self.dim})"
        parts = []
        for (e, l), c in self.items():
            s = f"({c})|x|^({e})"
            if l:
                s += f"log^{l}" if l > 1 else "log"
            parts.append(s)
        om = f" * Omega^{self.omega_power}" if self.omega_power else ""
        return f"LogSymbol[{' + '.join(parts)}{om}, n={self.dim}]"


@dataclass(frozen=True)
class TensorWord:
    """Pure tensor ``s1 (x) s2 (x) ... (x) sk`` of symbols in a common dimension."""

    factors: Tuple[LogSymbol, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValueError("a tensor word needs at least one factor")
        if len({f.dim for f in factors}) != 1:
            raise ValueError("all factors of a tensor word must share the dimension")
        object.__setattr__(self, "factors", factors)

    @property
    def dim(self) -> int:
        return self.factors[0].dim

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def permuted(self, perm: Sequence[int]) -> "TensorWord":
        return TensorWord(tuple(self.factors[i] for i in perm))


class OrderSet(frozenset):
    """Several incomparable exponents sharing the same constant part."""


def _check_dim(s: LogSymbol, t: LogSymbol):
    if s.dim != t.dim:
        raise ValueError(f"dimension mismatch: {s.dim} vs {t.dim}")


def sym_add(s: LogSymbol, t: LogSymbol) -> LogSymbol:
    _check_dim(s, t)
    if t.is_zero():
        return s
    if s.is_zero():
        return t
    if s.omega_power != t.omega_power:
        raise ValueError(f"omega_power mismatch: {s.omega_power} vs {t.omega_power}")
    terms = dict(s.terms)
    for k, c in t.terms.items():
        terms[k] = terms[k] + c if k in terms else c
    return LogSymbol(s.dim, terms, s.omega_power)


def sym_sum(symbols: Iterable[LogSymbol], dim: int = 1) -> LogSymbol:
    acc = None
    for s in symbols:
        acc = s if acc is None else sym_add(acc, s)
    return acc if acc is not None else LogSymbol.zero(dim)


def sym_mul(s: LogSymbol, t: LogSymbol) -> LogSymbol:
    _check_dim(s, t)
    terms: Dict[Key, RationalFunction] = {}
    for (e1, l1), c1 in s.terms.items():
        for (e2, l2), c2 in t.terms.items():
            k = (e1 + e2, l1 + l2)
            c = c1 * c2
            terms[k] = terms[k] + c if k in terms else c
    return LogSymbol(s.dim, terms, s.omega_power + t.omega_power)


def order(s: LogSymbol) -> Union[Exponent, OrderSet]:
    """Leading exponent.  Ties in the constant part with different slopes give an :class:`OrderSet`."""
    if s.is_zero():
        raise ValueError("the zero symbol has no order")
    top = max(e.a for e, _ in s.terms)
    tied = {e for e, _ in s.terms if e.a == top}
    if len(tied) == 1:
        return tied.pop()
    return OrderSet(tied)


def wodzicki_residue(s: LogSymbol, l: int = 0) -> RationalFunction:
    """Coefficient of ``|xi|^(-n) log^l|xi|`` (z-free exponent).

    The value is measured in units of ``Omega_n ** (s.omega_power + 1)``.
    """
    return s.terms.get((Exponent(-s.dim, 0), l), ZERO_RF)


def d_radial(s: LogSymbol) -> LogSymbol:
    """Derivative in ``r = |xi|`` on ``r >= 1`` (dimension one only)."""
    if s.dim != 1:
        raise ValueError("radial derivative is defined for dimension 1 only")
    out = []
    for (e, l), c in s.terms.items():
        e1 = e.shift(-1)
        if not e.is_zero():
            out.append(((e1, l), c * e.as_rf()))
        if l:
            out.append(((e1, l - 1), c * l))
    return LogSymbol(1, out, s.omega_power)


def d_radial_n(s: LogSymbol, m: int) -> LogSymbol:
    for _ in range(m):
        s = d_radial(s)
    return s


def d_param(s: LogSymbol) -> LogSymbol:
    """Derivative in the regularisation parameter ``z``."""
    out = []
    for (e, l), c in s.terms.items():
        dc = c.derivative()
        if not dc.is_zero():
            out.append(((e, l), dc))
        if e.b:
            out.append(((e, l + 1), c * e.b))
    return LogSymbol(s.dim, out, s.omega_power)


def d_param_n(s: LogSymbol, m: int) -> LogSymbol:
    for _ in range(m):
        s = d_param(s)
    return s


def specialize(s: LogSymbol, z0) -> LogSymbol:
    """Substitute a rational value for ``z``; the result is z-independent."""
    z0 = as_fraction(z0)
    out = []
    for (e, l), c in s.terms.items():
        out.append(((Exponent(e.at(z0), 0), l), RationalFunction.const(c(z0))))
    return LogSymbol(s.dim, out, s.omega_power)


def log_slice(s: LogSymbol, l: int) -> LogSymbol:
    """The log-free symbol multiplying ``log^l|xi|`` in ``s``."""
    return LogSymbol(s.dim, {(e, 0): c for (e, k), c in s.terms.items() if k == l}, s.omega_power)


def substitute_omega(s: LogSymbol, value) -> LogSymbol:
    """Absorb ``Omega_n ** omega_power`` into the coefficients using an exact value."""
    factor = as_fraction(value) ** s.omega_power
    return LogSymbol(s.dim, {k: c * factor for k, c in s.terms.items()}, 0)


def evaluate(s: LogSymbol, r: float, z=0.0, omega_value: float = 1.0):
    """Numeric value at radius ``r``; real for real ``z``, complex otherwise."""
    if r < 1:
        return 0.0
    lr = math.log(r)
    cplx = isinstance(z, complex)
    total = 0j if cplx else 0.0
    for (e, l), c in s.terms.items():
        cz = c(z) if not c.is_constant() else c.constant_value()
        ex = e.a + e.b * z if e.b else e.a
        if cplx:
            total += complex(cz) * cmath.exp(complex(ex) * lr) * lr ** l
        else:
            total += float(cz) * math.exp(float(ex) * lr) * lr ** l
    return total * omega_value ** s.omega_power
