"""Exact coefficient arithmetic.

Rationals are :class:`fractions.Fraction`.  On top of them this module
provides univariate rational functions in a formal variable ``z``, truncated
Laurent series at ``z = 0`` and truncated multivariate Laurent series.

Truncation convention: a series with truncation order ``K`` knows its
coefficients exactly for every degree ``<= K``; coefficients above ``K`` are
unknown, not zero.  Two series compare equal when their coefficient maps agree
through the smaller of the two truncation orders.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Rational = Fraction
Number = Union[int, Fraction]

DEFAULT_TRUNC = 8


class TruncationError(ValueError):
    """Raised when a result would need coefficients beyond the known range."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


# ---------------------------------------------------------------------------
# dense univariate polynomials, ascending coefficient tuples
# ---------------------------------------------------------------------------

Poly = Tuple[Fraction, ...]


def _trim(c: Sequence[Fraction]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def poly_neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    if len(p) == 1:
        return _trim(p[0] * c for c in q)
    if len(q) == 1:
        return _trim(q[0] * c for c in p)
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_divmod(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(r) - 1 < dq:
        return (), _trim(r)
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k] / lead
        quot[k - dq] = c
        if c:
            for j in range(dq + 1):
                r[k - dq + j] -= c * q[j]
    return _trim(quot), _trim(r[:dq])


def poly_monic(p: Poly) -> Poly:
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    # monic remainders keep the coefficient sizes in check
    p, q = poly_monic(p), poly_monic(q)
    while q:
        p, q = q, poly_monic(poly_divmod(p, q)[1])
    return p


def poly_eval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p: Poly) -> Poly:
    return _trim(i * c for i, c in enumerate(p) if i)


def poly_valuation(p: Poly) -> int:
    for i, c in enumerate(p):
        if c:
            return i
    raise ValueError("zero polynomial has no valuation")


ONE_POLY: Poly = (Fraction(1),)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Reduced quotient ``num(z)/den(z)`` with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Iterable = (), den: Iterable = ONE_POLY, *, _reduced: bool = False):
        num = _trim(as_fraction(c) for c in num)
        den = _trim(as_fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = ONE_POLY
        elif not _reduced and len(den) > 1:
            g = poly_gcd(num, den)
            if len(g) > 1:
                num = poly_divmod(num, g)[0]
                den = poly_divmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        self.num: Poly = num
        self.den: Poly = den
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "RationalFunction":
        return cls((as_fraction(c),), _reduced=True)

    @classmethod
    def z(cls) -> "RationalFunction":
        return cls((0, 1), _reduced=True)

    @classmethod
    def linear(cls, a: Number, b: Number) -> "RationalFunction":
        """The polynomial ``a + b z``."""
        return cls((a, b), _reduced=True)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else Fraction(0)

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return RationalFunction.const(x)

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if len(self.den) == 1:
                return RationalFunction(poly_add(self.num, other.num), self.den, _reduced=True)
            return RationalFunction(poly_add(self.num, other.num), self.den)
        if len(self.den) == 1 or len(other.den) == 1:
            # one side polynomial: the sum is already reduced
            num = poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den))
            return RationalFunction(num, poly_mul(self.den, other.den), _reduced=True)
        # Henrici: only the common factor of the denominators can cancel
        g = poly_gcd(self.den, other.den)
        a = poly_divmod(self.den, g)[0] if len(g) > 1 else self.den
        b = poly_divmod(other.den, g)[0] if len(g) > 1 else other.den
        num = poly_add(poly_mul(self.num, b), poly_mul(other.num, a))
        den = poly_mul(poly_mul(a, b), g)
        if len(g) == 1 or not num:
            return RationalFunction(num, den, _reduced=True)
        h = poly_gcd(num, g)
        if len(h) > 1:
            num, den = poly_divmod(num, h)[0], poly_divmod(den, h)[0]
        return RationalFunction(num, den, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(poly_neg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        if not self.num or not other.num:
            return ZERO_RF
        if len(self.den) == 1 and len(other.den) == 1:
            return RationalFunction(poly_mul(self.num, other.num), ONE_POLY, _reduced=True)
        # cross-cancel reduced operands
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g1 = poly_gcd(n1, d2) if len(d2) > 1 and len(n1) > 1 else ONE_POLY
        g2 = poly_gcd(n2, d1) if len(d1) > 1 and len(n2) > 1 else ONE_POLY
        if len(g1) > 1:
            n1, d2 = poly_divmod(n1, g1)[0], poly_divmod(d2, g1)[0]
        if len(g2) > 1:
            n2, d1 = poly_divmod(n2, g2)[0], poly_divmod(d1, g2)[0]
        return RationalFunction(poly_mul(n1, n2), poly_mul(d1, d2), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE_RF
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self) -> "RationalFunction":
        if len(self.den) == 1:
            return RationalFunction(poly_deriv(self.num), ONE_POLY, _reduced=True)
        num = poly_add(poly_mul(poly_deriv(self.num), self.den),
                       poly_neg(poly_mul(self.num, poly_deriv(self.den))))
        return RationalFunction(num, poly_mul(self.den, self.den))

    def __call__(self, x):
        d = poly_eval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at z={x}")
        return poly_eval(self.num, x) / d

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RationalFunction({_poly_str(self.num)} / {_poly_str(self.den)})"

    def __str__(self):
        if len(self.den) == 1:
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*z")
        else:
            parts.append(f"{c}*z^{i}")
    return " + ".join(parts)


ZERO_RF = RationalFunction()
ONE_RF = RationalFunction.const(1)


# ---------------------------------------------------------------------------
# univariate truncated Laurent series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentSeries:
    """Laurent series at 0 known through degree ``trunc``.

    ``coeffs`` never stores zeros.  ``pole_bound`` is the declared bound ``p``
    on the pole order; every stored degree is ``>= -p``.
    """

    coeffs: Mapping[int, Fraction]
    pole_bound: int = 0
    trunc: int = DEFAULT_TRUNC
    var: str = "z"

    def __post_init__(self):
        clean = {int(d): as_fraction(c) for d, c in self.coeffs.items() if c != 0 and d <= self.trunc}
        object.__setattr__(self, "coeffs", clean)
        low = min(clean, default=0)
        if low < -self.pole_bound:
            object.__setattr__(self, "pole_bound", -low)
        if self.pole_bound < 0:
            raise ValueError("pole_bound must be nonnegative")

    @classmethod
    def zero(cls, trunc: int = DEFAULT_TRUNC) -> "LaurentSeries":
        return cls({}, 0, trunc)

    @classmethod
    def from_list(cls, low: int, values: Sequence[Number], trunc: int | None = None) -> "LaurentSeries":
        coeffs = {low + i: as_fraction(v) for i, v in enumerate(values)}
        if trunc is None:
            trunc = low + len(values) - 1
        return cls(coeffs, max(0, -low), trunc)

    def __getitem__(self, d: int) -> Fraction:
        if d > self.trunc:
            raise TruncationError(f"degree {d} beyond truncation order {self.trunc}")
        return self.coeffs.get(d, Fraction(0))

    def valuation(self) -> int:
        """Lowest degree with nonzero coefficient; ``trunc + 1`` for the zero series."""
        return min(self.coeffs, default=self.trunc + 1)

    def pole_order(self) -> int:
        return max(0, -self.valuation())

    def is_zero(self) -> bool:
        return not self.coeffs

    def _binary_trunc(self, other: "LaurentSeries") -> int:
        return min(self.trunc + other.valuation(), other.trunc + self.valuation())

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries({0: other}, 0, self.trunc)
        k = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return LaurentSeries({d: c for d, c in out.items() if d <= k}, max(self.pole_bound, other.pole_bound), k)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries({d: -c for d, c in self.coeffs.items()}, self.pole_bound, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Number) -> "LaurentSeries":
        c = as_fraction(c)
        return LaurentSeries({d: c * v for d, v in self.coeffs.items()}, self.pole_bound, self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        k = self._binary_trunc(other)
        out: Dict[int, Fraction] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                if d <= k:
                    out[d] = out.get(d, 0) + c1 * c2
        return LaurentSeries(out, self.pole_bound + other.pole_bound, k)

    __rmul__ = __mul__

    def shift(self, m: int) -> "LaurentSeries":
        """Multiply by ``z**m``."""
        return LaurentSeries({d + m: c for d, c in self.coeffs.items()},
                             max(0, self.pole_bound - m), self.trunc + m)

    def truncate(self, k: int) -> "LaurentSeries":
        if k > self.trunc:
            raise TruncationError(f"cannot raise truncation order {self.trunc} to {k}")
        return LaurentSeries(self.coeffs, self.pole_bound, k)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        k = min(self.trunc, other.trunc)
        a = {d: c for d, c in self.coeffs.items() if d <= k}
        b = {d: c for d, c in other.coeffs.items() if d <= k}
        return a == b

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        body = ", ".join(f"{d}: {c}" for d, c in sorted(self.coeffs.items()))
        return f"LaurentSeries({{{body}}}, p={self.pole_bound}, K={self.trunc})"


def laurent_of_rational(rf: RationalFunction, K: int = DEFAULT_TRUNC) -> LaurentSeries:
    """Laurent expansion of ``rf`` at ``z = 0`` through degree ``K``."""
    if rf.is_zero():
        return LaurentSeries.zero(K)
    vn = poly_valuation(rf.num)
    vd = poly_valuation(rf.den)
    num = rf.num[vn:]
    den = rf.den[vd:]
    shift = vn - vd
    n_terms = K - shift + 1
    coeffs: Dict[int, Fraction] = {}
    if n_terms > 0:
        # power series of num/den with den(0) != 0
        inv0 = 1 / den[0]
        q = []
        for i in range(n_terms):
            acc = num[i] if i < len(num) else Fraction(0)
            for j in range(1, min(i, len(den) - 1) + 1):
                acc -= den[j] * q[i - j]
            q.append(acc * inv0)
        coeffs = {i + shift: c for i, c in enumerate(q) if c}
    return LaurentSeries(coeffs, max(0, -shift), K)


def pole_part(s: LaurentSeries) -> LaurentSeries:
    return LaurentSeries({d: c for d, c in s.coeffs.items() if d < 0}, s.pole_bound, s.trunc)


def regular_part(s: LaurentSeries) -> LaurentSeries:
    return LaurentSeries({d: c for d, c in s.coeffs.items() if d >= 0}, 0, s.trunc)


def finite_part(s: LaurentSeries) -> Fraction:
    return s[0]


def residue_at_order(s: LaurentSeries, j: int) -> Fraction:
    if j < 1:
        raise ValueError("residue order must be positive")
    return s.coeffs.get(-j, Fraction(0))


# ---------------------------------------------------------------------------
# multivariate truncated Laurent series
# ---------------------------------------------------------------------------

Label = frozenset


@dataclass(frozen=True)
class MultiLaurent:
    """Laurent series in ``k`` variables, known on a box of exponents.

    Variable ``j`` has a pole bound ``pole_bounds[j]`` and a truncation order
    ``truncs[j]``: the coefficient of ``z^I`` is known for every ``I`` with
    ``I[j] <= truncs[j]`` for all ``j``.  ``labels[j]`` records which original
    variables were identified into variable ``j`` (see :func:`multi_restrict`).
    """

    coeffs: Mapping[Tuple[int, ...], Fraction]
    pole_bounds: Tuple[int, ...]
    truncs: Tuple[int, ...]
    labels: Tuple[frozenset, ...] = ()

    def __post_init__(self):
        k = len(self.pole_bounds)
        if len(self.truncs) != k:
            raise ValueError("pole_bounds and truncs must have equal length")
        labels = self.labels or tuple(frozenset({j}) for j in range(k))
        object.__setattr__(self, "labels", tuple(frozenset(l) for l in labels))
        clean = {}
        for e, c in self.coeffs.items():
            e = tuple(int(x) for x in e)
            if len(e) != k:
                raise ValueError(f"exponent {e} has wrong length for {k} variables")
            c = as_fraction(c)
            if c == 0 or any(x > t for x, t in zip(e, self.truncs)):
                continue
            if any(x < -p for x, p in zip(e, self.pole_bounds)):
                raise TruncationError(f"exponent {e} exceeds pole bounds {self.pole_bounds}")
            clean[e] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def _trusted(cls, coeffs, pole_bounds, truncs, labels) -> "MultiLaurent":
        """Build from already-validated data; only zeros and out-of-box terms are dropped."""
        obj = object.__new__(cls)
        clean = {e: c for e, c in coeffs.items() if c and all(x <= t for x, t in zip(e, truncs))}
        object.__setattr__(obj, "coeffs", clean)
        object.__setattr__(obj, "pole_bounds", tuple(pole_bounds))
        object.__setattr__(obj, "truncs", tuple(truncs))
        object.__setattr__(obj, "labels", tuple(labels))
        return obj

    @property
    def nvars(self) -> int:
        return len(self.pole_bounds)

    @classmethod
    def tensor(cls, factors: Sequence[LaurentSeries]) -> "MultiLaurent":
        """The germ ``f1(z1) f2(z2) ... fk(zk)``."""
        coeffs: Dict[Tuple[int, ...], Fraction] = {}
        items = [sorted(f.coeffs.items()) for f in factors]
        for combo in product(*items):
            c = Fraction(1)
            for _, v in combo:
                c *= v
            coeffs[tuple(d for d, _ in combo)] = c
        return cls(coeffs, tuple(f.pole_order() for f in factors), tuple(f.trunc for f in factors))

    def __add__(self, other: "MultiLaurent") -> "MultiLaurent":
        if self.labels != other.labels:
            raise ValueError("cannot add germs in different variables")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        pb = tuple(max(a, b) for a, b in zip(self.pole_bounds, other.pole_bounds))
        tr = tuple(min(a, b) for a, b in zip(self.truncs, other.truncs))
        return MultiLaurent._trusted(out, pb, tr, self.labels)

    def __neg__(self):
        return MultiLaurent._trusted({e: -c for e, c in self.coeffs.items()}, self.pole_bounds, self.truncs,
                                     self.labels)

    def to_laurent(self) -> LaurentSeries:
        if self.nvars != 1:
            raise ValueError("only a univariate germ converts to a LaurentSeries")
        return LaurentSeries({e[0]: c for e, c in self.coeffs.items()}, self.pole_bounds[0], self.truncs[0])

    def permute(self, order: Sequence[int]) -> "MultiLaurent":
        """Reorder variables so that new variable ``i`` is old variable ``order[i]``."""
        return MultiLaurent({tuple(e[j] for j in order): c for e, c in self.coeffs.items()},
                            tuple(self.pole_bounds[j] for j in order),
                            tuple(self.truncs[j] for j in order),
                            tuple(self.labels[j] for j in order))

    def __eq__(self, other):
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        if self.labels != other.labels:
            return False
        tr = tuple(min(a, b) for a, b in zip(self.truncs, other.truncs))

        def cut(m):
            return {e: c for e, c in m.coeffs.items() if all(x <= t for x, t in zip(e, tr))}
        return cut(self) == cut(other)

    def __hash__(self):
        return hash((self.labels, tuple(sorted(self.coeffs.items()))))


def multi_restrict(f: MultiLaurent, J: Iterable[int]) -> MultiLaurent:
    """Identify the variables at positions ``J`` into one variable.

    The merged variable comes first, the untouched variables follow in their
    original order.  Exponents of merged variables add up.
    """
    J = sorted(set(J))
    if not J:
        raise ValueError("J must be nonempty")
    if J[0] < 0 or J[-1] >= f.nvars:
        raise IndexError(f"variable index out of range in {J}")
    rest = [j for j in range(f.nvars) if j not in J]
    p = [f.pole_bounds[j] for j in J]
    total_p = sum(p)
    trunc_new = min(f.truncs[j] - (total_p - f.pole_bounds[j]) for j in J)
    out: Dict[Tuple[int, ...], Fraction] = {}
    for e, c in f.coeffs.items():
        d = sum(e[j] for j in J)
        if d > trunc_new:
            continue
        key = (d,) + tuple(e[j] for j in rest)
        out[key] = out.get(key, 0) + c
    label = frozenset().union(*(f.labels[j] for j in J))
    return MultiLaurent._trusted(out,
                        (total_p,) + tuple(f.pole_bounds[j] for j in rest),
                        (trunc_new,) + tuple(f.truncs[j] for j in rest),
                        (label,) + tuple(f.labels[j] for j in rest))


def multi_pole_part(f: MultiLaurent, var: int = 0) -> MultiLaurent:
    """Projection onto strictly negative degrees in one variable."""
    return MultiLaurent._trusted({e: c for e, c in f.coeffs.items() if e[var] < 0}, f.pole_bounds, f.truncs, f.labels)


def multi_constant_term(f: MultiLaurent) -> Fraction:
    if any(t < 0 for t in f.truncs):
        raise TruncationError("constant term lies beyond the truncation order")
    return f.coeffs.get((0,) * f.nvars, Fraction(0))


def binomial(n: int, k: int) -> int:
    return comb(n, k)
