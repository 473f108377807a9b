"""JSON encoding of exact values.

Rationals are strings ``"p/q"``; rational functions are ascending coefficient
arrays ``{"num": [...], "den": [...]}``; Laurent series carry
``pole_bound``/``trunc`` and a degree-keyed coefficient map.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

from .cutoff import AsymptoticExpansion, LogPolynomial
from .scalars import LaurentSeries, MultiLaurent, RationalFunction
from .symbols import Exponent, LogSymbol, TensorWord


class MalformedInput(ValueError):
    """Input JSON does not describe a valid object."""


def rational_to_json(x: Fraction) -> str:
    return str(Fraction(x))


def rational_from_json(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise MalformedInput(f"rational must be a 'p/q' string or an integer, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational {v!r}") from exc


def rf_to_json(rf: RationalFunction) -> Dict[str, List[str]]:
    return {"num": [str(c) for c in rf.num] or ["0"], "den": [str(c) for c in rf.den]}


def rf_from_json(v) -> RationalFunction:
    if isinstance(v, (str, int)) and not isinstance(v, bool):
        return RationalFunction.const(rational_from_json(v))
    if not isinstance(v, dict) or "num" not in v:
        raise MalformedInput(f"rational function must be {{'num': [...], 'den': [...]}}, got {v!r}")
    num = [rational_from_json(c) for c in v["num"]]
    den = [rational_from_json(c) for c in v.get("den", ["1"])]
    try:
        return RationalFunction(num, den)
    except ZeroDivisionError as exc:
        raise MalformedInput("zero denominator") from exc


def laurent_to_json(s: LaurentSeries) -> Dict[str, Any]:
    return {"pole_bound": s.pole_bound, "trunc": s.trunc,
            "coeffs": {str(d): str(c) for d, c in sorted(s.coeffs.items())}}


def laurent_from_json(v) -> LaurentSeries:
    if not isinstance(v, dict) or "coeffs" not in v:
        raise MalformedInput("Laurent series needs a 'coeffs' map")
    try:
        coeffs = {int(d): rational_from_json(c) for d, c in v["coeffs"].items()}
        trunc = int(v.get("trunc", 8))
        pb = int(v.get("pole_bound", 0))
    except (TypeError, ValueError, AttributeError) as exc:
        raise MalformedInput(f"bad Laurent series: {exc}") from exc
    if trunc < 0 or pb < 0:
        raise MalformedInput("trunc and pole_bound must be nonnegative")
    if any(d > trunc for d in coeffs):
        raise MalformedInput("coefficient beyond the truncation order")
    return LaurentSeries(coeffs, pb, trunc)


def multi_to_json(f: MultiLaurent) -> Dict[str, Any]:
    return {"pole_bounds": list(f.pole_bounds), "truncs": list(f.truncs),
            "coeffs": {",".join(map(str, e)): str(c) for e, c in sorted(f.coeffs.items())}}


def multi_from_json(v) -> MultiLaurent:
    try:
        coeffs = {tuple(int(x) for x in k.split(",")): rational_from_json(c) for k, c in v["coeffs"].items()}
        return MultiLaurent(coeffs, tuple(int(p) for p in v["pole_bounds"]), tuple(int(t) for t in v["truncs"]))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"bad multivariate germ: {exc}") from exc


def symbol_to_json(s: LogSymbol) -> Dict[str, Any]:
    return {"dim": s.dim, "omega_power": s.omega_power,
            "terms": [{"a": str(e.a), "b": str(e.b), "logpow": l, "coeff": rf_to_json(c)}
                      for (e, l), c in s.items()]}


def symbol_from_json(v) -> LogSymbol:
    if not isinstance(v, dict) or "terms" not in v:
        raise MalformedInput("symbol needs 'terms'")
    try:
        dim = int(v.get("dim", 1))
        om = int(v.get("omega_power", 0))
        terms = []
        for t in v["terms"]:
            e = Exponent(rational_from_json(t["a"]), rational_from_json(t.get("b", "0")))
            l = int(t.get("logpow", 0))
            terms.append(((e, l), rf_from_json(t.get("coeff", "1"))))
        return LogSymbol(dim, terms, om)
    except MalformedInput:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad symbol: {exc}") from exc


def word_to_json(w: TensorWord) -> List[Dict[str, Any]]:
    return [symbol_to_json(s) for s in w]


def word_from_json(v) -> TensorWord:
    if not isinstance(v, list) or not v:
        raise MalformedInput("a word is a nonempty list of symbols")
    try:
        return TensorWord(tuple(symbol_from_json(s) for s in v))
    except MalformedInput:
        raise
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def expansion_to_json(E: AsymptoticExpansion) -> Dict[str, Any]:
    return {
        "omega_power": E.omega_power,
        "constant": rf_to_json(E.constant),
        "divergent": {f"{e.a}|{e.b}|{p}": rf_to_json(c)
                      for (e, p), c in sorted(E.divergent.items(), key=lambda kv: (kv[0][0], kv[0][1]))},
        "log_divergent": {str(q): rf_to_json(c) for q, c in sorted(E.log_divergent.items())},
    }


def logpoly_to_json(p: LogPolynomial) -> List[Dict[str, Any]]:
    return [{"monomial": dict(m), "coeff": rf_to_json(c)} for m, c in sorted(p.terms.items())]


def logpoly_from_json(v) -> LogPolynomial:
    return LogPolynomial({tuple(sorted(t["monomial"].items())): rf_from_json(t["coeff"]) for t in v})


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
