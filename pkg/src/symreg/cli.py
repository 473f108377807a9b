"""Command-line front end: ``symreg <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 precondition violation, 4 tolerance not met.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import io as sio
from .acceptance import CRITERIA, run_criterion
from .chen import nested_chen, verify_integral_shuffle, verify_symbol_shuffle
from .cutoff import ball_expansion, cutoff_integral, rescaled_finite_part
from .discrete import SumSpec, ToleranceError, cutoff_sum, cutoff_sum_family, mzv, verify_stuffle
from .meromorphic import germ_of_integral, kv_coefficients, riesz_family
from .renorm import birkhoff, naive_finite_part, obstruction, renormalise
from .scalars import LaurentSeries, RationalFunction, TruncationError
from .symbols import LogSymbol, TensorWord

EXIT_FAIL, EXIT_MALFORMED, EXIT_PRECONDITION, EXIT_TOLERANCE = 1, 2, 3, 4


class VerificationFailed(Exception):
    pass


def _value(rf: RationalFunction):
    return str(rf.constant_value()) if rf.is_constant() else sio.rf_to_json(rf)


def _digest(args: argparse.Namespace, files: Sequence[str]) -> str:
    h = hashlib.sha256()
    for k, v in sorted(vars(args).items()):
        if k not in ("func", "out", "csv", "json"):
            h.update(f"{k}={v};".encode())
    for f in files:
        if f:
            with open(f, "rb") as fh:
                h.update(fh.read())
    return h.hexdigest()[:16]


def _with_dim(v, dim: Optional[int]):
    if dim is None:
        return v
    if isinstance(v, list):
        return [_with_dim(x, dim) for x in v]
    if isinstance(v, dict) and "terms" in v and "dim" not in v:
        return {**v, "dim": dim}
    return v


def _load_symbol(path: str, dim=None) -> LogSymbol:
    return sio.symbol_from_json(_with_dim(sio.load_json(path), dim))


def _load_word(path: str, dim=None) -> TensorWord:
    return sio.word_from_json(_with_dim(sio.load_json(path), dim))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_cutoff(a) -> Dict[str, Any]:
    s = _load_symbol(a.symbol, a.dim)
    out: Dict[str, Any] = {"value": _value(cutoff_integral(s)), "omega_power": s.omega_power + 1}
    if a.mu is not None:
        mu = sio.rational_from_json(a.mu)
        if mu <= 0:
            raise ValueError("mu must be positive")
        out["rescaled_finite_part"] = sio.logpoly_to_json(rescaled_finite_part(s, mu))
    if a.expansion:
        out["expansion"] = sio.expansion_to_json(ball_expansion(s))
    return out


def cmd_chen(a) -> Dict[str, Any]:
    w = _load_word(a.word, a.dim)
    rep = verify_integral_shuffle(w)
    out: Dict[str, Any] = {
        "nested_chen": sio.symbol_to_json(nested_chen(w)),
        "chen_integral": _value(rep.shuffle_sum),
        "product": _value(rep.product),
        "equal": rep.equal,
        "partial_sums_nonintegral": rep.partial_sums_nonintegral,
        "resonance_free": rep.resonance_free,
        "omega_power": rep.omega_power,
    }
    if a.verify_shuffle:
        sr = verify_symbol_shuffle(w)
        out["symbol_shuffle_equal"] = sr.equal
        out["symbol_shuffle_terms"] = sr.terms
        if not sr.equal:
            raise VerificationFailed(out)
    return out


def _family(a) -> LogSymbol:
    s = _load_symbol(a.family, a.dim)
    if a.riesz is not None:
        s = riesz_family(s, sio.rational_from_json(a.riesz))
    return s


def cmd_laurent(a) -> Dict[str, Any]:
    s = _family(a)
    g = germ_of_integral(s, a.trunc)
    out: Dict[str, Any] = {"germ": sio.laurent_to_json(g.series), "pole_order": g.pole_order,
                           "omega_power": g.omega_power}
    if a.kv_check:
        kv = kv_coefficients(s, K=max(a.trunc, 0))
        rows = [{"coefficient": f"z^{-j}", "kv": str(v), "laurent": str(g.series[-j]), "equal": v == g.series[-j]}
                for j, v in sorted(kv.residues.items())]
        rows.append({"coefficient": "z^0", "kv": str(kv.finite_part), "laurent": str(g.series[0]),
                     "equal": kv.finite_part == g.series[0]})
        rows += [{"coefficient": f"z^{j}", "kv": str(v), "laurent": str(g.series[j]), "equal": v == g.series[j]}
                 for j, v in sorted(kv.taylor.items())]
        out["kv_check"] = rows
        if not all(r["equal"] for r in rows):
            raise VerificationFailed(out)
    return out


def _germs(a):
    raw = sio.load_json(a.word)
    if not isinstance(raw, list) or not raw:
        raise sio.MalformedInput("renorm expects a nonempty list")
    if all(isinstance(x, dict) and "coeffs" in x for x in raw):
        return [sio.laurent_from_json(x) for x in raw], None, 0
    w = sio.word_from_json(_with_dim(raw, a.dim))
    q = sio.rational_from_json(a.riesz) if a.riesz is not None else Fraction(1)
    w = TensorWord(tuple(riesz_family(s, q) if s.is_z_independent() else s for s in w))
    gs = [germ_of_integral(s, a.trunc) for s in w]
    return [g.series for g in gs], w, sum(g.omega_power for g in gs)


def cmd_renorm(a) -> Dict[str, Any]:
    gs, w, om = _germs(a)
    R = renormalise(gs)
    out: Dict[str, Any] = {
        "renormalised_value": str(R[0]),
        "naive_fp": str(naive_finite_part(gs)),
        "pole_check": all(d >= 0 for d in R.coeffs),
        "omega_power": om,
        "factor_finite_parts": [str(g[0]) for g in gs],
    }
    out["obstruction"] = str(obstruction(gs))
    if a.birkhoff:
        b = birkhoff(w, a.trunc) if w is not None else birkhoff(gs)
        out["birkhoff"] = {"phi_minus": sio.laurent_to_json(b.phi_minus),
                           "phi_plus": sio.laurent_to_json(b.phi_plus),
                           "phi_plus_at_0": str(b.phi_plus[0])}
    return out


def cmd_cutoff_sum(a) -> Dict[str, Any]:
    s = _load_symbol(a.symbol, a.dim)
    if a.z is not None:
        z = complex(a.z.replace("i", "j")) if ("j" in a.z or "i" in a.z) else Fraction(a.z)
        q = sio.rational_from_json(a.riesz) if a.riesz is not None else Fraction(1)
        r = cutoff_sum_family(s, q, z, a.depth)
    else:
        r = cutoff_sum(s, a.depth)
    val = r.value
    out = {"value": repr(val) if not isinstance(val, complex) else {"re": repr(val.real), "im": repr(val.imag)},
           "error_bound": repr(r.error), "depth": a.depth}
    if a.tol is not None and r.error >= a.tol:
        raise ToleranceError(f"error bound {r.error:.3g} exceeds tolerance {a.tol}")
    return out


def _exponents(text: str) -> tuple:
    out = []
    for t in text.split(","):
        t = t.strip()
        if not t:
            raise sio.MalformedInput(f"bad exponent list {text!r}")
        try:
            out.append(Fraction(t))
        except ValueError:
            try:
                out.append(complex(t.replace("i", "j")))
            except ValueError as exc:
                raise sio.MalformedInput(f"bad exponent {t!r}") from exc
    return tuple(out)


def cmd_mzv(a) -> Dict[str, Any]:
    ex = _exponents(a.exponents)
    r = mzv(SumSpec(ex, not a.weak, a.tol))
    val = r.value
    return {"exponents": [str(x) for x in ex], "convention": "weak" if a.weak else "strict",
            "value": repr(val) if not isinstance(val, complex) else {"re": repr(val.real), "im": repr(val.imag)},
            "error_bound": repr(r.error), "tolerance": a.tol}


def cmd_stuffle(a) -> Dict[str, Any]:
    rep = verify_stuffle(_exponents(a.left), _exponents(a.right), a.tol)
    out = {"lhs": repr(rep.lhs), "rhs": repr(rep.rhs), "residual": repr(rep.residual),
           "error_bound": repr(rep.error_bound), "terms": rep.terms,
           "weight_plus_residual": repr(rep.weight_plus_residual),
           "weight_minus_residual": repr(rep.weight_minus_residual), "passed": rep.ok}
    if not rep.ok:
        raise ToleranceError(json.dumps(out))
    return out


def cmd_verify_all(a) -> Dict[str, Any]:
    nums = [n for n, _, _ in CRITERIA]
    if a.jobs and a.jobs > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as ex:
            results = list(ex.map(run_criterion, nums))
    else:
        results = [run_criterion(n) for n in nums]
    rows = []
    for r in results:
        row = {"criterion": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
        if a.timing:
            row["seconds"] = round(r.seconds, 3)
        rows.append(row)
    out = {"criteria": rows, "passed": all(r.passed for r in results)}
    if not out["passed"]:
        raise VerificationFailed(out)
    return out


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symreg", description="Regularised integrals, sums and shuffle relations of radial symbols.")
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="flat key,value CSV output")
    common.add_argument("--out", help="write the report to FILE instead of stdout")
    common.add_argument("--dim", type=int, help="dimension for symbols that omit 'dim'")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cutoff", parents=[common], help="cut-off integral of a symbol")
    c.add_argument("--symbol", required=True)
    c.add_argument("--mu", help="rescaling factor p/q")
    c.add_argument("--expansion", action="store_true", help="include the large-R expansion")
    c.set_defaults(func=cmd_cutoff, files=("symbol",))

    c = sub.add_parser("chen", parents=[common], help="nested Chen integral and shuffle checks")
    c.add_argument("--word", required=True)
    c.add_argument("--verify-shuffle", action="store_true")
    c.set_defaults(func=cmd_chen, files=("word",))

    c = sub.add_parser("laurent", parents=[common], help="Laurent germ of a regularised integral")
    c.add_argument("--family", required=True)
    c.add_argument("--trunc", type=int, default=8)
    c.add_argument("--riesz", help="apply Riesz regularisation with slope q")
    c.add_argument("--kv-check", action="store_true")
    c.set_defaults(func=cmd_laurent, files=("family",))

    c = sub.add_parser("renorm", parents=[common], help="renormalised value, Birkhoff factors, obstruction")
    c.add_argument("--word", required=True, help="list of symbols or of Laurent series")
    c.add_argument("--trunc", type=int, default=8)
    c.add_argument("--riesz", help="Riesz slope for z-independent symbols (default 1)")
    c.add_argument("--birkhoff", action="store_true")
    c.add_argument("--obstruction", action="store_true", help="accepted for symmetry; the obstruction is always reported")
    c.set_defaults(func=cmd_renorm, files=("word",))

    c = sub.add_parser("cutoff-sum", parents=[common], help="cut-off sum of a dimension-1 symbol")
    c.add_argument("--symbol", required=True)
    c.add_argument("--depth", type=int, default=5)
    c.add_argument("--riesz", help="Riesz slope q for the family s|xi|^(-qz)")
    c.add_argument("--z", help="evaluate the meromorphic family at z")
    c.add_argument("--tol", type=float)
    c.set_defaults(func=cmd_cutoff_sum, files=("symbol",))

    c = sub.add_parser("mzv", parents=[common], help="multiple zeta value")
    c.add_argument("--exponents", required=True, help="comma separated, e.g. 2,1")
    conv = c.add_mutually_exclusive_group()
    conv.add_argument("--strict", action="store_true", help="n1 > n2 > ... (default)")
    conv.add_argument("--weak", action="store_true", help="n1 >= n2 >= ...")
    c.add_argument("--tol", type=float, default=1e-10)
    c.set_defaults(func=cmd_mzv, files=())

    c = sub.add_parser("stuffle", parents=[common], help="verify a stuffle identity")
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)
    c.add_argument("--tol", type=float, default=1e-9)
    c.set_defaults(func=cmd_stuffle, files=())

    c = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--timing", action="store_true", help="include per-criterion seconds")
    c.set_defaults(func=cmd_verify_all, files=())
    return p


def _flatten(prefix: str, v, rows: List[List[str]]):
    if isinstance(v, dict):
        for k in sorted(v):
            _flatten(f"{prefix}.{k}" if prefix else str(k), v[k], rows)
    elif isinstance(v, list):
        for i, x in enumerate(v):
            _flatten(f"{prefix}[{i}]", x, rows)
    else:
        rows.append([prefix, json.dumps(v) if not isinstance(v, str) else v])


def _render(report: Dict[str, Any], as_csv: bool) -> str:
    if not as_csv:
        return sio.dumps(report) + "\n"
    rows: List[List[str]] = []
    _flatten("", report, rows)
    buf = _io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows([["key", "value"]] + rows)
    return buf.getvalue()


def run(argv: Optional[Sequence[str]] = None) -> tuple:
    """Execute a command; returns ``(exit_code, report_dict)``."""
    parser = build_parser()
    a = parser.parse_args(argv)
    report: Dict[str, Any] = {"command": a.command}
    code = 0
    try:
        report["inputs_digest"] = _digest(a, [getattr(a, f) for f in a.files])
        report["outputs"] = a.func(a)
        report["passed"] = True
    except VerificationFailed as exc:
        code = EXIT_FAIL
        report["outputs"] = exc.args[0]
        report["passed"] = False
    except (sio.MalformedInput, FileNotFoundError) as exc:
        code = EXIT_MALFORMED
        report["error"] = f"malformed input: {exc}"
    except ToleranceError as exc:
        code = EXIT_TOLERANCE
        report["error"] = f"tolerance not met: {exc}"
    except (ValueError, TruncationError, ZeroDivisionError) as exc:
        code = EXIT_PRECONDITION
        report["error"] = f"precondition violated: {exc}"
    text = _render(report, a.csv)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code, report


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
