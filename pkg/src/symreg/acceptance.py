"""The acceptance suite: ten self-contained checks with fixed seeds."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Callable, List

import mpmath

from .chen import chen_cutoff_integral, p_operator, verify_integral_shuffle, verify_symbol_shuffle
from .cutoff import cutoff_integral, multi_cutoff_integral
from .discrete import (
    SumSpec,
    cutoff_sum_family,
    discrete_chen_sum,
    mzv,
    rb_residuals,
    stuffle_terms,
    verify_stuffle,
)
from .meromorphic import chen_germ, common_slope, germ_of_integral, kv_coefficients, riesz_family
from .renorm import birkhoff, naive_finite_part, obstruction, renormalise
from .scalars import LaurentSeries, MultiLaurent, laurent_of_rational, multi_constant_term
from .samples import (
    SymbolConfig,
    random_germ_word,
    random_nonintegral_word,
    random_riesz_family,
    random_symbol,
    random_word,
)
from .symbols import LogSymbol, TensorWord, specialize, sym_mul, wodzicki_residue

SEED = 20240601


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.name}: {self.detail}"


def _psi(a, n: int = 1) -> LogSymbol:
    return LogSymbol.monomial(Fraction(a), dim=n)


def criterion_1() -> tuple:
    rng = random.Random(SEED + 1)
    fails = 0
    for _ in range(100):
        n = rng.choice((1, 2, 3))
        s, t = random_symbol(rng, dim=n), random_symbol(rng, dim=n)
        lhs = sym_mul(p_operator(s), p_operator(t))
        rhs = p_operator(sym_mul(s, p_operator(t))) + p_operator(sym_mul(t, p_operator(s)))
        fails += lhs != rhs
    return fails == 0, f"{100 - fails}/100 random pairs satisfy P(s)P(t) = P(sP(t)) + P(tP(s))"


def criterion_2() -> tuple:
    rng = random.Random(SEED + 2)
    cfg = SymbolConfig(max_terms=2, max_logpow=1)
    fails = 0
    for k in (2, 3):
        for _ in range(25):
            fails += not verify_symbol_shuffle(random_word(rng, k, cfg)).equal
    return fails == 0, f"{50 - fails}/50 words (k=2,3) satisfy the symbol-level shuffle"


def criterion_3() -> tuple:
    w = TensorWord((_psi("-5/2"), _psi("-7/2")))
    rep = verify_integral_shuffle(w)
    anchor = rep.equal and rep.product == Fraction(4, 15) and rep.omega_power == 2
    rng = random.Random(SEED + 3)
    ok = 0
    flagged = 0
    for _ in range(25):
        word = random_nonintegral_word(rng, rng.randint(2, 4), rng.choice((1, 2, 3)))
        r = verify_integral_shuffle(word)
        flagged += r.partial_sums_nonintegral
        ok += r.equal and r.partial_sums_nonintegral
    passed = anchor and ok == 25
    return passed, f"anchor (4/15)Omega^2 {'ok' if anchor else 'WRONG'}; {ok}/25 flagged random words equal ({flagged} flagged)"


def criterion_4() -> tuple:
    rng = random.Random(SEED + 4)
    fails = 0
    for _ in range(50):
        fam = random_riesz_family(rng, max_logpow=0)
        res0 = wodzicki_residue(specialize(fam, 0), 0).constant_value()
        g = germ_of_integral(fam, 2).series
        fails += g[-1] != -res0 / common_slope(fam)
    hfails = 0
    for k in range(1, 5):
        for _ in range(5):
            n = rng.choice((1, 2, 3))
            facs = [riesz_family(random_symbol(rng, SymbolConfig(max_logpow=0), n), 1) for _ in range(k)]
            w = TensorWord(tuple(facs))
            target = prod(wodzicki_residue(specialize(f, 0), 0).constant_value() for f in facs)
            ser = laurent_of_rational(multi_cutoff_integral(w), 0)
            hfails += ser[-k] != target
            hfails += chen_germ(w, 0).series[-k] != target
    return fails + hfails == 0, f"residue theorem {50 - fails}/50; higher residue failures {hfails}"


def criterion_5() -> tuple:
    rng = random.Random(SEED + 5)
    fails = 0
    for _ in range(25):
        fam = random_riesz_family(rng, max_logpow=3)
        K = 4
        kv = kv_coefficients(fam, K=K)
        g = germ_of_integral(fam, K).series
        bad = any(kv.residues[j] != g[-j] for j in kv.residues)
        bad |= kv.finite_part != g[0]
        bad |= any(kv.taylor[j] != g[j] for j in range(1, K + 1))
        bad |= g.pole_order() > fam.max_logpow() + 1
        fails += bad
    return fails == 0, f"{25 - fails}/25 families: r_j, fp, s_j (j<=4) equal the Laurent coefficients"


def criterion_6() -> tuple:
    rng = random.Random(SEED + 6)
    fails = []
    for i in range(50):
        k = rng.randint(1, 4)
        fs = random_germ_word(rng, k)
        R = renormalise(fs)
        multi = MultiLaurent.tensor(fs)
        value = R[0]
        ok = all(d >= 0 for d in R.coeffs)
        ok &= value == multi_constant_term(multi) == prod(f[0] for f in fs)
        ok &= renormalise(multi)[0] == value
        ok &= obstruction(fs) == naive_finite_part(fs) - prod(f[0] for f in fs)
        if not ok:
            fails.append(i)
    # residue-free words: obstruction vanishes and the shuffle holds exactly
    rf_ok = True
    for _ in range(10):
        w = random_nonintegral_word(rng, 2, 1)
        w = TensorWord(tuple(riesz_family(LogSymbol(1, {k: c for k, c in s.terms.items() if k[0].a != -1}), 1)
                             for s in w))
        gs = [germ_of_integral(s, 4).series for s in w]
        rf_ok &= obstruction(gs) == 0
        rf_ok &= chen_germ(w, 4).series == laurent_of_rational(multi_cutoff_integral(w), 4)
    f1 = LaurentSeries({-1: 1, 1: 1}, 1, 4)
    f2 = LaurentSeries({-1: 1}, 1, 4)
    worked = (naive_finite_part([f1, f2]) == 1 and renormalise([f1, f2])[0] == 0 and obstruction([f1, f2]) == 1)
    passed = not fails and rf_ok and worked
    return passed, (f"{50 - len(fails)}/50 random words; residue-free obstruction {'0' if rf_ok else 'NONZERO'}; "
                    f"worked pair (naive 1, R 0, obstruction 1) {'ok' if worked else 'WRONG'}")


def criterion_7() -> tuple:
    rng = random.Random(SEED + 7)
    fails = 0
    for i in range(25):
        if i % 2:
            k = rng.randint(1, 3)
            n = rng.choice((1, 2))
            w = TensorWord(tuple(random_riesz_family(rng, n, max_logpow=1, q=1) for _ in range(k)))
            gs = [germ_of_integral(s, 6).series for s in w]
            b = birkhoff(w, 6)
        else:
            gs = random_germ_word(rng, rng.randint(1, 4))
            b = birkhoff(gs)
        fails += b.phi_plus[0] != renormalise(gs)[0]
    return fails == 0, f"{25 - fails}/25 words: Phi_+(0) equals R(f)(0)"


def criterion_8() -> tuple:
    s = _psi(0)
    rows = []
    ok = True
    for z in (2, 3, 4):
        v = cutoff_sum_family(s, 1, z, 5).value
        ref = 2 * float(mpmath.zeta(z))
        ok &= abs(v - ref) < 1e-10
        rows.append(f"z={z}: {abs(v - ref):.1e}")
    for z, ref in ((0, -1.0), (-1, -1 / 6)):
        v5 = cutoff_sum_family(s, 1, z, 5).value
        v6 = cutoff_sum_family(s, 1, z, 6).value
        ok &= abs(v5 - ref) < 1e-8 and abs(v5 - v6) < 1e-8
        rows.append(f"z={z}: {abs(v5 - ref):.1e}")
    return ok, "; ".join(rows)


def criterion_9() -> tuple:
    tol = 1e-9
    z21 = mzv(SumSpec((2, 1), True, 1e-11)).value
    z3 = mzv(SumSpec((3,), True, 1e-11)).value
    r1 = abs(z21 - z3)
    st = verify_stuffle((2,), (3,), tol)
    r2 = abs(st.residual)
    zt = lambda e: mzv(SumSpec(e, False, 1e-11)).value
    r3 = abs(zt((3,)) * zt((2,)) - zt((3, 2)) - zt((2, 3)) + zt((5,)))
    big = verify_stuffle((2, 2), (3,), 1e-8)
    big13 = verify_stuffle((2, 2), (3, 3), 1e-8)
    chen = discrete_chen_sum(TensorWord((_psi(-2), _psi(-3))))
    r5 = abs(chen.value - 4 * zt((2, 3)))
    ok = r1 < 1e-9 and r2 < 1e-9 and r3 < 1e-9 and abs(big.residual) < 1e-8 and abs(big13.residual) < 1e-8 and r5 < 1e-8
    return ok, (f"zeta(2,1)-zeta(3) {r1:.1e}; (2)x(3) {r2:.1e}; weak weight identity {r3:.1e}; "
                f"(2,2)x(3) [{big.terms} terms] {abs(big.residual):.1e}; (2,2)x(3,3) [{big13.terms} terms] "
                f"{abs(big13.residual):.1e}; chen sum {r5:.1e}")


def criterion_10() -> tuple:
    pairs = [
        (lambda n: n ** -2.0, lambda n: n ** -3.0),
        (lambda n: 1.0 / (n * (n + 1)), lambda n: 2.0 ** -n),
        (lambda n: (-1) ** n / n ** 2, lambda n: 1.0 / n ** 1.5),
    ]
    worst = 0.0
    sym = 0.0
    for f, g in pairs:
        r = rb_residuals(f, g, 50)
        worst = max(worst, r.strict, r.weak)
        sym = max(sym, r.symmetric)
    return worst < 1e-12 and sym < 1e-12, f"max residual strict/weak {worst:.1e}; symmetric (-2 P(st)) {sym:.1e}"


CRITERIA: List[tuple] = [
    (1, "Rota-Baxter identity", criterion_1),
    (2, "symbol-level shuffle", criterion_2),
    (3, "integral shuffle", criterion_3),
    (4, "residue theorem", criterion_4),
    (5, "KV coefficients", criterion_5),
    (6, "renormalisation", criterion_6),
    (7, "Birkhoff agreement", criterion_7),
    (8, "cut-off sums and 2 zeta(z)", criterion_8),
    (9, "MZV and stuffle", criterion_9),
    (10, "discrete Rota-Baxter weights", criterion_10),
]


def run_criterion(number: int) -> CriterionResult:
    for num, name, fn in CRITERIA:
        if num == number:
            t0 = time.perf_counter()
            try:
                passed, detail = fn()
            except Exception as exc:  # a crash is a failure, reported not raised
                passed, detail = False, f"error: {type(exc).__name__}: {exc}"
            return CriterionResult(num, name, bool(passed), detail, time.perf_counter() - t0)
    raise KeyError(number)


def run_all() -> List[CriterionResult]:
    return [run_criterion(num) for num, _, _ in CRITERIA]
