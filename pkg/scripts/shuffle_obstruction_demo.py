"""Where the shuffle relation for cut-off integrals breaks, and how renormalisation repairs it.

For pairs of power symbols |xi|^a, |xi|^b in dimension one we compare

* the product of cut-off integrals with the sum of cut-off Chen integrals,
* the naive finite part of the product of Riesz germs with the renormalised value,

and report the obstruction term.  Resonant pairs (a + b + 2 = 0 with both
exponents noncritical) break the integral shuffle; pairs with a critical
exponent a = -1 carry poles that the renormalisation removes.
"""
import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from symreg.chen import verify_integral_shuffle
from symreg.meromorphic import riesz_family
from symreg.renorm import germ_word_of, naive_finite_part, obstruction, renormalised_value
from symreg.symbols import LogSymbol, TensorWord


@dataclass(frozen=True)
class Config:
    exponents: tuple = ("-5/2", "-7/2", "-1", "-3", "1/3", "-7/3", "-3/2")
    trunc: int = 6


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--exponents", nargs="*", default=list(Config.exponents))
    ap.add_argument("--trunc", type=int, default=Config.trunc)
    args = ap.parse_args()
    cfg = Config(tuple(args.exponents), args.trunc)
    ex = [Fraction(e) for e in cfg.exponents]
    print(f"{'a':>6} {'b':>6} | {'product':>10} {'shuffle':>10} {'equal':>5} {'res.free':>8} | "
          f"{'naive fp':>10} {'R(0)':>10} {'obstr.':>10}")
    for i, a in enumerate(ex):
        for b in ex[i:]:
            w = TensorWord((LogSymbol.monomial(a), LogSymbol.monomial(b)))
            rep = verify_integral_shuffle(w)
            reg = TensorWord(tuple(riesz_family(s, 1) for s in w))
            gw = germ_word_of(reg, cfg.trunc)
            print(f"{str(a):>6} {str(b):>6} | {str(rep.product):>10} {str(rep.shuffle_sum):>10} "
                  f"{str(rep.equal):>5} {str(rep.resonance_free):>8} | {str(naive_finite_part(gw)):>10} "
                  f"{str(renormalised_value(gw)):>10} {str(obstruction(gw)):>10}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
