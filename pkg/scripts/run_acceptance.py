"""Run the acceptance suite and print one line per criterion.

    python3 scripts/run_acceptance.py [--only 3 8]
"""
import argparse
import sys

from symreg.acceptance import CRITERIA, run_criterion


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    args = ap.parse_args()
    nums = args.only or [n for n, _, _ in CRITERIA]
    failed = 0
    for n in nums:
        r = run_criterion(n)
        print(f"{r.line()}  ({r.seconds:.2f}s)", flush=True)
        failed += not r.passed
    print(f"{len(nums) - failed}/{len(nums)} criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
