"""Collect every displayed formula that disagrees with the brute-force oracles.

Runs the generator-bracket and quadratic-monomial suites over both q-modes
and prints the merged correction ledger as JSON.
"""
import argparse
import json

from qtorus import b0n
from qtorus.fock_verify import verify_lemma21, verify_props
from qtorus.scalar_field import QMode


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=1)
    ap.add_argument("--range", type=int, default=2)
    ap.add_argument("--degree", type=int, default=2)
    args = ap.parse_args()
    lo, hi = -args.range, args.range
    out = []
    for qm in ("generic", "root:2"):
        mode = QMode.parse(qm)
        reports = [b0n.verify_prop11(args.N, lo, hi, mode),
                   verify_lemma21(args.N, lo, hi, 1, degree=args.degree, mode=mode),
                   verify_props(args.N, lo, hi, 1, mode, degree=args.degree)]
        for r in reports:
            for e in r.ledger:
                out.append({"suite": r.suite, "qmode": qm, **e.to_json()})
            if not r.ok:
                print(f"warning: {r.suite} ({qm}) has {r.n_failures} unexplained failures")
    print(json.dumps(out, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
