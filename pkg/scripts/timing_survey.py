"""Wall-clock cost of each suite as the state degree and rank grow."""
import argparse
import time

from qtorus import b0n
from qtorus.fock import test_states
from qtorus.fock_verify import verify_lemma21, verify_props, verify_theorem
from qtorus.scalar_field import QMode


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--degrees", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--qmode", default="generic")
    args = ap.parse_args()
    mode = QMode.parse(args.qmode)
    print(f"{'suite':>8} {'N':>2} {'D':>2} {'states':>6} {'tuples':>9} {'seconds':>8}")
    for N in args.N:
        t = time.perf_counter()
        r = b0n.verify_prop11(N, -2, 2, mode)
        print(f"{'prop11':>8} {N:>2} {'-':>2} {'-':>6} {r.tuples_checked:>9} {time.perf_counter() - t:8.1f}")
        for D in args.degrees:
            states = test_states(N, D, 2)
            for name, run in (("lemma21", lambda: verify_lemma21(N, -2, 2, 1, D, states=states, mode=mode)),
                              ("props2", lambda: verify_props(N, -2, 2, 1, mode, D, states=states)),
                              ("theorem", lambda: verify_theorem(N, -1, 1, 1, mode, D, states=states))):
                t = time.perf_counter()
                r = run()
                print(f"{name:>8} {N:>2} {D:>2} {len(states):>6} {r.tuples_checked:>9} "
                      f"{time.perf_counter() - t:8.1f}")


if __name__ == "__main__":
    main()
