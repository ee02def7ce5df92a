"""Shift-constant identity M - 2K = N - (a2, b1) on random instances, with the
corrected vertex term a2*b2 in N and with the a2*a2 variant.

    python3 scripts/shift_fuzz.py --samples 1000 --seed 42
"""

import argparse
import time

from ringel_hall.functors import fuzz_shift_identity
from ringel_hall.quiver import preset_quiver


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--max-entry", type=int, default=20)
    args = ap.parse_args()
    print(f"{'quiver':<10} {'a2*b2 term':>12} {'a2*a2 term':>12}")
    t0 = time.perf_counter()
    for name in ("a2", "a3", "kronecker", "jordan", "d4"):
        Q = preset_quiver(name)
        good = fuzz_shift_identity(Q, args.samples, args.seed, args.max_entry)
        lit = fuzz_shift_identity(Q, args.samples, args.seed, args.max_entry, literal_n_term=True)
        print(f"{name:<10} {good[0]:>7}/{good[1]:<4} {lit[0]:>7}/{lit[1]:<4}")
    print(f"{time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
