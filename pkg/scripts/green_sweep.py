"""Run the exact Green's formula sweep over a list of quivers and fields.

    python3 scripts/green_sweep.py --bound 3 --out results/green
"""

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from ringel_hall.green import report_json, sweep_green
from ringel_hall.quiver import preset_quiver
from ringel_hall.reps import TableStore


@dataclass
class SweepConfig:
    cases: list = field(default_factory=lambda: [("a2", 2), ("a2", 3), ("kronecker", 2), ("jordan", 2), ("jordan", 3)])
    bound: int = 3
    out: Path | None = None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--case", action="append", help="name:q, repeatable (default: the standard five)")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    cfg = SweepConfig(bound=args.bound, out=args.out)
    if args.case:
        cfg.cases = [(c.split(":")[0], int(c.split(":")[1])) for c in args.case]

    print(f"{'quiver':<10} {'q':>2} {'instances':>10} {'all_equal':>9} {'seconds':>8}")
    ok = True
    for name, q in cfg.cases:
        t0 = time.perf_counter()
        report = sweep_green(TableStore(preset_quiver(name), q), cfg.bound)
        dt = time.perf_counter() - t0
        ok &= report.all_equal
        print(f"{name:<10} {q:>2} {len(report.instances):>10} {str(report.all_equal):>9} {dt:>8.2f}")
        if cfg.out:
            cfg.out.mkdir(parents=True, exist_ok=True)
            (cfg.out / f"{name}_q{q}_b{cfg.bound}.json").write_text(report_json(report))
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
