"""Tabulate Hall numbers of the Jordan quiver against q.

For nilpotent classes the numbers are values of classical Hall polynomials;
e.g. the zero 2x2 matrix has q + 1 invariant lines, and the nilpotent Jordan
block J2 has exactly one.
"""

import argparse

from ringel_hall.quiver import preset_quiver
from ringel_hall.reps import TableStore


def nilpotent_classes(S, n):
    from ringel_hall.gf import field_make
    F = field_make(S.q)
    out = []
    for k in S.classes((n,)):
        x = S.rep(k).mats[0]
        p = x.copy()
        for _ in range(n - 1):
            p = F.matmul(p, x)
        if not p.any():
            out.append(k)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--qs", default="2,3,4,5,7")
    ap.add_argument("--n", type=int, default=3)
    args = ap.parse_args()
    Q = preset_quiver("jordan")
    for q in map(int, args.qs.split(",")):
        S = TableStore(Q, q)
        rows = []
        for c in nilpotent_classes(S, args.n):
            subs = {}
            for (a, b), g in S.filtrations(c).items():
                if a[0].total and b[0].total and S.rep(a).mats[0].sum() == 0 and S.rep(b).mats[0].sum() == 0:
                    subs[(a[0][0], b[0][0])] = g
            rows.append(f"class {c[1]} {S.rep(c).mats[0].tolist()}: g(zero,zero) by (quot,sub) dims = {subs}")
        print(f"q={q}")
        for r in rows:
            print("  " + r)


if __name__ == "__main__":
    main()
