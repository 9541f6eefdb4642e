"""Print sigma_{q,T}(i) for N = 2, 3 in both orderings and compare with the fixture.

The x-first column projects the Cauchy-Binet sum with X-minors before Y-minors,
the y-first column the primed arrangement.  Both are shown in canonical
T-quotient normal form.
"""
import argparse
from dataclasses import dataclass

from qcb.exprio import render
from qcb.invariants_ch import sigma_cb, t_project, table1_check
from qcb.ncpoly import algebra


@dataclass
class Config:
    sizes: tuple = (2, 3)
    fmt: str = "text"


def main(cfg: Config):
    for n in cfg.sizes:
        one = algebra(n, "one")
        print(f"N = {n}")
        for i in range(n + 1):
            x = t_project(sigma_cb(one, i, "x"))
            y = t_project(sigma_cb(one, i, "y"))
            assert x == y
            print(f"  sigma({i}) = {render(x, cfg.fmt)}")
    ok, detail = table1_check(detail=True)
    print(f"fixture cells: {sum(r for _, r in detail)}/{len(detail)} match")
    return 0 if ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", default="text", choices=("text", "latex"))
    ap.add_argument("--sizes", default="2,3")
    a = ap.parse_args()
    raise SystemExit(main(Config(tuple(int(v) for v in a.sizes.split(",")), a.format)))
