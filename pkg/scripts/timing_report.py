"""Wall-clock cost of the main computations per N, written as a markdown table.

Each row uses a fresh algebra instance so caches from earlier rows do not help.
"""
import argparse
import time
from dataclasses import dataclass, field

from qcb.invariants_ch import sigma_cb, verify_cayley_hamilton, verify_newton
from qcb.inverse import verify_inverse
from qcb.ncpoly import Algebra
from qcb.tensor_r import gps_sigma


@dataclass
class Config:
    sizes: list = field(default_factory=lambda: [2, 3])
    gps: bool = True
    inverse: bool = True


def _timed(fn):
    t0 = time.perf_counter()
    ok = fn()
    return ok, time.perf_counter() - t0


def rows(cfg: Config):
    for n in cfg.sizes:
        A = Algebra(n)
        out = {"N": n}
        _, out["sigma (all i)"] = _timed(lambda: [sigma_cb(A, i) for i in range(n + 1)])
        out["sigma terms"] = sum(len(sigma_cb(A, i).terms) for i in range(n + 1))
        ok, out["Newton"] = _timed(lambda: all(verify_newton(A, k) for k in range(1, n + 1)))
        assert ok
        ok, out["CH"] = _timed(lambda: verify_cayley_hamilton(A))
        assert ok
        if cfg.inverse:
            ok, out["inverse (2-sided)"] = _timed(lambda: verify_inverse(A))
            assert ok
        if cfg.gps and n <= 3:
            _, out["GPS oracle"] = _timed(lambda: [gps_sigma(n, i) for i in range(n + 1)])
        yield out


def main(cfg: Config):
    table = list(rows(cfg))
    cols = list(dict.fromkeys(k for r in table for k in r))
    print("| " + " | ".join(cols) + " |")
    print("|" + "---|" * len(cols))
    for r in table:
        cells = []
        for c in cols:
            v = r.get(c, "")
            cells.append(f"{v:.2f} s" if isinstance(v, float) else str(v))
        print("| " + " | ".join(cells) + " |")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="2,3", help="comma-separated N values")
    ap.add_argument("--no-gps", action="store_true")
    ap.add_argument("--no-inverse", action="store_true")
    a = ap.parse_args()
    main(Config([int(v) for v in a.sizes.split(",")], not a.no_gps, not a.no_inverse))
