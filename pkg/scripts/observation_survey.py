"""Which arrangements keep every coefficient a signed monomial?

For each N, checks the structured Cauchy-Binet forms of sigma(i) and the
inverse numerators (expected: always), and the T-quotient normal forms of
the power sums s(k) (expected: not always; s(2) at N = 2 is the first
counterexample).
"""
import argparse
from dataclasses import dataclass

from qcb.exprio import render
from qcb.invariants_ch import observation_o, power_sum, sigma_cb, t_project
from qcb.inverse import inverse_numerator
from qcb.ncpoly import NCPoly, algebra


@dataclass
class Config:
    sizes: tuple = (2, 3)
    max_k: int = 3


def main(cfg: Config):
    for n in cfg.sizes:
        A = algebra(n)
        sig = all(observation_o(sigma_cb(A, i, o, structured=True))
                  for i in range(n + 1) for o in "xy")
        num = all(observation_o(inverse_numerator(A, i, j, structured=True))
                  for i in range(1, n + 1) for j in range(1, n + 1))
        print(f"N={n}: sigma structured forms monomial: {sig}; numerators monomial: {num}")
        one = algebra(n, "one")
        for k in range(1, cfg.max_k + 1):
            s = t_project(power_sum(one, k))
            bad = [NCPoly(s.alg, {w: c}, True) for w, c in s.terms.items()
                   if not observation_o(NCPoly(s.alg, {w: c}))]
            print(f"  s({k}) in T-quotient: {len(s.terms)} terms, "
                  f"{len(bad)} non-monomial coefficients")
            for term in bad[:3]:
                print("    e.g. " + render(term))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="2,3")
    ap.add_argument("--max-k", type=int, default=3)
    a = ap.parse_args()
    main(Config(tuple(int(v) for v in a.sizes.split(",")), a.max_k))
