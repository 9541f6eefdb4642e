"""Command-line front end: ``qcb <verb> [options]``.

Exit codes: 0 success / PASS, 1 FAIL, 2 resource limit, 64 usage error.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import invariants_ch as inv
from . import inverse as invmod
from . import minors, tensor_r
from .exprio import ParseError, parse_expr, render
from .ncpoly import ResourceLimit, algebra, term_cap_from_env
from .scalars import Scalar

EXIT_OK, EXIT_FAIL, EXIT_LIMIT, EXIT_USAGE = 0, 1, 2, 64

MODE_ALIASES = {"multi": "multi", "one": "one", "one-param": "one",
                "tquot": "tquot", "t-quotient": "tquot"}

VERIFY_TARGETS = ("ch", "newton", "invariance", "centrality", "table1", "inverse",
                  "woronowicz", "laplace", "yang-baxter", "hecke", "reflection", "rlc",
                  "braid-lemmas", "gps-agreement", "jw-agreement")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class SessionConfig:
    n: int = 2
    mode: str = "multi"
    term_cap: int = field(default_factory=term_cap_from_env)
    fmt: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("--n must be >= 1")
        if self.term_cap < 1000:
            raise UsageError("--term-cap must be >= 1000")
        self.mode = MODE_ALIASES[self.mode]

    def algebra(self, mode=None):
        alg = algebra(self.n, mode or self.mode)
        alg.term_cap = self.term_cap
        return alg


def _index_list(text):
    try:
        vals = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--mode", choices=sorted(MODE_ALIASES), default="multi")
    common.add_argument("--format", dest="fmt", choices=("text", "latex", "json"),
                        default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--term-cap", type=int, default=None)

    p = _Parser(prog="qcb", description="Exact computations in the multiparameter "
                "reflection equation algebra.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("sigma", parents=[common], help="Cayley-Hamilton coefficient")
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--ordering", choices=("x", "y"), default="x")

    s = sub.add_parser("powersum", parents=[common], help="power sum Tr(D^2 (XY)^k)")
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("inverse", parents=[common], help="numerator entry of (tI+XY)^-1")
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--variant", choices=("xy", "yx"), default="xy")
    s.add_argument("--t", default=None, help="rational value substituted for t")

    sub.add_parser("cnpoly", parents=[common], help="C_N = sum sigma(k) t^(N-k)")

    s = sub.add_parser("minor", parents=[common], help="quantum minor")
    s.add_argument("--base", choices=minors.BASES, required=True)
    s.add_argument("--rows", type=_index_list, required=True)
    s.add_argument("--cols", type=_index_list, required=True)

    s = sub.add_parser("normalize", parents=[common], help="parse and normalize")
    s.add_argument("--expr", required=True)

    s = sub.add_parser("verify", parents=[common], help="run an exact identity check")
    s.add_argument("target", choices=VERIFY_TARGETS)
    s.add_argument("--i", type=int, default=None)
    return p


def _emit(p, fmt):
    print(render(p, fmt))


def _range_i(cfg, i, lo=0):
    if i is None:
        return range(lo, cfg.n + 1)
    if not lo <= i <= cfg.n:
        raise UsageError(f"--i must be in {lo}..{cfg.n}")
    return [i]


def _scalar_mode(cfg):
    if cfg.mode == "tquot":
        raise UsageError("tensor-leg checks run in multi or one mode")
    return cfg.mode


def _verify(cfg, target, i) -> bool:
    n = cfg.n
    if target == "ch":
        return inv.verify_cayley_hamilton(cfg.algebra())
    if target == "newton":
        return all(inv.verify_newton(cfg.algebra(), k) for k in _range_i(cfg, i, 1))
    if target == "invariance":
        return all(inv.verify_invariance(cfg.algebra(), k) for k in _range_i(cfg, i))
    if target == "centrality":
        return all(inv.verify_centrality(cfg.algebra(), k) for k in _range_i(cfg, i))
    if target == "table1":
        return inv.table1_check()
    if target == "inverse":
        alg = cfg.algebra()
        return (invmod.verify_inverse(alg) and invmod.verify_inverse_yx(alg)
                and inv.is_central(alg, invmod.c_n_poly(alg)))
    if target == "woronowicz":
        return invmod.woronowicz_check()
    if target == "laplace":
        alg = cfg.algebra()
        cases = minors.laplace_instances(n)
        if n >= 4:
            cases = random.Random(cfg.seed).sample(cases, min(200, len(cases)))
        ok = all(minors.laplace_check(alg, *c) for c in cases)
        if ok and n <= 3:
            ok = all(alg.equal(minors.quantum_minor(alg, "X", J, K) * alg.y(b, a),
                               minors.commute_minor_past_y(alg, J, K, b, a))
                     for J, K, b, a in minors.minor_y_instances(n))
        return ok
    if target == "yang-baxter":
        m = _scalar_mode(cfg)
        return all(tensor_r.check_leg_identity(name, n, mode=m)
                   for name in ("yang-baxter", "yang-baxter-r"))
    if target == "hecke":
        return tensor_r.check_leg_identity("hecke", n, mode=_scalar_mode(cfg))
    if target == "reflection":
        m = _scalar_mode(cfg)
        return all(tensor_r.check_leg_identity(name, n, mode=m)
                   for name in ("reflection", "reflection-yx"))
    if target == "rlc":
        m = _scalar_mode(cfg)
        return all(tensor_r.check_leg_identity(name, n, mode=m)
                   for name in ("rlc", "rlc-row", "normlc"))
    if target == "braid-lemmas":
        m = _scalar_mode(cfg)
        legs = max(n, 3)
        return all(tensor_r.check_leg_identity(name, n, mode=m, max_legs=legs)
                   for name in tensor_r.BRAID_LEMMAS)
    if target == "gps-agreement":
        m = _scalar_mode(cfg)
        alg = cfg.algebra(m)
        for k in _range_i(cfg, i):
            g = tensor_r.gps_sigma(n, k, m)
            if not (inv.sigma_cb(alg, k, "x") == inv.sigma_cb(alg, k, "y") == g):
                return False
        return True
    if target == "jw-agreement":
        one = cfg.algebra("one")
        multi = cfg.algebra("multi")
        for k in _range_i(cfg, i):
            ref = inv.to_one_param(inv.sigma_cb(multi, k))
            if not (inv.sigma_jw(one, k) == inv.sigma_jw(one, k, "anti-exceedance") == ref):
                return False
        return True
    raise UsageError(f"unknown verify target {target!r}")


def _run(args) -> int:
    cfg = SessionConfig(n=args.n, mode=args.mode, fmt=args.fmt, seed=args.seed,
                        **({"term_cap": args.term_cap} if args.term_cap is not None else {}))
    verb = args.verb
    if verb == "sigma":
        _emit(inv.sigma_cb(cfg.algebra(), _range_i(cfg, args.i)[0], args.ordering), cfg.fmt)
    elif verb == "powersum":
        if args.k < 0:
            raise UsageError("--k must be >= 0")
        _emit(inv.power_sum(cfg.algebra(), args.k), cfg.fmt)
    elif verb == "inverse":
        alg = cfg.algebra()
        for v in (args.i, args.j):
            if not 1 <= v <= cfg.n:
                raise UsageError(f"--i/--j must be in 1..{cfg.n}")
        if args.variant == "xy":
            p = invmod.inverse_numerator(alg, args.i, args.j)
        else:
            p = invmod.inverse_yx_numerator(alg, args.i, args.j)
        if args.t is not None:
            try:
                val = Fraction(args.t)
            except ValueError:
                raise UsageError(f"--t expects a rational, got {args.t!r}")
            p = alg.normalize(invmod.specialize_t(p, val))
        _emit(p, cfg.fmt)
    elif verb == "cnpoly":
        _emit(invmod.c_n_poly(cfg.algebra()), cfg.fmt)
    elif verb == "minor":
        alg = cfg.algebra()
        J, K = args.rows, args.cols
        if len(J) != len(K) or any(not 1 <= v <= cfg.n for v in J + K):
            raise UsageError("--rows and --cols need equal length and indices in 1..N")
        if len(set(J)) != len(J) or len(set(K)) != len(K):
            raise UsageError("--rows and --cols must not repeat an index")
        _emit(alg.normalize(minors.quantum_minor(alg, args.base, tuple(sorted(J)),
                                                 tuple(sorted(K)))), cfg.fmt)
    elif verb == "normalize":
        try:
            p = parse_expr(args.expr, cfg.algebra())
        except (ParseError, IndexError) as exc:
            raise UsageError(str(exc))
        _emit(p, cfg.fmt)
    elif verb == "verify":
        t0 = time.perf_counter()
        ok = _verify(cfg, args.target, args.i)
        dt = time.perf_counter() - t0
        word = "PASS" if ok else "FAIL"
        print(f"{args.target} n={cfg.n} mode={cfg.mode}: {word}")
        print(f"{word} {args.target} n={cfg.n} ({dt:.2f} s)", file=sys.stderr)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        print(f"qcb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"qcb: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
