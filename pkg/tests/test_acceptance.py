"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py`` (lines printed as they finish).
"""
import itertools
import os
import random
import subprocess
import sys
import time

import pytest
import sympy as sp

from qcb.exprio import parse_expr, render
from qcb.invariants_ch import (classical_image, is_central, load_table1, observation_o,
                               power_sum, sigma_cb, sigma_jw, t_project, table1_check,
                               to_one_param, verify_centrality, verify_invariance,
                               verify_newton)
from qcb.inverse import (c_n_poly, inverse_numerator, verify_inverse, verify_inverse_yx,
                         woronowicz_check)
from qcb.minors import (check_minor_sum_lemma, check_sum_xy_lemma, commute_minor_past_y,
                        laplace_check, laplace_instances, minor_y_instances, quantum_minor,
                        subsets)
from qcb.ncpoly import Algebra, algebra
from qcb.scalars import Q, q_power
from qcb.tensor_r import BRAID_LEMMAS, check_leg_identity

sys.path.insert(0, os.path.dirname(__file__))
from conftest import (T_SYM, classical_to_sympy, classical_xy, gen_codes,  # noqa: E402
                      random_rewrite, random_word_poly)

RESULTS: list[str] = []


def _record(num, title, failures, info=""):
    status = "PASS" if not failures else "FAIL"
    extra = f" [{info}]" if info else ""
    line = f"AC{num:02d} {title}{extra}: {status}"
    if failures:
        line += " -- " + "; ".join(str(f) for f in failures[:5])
    RESULTS.append(line)
    print(line, flush=True)
    assert not failures, line


def _check(failures, label, fn):
    try:
        ok = fn()
    except Exception as exc:  # a crash counts as a failed sub-check
        failures.append(f"{label}: {type(exc).__name__}: {exc}")
        return False
    if not ok:
        failures.append(label)
    return ok


def _cli(*args):
    t0 = time.perf_counter()
    r = subprocess.run([sys.executable, "-m", "qcb.cli", *args], capture_output=True,
                       text=True)
    return r.returncode, time.perf_counter() - t0


# ---------------------------------------------------------------- 1

def test_ac01_cayley_hamilton():
    failures = []
    times = {}
    for n, limit in ((2, 5.0), (3, 120.0)):
        code, dt = _cli("verify", "ch", "--n", str(n))
        times[n] = dt
        if code != 0:
            failures.append(f"verify ch --n {n} exit {code}")
        if dt >= limit:
            failures.append(f"N={n} took {dt:.1f} s (limit {limit} s)")
    _record(1, "Cayley-Hamilton exact zero", failures,
            ", ".join(f"N={n} {t:.1f}s" for n, t in times.items()))


# ---------------------------------------------------------------- 2

def test_ac02_cauchy_binet_gps_agreement():
    failures = []
    t0 = time.perf_counter()
    for n in (2, 3):
        code, _ = _cli("verify", "gps-agreement", "--n", str(n))
        if code != 0:
            failures.append(f"gps-agreement N={n} exit {code}")
    dt = time.perf_counter() - t0
    if dt >= 300:
        failures.append(f"took {dt:.1f} s (limit 300 s)")
    _record(2, "sigma_cb(x) = sigma_cb(y) = GPS, N=2,3", failures, f"{dt:.1f}s")


# ---------------------------------------------------------------- 3

def test_ac03_newton():
    failures = []
    for n in (2, 3):
        for k in range(1, n + 1):
            _check(failures, f"N={n} k={k}", lambda: verify_newton(algebra(n), k))
    _record(3, "Newton relations, N=2,3", failures)


# ---------------------------------------------------------------- 4

def test_ac04_table1():
    failures = []
    ok, detail = table1_check(detail=True)
    failures += [f"cell {c}" for c, r in detail if not r]
    cells = {(c["n"], c["i"], c["column"]): c for c in load_table1()["cells"]}
    tq = algebra(3, "tquot")
    for col, term in ((1, "-q*T[1,2]*T[2,3]*T[2,2]*Tstar[1,3]"),
                      (2, "-q^3*Tstar[1,2]*Tstar[2,3]*T[2,2]*T[1,3]")):
        raw = parse_expr(term, tq, normalize=False)
        (word, coeff), = raw.terms.items()
        cell = parse_expr(cells[(3, 2, col)]["text"], tq, normalize=False)
        if cell.coefficient(word) != coeff:
            failures.append(f"cross term {term} missing from column {col}")
    _record(4, "Table 1 reproduction (both columns, N=2,3)", failures,
            f"{len(detail)} cells")


# ---------------------------------------------------------------- 5

def _classical_numerator(n, i, j):
    x, y = classical_xy(n)
    a = x * y
    want = 0
    for size in range(1, n + 1):
        for K in itertools.combinations(range(1, n + 1), size):
            if i in K and j in K:
                sign = (-1) ** (sum(k > i for k in K) + sum(k > j for k in K))
                rows = [k - 1 for k in K if k != j]
                cols = [k - 1 for k in K if k != i]
                want += T_SYM ** (n - size) * sign * a.extract(rows, cols).det()
    return sp.expand(want)


def test_ac05_inverse():
    failures = []
    for n in (2, 3):
        A = algebra(n)
        _check(failures, f"two-sided N={n}", lambda: verify_inverse(A, "both"))
        _check(failures, f"C_N central N={n}", lambda: is_central(A, c_n_poly(A)))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                _check(failures, f"classical N={n} ({i},{j})", lambda: sp.expand(
                    classical_to_sympy(classical_image(inverse_numerator(A, i, j)))
                    - _classical_numerator(n, i, j)) == 0)
    _record(5, "Cleared inverse of tI+XY, N=2,3", failures)


# ---------------------------------------------------------------- 6

def test_ac06_woronowicz():
    failures = []
    ok, detail = woronowicz_check(detail=True)
    failures += [f"entry {c}" for c, r in detail if not r]
    _check(failures, "YX variant N=2", lambda: verify_inverse_yx(algebra(2)))
    _record(6, "Woronowicz (I+T*T)^-1 at N=2, t=1", failures, f"{len(detail)} items")


# ---------------------------------------------------------------- 7

def test_ac07_r_matrix_layer():
    failures = []
    count = 0
    for n in (2, 3, 4):
        for name in ("yang-baxter", "yang-baxter-r", "hecke", "rlc", "normlc"):
            count += 1
            _check(failures, f"{name} N={n}", lambda: check_leg_identity(name, n))
    for n in (2, 3):
        for name in ("reflection", "reflection-yx"):
            count += 1
            _check(failures, f"{name} N={n}", lambda: check_leg_identity(name, n))
        for name in BRAID_LEMMAS:
            count += 1
            _check(failures, f"{name} N={n}", lambda: check_leg_identity(name, n, max_legs=3))
    _record(7, "R-matrix, reflection, Levi-Civita, braid lemmas", failures, f"{count} groups")


# ---------------------------------------------------------------- 8

def test_ac08_jw_agreement():
    failures = []
    for n in (2, 3):
        one, multi = algebra(n, "one"), algebra(n)
        for i in range(n + 1):
            ref = to_one_param(sigma_cb(multi, i))
            _check(failures, f"exceedance N={n} i={i}", lambda: sigma_jw(one, i) == ref)
            _check(failures, f"anti-exceedance N={n} i={i}",
                   lambda: sigma_jw(one, i, "anti-exceedance") == ref)
    _record(8, "JW formulas = one-parameter sigma_cb", failures)


# ---------------------------------------------------------------- 9

def test_ac09_invariance_centrality():
    failures = []
    for n in (2, 3):
        A = algebra(n)
        for i in range(n + 1):
            _check(failures, f"invariance N={n} i={i}", lambda: verify_invariance(A, i))
            _check(failures, f"central/self-adjoint N={n} i={i}",
                   lambda: verify_centrality(A, i))
    _record(9, "Invariance, centrality, self-adjointness", failures)


# ---------------------------------------------------------------- 10

def test_ac10_laplace_and_commutation():
    failures = []
    count = 0
    for n in (2, 3):
        A = algebra(n)
        for c in laplace_instances(n):
            for kind in ("X", "Y"):
                count += 1
                _check(failures, f"laplace {kind} N={n} {c}",
                       lambda: laplace_check(A, *c, kind=kind))
        for J, K, b, a in minor_y_instances(n):
            count += 1
            _check(failures, f"minor*Y N={n} {(J, K, b, a)}", lambda: A.equal(
                quantum_minor(A, "X", J, K) * A.y(b, a), commute_minor_past_y(A, J, K, b, a)))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for l in range(1, n + 1):
                    for al in range(1, j):
                        count += 1
                        _check(failures, f"sumXY N={n}",
                               lambda: check_sum_xy_lemma(A, i, j, l, al))
        for i in range(1, n + 1):
            for J in subsets(n, i):
                for K in subsets(n, i):
                    for b in K:
                        free = [m for m in range(1, b) if m not in K]
                        for a in range(1, n + 1):
                            for g in range(1, len(free) + 1):
                                count += 1
                                _check(failures, f"minor-sum N={n}",
                                       lambda: check_minor_sum_lemma(A, J, K, b, a, g))
    A4 = algebra(4)
    for c in random.Random(2024).sample(laplace_instances(4), 200):
        count += 1
        _check(failures, f"laplace N=4 {c}", lambda: laplace_check(A4, *c))
    _record(10, "Laplace expansions and minor/Y commutation", failures, f"{count} instances")


# ---------------------------------------------------------------- 11

def test_ac11_observation_o():
    failures = []
    for n in (2, 3):
        A = algebra(n)
        for i in range(n + 1):
            for o in ("x", "y"):
                _check(failures, f"sigma N={n} i={i} {o}",
                       lambda: observation_o(sigma_cb(A, i, o, structured=True)))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                _check(failures, f"numerator N={n} ({i},{j})",
                       lambda: observation_o(inverse_numerator(A, i, j, structured=True)))
    s2 = t_project(power_sum(algebra(2, "one"), 2))
    (word,) = parse_expr("T[1,1]^2*T[2,2]^2", algebra(2, "tquot")).terms
    _check(failures, "witness -q^3(q-q^-1)T11^2T22^2 in s(2)",
           lambda: s2.coefficient(word) == -(Q ** 3) * (Q - q_power(-1)))
    _record(11, "Observation (O) and the s(2) witness", failures)


# ---------------------------------------------------------------- 12

def test_ac12_rewriting_well_defined():
    failures = []
    A = Algebra(3)
    codes = gen_codes(A)
    rnd = random.Random(12)
    trials = 10_000
    for k in range(trials):
        w = tuple(rnd.choice(codes) for _ in range(rnd.randint(1, 6)))
        i = rnd.randint(0, len(w))
        j = rnd.randint(i, len(w))
        a, b, c = A.word(w[:i]), A.word(w[i:j]), A.word(w[j:])
        whole = A.normalize(A.word(w))
        left = A.normalize(A.normalize(a * b) * c)
        right = A.normalize(a * A.normalize(b * c))
        if not (left == right == whole):
            failures.append(f"associativity {w} split {i},{j}")
        if A.normalize(whole) is not whole or A.normalize(
                type(whole)(A, dict(whole.terms))) != whole:
            failures.append(f"idempotence {w}")
        if random_rewrite(A, A.word(w), rnd) != whole:
            failures.append(f"strategy dependence {w}")
    rnd = random.Random(13)
    rounds = 1000
    for k in range(rounds):
        mode = ("multi", "one", "tquot")[k % 3]
        B = algebra(rnd.randint(1, 3), mode)
        p = B.normalize(random_word_poly(B, rnd, 4, 3) * rnd.choice((1, -2)) * Q)
        if parse_expr(render(p, "text"), B) != p:
            failures.append(f"round trip {render(p)}")
    _record(12, "Rewriting well-definedness and parser round trip", failures,
            f"{trials} trials, {rounds} round trips")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
