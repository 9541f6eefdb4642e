import os
import random

import pytest
import sympy as sp
from hypothesis import HealthCheck, settings

from qcb.ncpoly import ONE, _acc, _prune, algebra, col_of, kind_of, row_of
from qcb.scalars import Scalar, pair_of, unpack

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

Q_SYM, T_SYM = sp.symbols("q t")


def p_sym(i, j):
    return sp.Symbol(f"p{i}{j}")


def scalar_to_sympy(s: Scalar):
    """Independent evaluation of a Scalar as a sympy rational function."""
    from qcb.scalars import cyclotomic
    num = sp.Integer(0)
    for key, c in s.terms.items():
        term = sp.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else c
        for v, e in unpack(key).items():
            if v == 0:
                term *= Q_SYM ** e
            elif v == 1:
                term *= T_SYM ** e
            else:
                term *= p_sym(*pair_of(v)) ** e
        num += term
    den = sp.Integer(1)
    for e in s.den:
        den *= sum(c * Q_SYM ** k for k, c in enumerate(cyclotomic(e)))
    return num / den


def sym_equal(a, b) -> bool:
    return sp.simplify(sp.together(a - b)) == 0


def word_of(g):
    """Generator NCPoly -> its single letter code."""
    (w,), = [tuple(g.terms)]
    (letter,) = w
    return letter


def gen_codes(alg):
    return [word_of(g) for g in alg.generators()]


def random_word_poly(alg, rng, max_len, max_terms=2):
    codes = gen_codes(alg)
    p = alg.zero()
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(codes) for _ in range(rng.randint(0, max_len)))
        p = p + alg.word(w, Scalar({0: rng.choice((1, -1, 2))}))
    return p


def random_rewrite(alg, p, rng):
    """Normal form reached by rewriting at random reducible positions."""
    terms = dict(p.terms)
    done: dict = {}
    while terms:
        w = rng.choice(list(terms))
        c = terms.pop(w)
        bad = [k for k in range(len(w) - 1) if not alg.in_order(w[k], w[k + 1])]
        if not bad:
            _acc(done, w, c)
            continue
        k = rng.choice(bad)
        for c2, g1, g2 in alg.rule(w[k], w[k + 1]):
            _acc(terms, w[:k] + (g1, g2) + w[k + 2:], c * c2)
        terms = _prune(terms)
    from qcb.ncpoly import NCPoly
    return NCPoly(alg, _prune(done), True)


def classical_symbol(g):
    name = {1: "x", 0: "y"}[kind_of(g)]
    return sp.Symbol(f"{name}{row_of(g)}{col_of(g)}")


def classical_to_sympy(image: dict):
    """{sorted word: Scalar in t} -> sympy polynomial in commuting x_ij, y_ij."""
    out = 0
    for w, c in image.items():
        term = scalar_to_sympy(c)
        for g in w:
            term *= classical_symbol(g)
        out += term
    return sp.expand(out)


def classical_xy(n):
    x = sp.Matrix(n, n, lambda i, j: sp.Symbol(f"x{i + 1}{j + 1}"))
    y = sp.Matrix(n, n, lambda i, j: sp.Symbol(f"y{i + 1}{j + 1}"))
    return x, y


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
