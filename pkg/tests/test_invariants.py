import itertools

import pytest
import sympy as sp

from qcb.exprio import parse_expr, render
from qcb.invariants_ch import (classical_image, coefficient_set, is_central, load_table1,
                               observation_o, power_sum, power_sum_yx, sigma_cb,
                               sigma_from_power_sums, sigma_jw, t_project, table1_check,
                               to_one_param, verify_cayley_hamilton, verify_centrality,
                               verify_invariance, verify_newton, xy_power)
from qcb.ncpoly import algebra
from qcb.scalars import Q, q_power
from qcb.tensor_r import gps_sigma

from conftest import classical_to_sympy, classical_xy


def TQ(src, n=2):
    return parse_expr(src, algebra(n, "tquot"))


# ---------------------------------------------------------------- small values

def test_sigma_zero_and_one():
    A = algebra(2)
    assert sigma_cb(A, 0) == A.one()
    # sigma(1) = s(1) = Tr(D^2 XY)
    assert sigma_cb(A, 1) == power_sum(A, 1)
    assert power_sum(A, 0) == A.scalar(1 + Q ** 2)
    with pytest.raises(ValueError):
        sigma_cb(A, 3)
    with pytest.raises(ValueError):
        sigma_cb(A, 1, "z")


@pytest.mark.parametrize("n", [2, 3])
def test_orderings_and_gps_agree(n):
    A = algebra(n)
    for i in range(n + 1):
        x, y = sigma_cb(A, i, "x"), sigma_cb(A, i, "y")
        assert x == y
        assert x == gps_sigma(n, i)


def test_sigma_top_n2_closed_form():
    # sigma(N) = q^{(N-1)N} T_11^2 ... T_NN^2 in the T-quotient
    assert t_project(sigma_cb(algebra(2, "one"), 2)) == TQ("q^2*T[1,1]^2*T[2,2]^2")


# ---------------------------------------------------------------- Newton / CH

@pytest.mark.parametrize("n", [2, 3])
def test_newton(n):
    A = algebra(n)
    for k in range(1, n + 1):
        assert verify_newton(A, k)


@pytest.mark.parametrize("n", [2, 3])
def test_newton_solution_reproduces_sigma(n):
    A = algebra(n)
    for k in range(n + 1):
        assert sigma_from_power_sums(A, k) == sigma_cb(A, k)


@pytest.mark.parametrize("n,mode", [(2, "multi"), (3, "multi"), (2, "one"), (3, "tquot")])
def test_cayley_hamilton(n, mode):
    assert verify_cayley_hamilton(algebra(n, mode))


def test_cayley_hamilton_fails_for_wrong_coefficient():
    # negative control: perturbing sigma(1) breaks the identity
    A = algebra(2)
    m0, m1, m2 = xy_power(A, 0), xy_power(A, 1), xy_power(A, 2)
    bad = sigma_cb(A, 1) + A.scalar(Q)
    entry = A.normalize(m2.rows[0][0] - bad * m1.rows[0][0] + sigma_cb(A, 2) * m0.rows[0][0])
    assert not entry.is_zero()


def test_power_sum_orderings():
    # Tr(D^2 (XY)^k) = Tr(D'^2 (YX)^k)
    for n in (2, 3):
        A = algebra(n)
        for k in range(3):
            assert power_sum(A, k) == power_sum_yx(A, k)


def test_coefficient_set():
    cs = coefficient_set(algebra(2))
    assert cs.n == 2 and len(cs.values) == 3 and len(cs.power_sums) == 3


# ---------------------------------------------------------------- JW

@pytest.mark.parametrize("n", [2, 3])
def test_jw_agreement(n):
    one, multi = algebra(n, "one"), algebra(n)
    for i in range(n + 1):
        ref = to_one_param(sigma_cb(multi, i))
        assert sigma_jw(one, i) == ref
        assert sigma_jw(one, i, "anti-exceedance") == ref
        assert ref == sigma_cb(one, i)


def test_jw_singleton_example():
    A = algebra(2, "one")
    a = xy_power(A, 1)
    assert sigma_jw(A, 1) == A.normalize(a[1, 1] + a[2, 2] * Q ** 2)


def test_jw_rejects_multi():
    with pytest.raises(ValueError):
        sigma_jw(algebra(2), 1)


# ---------------------------------------------------------------- symmetry

@pytest.mark.parametrize("n", [2, 3])
def test_invariance_and_centrality(n):
    A = algebra(n)
    for i in range(n + 1):
        assert verify_invariance(A, i)
        assert verify_centrality(A, i)


def test_non_central_control():
    A = algebra(2)
    assert not is_central(A, A.x(1, 1))
    assert not is_central(A, A.x(1, 1) * A.y(1, 1))


# ---------------------------------------------------------------- T-quotient and Table 1

def test_table1():
    ok, detail = table1_check(detail=True)
    assert ok, [c for c, r in detail if not r]
    assert len(load_table1()["cells"]) == 14


def test_table1_cross_terms_present():
    tq = algebra(3, "tquot")
    cells = {(c["n"], c["i"], c["column"]): c["text"] for c in load_table1()["cells"]}
    assert "- q*T[1,2]*T[2,3]*T[2,2]*Tstar[1,3]" in cells[(3, 2, 1)]
    assert "- q^3*Tstar[1,2]*Tstar[2,3]*T[2,2]*T[1,3]" in cells[(3, 2, 2)]
    got = t_project(sigma_cb(algebra(3, "one"), 2))
    assert got == tq.normalize(parse_expr(cells[(3, 2, 1)], tq, normalize=False))


def test_table1_render():
    assert render(t_project(sigma_cb(algebra(2, "one"), 2)), "text") == "q^2*T[1,1]^2*T[2,2]^2"


def test_tquot_direct_matches_projection():
    for n in (2, 3):
        tq, one = algebra(n, "tquot"), algebra(n, "one")
        for i in range(n + 1):
            assert sigma_cb(tq, i) == t_project(sigma_cb(one, i))


def test_t_project_kills_lower_entries():
    A = algebra(2, "one")
    assert t_project(A.x(2, 1) * A.y(1, 1)).is_zero()
    assert t_project(A.x(1, 1)) == t_project(A.y(1, 1))


# ---------------------------------------------------------------- observation (O)

@pytest.mark.parametrize("n", [2, 3])
def test_observation_o_on_structured_sigma(n):
    A = algebra(n)
    for i in range(n + 1):
        assert observation_o(sigma_cb(A, i, "x", structured=True))
        assert observation_o(sigma_cb(A, i, "y", structured=True))


def test_power_sum_witness_term():
    # s(2), N = 2, in the T-quotient (Tstar before T ordering)
    s2 = t_project(power_sum(algebra(2, "one"), 2))
    w = TQ("T[1,1]^2*T[2,2]^2").terms
    (word,) = w
    assert s2.coefficient(word) == -(Q ** 3) * (Q - q_power(-1))
    assert not observation_o(s2)


# ---------------------------------------------------------------- classical limit

def _classical_sigma(n, i):
    x, y = classical_xy(n)
    a = x * y
    total = 0
    for J in itertools.combinations(range(n), i):
        total += a.extract(list(J), list(J)).det()
    return sp.expand(total)


@pytest.mark.parametrize("n", [2, 3])
def test_classical_sigma_and_power_sums(n):
    A = algebra(n)
    x, y = classical_xy(n)
    for i in range(n + 1):
        got = classical_to_sympy(classical_image(sigma_cb(A, i)))
        assert sp.expand(got - _classical_sigma(n, i)) == 0
    for k in range(3):
        got = classical_to_sympy(classical_image(power_sum(A, k)))
        assert sp.expand(got - ((x * y) ** k).trace()) == 0
