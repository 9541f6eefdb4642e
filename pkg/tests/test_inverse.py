import itertools

import pytest
import sympy as sp

from qcb.exprio import parse_expr
from qcb.invariants_ch import (classical_image, is_central, observation_o, sigma_cb,
                               t_project)
from qcb.inverse import (WORONOWICZ, c_n_poly, cleared_inverse, inverse_numerator,
                         inverse_yx_numerator, numerator_matrix, sigma_n_minus_1,
                         specialize_t, verify_inverse, verify_inverse_yx,
                         woronowicz_check)
from qcb.ncpoly import algebra
from qcb.scalars import T_VAR

from conftest import T_SYM, classical_to_sympy, classical_xy


def P(src, n=2, mode="multi"):
    return parse_expr(src, algebra(n, mode))


def test_numerator_examples_n2():
    A = algebra(2)
    assert inverse_numerator(A, 1, 1) == P("t + q^2*(q^2*Y[1,2]*X[2,1] + Y[2,2]*X[2,2])")
    assert inverse_numerator(A, 1, 2) == P("-p[1,2]*(q^2*Y[1,2]*X[1,1] + Y[2,2]*X[1,2])")
    with pytest.raises(IndexError):
        inverse_numerator(A, 0, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_two_sided_inverse(n):
    assert verify_inverse(algebra(n))


@pytest.mark.parametrize("n", [2, 3])
def test_yx_variant(n):
    assert verify_inverse_yx(algebra(n))


def test_one_param_inverse():
    assert verify_inverse(algebra(3, "one"))


def test_wrong_numerator_is_rejected():
    # negative control: dropping the t-term breaks P (tI + XY) = C_N I
    A = algebra(2)
    P0 = numerator_matrix(A)
    P0.rows[0][0] = P0.rows[0][0] - A.scalar(T_VAR)
    M = (A.X @ A.Y + A.identity().scale(T_VAR)).normalize()
    lhs = A.normalize((P0 @ M).rows[0][0] - c_n_poly(A))
    assert not lhs.is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_c_n_central_and_prime_invariant(n):
    A = algebra(n)
    c = c_n_poly(A)
    assert is_central(A, c)
    assert A.equal(c.prime(), c)
    assert A.equal(c.star(), c)
    # leading coefficient in t is sigma(0) = 1, constant term sigma(N)
    assert A.equal(specialize_t(c, 0), sigma_cb(A, n))


def test_cleared_inverse_bundle():
    ci = cleared_inverse(algebra(2))
    assert ci.n == 2 and ci.charpoly == c_n_poly(algebra(2))


@pytest.mark.parametrize("n", [2, 3])
def test_t_zero_gives_xy_inverse(n):
    A = algebra(n)
    P0 = numerator_matrix(A)
    P0 = type(P0)(A, [[specialize_t(e, 0) for e in row] for row in P0.rows])
    prod = (P0 @ (A.X @ A.Y)).normalize()
    for a in range(n):
        for b in range(n):
            want = sigma_cb(A, n) if a == b else A.zero()
            assert A.equal(prod.rows[a][b], want)


@pytest.mark.parametrize("n", [2, 3])
def test_sigma_n_minus_1_cross_check(n):
    A = algebra(n)
    assert sigma_n_minus_1(A) == sigma_cb(A, n - 1)


@pytest.mark.parametrize("n", [2, 3])
def test_observation_o_on_numerators(n):
    A = algebra(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            assert observation_o(inverse_numerator(A, i, j, structured=True))


def test_woronowicz():
    ok, detail = woronowicz_check(detail=True)
    assert ok, detail
    one = algebra(2, "one")
    got = t_project(specialize_t(inverse_yx_numerator(one, 1, 1), 1))
    assert got == P(WORONOWICZ["entries"][0][0], mode="tquot")
    assert t_project(specialize_t(c_n_poly(one), 1)) == P(WORONOWICZ["c2"], mode="tquot")


@pytest.mark.parametrize("n", [2, 3])
def test_classical_degeneration(n):
    A = algebra(n)
    x, y = classical_xy(n)
    a = x * y
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            want = 0
            for size in range(1, n + 1):
                for K in itertools.combinations(range(1, n + 1), size):
                    if i not in K or j not in K:
                        continue
                    sign = (-1) ** (sum(k > i for k in K) + sum(k > j for k in K))
                    rows = [k - 1 for k in K if k != j]
                    cols = [k - 1 for k in K if k != i]
                    want += T_SYM ** (n - size) * sign * a.extract(rows, cols).det()
            got = classical_to_sympy(classical_image(inverse_numerator(A, i, j)))
            assert sp.expand(got - want) == 0, (i, j)
