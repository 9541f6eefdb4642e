from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from qcb.scalars import (ONE, Q, T_VAR, ZERO, DenominatorVanishes, NotDivisible,
                         ParamSpace, Scalar, as_q_fraction, canonical_param,
                         conjugate_scalar, cyclotomic, exact_divide, one_param_scalar,
                         param, prime_scalar, q_binomial, q_factorial, q_number,
                         q_power, specialize_scalar)

from conftest import Q_SYM, T_SYM, p_sym, scalar_to_sympy, sym_equal


def _mono(q=0, t=0, p12=0, p13=0, p23=0, c=1):
    exps = {0: q, 1: t}
    out = Scalar.coerce(c) * Scalar.monomial({k: v for k, v in exps.items() if v})
    for (i, j), e in (((1, 2), p12), ((1, 3), p13), ((2, 3), p23)):
        if e:
            out = out * param(i, j) ** e if e > 0 else exact_divide(out, param(i, j) ** -e)
    return out


monomials = st.builds(_mono, q=st.integers(-4, 4), t=st.integers(0, 2),
                      p12=st.integers(-2, 2), p13=st.integers(-1, 1), p23=st.integers(-1, 1),
                      c=st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4)))


@st.composite
def scalars(draw, with_den=True):
    s = ZERO
    for m in draw(st.lists(monomials, min_size=0, max_size=4)):
        s = s + m
    if with_den and draw(st.booleans()):
        s = exact_divide(s, q_number(draw(st.integers(1, 4))))
    return s


def _sym(s):
    return scalar_to_sympy(s)


# ---------------------------------------------------------------- ring laws vs sympy

@given(scalars(), scalars())
def test_add_mul_match_sympy(a, b):
    assert sym_equal(_sym(a + b), _sym(a) + _sym(b))
    assert sym_equal(_sym(a * b), _sym(a) * _sym(b))
    assert sym_equal(_sym(a - b), _sym(a) - _sym(b))


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(scalars())
def test_equality_is_canonical(a):
    # building the same value two ways gives identical structure and hash
    b = (a * (ONE + Q)) * exact_divide(ONE, ONE + Q)
    assert a == b
    assert hash(a) == hash(b)


# ---------------------------------------------------------------- parameters

def test_param_relation_multi():
    sp_ = ParamSpace(3)
    for i in range(1, 4):
        assert canonical_param(i, i, sp_) == ONE
        for j in range(1, 4):
            if i != j:
                assert canonical_param(i, j, sp_) * canonical_param(j, i, sp_) == Q * Q


def test_param_one_param_mode():
    sp_ = ParamSpace(3, "one")
    assert canonical_param(2, 1, sp_) == Q
    assert canonical_param(1, 3, sp_) == Q


def test_param_range():
    with pytest.raises(IndexError):
        canonical_param(1, 4, ParamSpace(3))
    with pytest.raises(ValueError):
        param(2, 1)


# ---------------------------------------------------------------- q-combinatorics

@pytest.mark.parametrize("n,expected", [(0, 0), (1, 1), (2, 1 + Q_SYM ** 2),
                                        (3, 1 + Q_SYM ** 2 + Q_SYM ** 4)])
def test_q_number(n, expected):
    assert sym_equal(_sym(q_number(n)), expected)


def test_q_number_at_one_is_n():
    for n in range(6):
        assert specialize_scalar(q_number(n), {"q": 1}).constant() == n


def test_q_factorial_and_binomial():
    assert q_factorial(0) == ONE
    assert sym_equal(_sym(q_factorial(3)), (1 + Q_SYM ** 2) * (1 + Q_SYM ** 2 + Q_SYM ** 4))
    for n in range(6):
        for i in range(n + 1):
            b = q_binomial(n, i)
            assert b.is_polynomial()
            assert specialize_scalar(b, {"q": 1}).constant() == sp.binomial(n, i)
    # Pascal rule in the q^2 convention
    for n in range(1, 6):
        for i in range(1, n):
            assert q_binomial(n, i) == q_binomial(n - 1, i - 1) * q_power(2 * (n - i)) \
                + q_binomial(n - 1, i)


def test_cyclotomic_matches_sympy():
    for e in range(1, 25):
        poly = sp.Poly(sp.cyclotomic_poly(e, Q_SYM), Q_SYM)
        assert list(cyclotomic(e)) == [int(c) for c in reversed(poly.all_coeffs())]


# ---------------------------------------------------------------- division

def test_exact_divide_q_factorials():
    for n in range(1, 7):
        inv = exact_divide(ONE, q_factorial(n))
        assert inv * q_factorial(n) == ONE


@given(scalars(), st.integers(1, 5), st.integers(-3, 3))
def test_exact_divide_roundtrip(a, k, shift):
    b = q_number(k) * q_power(shift) * 3
    assert exact_divide(a * b, b) == a
    assert exact_divide(a, b) * b == a


def test_exact_divide_rejects_non_cyclotomic():
    with pytest.raises(NotDivisible):
        exact_divide(ONE, Q + 2)
    with pytest.raises(NotDivisible):
        exact_divide(ONE, Q + T_VAR)
    with pytest.raises(ZeroDivisionError):
        exact_divide(ONE, ZERO)


def test_as_q_fraction():
    s = exact_divide(ONE, ONE - Q * Q)
    num, ms = as_q_fraction(s)
    assert ms == [1] and num == ONE
    s = exact_divide(Q, q_number(2) * q_number(3))
    num, ms = as_q_fraction(s)
    back = Scalar.from_fraction(num, ms)
    assert back == s
    assert as_q_fraction(Q + 1) == (Q + 1, [])


# ---------------------------------------------------------------- involutions

@given(scalars())
def test_conjugate_is_involutive_automorphism(a):
    assert conjugate_scalar(conjugate_scalar(a)) == a


@given(scalars(), scalars())
def test_conjugate_multiplicative(a, b):
    assert conjugate_scalar(a * b) == conjugate_scalar(a) * conjugate_scalar(b)
    assert prime_scalar(a * b, 3) == prime_scalar(a, 3) * prime_scalar(b, 3)


@given(scalars())
def test_prime_scalar_involutive(a):
    assert prime_scalar(prime_scalar(a, 3), 3) == a


def test_conjugate_swaps_params():
    assert conjugate_scalar(param(1, 2)) == q_power(2) * exact_divide(ONE, param(1, 2))


def test_prime_scalar_values():
    sp3 = ParamSpace(3)
    # q_12 -> q_{3,2} = q^2 / q_23
    assert prime_scalar(param(1, 2), 3) == canonical_param(3, 2, sp3)
    assert prime_scalar(param(1, 3), 3) == canonical_param(3, 1, sp3)


# ---------------------------------------------------------------- specialization

@given(scalars(with_den=False), st.integers(-3, 3).filter(bool), st.integers(-3, 3))
def test_specialize_matches_sympy(a, qv, tv):
    got = specialize_scalar(a, {"q": qv, "t": tv, "p[1,2]": 2, (1, 3): 1, "p[2,3]": -1})
    want = _sym(a).subs({Q_SYM: qv, T_SYM: tv, p_sym(1, 2): 2, p_sym(1, 3): 1,
                         p_sym(2, 3): -1})
    assert got.constant() == Fraction(int(sp.numer(want)), int(sp.denom(want)))


def test_specialize_denominator_vanishes():
    s = exact_divide(ONE, q_number(2))          # 1 / (1 + q^2) has no rational zero
    assert specialize_scalar(s, {"q": 1}).constant() == Fraction(1, 2)
    s = exact_divide(ONE, ONE - Q * Q)
    with pytest.raises(DenominatorVanishes):
        specialize_scalar(s, {"q": 1})
    with pytest.raises(DenominatorVanishes):
        specialize_scalar(Q, {"q": 0})


def test_one_param_scalar():
    s = param(1, 2) * param(2, 3) + Q
    assert one_param_scalar(s) == Q * Q + Q
    assert one_param_scalar(exact_divide(param(1, 3), param(1, 2))) == ONE
