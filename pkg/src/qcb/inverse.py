"""Cleared inverse of tI + XY (and tI + YX) via quantum minors."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .invariants_ch import sigma_cb, t_project, to_one_param
from .minors import quantum_minor, subsets, subset_factor
from .ncpoly import NCMatrix, NCPoly, Algebra, _acc, _prune, algebra
from .scalars import T_VAR, q_power, specialize_scalar

__all__ = ["ClearedInverse", "inverse_numerator", "numerator_matrix", "c_n_poly",
           "cleared_inverse", "verify_inverse", "inverse_yx_numerator",
           "verify_inverse_yx", "woronowicz_check", "WORONOWICZ", "sigma_n_minus_1",
           "specialize_t", "numerator_terms"]


@dataclass
class ClearedInverse:
    n: int
    numerator: NCMatrix
    charpoly: NCPoly


def _check(alg, i, j):
    n = alg.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"entry ({i}, {j}) outside 1..{n}")


def numerator_terms(alg: Algebra, i: int, j: int):
    """[(coefficient, K, L), ...] for the (i, j) entry, before expanding minors."""
    _check(alg, i, j)
    n = alg.n
    out = []
    for size in range(1, n + 1):
        for K in subsets(n, size):
            if i not in K or j not in K:
                continue
            c = (T_VAR ** (n - size) * subset_factor(K, i, "k<J", alg.space)
                 * subset_factor(K, j, "J>k", alg.space))
            Ki = tuple(k for k in K if k != i)
            Kj = tuple(k for k in K if k != j)
            for L in subsets(n, size - 1):
                out.append((c, Ki, Kj, L))
    return out


@lru_cache(maxsize=None)
def _numerator_structured(alg: Algebra, i: int, j: int) -> NCPoly:
    terms: dict = {}
    for c, Ki, Kj, L in numerator_terms(alg, i, j):
        p = quantum_minor(alg, "D'Y", L, Ki) * quantum_minor(alg, "XD'", Kj, L)
        for w, d in p.terms.items():
            _acc(terms, w, c * d)
    return NCPoly(alg, _prune(terms))


def inverse_numerator(alg: Algebra, i: int, j: int, structured: bool = False) -> NCPoly:
    """Entry (i, j) of P with P (tI + XY) = C_N I."""
    p = _numerator_structured(alg, i, j)
    return p if structured else alg.normalize(p)


def numerator_matrix(alg: Algebra) -> NCMatrix:
    n = alg.n
    return NCMatrix(alg, [[inverse_numerator(alg, i, j) for j in range(1, n + 1)]
                          for i in range(1, n + 1)])


def c_n_poly(alg: Algebra) -> NCPoly:
    n = alg.n
    out = alg.zero()
    for k in range(n + 1):
        out = out + sigma_cb(alg, k) * (T_VAR ** (n - k))
    return alg.normalize(out)


def cleared_inverse(alg: Algebra) -> ClearedInverse:
    return ClearedInverse(alg.n, numerator_matrix(alg), c_n_poly(alg))


def _t_plus(alg, yx=False):
    m = (alg.Y @ alg.X) if yx else (alg.X @ alg.Y)
    return (m + alg.identity().scale(T_VAR)).normalize()


def _is_scalar_matrix(m: NCMatrix, c: NCPoly) -> bool:
    alg = c.alg
    n = alg.n
    for a in range(n):
        for b in range(n):
            want = c if a == b else alg.zero()
            if not alg.normalize(m.rows[a][b] - want).is_zero():
                return False
    return True


def verify_inverse(alg: Algebra, sides: str = "both") -> bool:
    """P (tI+XY) = C_N I and (tI+XY) P = C_N I."""
    P = numerator_matrix(alg)
    A = _t_plus(alg)
    c = c_n_poly(alg)
    ok = True
    if sides in ("both", "left"):
        ok = ok and _is_scalar_matrix(P @ A, c)
    if sides in ("both", "right"):
        ok = ok and _is_scalar_matrix(A @ P, c)
    return ok


def inverse_yx_numerator(alg: Algebra, i: int, j: int) -> NCPoly:
    """Entry (i, j) of P' with P' (tI + YX) = C_N I, as the prime image."""
    _check(alg, i, j)
    n = alg.n
    return alg.normalize(inverse_numerator(alg, n + 1 - j, n + 1 - i).prime())


def verify_inverse_yx(alg: Algebra) -> bool:
    n = alg.n
    P = NCMatrix(alg, [[inverse_yx_numerator(alg, i, j) for j in range(1, n + 1)]
                       for i in range(1, n + 1)])
    A = _t_plus(alg, yx=True)
    c = c_n_poly(alg)
    return _is_scalar_matrix(P @ A, c) and _is_scalar_matrix(A @ P, c)


def specialize_t(p: NCPoly, value) -> NCPoly:
    return p.map_coefficients(lambda c: specialize_scalar(c, {"t": value}))


# (I + T*T)^{-1} for N = 2, cleared by C_2
WORONOWICZ = {
    "entries": [["1 + q^2*T[2,2]^2 + T[1,2]*Tstar[1,2]", "-T[1,1]*T[1,2]"],
                ["-Tstar[1,2]*T[1,1]", "1 + q^2*T[1,1]^2"]],
    "c2": "1 + q^2*T[1,1]^2 + T[2,2]^2 + Tstar[1,2]*T[1,2] + q^2*T[1,1]^2*T[2,2]^2",
}


def woronowicz_check(detail: bool = False):
    """N = 2, t = 1: projected YX numerator and C_2 against the known closed form."""
    from .exprio import parse_expr
    one = algebra(2, "one")
    tq = algebra(2, "tquot")
    results = []
    for i in (1, 2):
        for j in (1, 2):
            got = t_project(specialize_t(inverse_yx_numerator(one, i, j), 1))
            want = parse_expr(WORONOWICZ["entries"][i - 1][j - 1], tq)
            results.append(((i, j), got == want))
    got = t_project(specialize_t(c_n_poly(one), 1))
    results.append(("C2", got == parse_expr(WORONOWICZ["c2"], tq)))
    ok = all(r for _, r in results)
    return (ok, results) if detail else ok


def sigma_n_minus_1(alg: Algebra) -> NCPoly:
    """sigma(N-1) as sum_i q^{-2(N-i)} P_ii at t = 0."""
    n = alg.n
    out = alg.zero()
    for i in range(1, n + 1):
        out = out + specialize_t(inverse_numerator(alg, i, i), 0) * q_power(-2 * (n - i))
    return alg.normalize(out)
