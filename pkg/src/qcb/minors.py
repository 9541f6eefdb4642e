"""Permutation statistics, quantum minors, Laplace expansions and the
minor/generator commutation rule."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .ncpoly import Algebra, NCPoly, X, Y, _acc, _prune
from .scalars import ONE, Q, ParamSpace, Scalar, canonical_param, q_power

__all__ = ["perm_stats", "perm_factor", "subset_factor", "quantum_minor", "subsets",
           "weight", "laplace_instances", "minor_y_instances", "laplace_check",
           "laplace_sides", "commute_minor_past_y",
           "minor_y_terms", "check_sum_xy_lemma", "check_minor_sum_lemma",
           "general_minor_sum", "BASES"]

BASES = ("X", "Y", "DX", "XD'", "YD", "D'Y")


def subsets(n: int, size: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, n + 1), size))


def weight(J) -> int:
    return sum(J)


def perm_stats(sigma) -> dict[str, int]:
    """length, exceedance and anti-exceedance of a permutation.

    ``sigma`` is a dict (domain -> image) or a tuple of images of 1..n.
    """
    if not isinstance(sigma, dict):
        sigma = {a + 1: v for a, v in enumerate(sigma)}
    dom = sorted(sigma)
    length = sum(1 for a, b in combinations(dom, 2) if sigma[a] > sigma[b])
    return {"length": length,
            "exceedance": sum(1 for a in dom if sigma[a] > a),
            "anti_exceedance": sum(1 for a in dom if sigma[a] < a)}


def _space(alg_or_space) -> ParamSpace:
    return alg_or_space if isinstance(alg_or_space, ParamSpace) else alg_or_space.space


def perm_factor(sigma, side: str, space) -> Scalar:
    """(-q)_{sigma,r} (side='row') or (-q)_{sigma,c} (side='col')."""
    sp = _space(space)
    if not isinstance(sigma, dict):
        sigma = {a + 1: v for a, v in enumerate(sigma)}
    dom = sorted(sigma)
    out = ONE
    for a, b in combinations(dom, 2):
        sa, sb = sigma[a], sigma[b]
        if sa > sb:
            out = out * -(canonical_param(sa, sb, sp) if side == "row"
                          else canonical_param(sb, sa, sp))
    return out


def subset_factor(J, k: int, mode: str, space) -> Scalar:
    """(-q)_{J<k}, (-q)_{k<J}, (-q)_{J>k}, (-q)_{k>J} or q_{Jk}."""
    sp = _space(space)
    p = lambda a, b: canonical_param(a, b, sp)
    out = ONE
    for j in J:
        if mode == "J<k" and j < k:
            out = out * -p(j, k)
        elif mode == "k<J" and k < j:
            out = out * -p(k, j)
        elif mode == "J>k" and j > k:
            out = out * -p(j, k)
        elif mode == "k>J" and k > j:
            out = out * -p(k, j)
        elif mode == "qJk":
            out = out * p(j, k)
        elif mode not in ("J<k", "k<J", "J>k", "k>J", "qJk"):
            raise ValueError(f"unknown subset mode {mode!r}")
    return out


def _inv(s: Scalar) -> Scalar:
    # subset factors are signed monomials
    (k, c), = s.terms.items()
    return Scalar({-k: c})  # c is +-1


@lru_cache(maxsize=None)
def _x_minor(alg: Algebra, J: tuple, K: tuple) -> NCPoly:
    if len(J) != len(K):
        raise ValueError("minor needs |J| = |K|")
    if not J:
        return alg.one()
    xm = alg.X
    terms: dict = {}
    for tau in permutations(range(len(K))):
        cols = {a + 1: K[t] for a, t in enumerate(tau)}
        c = perm_factor(cols, "col", alg)
        p = NCPoly(alg, {(): c})
        for a, j in enumerate(J):
            p = p * xm[j, cols[a + 1]]
        for w, cw in p.terms.items():
            _acc(terms, w, cw)
    return NCPoly(alg, _prune(terms))


def quantum_minor(alg: Algebra, base: str, J, K) -> NCPoly:
    """[base]_{J,K} in the canonical row form (unnormalized)."""
    J, K = tuple(sorted(J)), tuple(sorted(K))
    if len(J) != len(K):
        raise ValueError("minor needs |J| = |K|")
    n, i = alg.n, len(J)
    if base == "X":
        return _x_minor(alg, J, K)
    if base == "Y":
        return _y_minor(alg, J, K)
    if base == "DX":
        return _x_minor(alg, J, K) * q_power(weight(J) - i)
    if base == "XD'":
        return _x_minor(alg, J, K) * q_power(i * n - weight(K))
    if base == "YD":
        return _y_minor(alg, J, K) * q_power(weight(K) - i)
    if base == "D'Y":
        return _y_minor(alg, J, K) * q_power(i * n - weight(J))
    raise ValueError(f"unknown minor base {base!r}")


@lru_cache(maxsize=None)
def _y_minor(alg: Algebra, J: tuple, K: tuple) -> NCPoly:
    m = _x_minor(alg, K, J)
    terms: dict = {}
    from .ncpoly import _star_gen
    from .scalars import conjugate_scalar
    for w, c in m.terms.items():
        _acc(terms, tuple(_star_gen(g) for g in reversed(w)), conjugate_scalar(c))
    return NCPoly(alg, _prune(terms))


def general_minor_sum(alg: Algebra, fixed: tuple, other: tuple, fix: str = "rows") -> NCPoly:
    """One side of the row/column agreement for a map that may repeat values.

    ``fix='rows'``: q^{-2l(sigma)} sum over injective tau: [i] -> other of
    (-q)_{sigma,r} (-q)_{tau,c} X_{sigma(1) tau(1)} ... with sigma = ``fixed``.
    ``fix='cols'`` swaps the roles (tau = ``fixed``, sigma runs over ``other``).
    """
    xm = alg.X
    i = len(fixed)
    fmap = {a + 1: v for a, v in enumerate(fixed)}
    base = perm_factor(fmap, "row" if fix == "rows" else "col", alg) \
        * q_power(-2 * perm_stats(fmap)["length"])
    terms: dict = {}
    for perm in permutations(sorted(other), i):
        pmap = {a + 1: v for a, v in enumerate(perm)}
        p = NCPoly(alg, {(): base * perm_factor(pmap, "col" if fix == "rows" else "row", alg)})
        for a in range(i):
            r, c = (fixed[a], perm[a]) if fix == "rows" else (perm[a], fixed[a])
            p = p * xm[r, c]
        for w, cw in p.terms.items():
            _acc(terms, w, cw)
    return NCPoly(alg, _prune(terms))


# ---------------------------------------------------------------- Laplace

def _minus(J, x):
    return tuple(v for v in J if v != x)


def laplace_sides(alg: Algebra, form: int, J, L, j: int, l: int) -> tuple[NCPoly, NCPoly]:
    """(delta_{jl}[X]_{J,L}, expansion) for one of the four expansions."""
    J, L = tuple(sorted(J)), tuple(sorted(L))
    sf = lambda S, k, mode: subset_factor(S, k, mode, alg)
    xm = alg.X
    lhs = quantum_minor(alg, "X", J, L) if j == l else alg.zero()
    terms = alg.zero()
    if form == 1:
        if not (j in J and l in J):
            raise ValueError("form 1 needs j, l in J")
        for k in L:
            terms = terms + xm[j, k] * quantum_minor(alg, "X", _minus(J, l), _minus(L, k)) \
                * sf(L, k, "J<k")
        rhs = terms * _inv(sf(J, l, "J<k"))
    elif form == 2:
        if not (j in L and l in L):
            raise ValueError("form 2 needs j, l in L")
        for k in J:
            terms = terms + xm[k, j] * quantum_minor(alg, "X", _minus(J, k), _minus(L, l)) \
                * sf(J, k, "k>J")
        rhs = terms * _inv(sf(L, l, "k>J"))
    elif form == 3:
        if not (j in J and l in J):
            raise ValueError("form 3 needs j, l in J")
        for k in L:
            terms = terms + quantum_minor(alg, "X", _minus(J, j), _minus(L, k)) * xm[l, k] \
                * sf(L, k, "k<J")
        rhs = terms * _inv(sf(J, j, "k<J"))
    elif form == 4:
        if not (j in L and l in L):
            raise ValueError("form 4 needs j, l in L")
        for k in J:
            terms = terms + quantum_minor(alg, "X", _minus(J, k), _minus(L, j)) * xm[k, l] \
                * sf(J, k, "J>k")
        rhs = terms * _inv(sf(L, j, "J>k"))
    else:
        raise ValueError("form must be 1..4")
    return lhs, rhs


def laplace_check(alg: Algebra, form: int, J, L, j: int, l: int, kind: str = "X") -> bool:
    """Exact check of a Laplace expansion; kind='Y' checks its star image."""
    lhs, rhs = laplace_sides(alg, form, J, L, j, l)
    if kind == "Y":
        lhs, rhs = lhs.star(), rhs.star()
    return alg.equal(lhs, rhs)


# ---------------------------------------------------------------- minors and Y

def _pos_from_large(m: int, beta: int, K) -> int:
    free = sorted((v for v in range(1, beta) if v not in K), reverse=True)
    return free.index(m) + 1


def _y_then_minor(alg, J, K, beta, alpha):
    """Right-hand side pieces of the minor/Y relation: list of (c, Y(b,a), J', K')."""
    sf = lambda S, k, mode: subset_factor(S, k, mode, alg)
    one_minus = ONE - Q * Q
    qja = sf(J, alpha, "qJk")
    out = [(qja, beta, alpha, J, K)]
    if alpha in J:
        pre = one_minus * qja * _inv(sf(J, alpha, "J<k"))
        Ja = _minus(J, alpha)
        for l in range(alpha + 1, alg.n + 1):
            if l in J:
                continue
            out.append((pre * sf(Ja, l, "J<k"), beta, l, tuple(sorted(Ja + (l,))), K))
    return out


def minor_y_terms(alg: Algebra, J, K, beta: int, alpha: int) -> list:
    """[X]_{J,K} Y_{beta,alpha} as a list of (c, (row, col) of Y, J', K')
    meaning c * Y_{row,col} [X]_{J',K'}."""
    J, K = tuple(sorted(J)), tuple(sorted(K))
    sf = lambda S, k, mode: subset_factor(S, k, mode, alg)
    one_minus = ONE - Q * Q
    qkb_inv = _inv_monomial(sf(K, beta, "qJk"))
    out = [(c * qkb_inv, (b, a), J2, K2) for c, b, a, J2, K2 in _y_then_minor(alg, J, K, beta, alpha)]
    if beta in K:
        Kb = _minus(K, beta)
        # residual sum resolved by the closed form (positions counted from large to small)
        pre = -one_minus * _inv(sf(K, beta, "J>k"))
        for m in range(1, beta):
            if m in K:
                continue
            Km = tuple(sorted(Kb + (m,)))
            c0 = pre * q_power(2 * (_pos_from_large(m, beta, K) - 1)) * sf(Kb, m, "J>k") \
                * _inv_monomial(sf(Kb, m, "qJk"))
            for c, b, a, J2, K2 in _y_then_minor(alg, J, Km, m, alpha):
                out.append((c0 * c, (b, a), J2, K2))
    return out


def _inv_monomial(s: Scalar) -> Scalar:
    (k, c), = s.terms.items()
    return Scalar({-k: 1 if c == 1 else 1 / c})


def commute_minor_past_y(alg: Algebra, J, K, beta: int, alpha: int) -> NCPoly:
    """[X]_{J,K} Y_{beta,alpha} rewritten with every Y to the left of the minors."""
    out = alg.zero()
    for c, (b, a), J2, K2 in minor_y_terms(alg, J, K, beta, alpha):
        out = out + (alg.y(b, a) * quantum_minor(alg, "X", J2, K2)) * c
    return out


# ---------------------------------------------------------------- partial-sum lemmas

def check_sum_xy_lemma(alg: Algebra, i: int, j: int, l: int, alpha: int) -> bool:
    """Partial telescoping of sum_{m<j} X_im Y_ml after alpha steps."""
    if not 1 <= alpha <= j - 1:
        raise ValueError("need 1 <= alpha <= j-1")
    one_minus = ONE - Q * Q
    p = alg.param
    lhs = alg.zero()
    for m in range(1, j):
        lhs = lhs + alg.x(i, m) * alg.y(m, l)
    rhs = alg.zero()
    for m in range(j - alpha, j):
        inner = alg.y(m, l) * alg.x(i, m) * p(i, l)
        if i == l:
            for k in range(i + 1, alg.n + 1):
                inner = inner + alg.y(m, k) * alg.x(k, m) * one_minus
        rhs = rhs + inner * q_power(2 * (j - m - 1))
    for m in range(1, j - alpha):
        rhs = rhs + alg.x(i, m) * alg.y(m, l) * q_power(2 * alpha)
    return alg.equal(lhs, rhs)


def check_minor_sum_lemma(alg: Algebra, J, K, beta: int, alpha: int, gamma: int) -> bool:
    """Partial sums (first gamma free columns below beta) of the minor/Y lemma."""
    J, K = tuple(sorted(J)), tuple(sorted(K))
    if beta not in K:
        raise ValueError("need beta in K")
    free = [m for m in range(1, beta) if m not in K]
    if not 1 <= gamma <= len(free):
        raise ValueError("need 1 <= gamma <= mu")
    Kb = _minus(K, beta)
    sf = lambda S, k, mode: subset_factor(S, k, mode, alg)
    lhs = alg.zero()
    rhs = alg.zero()
    for r, m in enumerate(free[:gamma], start=1):
        Km = tuple(sorted(Kb + (m,)))
        lhs = lhs + quantum_minor(alg, "X", J, Km) * alg.y(m, alpha) * sf(Kb, m, "J>k")
        c0 = q_power(2 * (gamma - r)) * sf(Kb, m, "J>k") * _inv_monomial(sf(Km, m, "qJk"))
        for c, b, a, J2, K2 in _y_then_minor(alg, J, Km, m, alpha):
            rhs = rhs + (alg.y(b, a) * quantum_minor(alg, "X", J2, K2)) * (c0 * c)
    return alg.equal(lhs, rhs)


def laplace_instances(n: int, sizes=None):
    """Every legal (form, J, L, j, l) for the four expansions."""
    out = []
    for i in sizes or range(1, n + 1):
        for J in subsets(n, i):
            for L in subsets(n, i):
                for form in (1, 2, 3, 4):
                    S = J if form in (1, 3) else L
                    out += [(form, J, L, j, l) for j in S for l in S]
    return out


def minor_y_instances(n: int):
    """Every (J, K, beta, alpha) for the minor/Y commutation rule."""
    return [(J, K, b, a) for i in range(1, n + 1) for J in subsets(n, i)
            for K in subsets(n, i) for b in range(1, n + 1) for a in range(1, n + 1)]
