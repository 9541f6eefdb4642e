"""Noncommutative polynomials in the generators X_ij, Y_ij and normal ordering.

Generators are small ints ``kind << 8 | row << 4 | col``; a word is a tuple
of generators.  An :class:`NCPoly` is a map word -> :class:`Scalar`.

Normal form (XY alphabet): a Y-block followed by an X-block.  The X-block is
nondecreasing in (row, col); the Y-block is the star-image of such a block,
i.e. nonincreasing in (col, row).  Normal forms are computed by inserting one
generator at a time into an already-normal prefix, always rewriting at the
junction; for a normal prefix that junction is the leftmost reducible spot.

The T-quotient alphabet (``mode="tquot"``) has T_ij (i<j), its adjoint
Tstar_ij, and the self-adjoint diagonal D_i = T_ii.  Its normal form is
Tstar-block, D-block, T-block; rules are the XY rules applied to a lift of the
offending pair, projected back through X_ij -> 0 (i > j), X_ii = Y_ii.
"""
from __future__ import annotations

import os
import sys
from fractions import Fraction
from typing import Iterable, Iterator

from .scalars import (ONE, ZERO, Q, ParamSpace, Scalar, canonical_param,
                      conjugate_scalar, prime_scalar, q_power)

# generator kinds; the order of the numbers is the block order of normal forms
Y, X = 0, 1
TS, D, T = 2, 3, 4
KIND_NAMES = {Y: "Y", X: "X", TS: "Tstar", D: "T", T: "T"}

DEFAULT_TERM_CAP = 10 ** 6


class ResourceLimit(RuntimeError):
    """Raised instead of silently truncating an exploding computation."""


def gen(kind: int, row: int, col: int) -> int:
    return (kind << 8) | (row << 4) | col


def kind_of(g: int) -> int:
    return g >> 8


def row_of(g: int) -> int:
    return (g >> 4) & 15


def col_of(g: int) -> int:
    return g & 15


def _smul(a: Scalar, b: Scalar) -> Scalar:
    if a is ONE:
        return b
    if b is ONE:
        return a
    return a * b


def _acc(d: dict, w, c: Scalar) -> None:
    old = d.get(w)
    d[w] = c if old is None else old + c


def _prune(d: dict) -> dict:
    return {w: c for w, c in d.items() if c.terms}


def term_cap_from_env() -> int:
    return int(os.environ.get("QCB_TERM_CAP", DEFAULT_TERM_CAP))


class Algebra:
    """The *-algebra O_{q,Q}^R(M_N(C)) (or its T-quotient) at fixed N.

    ``mode``: ``"multi"`` (free q_ij), ``"one"`` (q_ij = q) or ``"tquot"``
    (one-parameter T-quotient).  Normal-form caches live on the instance; use
    :func:`algebra` to share instances.
    """

    def __init__(self, n: int, mode: str = "multi", term_cap: int | None = None):
        if mode not in ("multi", "one", "tquot"):
            raise ValueError(f"unknown mode {mode!r}")
        if not 1 <= n <= 15:
            raise ValueError("N must be between 1 and 15")
        self.n = n
        self.mode = mode
        self.space = ParamSpace(n, "multi" if mode == "multi" else "one")
        self.term_cap = term_cap if term_cap is not None else term_cap_from_env()
        self._rules: dict = {}
        self._app: dict = {}
        self._nf: dict = {}
        self.derived: dict = {}          # per-instance cache for higher-level modules
        self._lift = algebra(n, "one") if mode == "tquot" else None

    def __repr__(self):
        return f"Algebra(n={self.n}, mode={self.mode!r})"

    # ------------------------------------------------------------ elements
    def param(self, i: int, j: int) -> Scalar:
        return canonical_param(i, j, self.space)

    def zero(self) -> "NCPoly":
        return NCPoly(self, {}, True)

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): ONE}, True)

    def scalar(self, s) -> "NCPoly":
        s = Scalar.coerce(s)
        return NCPoly(self, {(): s} if s.terms else {}, True)

    def word(self, w: Iterable[int], c=ONE) -> "NCPoly":
        c = Scalar.coerce(c)
        return NCPoly(self, {tuple(w): c} if c.terms else {})

    def generator(self, kind: int, i: int, j: int) -> "NCPoly":
        self._check(i, j)
        if self.mode == "tquot":
            if kind in (X, Y):
                raise ValueError("use T/Tstar generators in the T-quotient")
            if kind == D or (kind == T and i == j):
                return NCPoly(self, {(gen(D, i, i),): ONE}, True)
            if kind == TS and i == j:
                return NCPoly(self, {(gen(D, i, i),): ONE}, True)
            if i > j:
                return self.zero()
            return NCPoly(self, {(gen(kind, i, j),): ONE}, True)
        if kind not in (X, Y):
            raise ValueError("T generators only exist in the T-quotient")
        return NCPoly(self, {(gen(kind, i, j),): ONE}, True)

    def x(self, i: int, j: int) -> "NCPoly":
        return self.generator(X, i, j)

    def y(self, i: int, j: int) -> "NCPoly":
        return self.generator(Y, i, j)

    def t(self, i: int, j: int) -> "NCPoly":
        return self.generator(T, i, j)

    def tstar(self, i: int, j: int) -> "NCPoly":
        return self.generator(TS, i, j)

    def generators(self) -> list["NCPoly"]:
        n = self.n
        if self.mode == "tquot":
            gens = [self.t(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
            gens += [self.tstar(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
            return gens
        return [self.generator(k, i, j) for k in (X, Y)
                for i in range(1, n + 1) for j in range(1, n + 1)]

    def matrix(self, kind: int) -> "NCMatrix":
        n = self.n
        return NCMatrix(self, [[self.generator(kind, i, j) for j in range(1, n + 1)]
                               for i in range(1, n + 1)])

    @property
    def X(self) -> "NCMatrix":
        return self.matrix(T if self.mode == "tquot" else X)

    @property
    def Y(self) -> "NCMatrix":
        if self.mode == "tquot":
            return self.X.star()
        return self.matrix(Y)

    def identity(self) -> "NCMatrix":
        return self.diag([ONE] * self.n)

    def diag(self, entries) -> "NCMatrix":
        n = len(entries)
        return NCMatrix(self, [[self.scalar(entries[i]) if i == j else self.zero()
                                for j in range(n)] for i in range(n)])

    def D(self) -> "NCMatrix":
        """diag(1, q, ..., q^(N-1))."""
        return self.diag([q_power(k) for k in range(self.n)])

    def Dprime(self) -> "NCMatrix":
        """diag(q^(N-1), ..., q, 1)."""
        return self.diag([q_power(self.n - 1 - k) for k in range(self.n)])

    def _check(self, i: int, j: int) -> None:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"generator index ({i},{j}) out of range for N={self.n}")

    # ------------------------------------------------------------ order
    @staticmethod
    def in_order(a: int, b: int) -> bool:
        ka, kb = a >> 8, b >> 8
        if ka != kb:
            return ka < kb
        if ka == Y:
            # (col, row) nonincreasing
            return ((a & 15) << 4 | (a >> 4) & 15) >= ((b & 15) << 4 | (b >> 4) & 15)
        if ka == TS:
            return (a & 0xFF) >= (b & 0xFF)
        return (a & 0xFF) <= (b & 0xFF)

    def is_normal_word(self, w: tuple) -> bool:
        return all(self.in_order(w[k], w[k + 1]) for k in range(len(w) - 1))

    # ------------------------------------------------------------ rules
    def rule(self, a: int, b: int) -> list[tuple[Scalar, int, int]]:
        """Rewrite of the reducible pair a*b as sum c * g1*g2."""
        key = (a, b)
        r = self._rules.get(key)
        if r is None:
            r = self._t_rule(a, b) if self.mode == "tquot" else self._xy_rule(a, b)
            self._rules[key] = r
        return r

    def _xy_rule(self, a: int, b: int) -> list:
        ka, kb = a >> 8, b >> 8
        if ka == X and kb == X:
            return self._xx_rule(a, b)
        if ka == Y and kb == Y:
            # star-image of the XX rule for star(b) star(a)
            out = []
            for c, g1, g2 in self._xx_rule(_star_gen(b), _star_gen(a)):
                out.append((conjugate_scalar(c), _star_gen(g2), _star_gen(g1)))
            return out
        if ka == X and kb == Y:
            return self._xy_swap(a, b)
        raise AssertionError(f"pair {a:#x},{b:#x} is not reducible")

    def _xx_rule(self, a: int, b: int) -> list:
        i, j = row_of(a), col_of(a)
        k, l = row_of(b), col_of(b)
        p = self.param
        if i > k:
            inv = _inverse_monomial(p(i, k))
            out = [(inv * p(j, l), gen(X, k, l), gen(X, i, j))]
            if j > l:
                out.append((inv * (ONE - Q * Q), gen(X, k, j), gen(X, i, l)))
            return out
        if i == k and j > l:
            return [(p(j, l) * q_power(-2), gen(X, i, l), gen(X, i, j))]
        raise AssertionError("XX pair already ordered")

    def _xy_swap(self, a: int, b: int) -> list:
        """X_ij Y_kl in Y-before-X form."""
        n = self.n
        i, j = row_of(a), col_of(a)
        k, l = row_of(b), col_of(b)
        p = self.param
        one_minus = ONE - Q * Q
        terms: dict = {}

        def add(c, g1, g2):
            _acc(terms, (g1, g2), c)

        add(p(i, l), gen(Y, k, l), gen(X, i, j))
        if i == l:
            for m in range(i + 1, n + 1):
                add(one_minus, gen(Y, k, m), gen(X, m, j))
        if j == k:
            for m, c, g1, g2 in _sum_xy_terms(self, i, j, l):
                add(-one_minus * c, g1, g2)
        inv = _inverse_monomial(p(j, k))
        return [(inv * c, g1, g2) for (g1, g2), c in terms.items() if c.terms]

    def _t_rule(self, a: int, b: int) -> list:
        lift = self._lift
        ka, kb = a >> 8, b >> 8
        la = _lift_gen(a, X)
        lb = _lift_gen(b, Y if (ka == T and kb == D) else X)
        out: dict = {}
        for c, g1, g2 in lift._xy_rule(la, lb):
            p1, p2 = _project_gen(g1), _project_gen(g2)
            if p1 is None or p2 is None:
                continue
            _acc(out, (p1, p2), c)
        if (a, b) in out:
            raise AssertionError(f"T rule for {a:#x},{b:#x} is not decreasing")
        return [(c, g1, g2) for (g1, g2), c in out.items() if c.terms]

    # ------------------------------------------------------------ normal form
    def _append(self, word: tuple, g: int) -> dict:
        key = (word, g)
        r = self._app.get(key)
        if r is not None:
            return r
        if not word or self.in_order(word[-1], g):
            r = {word + (g,): ONE}
        else:
            prefix = word[:-1]
            r = {}
            for c, b, d in self.rule(word[-1], g):
                for w1, c1 in self._append(prefix, b).items():
                    c01 = _smul(c, c1)
                    for w2, c2 in self._append(w1, d).items():
                        _acc(r, w2, _smul(c01, c2))
            r = _prune(r)
            if len(r) > self.term_cap:
                raise ResourceLimit(f"normal form exceeds term cap {self.term_cap}")
        self._app[key] = r
        return r

    def normal_form_of_word(self, word: tuple) -> dict:
        r = self._nf.get(word)
        if r is not None:
            return r
        if len(word) <= 1:
            r = {word: ONE}
        else:
            r = {}
            last = word[-1]
            for w, c in self.normal_form_of_word(word[:-1]).items():
                for w2, c2 in self._append(w, last).items():
                    _acc(r, w2, _smul(c, c2))
            r = _prune(r)
        self._nf[word] = r
        return r

    def normalize(self, p: "NCPoly") -> "NCPoly":
        if p.normalized:
            return p
        try:
            out = self._normalize_terms(p.terms)
        except RecursionError as exc:  # pragma: no cover - a nonterminating rule set
            raise ResourceLimit("rewriting did not terminate") from exc
        return NCPoly(self, out, True)

    def _normalize_terms(self, terms: dict) -> dict:
        # Group by last letter and normalize the prefix sums first, so that
        # words sharing a suffix are merged (and cancel) before appending.
        out: dict = {}
        groups: dict = {}
        for w, c in terms.items():
            if self.is_normal_word(w):
                _acc(out, w, c)
            else:
                _acc(groups.setdefault(w[-1], {}), w[:-1], c)
        for g, sub in groups.items():
            for w2, c2 in self._normalize_terms(_prune(sub)).items():
                for w3, c3 in self._append(w2, g).items():
                    _acc(out, w3, _smul(c2, c3))
            if len(out) > self.term_cap:
                raise ResourceLimit(f"normalize exceeds term cap {self.term_cap}")
        return _prune(out)

    def equal(self, a: "NCPoly", b: "NCPoly") -> bool:
        return self.normalize(a - b).is_zero()

    # ------------------------------------------------------------ involutions
    def star(self, p: "NCPoly") -> "NCPoly":
        terms: dict = {}
        for w, c in p.terms.items():
            _acc(terms, tuple(_star_gen(g) for g in reversed(w)), conjugate_scalar(c))
        out = NCPoly(self, _prune(terms), False)
        if p.normalized:
            if self.mode == "tquot":
                return self.normalize(out)
            out.normalized = True
        return out

    def prime(self, p: "NCPoly") -> "NCPoly":
        n = self.n
        terms: dict = {}
        for w, c in p.terms.items():
            _acc(terms, tuple(_prime_gen(g, n) for g in reversed(w)), prime_scalar(c, n))
        out = NCPoly(self, _prune(terms), False)
        return self.normalize(out) if p.normalized else out


def _inverse_monomial(s: Scalar) -> Scalar:
    (k, c), = s.terms.items()
    return Scalar({-k: 1 if c == 1 else 1 / c})


def _star_gen(g: int) -> int:
    k, r, c = g >> 8, (g >> 4) & 15, g & 15
    if k == X:
        return gen(Y, c, r)
    if k == Y:
        return gen(X, c, r)
    if k == T:
        return gen(TS, r, c)
    if k == TS:
        return gen(T, r, c)
    return g


def _prime_gen(g: int, n: int) -> int:
    k, r, c = g >> 8, (g >> 4) & 15, g & 15
    return gen(k, n + 1 - c, n + 1 - r)


def _lift_gen(g: int, diag_kind: int) -> int:
    k, r, c = g >> 8, (g >> 4) & 15, g & 15
    if k == T:
        return gen(X, r, c)
    if k == TS:
        return gen(Y, c, r)
    return gen(diag_kind, r, r)


def _project_gen(g: int):
    k, r, c = g >> 8, (g >> 4) & 15, g & 15
    if k == X:
        if r > c:
            return None
        return gen(D, r, r) if r == c else gen(T, r, c)
    if r < c:
        return None
    return gen(D, r, r) if r == c else gen(TS, c, r)


def _sum_xy_terms(alg: Algebra, i: int, j: int, l: int) -> Iterator:
    """Terms of sum_{m<j} X_im Y_ml rewritten with Y first."""
    one_minus = ONE - Q * Q
    p = alg.param
    for m in range(1, j):
        w = q_power(2 * (j - m - 1))
        yield m, w * p(i, l), gen(Y, m, l), gen(X, i, m)
        if i == l:
            for k in range(i + 1, alg.n + 1):
                yield m, w * one_minus, gen(Y, m, k), gen(X, k, m)


def sum_xy_closed_form(alg: Algebra, i: int, j: int, l: int) -> "NCPoly":
    """Closed form of sum_{m=1}^{j-1} X_im Y_ml with every Y before every X."""
    for idx in (i, j, l):
        if not 1 <= idx <= alg.n:
            raise IndexError("index out of range")
    terms: dict = {}
    for _, c, g1, g2 in _sum_xy_terms(alg, i, j, l):
        _acc(terms, (g1, g2), c)
    return NCPoly(alg, _prune(terms))


_ALGEBRAS: dict = {}


def algebra(n: int, mode: str = "multi") -> Algebra:
    """Shared :class:`Algebra` instance per (n, mode)."""
    alg = _ALGEBRAS.get((n, mode))
    if alg is None:
        alg = _ALGEBRAS[(n, mode)] = Algebra(n, mode)
    return alg


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class NCPoly:
    """Finite map word -> Scalar over a fixed :class:`Algebra`.

    Arithmetic never normalizes; call :meth:`normalize` when a canonical form
    is needed.  ``normalized`` is True only when every word is normal.
    """
    __slots__ = ("alg", "terms", "normalized")

    def __init__(self, alg: Algebra, terms: dict | None = None, normalized: bool = False):
        self.alg = alg
        self.terms = terms if terms is not None else {}
        self.normalized = normalized

    def _coerce(self, other) -> "NCPoly | None":
        if isinstance(other, NCPoly):
            if other.alg is not self.alg:
                raise ValueError("polynomials belong to different algebras")
            return other
        try:
            return self.alg.scalar(Scalar.coerce(other))
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _acc(terms, w, c)
        return NCPoly(self.alg, _prune(terms), self.normalized and other.normalized)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alg, {w: -c for w, c in self.terms.items()}, self.normalized)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            s = Scalar.coerce(other)
            if not s.terms:
                return self.alg.zero()
            return NCPoly(self.alg, _prune({w: c * s for w, c in self.terms.items()}),
                          self.normalized)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _acc(terms, w1 + w2, _smul(c1, c2))
        if len(terms) > self.alg.term_cap:
            raise ResourceLimit(f"product exceeds term cap {self.alg.term_cap}")
        return NCPoly(self.alg, _prune(terms))

    def __rmul__(self, other):
        if isinstance(other, NCPoly):
            return other.__mul__(self)
        s = Scalar.coerce(other)
        if not s.terms:
            return self.alg.zero()
        return NCPoly(self.alg, _prune({w: s * c for w, c in self.terms.items()}),
                      self.normalized)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a noncommutative polynomial")
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, NCPoly) else other
        if other is None:
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def normalize(self) -> "NCPoly":
        return self.alg.normalize(self)

    def star(self) -> "NCPoly":
        return self.alg.star(self)

    def prime(self) -> "NCPoly":
        return self.alg.prime(self)

    def map_coefficients(self, f) -> "NCPoly":
        terms: dict = {}
        for w, c in self.terms.items():
            _acc(terms, w, f(c))
        return NCPoly(self.alg, _prune(terms), self.normalized)

    def coefficient(self, word) -> Scalar:
        return self.terms.get(tuple(word), ZERO)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        from .exprio import render
        return render(self, "text")

    def __repr__(self):
        return f"NCPoly({str(self)!r})"


class NCMatrix:
    """Rectangular matrix of :class:`NCPoly` entries."""

    def __init__(self, alg: Algebra, rows: list[list[NCPoly]]):
        self.alg = alg
        self.rows = [list(r) for r in rows]
        if any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged matrix")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __matmul__(self, other: "NCMatrix") -> "NCMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "NCMatrix") -> "NCMatrix":
        if self.shape != other.shape:
            raise ValueError("dimension mismatch")
        return NCMatrix(self.alg, [[a + b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "NCMatrix") -> "NCMatrix":
        return self + other.scale(-1)

    def scale(self, s) -> "NCMatrix":
        return NCMatrix(self.alg, [[s * a for a in r] for r in self.rows])

    def left_scale(self, p: NCPoly) -> "NCMatrix":
        """p * entry, with p placed on the left."""
        return NCMatrix(self.alg, [[p * a for a in r] for r in self.rows])

    def normalize(self) -> "NCMatrix":
        return NCMatrix(self.alg, [[a.normalize() for a in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(a.normalize().is_zero() for r in self.rows for a in r)

    def star(self) -> "NCMatrix":
        return mat_star(self)

    def prime(self) -> "NCMatrix":
        return mat_prime(self)

    def __pow__(self, k: int) -> "NCMatrix":
        n, m = self.shape
        if n != m:
            raise ValueError("power of a non-square matrix")
        out = self.alg.diag([ONE] * n)
        for _ in range(k):
            out = mat_mul(out, self)
        return out

    def trace(self) -> NCPoly:
        out = self.alg.zero()
        for i in range(min(self.shape)):
            out = out + self.rows[i][i]
        return out

    def __eq__(self, other):
        return isinstance(other, NCMatrix) and self.rows == other.rows

    def __repr__(self):
        return "NCMatrix(" + repr([[str(a) for a in r] for r in self.rows]) + ")"


def mat_mul(a: NCMatrix, b: NCMatrix) -> NCMatrix:
    """Entrywise sum_k a_ik b_kj, factor order preserved, nothing normalized."""
    (n, m), (m2, p) = a.shape, b.shape
    if m != m2:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    alg = a.alg
    rows = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = alg.zero()
            for k in range(m):
                x, y = a.rows[i][k], b.rows[k][j]
                if x.terms and y.terms:
                    acc = acc + x * y
            row.append(acc)
        rows.append(row)
    return NCMatrix(alg, rows)


def mat_star(a: NCMatrix) -> NCMatrix:
    n, m = a.shape
    return NCMatrix(a.alg, [[a.rows[j][i].star() for j in range(n)] for i in range(m)])


def mat_prime(a: NCMatrix) -> NCMatrix:
    """(A')_ij = (a_{n-j+1, m-i+1})'."""
    n, m = a.shape
    return NCMatrix(a.alg, [[a.rows[n - 1 - j][m - 1 - i].prime() for j in range(n)]
                            for i in range(m)])


def weighted_trace(weight: NCMatrix, m: NCMatrix, normalize: bool = False) -> NCPoly:
    """sum_i (weight @ m)_ii."""
    if weight.shape != m.shape or weight.shape[0] != weight.shape[1]:
        raise ValueError("weighted_trace needs square matrices of equal size")
    out = mat_mul(weight, m).trace()
    return out.normalize() if normalize else out
