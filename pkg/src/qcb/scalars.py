"""Exact scalars: Laurent polynomials in q, t and the q_ij (i < j) over Q.

A monomial is packed into a single Python int: the exponent of variable v sits
in a signed base-2**32 digit at position v (q is v=0, t is v=1, q_ij is
v=2+pair_index).  Multiplying monomials is then integer addition.

Denominators are products of cyclotomic polynomials Phi_e(q).  Every factor
1 - q^(2m) splits into such Phi_e (e | 2m) and the Phi_e are pairwise
non-associate irreducibles, so a numerator with no Phi_e left to cancel gives
a unique representation.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

__all__ = [
    "Scalar", "ParamSpace", "NotDivisible", "DenominatorVanishes",
    "ZERO", "ONE", "Q", "T_VAR", "param", "canonical_param", "q_power",
    "q_number", "q_factorial", "q_binomial", "conjugate_scalar",
    "prime_scalar", "specialize_scalar", "exact_divide", "cyclotomic",
    "one_param_scalar", "as_q_fraction",
]

W = 32
BASE = 1 << W
HALF = 1 << (W - 1)
MASK = BASE - 1

Number = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Quotient leaves the ring with cyclotomic-in-q denominators."""


class DenominatorVanishes(ZeroDivisionError):
    """A specialization makes a stored denominator vanish."""


@dataclass(frozen=True)
class ParamSpace:
    """Matrix size and parameter mode.

    ``mode`` is ``"multi"`` (free q_ij, i<j) or ``"one"`` (q_ij = q).
    """
    n: int
    mode: str = "multi"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("N must be >= 1")
        if self.mode not in ("multi", "one"):
            raise ValueError(f"unknown parameter mode {self.mode!r}")


# ---------------------------------------------------------------- monomials

def pair_index(i: int, j: int) -> int:
    """Variable slot of q_ij, i < j; independent of N."""
    return 2 + (j - 1) * (j - 2) // 2 + (i - 1)


@lru_cache(maxsize=None)
def pair_of(v: int) -> tuple[int, int]:
    k = v - 2
    j = 2
    while (j - 1) * j // 2 <= k:
        j += 1
    return k - (j - 1) * (j - 2) // 2 + 1, j


def var_key(v: int, e: int = 1) -> int:
    return e << (W * v)


def unpack(key: int) -> dict[int, int]:
    out = {}
    v = 0
    while key:
        d = key & MASK
        if d >= HALF:
            d -= BASE
        if d:
            out[v] = d
        key = (key - d) >> W
        v += 1
    return out


def pack(exps: Mapping[int, int]) -> int:
    key = 0
    for v, e in exps.items():
        key += e << (W * v)
    return key


def q_exp(key: int) -> int:
    d = key & MASK
    return d - BASE if d >= HALF else d


def var_name(v: int) -> str:
    if v == 0:
        return "q"
    if v == 1:
        return "t"
    i, j = pair_of(v)
    return f"p[{i},{j}]"


@lru_cache(maxsize=None)
def _sort_key(key: int) -> tuple:
    exps = unpack(key)
    pairs = sorted((pair_of(v), e) for v, e in exps.items() if v >= 2)
    return (sum(exps.values()), exps.get(0, 0), exps.get(1, 0),
            tuple((ij, e) for ij, e in pairs))


# ---------------------------------------------------------------- cyclotomics

@lru_cache(maxsize=None)
def cyclotomic(e: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the e-th cyclotomic polynomial."""
    num = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            num, rem = _udivmod(num, list(cyclotomic(d)))
            assert not any(rem)
    return tuple(num)


def _udivmod(a: list, b: list):
    """Long division of dense univariate polys; b monic."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [0], a
    quot = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if c:
            quot[k] = c
            for m in range(db + 1):
                a[k + m] -= c * b[m]
    return quot, a[:db] if db else [0]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------- term maps

def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _mul_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        (kb, cb), = b.items()
        if type(cb) is int and cb == 1:
            return {ka + kb: ca for ka, ca in a.items()}
        return {ka + kb: _clean(ca * cb) for ka, ca in a.items()}
    out: dict = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: _clean(c) for k, c in out.items() if c}


def _add_terms(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    get = out.get
    for k, c in b.items():
        v = get(k, 0) + sign * c
        if v:
            out[k] = _clean(v)
        else:
            out.pop(k, None)
    return out


def _phi_terms(e: int) -> dict:
    return {var_key(0, k): c for k, c in enumerate(cyclotomic(e)) if c}


def _div_phi(terms: dict, e: int):
    """terms / Phi_e(q), or None if not exact."""
    groups: dict[int, dict[int, Number]] = {}
    for k, c in terms.items():
        qe = q_exp(k)
        groups.setdefault(k - qe, {})[qe] = c
    phi = list(cyclotomic(e))
    out = {}
    for rest, uni in groups.items():
        lo = min(uni)
        dense = [0] * (max(uni) - lo + 1)
        for qe, c in uni.items():
            dense[qe - lo] = c
        quot, rem = _udivmod(dense, phi)
        if any(rem):
            return None
        for m, c in enumerate(quot):
            if c:
                out[rest + var_key(0, lo + m)] = _clean(c)
    return out


def _cancel(terms: dict, den: Counter) -> tuple[dict, tuple]:
    if not terms:
        return {}, ()
    for e in sorted(den):
        while den[e] > 0:
            quot = _div_phi(terms, e)
            if quot is None:
                break
            terms = quot
            den[e] -= 1
    return terms, tuple(sorted(den.elements()))


# ---------------------------------------------------------------- Scalar

class Scalar:
    """Immutable element of Q[q^±, t, q_ij^±] localized at the Phi_e(q).

    ``terms`` maps packed monomials to rational coefficients; ``den`` is a
    sorted tuple of cyclotomic indices e, the denominator being prod Phi_e(q).
    """
    __slots__ = ("terms", "den", "_hash")

    def __init__(self, terms: dict | None = None, den: tuple = ()):
        self.terms = terms if terms is not None else {}
        self.den = den
        self._hash = None

    # -- constructors
    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls({0: _clean(x)} if x else {})
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def monomial(cls, exps: Mapping[int, int], c: Number = 1) -> "Scalar":
        return cls({pack(exps): c} if c else {})

    @classmethod
    def from_fraction(cls, num: "Scalar", den_factors: Iterable[int]) -> "Scalar":
        """num / prod(1 - q^(2m)) for m in den_factors."""
        den: Counter = Counter()
        terms = dict(num.terms)
        for e in num.den:
            den[e] += 1
        for m in den_factors:
            if m <= 0:
                raise ValueError("denominator factors must be positive")
            terms = {k: -c for k, c in terms.items()}
            for e in _divisors(2 * m):
                den[e] += 1
        terms, d = _cancel(terms, den)
        return cls(terms, d)

    # -- predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return not self.den and self.terms == {0: 1}

    def is_monomial(self) -> bool:
        return not self.den and len(self.terms) == 1

    def is_polynomial(self) -> bool:
        return not self.den

    def constant(self):
        """Rational value if constant, else None."""
        if self.den:
            return None
        if not self.terms:
            return 0
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        return None

    def variables(self) -> set[int]:
        out = set()
        for k in self.terms:
            out.update(unpack(k))
        return out

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        if not self.den and not other.den:
            return Scalar(_add_terms(self.terms, other.terms))
        return self._slow_add(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.terms:
            return self
        if not self.den and not other.den:
            return Scalar(_add_terms(self.terms, other.terms, -1))
        return self._slow_add(other, -1)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __neg__(self):
        return Scalar({k: -c for k, c in self.terms.items()}, self.den)

    def _slow_add(self, other: "Scalar", sign: int) -> "Scalar":
        da, db = Counter(self.den), Counter(other.den)
        lcm = da | db
        ta = self.terms
        for e, m in (lcm - da).items():
            for _ in range(m):
                ta = _mul_terms(ta, _phi_terms(e))
        tb = other.terms
        for e, m in (lcm - db).items():
            for _ in range(m):
                tb = _mul_terms(tb, _phi_terms(e))
        terms, den = _cancel(_add_terms(ta, tb, sign), Counter(lcm))
        return Scalar(terms, den)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return ZERO
                return Scalar({k: _clean(c * other) for k, c in self.terms.items()}, self.den)
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO
        terms = _mul_terms(self.terms, other.terms)
        if not self.den and not other.den:
            return Scalar(terms)
        terms, den = _cancel(terms, Counter(self.den) + Counter(other.den))
        return Scalar(terms, den)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        return exact_divide(self, Scalar.coerce(other))

    def __rtruediv__(self, other):
        return exact_divide(Scalar.coerce(other), self)

    def __pow__(self, n: int):
        if n < 0:
            return exact_divide(ONE, self) ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, key: int) -> "Scalar":
        """Multiply by a packed monomial."""
        return Scalar({k + key: c for k, c in self.terms.items()}, self.den)

    # -- comparison
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.den == other.den and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.terms.items()), self.den))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[int, Number]]:
        return sorted(self.terms.items(), key=lambda kc: _sort_key(kc[0]))

    def __str__(self):
        from .exprio import render_scalar
        return render_scalar(self)

    def __repr__(self):
        return f"Scalar({str(self)!r})"


ZERO = Scalar()
ONE = Scalar({0: 1})
Q = Scalar({var_key(0): 1})
T_VAR = Scalar({var_key(1): 1})


def q_power(k: int) -> Scalar:
    return Scalar({var_key(0, k): 1})


def param(i: int, j: int) -> Scalar:
    """The free variable q_ij, i < j."""
    if not i < j:
        raise ValueError("free parameters are q_ij with i < j")
    return Scalar({var_key(pair_index(i, j)): 1})


def canonical_param(i: int, j: int, space: ParamSpace) -> Scalar:
    """q_ij expressed in the basis q, q_ab (a < b), using q_ij q_ji = q^2."""
    if not (1 <= i <= space.n and 1 <= j <= space.n):
        raise IndexError(f"parameter index ({i},{j}) out of range for N={space.n}")
    return _canonical_param(i, j, space.mode == "one")


@lru_cache(maxsize=None)
def _canonical_param(i: int, j: int, one: bool) -> Scalar:
    if i == j:
        return ONE
    if one:
        return Q
    if i < j:
        return param(i, j)
    return Scalar({var_key(0, 2) - var_key(pair_index(j, i)): 1})


# ---------------------------------------------------------------- q-combinatorics

@lru_cache(maxsize=None)
def q_number(n: int) -> Scalar:
    """[n] = 1 + q^2 + ... + q^(2(n-1))."""
    if n < 0:
        raise ValueError("q_number needs n >= 0")
    return Scalar({var_key(0, 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> Scalar:
    out = ONE
    for k in range(1, n + 1):
        out = out * q_number(k)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, i: int) -> Scalar:
    if not 0 <= i <= n:
        raise ValueError("q_binomial needs 0 <= i <= n")
    out = exact_divide(q_factorial(n), q_factorial(i) * q_factorial(n - i))
    if out.den:
        raise AssertionError("q-binomial left a denominator")
    return out


# ---------------------------------------------------------------- involutions

@lru_cache(maxsize=None)
def _conj_key(key: int) -> int:
    out = 0
    for v, e in unpack(key).items():
        if v >= 2:
            out += var_key(0, 2 * e) - var_key(v, e)
        else:
            out += var_key(v, e)
    return out


def conjugate_scalar(s: Scalar) -> Scalar:
    """q -> q, t -> t, q_ij -> q_ji (= q^2 / q_ij)."""
    if not s.terms:
        return s
    return Scalar({_conj_key(k): c for k, c in s.terms.items()}, s.den)


@lru_cache(maxsize=None)
def _prime_key(key: int, n: int) -> int:
    out = 0
    for v, e in unpack(key).items():
        if v < 2:
            out += var_key(v, e)
            continue
        i, j = pair_of(v)
        a, b = n - i + 1, n - j + 1          # q_ij -> q_ab with a > b
        if not (1 <= b < a <= n):
            raise IndexError(f"q_{i}{j} outside N={n}")
        out += var_key(0, 2 * e) - var_key(pair_index(b, a), e)
    return out


def prime_scalar(s: Scalar, n: int) -> Scalar:
    """q_ij -> q_{i'j'} with i' = n - i + 1."""
    if not s.terms:
        return s
    return Scalar({_prime_key(k, n): c for k, c in s.terms.items()}, s.den)


# ---------------------------------------------------------------- division

def _univariate_factor(terms: dict):
    """Split terms as c * monomial * f(q) with f having f(0) != 0; None if not."""
    rests = {k - q_exp(k) for k in terms}
    if len(rests) != 1:
        return None
    rest = rests.pop()
    uni = {q_exp(k): c for k, c in terms.items()}
    lo = min(uni)
    dense = [0] * (max(uni) - lo + 1)
    for e, c in uni.items():
        dense[e - lo] = c
    return rest + var_key(0, lo), dense


def exact_divide(a: Scalar, b: Scalar) -> Scalar:
    """a / b where b is a monomial times a product of cyclotomics in q."""
    a, b = Scalar.coerce(a), Scalar.coerce(b)
    if b.is_zero():
        raise ZeroDivisionError("division by zero scalar")
    if a.is_zero():
        return ZERO
    split = _univariate_factor(b.terms)
    if split is None:
        raise NotDivisible("divisor is not a monomial times a polynomial in q")
    mono, dense = split
    lead = dense[-1]
    dense = [Fraction(c, 1) / lead for c in dense]
    factors: list[int] = []
    e = 1
    while len(dense) > 1:
        deg = len(dense) - 1
        # phi(e) >= sqrt(e/2), so no cyclotomic factor has index above 2*deg^2
        if e > 2 * deg * deg:
            raise NotDivisible("divisor has a non-cyclotomic factor in q")
        phi = list(cyclotomic(e))
        if len(phi) > len(dense):
            e += 1
            continue
        quot, rem = _udivmod(dense, phi)
        if any(rem):
            e += 1
            continue
        dense = quot
        factors.append(e)
    c = dense[0]  # == 1 after monic scaling, kept for clarity
    inv = Fraction(1, 1) / (lead * c)
    terms = {k - mono: _clean(x * inv) for k, x in a.terms.items()}
    # multiply by b's own denominator
    for f in b.den:
        terms = _mul_terms(terms, _phi_terms(f))
    den = Counter(a.den) + Counter(factors)
    terms, d = _cancel(terms, den)
    return Scalar(terms, d)


# ---------------------------------------------------------------- specialization

def _name_to_var(name) -> int:
    if isinstance(name, int):
        return name
    if name == "q":
        return 0
    if name == "t":
        return 1
    if isinstance(name, tuple):
        i, j = name
        return pair_index(i, j)
    if isinstance(name, str) and name.startswith("p[") and name.endswith("]"):
        i, j = (int(x) for x in name[2:-1].split(","))
        return pair_index(i, j)
    raise KeyError(f"unknown variable {name!r}")


def _eval_phi(e: int, value) -> Scalar:
    out = ZERO
    vs = Scalar.coerce(value)
    p = ONE
    for c in cyclotomic(e):
        if c:
            out = out + p * c
        p = p * vs
    return out


def specialize_scalar(s: Scalar, assignment: Mapping) -> Scalar:
    """Substitute variables ('q', 't', 'p[i,j]', or (i, j) for i<j).

    Values are rationals or Scalars.  q may only be replaced by a rational.
    """
    assign = {_name_to_var(k): Scalar.coerce(v) for k, v in assignment.items()}
    if 0 in assign and assign[0].constant() is None:
        raise ValueError("q may only be specialized to a rational value")
    if 0 in assign and assign[0].constant() == 0:
        raise DenominatorVanishes("q = 0 is not allowed (Laurent variable)")
    out = ZERO
    cache: dict = {}
    for key, c in s.terms.items():
        rest = 0
        factor = ONE
        for v, e in unpack(key).items():
            if v in assign:
                val = assign[v]
                ck = (v, e)
                if ck not in cache:
                    cache[ck] = val ** e
                factor = factor * cache[ck]
            else:
                rest += var_key(v, e)
        term = factor.shift(rest) * c
        out = out + term
    if s.den:
        if 0 in assign:
            d = ONE
            for e in s.den:
                val = _eval_phi(e, assign[0])
                if val.is_zero():
                    raise DenominatorVanishes(f"Phi_{e}(q) vanishes at q={assign[0].constant()}")
                d = d * val
            out = exact_divide(out, d)
        else:
            out = exact_divide(out, _den_poly(s.den))
    return out


def _den_poly(den: tuple) -> Scalar:
    out = ONE
    for e in den:
        out = out * Scalar(_phi_terms(e))
    return out


def one_param_scalar(s: Scalar) -> Scalar:
    """Specialize q_ij := q for all i < j."""
    if all(not (k >> (2 * W)) for k in s.terms):
        return s
    out: dict = {}
    for key, c in s.terms.items():
        exps = unpack(key)
        qe = sum(exps.pop(v) for v in [v for v in exps if v >= 2])
        exps[0] = exps.get(0, 0) + qe
        k = pack(exps)
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    terms, den = _cancel(out, Counter(s.den))
    return Scalar(terms, den)


def as_q_fraction(s: Scalar) -> tuple[Scalar, list[int]]:
    """Write s as num / prod_m (1 - q^(2m)); returns (num, sorted m list)."""
    missing = Counter(s.den)
    ms: list[int] = []
    num = Scalar(dict(s.terms))
    while +missing:
        e = max(e for e, k in missing.items() if k > 0)
        m = e // 2 if e % 2 == 0 else e
        for d in _divisors(2 * m):
            if missing[d] > 0:
                missing[d] -= 1
            else:
                num = num * Scalar(_phi_terms(d))
        # 1 - q^(2m) = -prod_{d | 2m} Phi_d(q)
        num = -num
        ms.append(m)
    return num, sorted(ms)
