"""Expression parser and renderers (text, LaTeX, JSON).

Grammar (whitespace ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' ['-'] uint)?
    atom   := rational | 'q' | 't' | 'p[' i ',' j ']'
            | 'X[' i ',' j ']' | 'Y[' i ',' j ']'
            | 'T[' i ',' j ']' | 'Tstar[' i ',' j ']'
            | 'star(' expr ')' | 'prime(' expr ')' | '(' expr ')'

Negative exponents are only allowed on scalar subexpressions; the divisor must
be a monomial times cyclotomic factors in q.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .ncpoly import (TS, D, T, X, Y, Algebra, NCPoly, algebra, col_of, gen,
                     kind_of, row_of)
from .scalars import (ONE, Scalar, _sort_key, cyclotomic, exact_divide, pack,
                      pair_index, unpack, var_name, pair_of)

__all__ = ["ParseError", "parse_expr", "render", "render_scalar", "to_json",
           "from_json", "poly_to_dict", "poly_from_dict"]


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


# ------------------------------------------------------------------ text

def _coeff_text(c) -> str:
    return str(c)


def _mono_text(key: int, latex: bool = False) -> str:
    exps = unpack(key)
    parts = []
    for v in sorted(exps, key=lambda v: (v >= 2, pair_of(v) if v >= 2 else (v, 0))):
        e = exps[v]
        if latex:
            name = "q" if v == 0 else "t" if v == 1 else "q_{%d%d}" % pair_of(v)
            parts.append(name if e == 1 else f"{name}^{{{e}}}")
        else:
            name = var_name(v)
            parts.append(name if e == 1 else f"{name}^{e}")
    return ("" if latex else "*").join(parts)


def _signed_terms(s: Scalar, latex: bool = False) -> list[tuple[str, str]]:
    out = []
    for key, c in s.sorted_terms():
        mono = _mono_text(key, latex)
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if latex and isinstance(a, Fraction):
            ac = r"\frac{%d}{%d}" % (a.numerator, a.denominator)
        else:
            ac = _coeff_text(a)
        if not mono:
            body = ac
        elif a == 1:
            body = mono
        else:
            body = f"{ac}{'' if latex else '*'}{mono}"
        out.append((sign, body))
    return out


def _join(parts: list[tuple[str, str]]) -> str:
    if not parts:
        return "0"
    s0, b0 = parts[0]
    out = ("-" if s0 == "-" else "") + b0
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def _phi_text(e: int, latex: bool = False) -> str:
    coeffs = cyclotomic(e)
    s = Scalar({pack({0: k}): c for k, c in enumerate(coeffs) if c})
    return _join(_signed_terms(s, latex))


def render_scalar(s: Scalar, fmt: str = "text") -> str:
    latex = fmt == "latex"
    num = _join(_signed_terms(Scalar(s.terms), latex))
    if not s.den:
        return num
    if latex:
        den = "".join(f"({_phi_text(e, True)})" for e in s.den)
        return r"\frac{%s}{%s}" % (num, den)
    return f"({num})" + "".join(f"*({_phi_text(e)})^-1" for e in s.den)


def _gen_text(g: int, latex: bool = False) -> str:
    k, r, c = kind_of(g), row_of(g), col_of(g)
    if latex:
        if k == TS:
            return "T^{*}_{%d%d}" % (r, c)
        name = {X: "X", Y: "Y", T: "T", D: "T"}[k]
        return "%s_{%d%d}" % (name, r, c)
    name = {X: "X", Y: "Y", T: "T", D: "T", TS: "Tstar"}[k]
    return f"{name}[{r},{c}]"


def _word_text(w: tuple, latex: bool = False) -> str:
    parts = []
    k = 0
    while k < len(w):
        m = k
        while m + 1 < len(w) and w[m + 1] == w[k]:
            m += 1
        base = _gen_text(w[k], latex)
        e = m - k + 1
        if e == 1:
            parts.append(base)
        else:
            parts.append(f"{base}^{{{e}}}" if latex else f"{base}^{e}")
        k = m + 1
    return (" " if latex else "*").join(parts)


def word_sort_key(w: tuple):
    return (len(w), w)


def render(p: NCPoly, fmt: str = "text") -> str:
    """Deterministic rendering of an NCPoly: ``text``, ``latex`` or ``json``."""
    if fmt == "json":
        return to_json(p)
    if fmt not in ("text", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    latex = fmt == "latex"
    parts: list[tuple[str, str]] = []
    for w in sorted(p.terms, key=word_sort_key):
        c = p.terms[w]
        wt = _word_text(w, latex)
        if not c.den and len(c.terms) == 1:
            (sign, body), = _signed_terms(c, latex)
            if not wt:
                parts.append((sign, body))
            elif body == "1":
                parts.append((sign, wt))
            else:
                parts.append((sign, f"{body}{' ' if latex else '*'}{wt}"))
        else:
            cs = render_scalar(c, fmt)
            if latex:
                body = rf"\left({cs}\right)"
            else:
                body = f"({cs})"
            parts.append(("+", f"{body}{' ' if latex else '*'}{wt}" if wt else body))
    return _join(parts)


# ------------------------------------------------------------------ json

_LETTER = {X: "X", Y: "Y", T: "T", D: "T", TS: "Tstar"}


def _coeff_json(c):
    return c if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


def _coeff_from_json(v):
    if isinstance(v, int):
        return v
    f = Fraction(v)
    return f.numerator if f.denominator == 1 else f


def scalar_to_dict(s: Scalar) -> dict:
    num = []
    for key, c in s.sorted_terms():
        num.append({"c": _coeff_json(c),
                    "exp": {var_name(v): e for v, e in sorted(unpack(key).items())}})
    return {"num": num, "den": list(s.den)}


def _var_from_name(name: str) -> int:
    if name == "q":
        return 0
    if name == "t":
        return 1
    m = re.fullmatch(r"p\[(\d+),(\d+)\]", name)
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    return pair_index(int(m.group(1)), int(m.group(2)))


def scalar_from_dict(d: dict) -> Scalar:
    terms = {}
    for t in d["num"]:
        key = pack({_var_from_name(k): e for k, e in t["exp"].items()})
        terms[key] = _coeff_from_json(t["c"])
    return Scalar(terms, tuple(d.get("den", ())))


def poly_to_dict(p: NCPoly) -> dict:
    terms = []
    for w in sorted(p.terms, key=word_sort_key):
        terms.append({"coeff": scalar_to_dict(p.terms[w]),
                      "word": [[_LETTER[kind_of(g)], row_of(g), col_of(g)] for g in w]})
    return {"n": p.alg.n, "mode": p.alg.mode, "normalized": p.normalized, "terms": terms}


def _gen_from_letter(letter, alg: Algebra) -> int:
    name, i, j = letter
    if name == "X":
        return gen(X, i, j)
    if name == "Y":
        return gen(Y, i, j)
    if name == "T":
        return gen(D, i, i) if i == j else gen(T, i, j)
    if name == "Tstar":
        return gen(D, i, i) if i == j else gen(TS, i, j)
    raise ValueError(f"unknown generator letter {name!r}")


def poly_from_dict(d: dict, alg: Algebra | None = None) -> NCPoly:
    if alg is None:
        alg = algebra(d["n"], d.get("mode", "multi"))
    terms = {}
    for t in d["terms"]:
        w = tuple(_gen_from_letter(x, alg) for x in t["word"])
        terms[w] = scalar_from_dict(t["coeff"])
    return NCPoly(alg, terms, bool(d.get("normalized", False)))


def to_json(p: NCPoly) -> str:
    return json.dumps(poly_to_dict(p), sort_keys=True, separators=(",", ":"))


def from_json(s: str, alg: Algebra | None = None) -> NCPoly:
    return poly_from_dict(json.loads(s), alg)


# ------------------------------------------------------------------ parser

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(Tstar|star|prime|[A-Za-z]+)|(.))")


def _tokenize(src: str):
    pos = 0
    toks = []
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            break
        if m.group(0).strip() == "":
            pos = m.end()
            continue
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("id", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, alg: Algebra):
        self.toks = _tokenize(src)
        self.k = 0
        self.alg = alg

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None, value=None):
        tok = self.toks[self.k]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.k += 1
        return tok

    def expr(self) -> NCPoly:
        neg = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            neg = True
        out = self.term()
        if neg:
            out = -out
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> NCPoly:
        out = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            out = out * self.factor()
        return out

    def factor(self) -> NCPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            tok = self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            e = int(self.take("num")[1])
            if neg:
                s = _as_scalar(base)
                if s is None:
                    raise ParseError("negative power of a non-scalar", tok[2])
                return self.alg.scalar(exact_divide(ONE, s) ** e)
            return base ** e
        return base

    def indices(self) -> tuple[int, int]:
        self.take("op", "[")
        i = int(self.take("num")[1])
        self.take("op", ",")
        j = int(self.take("num")[1])
        self.take("op", "]")
        n = self.alg.n
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"index ({i},{j}) out of range for N={n}", self.toks[self.k - 1][2])
        return i, j

    def atom(self) -> NCPoly:
        kind, val, pos = self.peek()
        alg = self.alg
        if kind == "num":
            self.take()
            return alg.scalar(Fraction(val))
        if kind == "op" and val == "(":
            self.take()
            out = self.expr()
            self.take("op", ")")
            return out
        if kind != "id":
            raise ParseError(f"unexpected {val or 'end of input'!r}", pos)
        self.take()
        if val == "q":
            return alg.scalar(Scalar({pack({0: 1}): 1}))
        if val == "t":
            return alg.scalar(Scalar({pack({1: 1}): 1}))
        if val == "p":
            i, j = self.indices()
            return alg.scalar(alg.param(i, j))
        if val in ("star", "prime"):
            self.take("op", "(")
            inner = self.expr()
            self.take("op", ")")
            return inner.star() if val == "star" else inner.prime()
        if val in ("X", "Y"):
            if alg.mode == "tquot":
                raise ParseError(f"{val} is not a generator of the T-quotient", pos)
            i, j = self.indices()
            return alg.generator(X if val == "X" else Y, i, j)
        if val in ("T", "Tstar"):
            if alg.mode != "tquot":
                raise ParseError(f"{val} is only legal in a T-quotient session", pos)
            i, j = self.indices()
            return alg.generator(T if val == "T" else TS, i, j)
        raise ParseError(f"unknown identifier {val!r}", pos)


def _as_scalar(p: NCPoly):
    if not p.terms:
        return Scalar()
    if set(p.terms) == {()}:
        return p.terms[()]
    return None


def parse_expr(src: str, alg: Algebra, normalize: bool = True) -> NCPoly:
    """Parse ``src`` into an NCPoly of ``alg`` (normalized unless asked not to)."""
    p = _Parser(src, alg)
    out = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return alg.normalize(out) if normalize else out
