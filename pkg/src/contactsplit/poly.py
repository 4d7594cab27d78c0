"""Sparse multivariate polynomials with rational coefficients.

Variables are z0, z1, ...; a monomial is a sorted tuple of
``(variable, exponent)`` pairs with positive exponents, so polynomials in
different numbers of variables mix freely.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple

Monomial = Tuple[Tuple[int, int], ...]

ONE: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Fraction] | None = None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({ONE: Fraction(c)})

    @classmethod
    def var(cls, j: int, power: int = 1) -> "Poly":
        if power < 0:
            raise ValueError("negative exponent")
        return cls({((j, power),) if power else ONE: Fraction(1)})

    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other) -> "Poly":
        try:
            other = Poly._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        try:
            return self + (-Poly._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "Poly":
        return Poly._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({})
            return Poly._raw({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, e: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(e):
            out = out * self
        return out

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        try:
            other = Poly._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(ONE, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def diff(self, j: int) -> "Poly":
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            exps = dict(m)
            e = exps.get(j, 0)
            if not e:
                continue
            if e == 1:
                del exps[j]
            else:
                exps[j] = e - 1
            key = tuple(sorted(exps.items()))
            out[key] = out.get(key, 0) + c * e
        return Poly(out)

    def evaluate(self, point: Dict[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= Fraction(point.get(v, 0)) ** e
            total += t
        return total

    def monomials(self) -> Iterable[Tuple[Monomial, Fraction]]:
        # graded: lower total degree first, then by variable/exponent tuple
        return sorted(self.terms.items(), key=lambda mc: (sum(e for _, e in mc[0]), mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(format_term(c, m) for m, c in self.monomials())

    def __repr__(self) -> str:
        return f"Poly({self})"


def format_monomial(m: Monomial) -> str:
    return "*".join(f"z{v}" if e == 1 else f"z{v}^{e}" for v, e in m)


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_term(c: Fraction, m: Monomial, suffix: str = "") -> str:
    """``(p/q)*z1^a*z2^b`` followed by an optional ``*suffix`` factor."""
    parts = [f"({_frac(c)})"]
    if m:
        parts.append(format_monomial(m))
    if suffix:
        parts.append(suffix)
    return "*".join(parts)


_VAR_RE = re.compile(r"^z(\d+)(?:\^(\d+))?$")
_NUM_RE = re.compile(r"^\(?\s*([+-]?\d+(?:/\d+)?)\s*\)?$")


def parse_factor(tok: str):
    """Return a Poly for a numeric or ``z<j>^e`` factor, else ``None``."""
    tok = tok.strip()
    m = _NUM_RE.match(tok)
    if m:
        return Poly.const(Fraction(m.group(1)))
    m = _VAR_RE.match(tok)
    if m:
        return Poly.var(int(m.group(1)), int(m.group(2) or 1))
    return None


def split_signed_terms(text: str) -> list[Tuple[int, str]]:
    """Split at top-level ``+``/``-`` (outside parentheses) into (sign, body)."""
    out, buf, depth, sign = [], "", 0, 1
    last = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth < 0:
            raise ValueError("unbalanced parentheses")
        if ch in "+-" and depth == 0 and last not in ("*", "^", ""):
            out.append((sign, buf))
            buf, sign, last = "", (1 if ch == "+" else -1), ""
            continue
        if ch in "+-" and depth == 0 and last == "" and not buf.strip():
            sign = -sign if ch == "-" else sign
            continue
        buf += ch
        if not ch.isspace():
            last = ch
    if depth != 0:
        raise ValueError("unbalanced parentheses")
    out.append((sign, buf))
    for _, body in out:
        if not body.strip():
            raise ValueError(f"empty term in {text!r}")
    return out


def parse_poly(text: str) -> Poly:
    total = Poly()
    for sign, body in split_signed_terms(text):
        term = Poly.const(sign)
        for tok in body.split("*"):
            f = parse_factor(tok)
            if f is None:
                raise ValueError(f"cannot parse factor {tok.strip()!r} in {text!r}")
            term = term * f
        total = total + term
    return total
