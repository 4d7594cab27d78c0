"""Sparse exterior algebra over a finite-dimensional space.

Basis monomials e_{i1} ^ ... ^ e_{ik} are keyed by strictly increasing index
tuples with members in ``1..dim``.  Coefficients are usually
:class:`fractions.Fraction`, but any exact ring element that supports ``+``,
``*``, negation and truthiness (for instance :class:`contactsplit.poly.Poly`)
works, so the same code carries polynomial multivector fields.

Contraction follows the convention

    theta(v1 ^ ... ^ vk) = sum_j (-1)**(j-1) theta(vj) v1 ^ ..^vj-hat.. ^ vk

and a decomposable form acts by composition,
``(t1 ^ ... ^ tl)(X) = tl(...t2(t1(X)))``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, Iterator, Mapping, Tuple

Index = Tuple[int, ...]


class StructuralError(ValueError):
    """Operands do not fit together (dimension, degree or side mismatch)."""


def _sort_sign(indices: Iterable[int]) -> Tuple[int, Index | None]:
    """Sign of the permutation sorting ``indices``; ``None`` on a repeat."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort counting transpositions; monomials are short
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    return sign, tuple(idx)


def _merge(a: Index, b: Index) -> Tuple[int, Index | None]:
    if set(a) & set(b):
        return 0, None
    # sign = (-1)^(number of pairs x in a, y in b with x > y)
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    return (-1 if inv & 1 else 1), tuple(sorted(a + b))


class Multivector:
    """Homogeneous element of the exterior algebra (vector or form side).

    Instances are treated as immutable.  ``terms`` never holds a zero
    coefficient, so two elements are equal exactly when their dicts agree.
    """

    __slots__ = ("dim", "degree", "dual", "terms")

    def __init__(self, dim: int, degree: int, terms: Mapping[Index, Any] | None = None,
                 dual: bool = False):
        if dim < 0 or degree < 0:
            raise StructuralError("dimension and degree must be non-negative")
        clean: Dict[Index, Any] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise StructuralError(f"monomial {key} does not have degree {degree}")
            if key and (min(key) < 1 or max(key) > dim):
                raise StructuralError(f"monomial {key} out of range 1..{dim}")
            sign, canon = _sort_sign(key)
            if canon is None:
                continue
            if isinstance(c, int):
                c = Fraction(c)
            c = c if sign > 0 else -c
            if canon in clean:
                c = clean[canon] + c
            if c:
                clean[canon] = c
            else:
                clean.pop(canon, None)
        self.dim = dim
        self.degree = degree
        self.dual = dual
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, dim: int, degree: int, dual: bool = False) -> "Multivector":
        return cls(dim, degree, {}, dual)

    @classmethod
    def scalar(cls, dim: int, value: Any = 1, dual: bool = False) -> "Multivector":
        return cls(dim, 0, {(): value}, dual)

    @classmethod
    def basis(cls, dim: int, indices: Iterable[int], coeff: Any = 1,
              dual: bool = False) -> "Multivector":
        """``coeff * e_{i1} ^ ... ^ e_{ik}`` in the given (possibly unsorted) order."""
        idx = tuple(indices)
        return cls(dim, len(idx), {idx: coeff}, dual)

    @classmethod
    def _raw(cls, dim, degree, terms, dual):
        obj = cls.__new__(cls)
        obj.dim, obj.degree, obj.dual, obj.terms = dim, degree, dual, terms
        return obj

    # -- arithmetic -------------------------------------------------------

    def _check_compatible(self, other: "Multivector") -> None:
        if not isinstance(other, Multivector):
            raise StructuralError(f"expected Multivector, got {type(other).__name__}")
        if self.dim != other.dim:
            raise StructuralError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.dual != other.dual:
            raise StructuralError("cannot combine a form with a multivector")

    def __add__(self, other: "Multivector") -> "Multivector":
        if isinstance(other, int) and other == 0:
            return self
        self._check_compatible(other)
        if self.degree != other.degree:
            raise StructuralError(f"degree mismatch: {self.degree} vs {other.degree}")
        out = dict(self.terms)
        for key, c in other.terms.items():
            if key in out:
                s = out[key] + c
                if s:
                    out[key] = s
                else:
                    del out[key]
            else:
                out[key] = c
        return Multivector._raw(self.dim, self.degree, out, self.dual)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector._raw(self.dim, self.degree,
                                {k: -c for k, c in self.terms.items()}, self.dual)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def scale(self, factor: Any) -> "Multivector":
        if isinstance(factor, int):
            factor = Fraction(factor)
        out = {}
        for key, c in self.terms.items():
            p = c * factor
            if p:
                out[key] = p
        return Multivector._raw(self.dim, self.degree, out, self.dual)

    def __mul__(self, factor: Any) -> "Multivector":
        if isinstance(factor, Multivector):
            return NotImplemented
        return self.scale(factor)

    def __rmul__(self, factor: Any) -> "Multivector":
        if isinstance(factor, Multivector):
            return NotImplemented
        if isinstance(factor, int):
            factor = Fraction(factor)
        out = {}
        for key, c in self.terms.items():
            p = factor * c
            if p:
                out[key] = p
        return Multivector._raw(self.dim, self.degree, out, self.dual)

    def __truediv__(self, divisor: Any) -> "Multivector":
        return self.scale(1 / Fraction(divisor) if isinstance(divisor, int) else 1 / divisor)

    def __xor__(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.dim == other.dim and self.degree == other.degree
                and self.dual == other.dual and self.terms == other.terms)

    def __hash__(self):
        return hash((self.dim, self.degree, self.dual, frozenset(self.terms)))

    def __iter__(self) -> Iterator[Tuple[Index, Any]]:
        return iter(sorted(self.terms.items()))

    def coeff(self, indices: Iterable[int]) -> Any:
        sign, key = _sort_sign(indices)
        if key is None or key not in self.terms:
            return Fraction(0)
        c = self.terms[key]
        return c if sign > 0 else -c

    def scalar_value(self) -> Any:
        """Coefficient of a degree-0 element."""
        if self.degree != 0:
            raise StructuralError("scalar_value needs a degree-0 element")
        return self.terms.get((), Fraction(0))

    def max_index(self) -> int:
        return max((key[-1] for key in self.terms if key), default=0)

    def embed(self, dim: int) -> "Multivector":
        """Same element viewed inside a space of dimension ``dim``."""
        if self.max_index() > dim:
            raise StructuralError(f"element uses index {self.max_index()} > {dim}")
        return Multivector._raw(dim, self.degree, dict(self.terms), self.dual)

    def map_coefficients(self, fn) -> "Multivector":
        out = {}
        for key, c in self.terms.items():
            v = fn(c)
            if v:
                out[key] = v
        return Multivector._raw(self.dim, self.degree, out, self.dual)

    def __repr__(self) -> str:
        side = "form" if self.dual else "vec"
        return f"Multivector<{side} dim={self.dim} deg={self.degree}>({format_multivector(self)})"

    def __str__(self) -> str:
        return format_multivector(self)


# -- products and contractions --------------------------------------------


def wedge(a: Multivector, b: Multivector) -> Multivector:
    a._check_compatible(b)
    degree = a.degree + b.degree
    out: Dict[Index, Any] = {}
    if degree <= a.dim:
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                sign, key = _merge(ka, kb)
                if key is None:
                    continue
                p = ca * cb
                if sign < 0:
                    p = -p
                if key in out:
                    p = out[key] + p
                if p:
                    out[key] = p
                else:
                    out.pop(key, None)
    return Multivector._raw(a.dim, degree, out, a.dual)


def wedge_all(factors: Iterable[Multivector], dim: int, dual: bool = False) -> Multivector:
    result = Multivector.scalar(dim, 1, dual)
    for f in factors:
        result = wedge(result, f)
    return result


def induced_map(x: Multivector, image, dim: int, dual: bool) -> Multivector:
    """Extend a map on basis indices (``image(j)`` a degree-1 element) to all of ``x``."""
    out = Multivector.zero(dim, x.degree, dual)
    cache: Dict[int, Multivector] = {}
    for key, c in x.terms.items():
        factors = []
        for j in key:
            if j not in cache:
                cache[j] = image(j)
            factors.append(cache[j])
        out = out + wedge_all(factors, dim, dual).scale(c)
    return out


def _contract_index(j: int, key: Index) -> Tuple[int, Index | None]:
    """Remove index ``j`` from monomial ``key`` with its alternating sign."""
    try:
        pos = key.index(j)
    except ValueError:
        return 0, None
    return (-1 if pos & 1 else 1), key[:pos] + key[pos + 1:]


def _contract1(theta: Multivector, x: Multivector) -> Multivector:
    out: Dict[Index, Any] = {}
    for (j,), cj in theta.terms.items():
        for key, c in x.terms.items():
            sign, rest = _contract_index(j, key)
            if rest is None:
                continue
            p = cj * c
            if sign < 0:
                p = -p
            if rest in out:
                p = out[rest] + p
            if p:
                out[rest] = p
            else:
                out.pop(rest, None)
    return Multivector._raw(x.dim, x.degree - 1, out, x.dual)


def contract_one_form(theta: Multivector, x: Multivector) -> Multivector:
    """Contract the 1-form ``theta`` into the k-vector ``x`` (k >= 1)."""
    if not theta.dual or theta.degree != 1:
        raise StructuralError("theta must be a 1-form")
    if x.dual:
        raise StructuralError("x must be a multivector, not a form")
    if theta.dim != x.dim:
        raise StructuralError(f"dimension mismatch: {theta.dim} vs {x.dim}")
    if x.degree < 1:
        raise StructuralError("cannot contract a degree-0 element")
    return _contract1(theta, x)


def interior(v: Multivector, alpha: Multivector) -> Multivector:
    """Interior product of a vector into a form, same sign rule as above."""
    if v.dual or v.degree != 1:
        raise StructuralError("v must be a 1-vector")
    if not alpha.dual:
        raise StructuralError("alpha must be a form")
    if v.dim != alpha.dim:
        raise StructuralError(f"dimension mismatch: {v.dim} vs {alpha.dim}")
    if alpha.degree < 1:
        raise StructuralError("cannot contract into a 0-form")
    return _contract1(v, alpha)


def _contract_monomial(form_key: Index, key: Index) -> Tuple[int, Index | None]:
    sign = 1
    for j in form_key:
        s, key = _contract_index(j, key)
        if key is None:
            return 0, None
        sign *= s
    return sign, key


def contract_form(phi: Multivector, x: Multivector) -> Multivector:
    """Contract the l-form ``phi`` into the k-vector ``x``; result has degree k - l.

    Each canonical monomial ``e*_{j1} ^ ... ^ e*_{jl}`` acts as the composition
    ``e*_{jl} o ... o e*_{j1}``; general forms act by linear extension.
    """
    if not phi.dual:
        raise StructuralError("phi must be a form")
    if x.dual:
        raise StructuralError("x must be a multivector, not a form")
    if phi.dim != x.dim:
        raise StructuralError(f"dimension mismatch: {phi.dim} vs {x.dim}")
    if phi.degree > x.degree:
        raise StructuralError(f"cannot contract a {phi.degree}-form into a {x.degree}-vector")
    out: Dict[Index, Any] = {}
    for fkey, cf in phi.terms.items():
        for key, c in x.terms.items():
            sign, rest = _contract_monomial(fkey, key)
            if rest is None:
                continue
            p = cf * c
            if sign < 0:
                p = -p
            if rest in out:
                p = out[rest] + p
            if p:
                out[rest] = p
            else:
                out.pop(rest, None)
    return Multivector._raw(x.dim, x.degree - phi.degree, out, x.dual)


def basis_indices(dim: int, degree: int) -> list[Index]:
    """Canonical monomial labels of degree ``degree``, lexicographic order."""
    if degree < 0 or degree > dim:
        return []
    return list(combinations(range(1, dim + 1), degree))


def basis_elements(dim: int, degree: int, dual: bool = False) -> list[Multivector]:
    return [Multivector(dim, degree, {key: 1}, dual) for key in basis_indices(dim, degree)]


# -- plain-text serialization ---------------------------------------------

_TERM_RE = re.compile(
    r"""^\s*(?:(?P<coeff>[+-]?\s*\d+(?:/\d+)?)\s*\*\s*)?
         (?P<sign>[+-])?\s*e(?P<star>\*)?\{(?P<idx>[\d,\s]*)\}\s*$""",
    re.VERBOSE,
)


def format_fraction(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_multivector(x: Multivector) -> str:
    """Render as ``1/2*e{1,2} - 3*e{3,4}``; forms use ``e*{...}``; zero is ``0``."""
    if not x.terms:
        return "0"
    star = "*" if x.dual else ""
    pieces = []
    for key, c in sorted(x.terms.items()):
        if not isinstance(c, Fraction):
            # polynomial coefficients: parenthesize whole coefficient
            body = f"({c})*e{star}{{{','.join(map(str, key))}}}"
            pieces.append(("+", body))
            continue
        sign = "-" if c < 0 else "+"
        body = f"{format_fraction(abs(c))}*e{star}{{{','.join(map(str, key))}}}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _split_terms(text: str) -> list[str]:
    """Split at top-level ``+``/``-`` (outside braces/parens), keeping signs."""
    terms, buf, depth = [], "", 0
    prev = ""
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch in "+-" and depth == 0 and buf.strip() and prev not in "*/^":
            terms.append(buf)
            buf = ch
        else:
            buf += ch
        if not ch.isspace():
            prev = ch
    if buf.strip():
        terms.append(buf)
    return terms


def parse_multivector(text: str, dim: int, degree: int | None = None,
                      dual: bool | None = None) -> Multivector:
    """Inverse of :func:`format_multivector` for rational coefficients.

    ``degree`` is only required for the zero element ``"0"``; ``dual`` is
    inferred from ``e*{...}`` unless given.
    """
    text = text.strip()
    if text == "0":
        if degree is None:
            raise ValueError("degree is required to parse the zero element")
        return Multivector.zero(dim, degree, bool(dual))
    seen_dual = None
    result = None
    for raw in _split_terms(text):
        m = _TERM_RE.match(re.sub(r"\s+", "", raw))
        if not m:
            raise ValueError(f"cannot parse term {raw.strip()!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if m.group("sign") == "-":
            coeff = -coeff
        is_dual = m.group("star") is not None
        if seen_dual is None:
            seen_dual = is_dual
        elif seen_dual != is_dual:
            raise ValueError("mixed forms and multivectors in one expression")
        idx = tuple(int(t) for t in m.group("idx").split(",") if t.strip())
        if degree is not None and len(idx) != degree:
            raise ValueError(f"term {raw.strip()!r} does not have degree {degree}")
        if dual is not None and dual != is_dual:
            raise ValueError("side of expression does not match the requested one")
        term = Multivector.basis(dim, idx, coeff, is_dual)
        result = term if result is None else result + term
    return result
