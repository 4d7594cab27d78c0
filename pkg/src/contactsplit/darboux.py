"""Flat Darboux model of a contact manifold with polynomial coefficients.

Coordinates z0..z2n on affine space carry the contact form

    gamma0 = dz0 + sum_i (z_{2i-1} dz_{2i} - z_{2i} dz_{2i-1}),
    d gamma0 = 2 sum_i dz_{2i-1} ^ dz_{2i}.

The Reeb field is R = d0 and the contact distribution D has the frame

    X_{2i-1} = d_{2i-1} + z_{2i} d0,   X_{2i} = d_{2i} - z_{2i-1} d0

with dual coframe theta_j = dz_j (completed by gamma0).  The line bundle is
trivial and the connection flat, so the splitting operators F and G are
computed with the plain exterior derivative.

Index conventions: coordinate multivectors/forms live in dimension 2n+1
where exalg index j+1 stands for d_j (resp. dz_j); frame objects live in
dimension 2n where index j stands for X_j (resp. theta_j).  In text,
coordinate vectors are written ``d<j>``, coordinate forms ``dz<j>``, frame
vectors ``X<j>`` and frame forms ``t<j>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Dict, List, Tuple

from .exalg import (
    Multivector,
    StructuralError,
    contract_form,
    contract_one_form,
    induced_map,
    interior,
    wedge,
)
from .poly import Poly, format_term, parse_factor, split_signed_terms
from .symplectic import SymplecticModel, sharp_k
from .transforms import CoefficientFamily, invert_T


@dataclass(frozen=True)
class DarbouxModel:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"half-dimension must be >= 1, got {self.n}")

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def frame_dim(self) -> int:
        return 2 * self.n

    @cached_property
    def symplectic(self) -> SymplecticModel:
        return SymplecticModel(self.n)

    # coordinate helpers: z_j <-> exalg index j + 1

    def dz(self, j: int, c=1) -> Multivector:
        return Multivector.basis(self.dim, (j + 1,), Poly._coerce(c), dual=True)

    def d(self, j: int, c=1) -> Multivector:
        return Multivector.basis(self.dim, (j + 1,), Poly._coerce(c))

    @cached_property
    def gamma0(self) -> Multivector:
        g = self.dz(0)
        for i in range(1, self.n + 1):
            g = g + self.dz(2 * i, Poly.var(2 * i - 1)) - self.dz(2 * i - 1, Poly.var(2 * i))
        return g

    @cached_property
    def dgamma0(self) -> Multivector:
        return exterior_d(self, self.gamma0)

    @property
    def reeb(self) -> Multivector:
        return self.d(0)

    def frame_vector(self, j: int) -> Multivector:
        """X_j in coordinates."""
        if not 1 <= j <= self.frame_dim:
            raise ValueError(f"frame index {j} outside 1..{self.frame_dim}")
        if j % 2:
            return self.d(j) + self.d(0, Poly.var(j + 1))
        return self.d(j) - self.d(0, Poly.var(j - 1))

    def dgamma_power(self, i: int) -> Multivector:
        return _dgamma_powers(self)[i]

    def flat_image(self, j: int) -> Multivector:
        """Interior product of the coordinate vector at exalg index j into d gamma0."""
        return _flat_images(self)[j]


@lru_cache(maxsize=None)
def _dgamma_powers(model: DarbouxModel) -> Tuple[Multivector, ...]:
    pw = [Multivector.scalar(model.dim, Poly.const(1), dual=True)]
    while pw[-1].degree + 2 <= model.dim:
        pw.append(wedge(pw[-1], model.dgamma0))
    return tuple(pw)


@lru_cache(maxsize=None)
def _flat_images(model: DarbouxModel) -> Dict[int, Multivector]:
    return {
        j: interior(Multivector.basis(model.dim, (j,), Poly.const(1)), model.dgamma0)
        for j in range(1, model.dim + 1)
    }


def _check_coord(model: DarbouxModel, x: Multivector, dual: bool) -> None:
    if x.dim != model.dim:
        raise StructuralError(f"expected coordinate dimension {model.dim}, got {x.dim}")
    if x.dual != dual:
        raise StructuralError("wrong side (form vs multivector)")


def exterior_d(model: DarbouxModel, form: Multivector) -> Multivector:
    """Exterior derivative of a polynomial form in coordinate differentials."""
    _check_coord(model, form, dual=True)
    out = Multivector.zero(model.dim, form.degree + 1, dual=True)
    for key, c in form.terms.items():
        c = Poly._coerce(c)
        for v in sorted(c.variables()):
            dc = c.diff(v)
            if dc:
                out = out + Multivector.basis(model.dim, (v + 1,) + key, dc, dual=True)
    return out


def flat_map(model: DarbouxModel, y: Multivector) -> Multivector:
    """Multiplicative extension of v -> iota_v d gamma0 to j-vectors."""
    _check_coord(model, y, dual=False)
    return induced_map(y, model.flat_image, model.dim, dual=True)


def default_coefficient(k: int, i: int) -> Fraction:
    """(k-i)! / (k! i!)."""
    return Fraction(factorial(k - i), factorial(k) * factorial(i))


def g_coefficient(k: int, i: int) -> Fraction:
    """(k-1-i)! / (k! i!)."""
    return Fraction(factorial(k - 1 - i), factorial(k) * factorial(i))


def F_apply(model: DarbouxModel, k: int, x: Multivector) -> Multivector:
    """sum_i c_i flat((d gamma0)^i (X)) ^ (d gamma0)^i with c_i = (k-i)!/(k! i!)."""
    _check_coord(model, x, dual=False)
    if x.degree != k:
        raise StructuralError(f"expected a {k}-vector, got degree {x.degree}")
    out = Multivector.zero(model.dim, k, dual=True)
    for i in range(k // 2 + 1):
        pw = model.dgamma_power(i)
        inner = contract_form(pw, x)
        term = wedge(flat_map(model, inner), pw)
        out = out + term.scale(default_coefficient(k, i))
    return out


def G_apply(model: DarbouxModel, k: int, s: Multivector) -> Multivector:
    """sum_i c'_i d(flat((d gamma0)^i (s))) ^ (d gamma0)^i with c'_i = (k-1-i)!/(k! i!)."""
    _check_coord(model, s, dual=False)
    if s.degree != k - 1:
        raise StructuralError(f"expected a {k - 1}-vector, got degree {s.degree}")
    out = Multivector.zero(model.dim, k, dual=True)
    for i in range((k - 1) // 2 + 1):
        pw = model.dgamma_power(i)
        inner = flat_map(model, contract_form(pw, s))
        term = wedge(exterior_d(model, inner), pw)
        out = out + term.scale(g_coefficient(k, i))
    return out


def gamma0_contract(model: DarbouxModel, x: Multivector) -> Multivector:
    _check_coord(model, x, dual=False)
    return contract_one_form(model.gamma0, x)


def _coframe_image(model: DarbouxModel, j: int) -> Multivector:
    # dz0 = gamma0 - sum_i (z_{2i-1} theta_{2i} - z_{2i} theta_{2i-1}); gamma0 sits in slot 1
    if j != 1:
        return Multivector.basis(model.dim, (j,), Poly.const(1), dual=True)
    out = Multivector.basis(model.dim, (1,), Poly.const(1), dual=True)
    for i in range(1, model.n + 1):
        out = out - Multivector.basis(model.dim, (2 * i + 1,), Poly.var(2 * i - 1), dual=True)
        out = out + Multivector.basis(model.dim, (2 * i,), Poly.var(2 * i), dual=True)
    return out


def to_coframe(model: DarbouxModel, form: Multivector) -> Multivector:
    """Rewrite a coordinate form on the coframe (gamma0 in slot 1, theta_j in slot j+1)."""
    _check_coord(model, form, dual=True)
    return induced_map(form, lambda j: _coframe_image(model, j), model.dim, dual=True)


def restrict_to_D(model: DarbouxModel, form: Multivector) -> Multivector:
    """Restriction to the contact distribution, as a frame form over theta_1..theta_2n."""
    cf = to_coframe(model, form)
    terms = {tuple(j - 1 for j in key): c for key, c in cf.terms.items() if 1 not in key}
    return Multivector(model.frame_dim, form.degree, terms, dual=True)


def frame_to_coord(model: DarbouxModel, s: Multivector) -> Multivector:
    """Express a frame multivector (in X_1..X_2n) in coordinate vector fields."""
    if s.dual or s.dim != model.frame_dim:
        raise StructuralError(f"expected a frame multivector of dimension {model.frame_dim}")
    return induced_map(s, model.frame_vector, model.dim, dual=False)


def frame_F_inverse(model: DarbouxModel, k: int, rhs: Multivector) -> Multivector:
    """Solve F|_D(h) = rhs for a frame k-vector h.

    On the frame d gamma0|_D = 2 omega, which makes F|_D = 2^k * flat o T
    with T the default transformation of the standard symplectic model.
    """
    if not rhs.dual or rhs.dim != model.frame_dim:
        raise StructuralError("rhs must be a frame form")
    target = sharp_k(model.symplectic, rhs).scale(Fraction(1, 2 ** k))
    return invert_T(CoefficientFamily.default(k), model.symplectic, target)


def splitting_section(model: DarbouxModel, k: int, s: Multivector,
                      perturbation: Multivector | None = None) -> Multivector:
    """The k-vector X = Y - h with gamma0(X) = s and {F(X) + G(s)}|_D = 0.

    ``s`` is a polynomial (k-1)-vector on the frame of D.  Y = R ^ s is the
    naive lift; ``perturbation`` (a frame k-vector) may be added to it and
    must not change the result.
    """
    if not 1 <= k <= model.dim:
        raise ValueError(f"degree {k} outside 1..{model.dim}")
    if s.degree != k - 1:
        raise StructuralError(f"section must have degree {k - 1}, got {s.degree}")
    s_c = frame_to_coord(model, s)
    y = wedge(model.reeb, s_c)
    if perturbation is not None:
        if perturbation.degree != k:
            raise StructuralError("perturbation must be a frame k-vector")
        y = y + frame_to_coord(model, perturbation)
    rhs = restrict_to_D(model, F_apply(model, k, y) + G_apply(model, k, s_c))
    h = frame_F_inverse(model, k, rhs)
    return y - frame_to_coord(model, h)


@dataclass(frozen=True)
class Certificate:
    gamma_residual: Multivector
    splitting_residual: Multivector

    @property
    def ok(self) -> bool:
        return self.gamma_residual.is_zero() and self.splitting_residual.is_zero()


def certify(model: DarbouxModel, k: int, s: Multivector, x: Multivector) -> Certificate:
    """Residuals gamma0(X) - s and {F(X) + G(s)}|_D, recomputed in coordinates."""
    s_c = frame_to_coord(model, s)
    res1 = gamma0_contract(model, x) - s_c
    res2 = restrict_to_D(model, F_apply(model, k, x) + G_apply(model, k, s_c))
    return Certificate(res1, res2)


# -- text format ------------------------------------------------------------

_SYMBOLS = {
    # (frame?, dual?) -> symbol
    (False, False): "d",
    (False, True): "dz",
    (True, False): "X",
    (True, True): "t",
}
_BASIS_RE = re.compile(r"^(dz|d|X|t)(\d+)$")


def format_poly_multivector(x: Multivector, frame: bool = False) -> str:
    """``(1/2)*z1*d0 + (1/2)*d2`` style rendering; ``0`` for the zero element."""
    if not x.terms:
        return "0"
    sym = _SYMBOLS[(frame, x.dual)]
    shift = 0 if frame else 1
    pieces = []
    for key, c in sorted(x.terms.items()):
        suffix = "*".join(f"{sym}{j - shift}" for j in key)
        for m, a in Poly._coerce(c).monomials():
            pieces.append(format_term(a, m, suffix))
    return " + ".join(pieces)


def parse_poly_multivector(text: str, model: DarbouxModel, frame: bool = False,
                           dual: bool = False, degree: int | None = None) -> Multivector:
    """Inverse of :func:`format_poly_multivector`; bare polynomials have degree 0."""
    sym = _SYMBOLS[(frame, dual)]
    dim = model.frame_dim if frame else model.dim
    shift = 0 if frame else 1
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    result = None
    for sign, body in split_signed_terms(text):
        coeff = Poly.const(sign)
        idx: List[int] = []
        for tok in body.split("*"):
            tok = tok.strip()
            f = parse_factor(tok)
            if f is not None:
                coeff = coeff * f
                continue
            m = _BASIS_RE.match(tok)
            if not m:
                raise ValueError(f"cannot parse factor {tok!r}")
            if m.group(1) != sym:
                raise ValueError(f"unexpected basis symbol {tok!r}; expected {sym}<j>")
            j = int(m.group(2)) + shift
            if not 1 <= j <= dim:
                raise ValueError(f"basis symbol {tok!r} out of range")
            idx.append(j)
        bad = [v for v in coeff.variables() if v > 2 * model.n]
        if bad:
            raise ValueError(f"variable z{bad[0]} outside z0..z{2 * model.n}")
        term = Multivector.basis(dim, idx, coeff, dual)
        if result is not None and term.degree != result.degree:
            raise ValueError("terms of different degree in one expression")
        result = term if result is None else result + term
    if degree is not None and result.degree != degree:
        if result.is_zero():
            return Multivector.zero(dim, degree, dual)
        raise ValueError(f"expected degree {degree}, got {result.degree}")
    return result
