"""Standard symplectic model on a 2n-dimensional space.

With basis e_1..e_2n the symplectic form is

    omega = e1* ^ e2* + ... + e_{2n-1}* ^ e_{2n}*

and its dual bivector is w0 = e1 ^ e2 + ... + e_{2n-1} ^ e_{2n}.  ``L`` wedges
with w0, ``Lambda`` contracts by omega.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import List, Tuple

from .exalg import (
    Multivector,
    StructuralError,
    contract_form,
    induced_map,
    wedge,
)


@dataclass(frozen=True)
class SymplecticModel:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"half-dimension must be >= 1, got {self.n}")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @cached_property
    def omega(self) -> Multivector:
        return Multivector(self.dim, 2, {(2 * i - 1, 2 * i): 1 for i in range(1, self.n + 1)},
                           dual=True)

    @cached_property
    def w0(self) -> Multivector:
        return Multivector(self.dim, 2, {(2 * i - 1, 2 * i): 1 for i in range(1, self.n + 1)})

    def component_range(self, k: int) -> range:
        """Exponents r for which L^r of primitive (k-2r)-vectors occur in degree k."""
        return range(max(0, k - self.n), k // 2 + 1)

    def _check(self, x: Multivector, dual: bool = False) -> None:
        if x.dim != self.dim:
            raise StructuralError(f"expected dimension {self.dim}, got {x.dim}")
        if x.dual != dual:
            raise StructuralError("wrong side (form vs multivector)")


def op_L(model: SymplecticModel, x: Multivector) -> Multivector:
    model._check(x)
    return wedge(x, model.w0)


def op_Lambda(model: SymplecticModel, x: Multivector) -> Multivector:
    model._check(x)
    if x.degree < 2:
        return Multivector.zero(model.dim, 0)
    return contract_form(model.omega, x)


def op_L_power(model: SymplecticModel, x: Multivector, r: int) -> Multivector:
    for _ in range(r):
        x = op_L(model, x)
    return x


def op_Lambda_power(model: SymplecticModel, x: Multivector, s: int) -> Multivector:
    for _ in range(s):
        x = op_Lambda(model, x)
    return x


def is_primitive(model: SymplecticModel, x: Multivector) -> bool:
    return op_Lambda(model, x).is_zero()


def lambda_L_constant(n: int, k: int, r: int, s: int) -> Fraction:
    """Scalar c with Lambda^s L^r X = c L^{r-s} X for primitive X of degree k."""
    if r < s:
        return Fraction(0)
    c = Fraction(factorial(r), factorial(r - s))
    for j in range(1, s + 1):
        c *= n - k - r + j
    return c


@dataclass(frozen=True)
class LefschetzComponents:
    k: int
    parts: Tuple[Tuple[int, Multivector], ...] = field(default=())

    def as_dict(self) -> dict:
        return dict(self.parts)

    def reconstruct(self, model: SymplecticModel) -> Multivector:
        total = Multivector.zero(model.dim, self.k)
        for r, xr in self.parts:
            total = total + op_L_power(model, xr, r)
        return total


def primitive_decompose(model: SymplecticModel, x: Multivector) -> LefschetzComponents:
    """Split ``x`` as sum_r L^r X_r with every X_r primitive.

    Works top-down: Lambda^r kills all components with exponent below r and
    scales the exponent-r one by a known nonzero constant, so the highest
    component is read off, subtracted, and the process repeats.  Zero
    components are omitted.  Coefficients may lie in any ring containing
    the rationals (polynomial coefficients included).
    """
    model._check(x)
    k = x.degree
    if k > model.dim:
        return LefschetzComponents(k, ())
    rng = model.component_range(k)
    rest = x
    parts: List[Tuple[int, Multivector]] = []
    for r in reversed(rng):
        if rest.is_zero():
            break
        c = lambda_L_constant(model.n, k - 2 * r, r, r)
        xr = op_Lambda_power(model, rest, r).scale(1 / c)
        if not xr.is_zero():
            parts.append((r, xr))
            rest = rest - op_L_power(model, xr, r)
    if not rest.is_zero():
        raise ArithmeticError("Lefschetz decomposition did not terminate cleanly")
    parts.reverse()
    return LefschetzComponents(k, tuple(parts))


# -- musical isomorphisms ---------------------------------------------------


def _flat_vector(model: SymplecticModel, j: int) -> Multivector:
    # flat(v) = omega(v, .) with omega(e_{2i-1}, e_{2i}) = +1
    if j % 2:
        return Multivector.basis(model.dim, (j + 1,), 1, dual=True)
    return Multivector.basis(model.dim, (j - 1,), -1, dual=True)


def _sharp_covector(model: SymplecticModel, j: int) -> Multivector:
    if j % 2:
        return Multivector.basis(model.dim, (j + 1,), -1)
    return Multivector.basis(model.dim, (j - 1,), 1)


def flat_k(model: SymplecticModel, x: Multivector) -> Multivector:
    """Multiplicative extension of v -> omega(v, .) to k-vectors."""
    model._check(x)
    return induced_map(x, lambda j: _flat_vector(model, j), model.dim, dual=True)


def sharp_k(model: SymplecticModel, phi: Multivector) -> Multivector:
    """Inverse of :func:`flat_k`."""
    model._check(phi, dual=True)
    return induced_map(phi, lambda j: _sharp_covector(model, j), model.dim, dual=False)
