"""Coefficient families and the transformations ``T = sum_i c_i L^i Lambda^i``.

Every family of constants used by the splitting maps lives here:

* ``DEFAULT``           c_i = (k-i)! / (k! i!)
* ``TWISTED``           c_{m,0} = 1, c_{m,i} = 1 / ((k+m)(k+m-1)...(k+m-i+1) i!)
* ``TWISTED_PRIME``     c'_{m,i} = 1 / ((k+m)(k+m-1)...(k+m-i) i!)
* ``HALF_TWISTED``      as ``TWISTED`` with m replaced by m/2
* ``HALF_TWISTED_PRIME``as ``TWISTED_PRIME`` with m replaced by m/2
* ``CUSTOM``            explicit coefficient vector (used for invertibility sweeps)

On the component L^r X (X primitive of degree k-2r) the transformation acts
by the scalar

    sum_{s=0}^{r} c_s r!/(r-s)! (n-k+r+1)(n-k+r+2)...(n-k+r+s)

so it is inverted componentwise after a Lefschetz decomposition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Sequence, Tuple

from .exalg import Multivector, StructuralError
from .symplectic import (
    SymplecticModel,
    flat_k,
    op_L_power,
    op_Lambda_power,
    primitive_decompose,
)


class Kind(enum.Enum):
    DEFAULT = "default"
    TWISTED = "twisted"
    TWISTED_PRIME = "twisted-prime"
    HALF_TWISTED = "half-twisted"
    HALF_TWISTED_PRIME = "half-twisted-prime"
    CUSTOM = "custom"


class IllDefinedFamily(ValueError):
    pass


class NotInvertible(ValueError):
    pass


@dataclass(frozen=True)
class CoefficientFamily:
    kind: Kind
    k: int
    m: int = 0
    values: Tuple[Fraction, ...] = ()

    @classmethod
    def default(cls, k: int) -> "CoefficientFamily":
        return cls(Kind.DEFAULT, k)

    @classmethod
    def twisted(cls, k: int, m: int) -> "CoefficientFamily":
        return cls(Kind.TWISTED, k, m)

    @classmethod
    def twisted_prime(cls, k: int, m: int) -> "CoefficientFamily":
        return cls(Kind.TWISTED_PRIME, k, m)

    @classmethod
    def half_twisted(cls, k: int, m: int) -> "CoefficientFamily":
        return cls(Kind.HALF_TWISTED, k, m)

    @classmethod
    def half_twisted_prime(cls, k: int, m: int) -> "CoefficientFamily":
        return cls(Kind.HALF_TWISTED_PRIME, k, m)

    @classmethod
    def custom(cls, k: int, values: Sequence) -> "CoefficientFamily":
        values = tuple(Fraction(v) for v in values)
        if len(values) > k // 2 + 1:
            raise ValueError(f"at most {k // 2 + 1} coefficients for degree {k}")
        return cls(Kind.CUSTOM, k, 0, values)

    @property
    def is_prime(self) -> bool:
        return self.kind in (Kind.TWISTED_PRIME, Kind.HALF_TWISTED_PRIME)

    @property
    def twist(self) -> Fraction:
        """Effective twist entering the product formula (m, or m/2 for half-twisted)."""
        if self.kind is Kind.DEFAULT:
            return Fraction(0)
        if self.kind in (Kind.HALF_TWISTED, Kind.HALF_TWISTED_PRIME):
            return Fraction(self.m, 2)
        return Fraction(self.m)

    @property
    def index_range(self) -> range:
        if self.kind is Kind.CUSTOM:
            return range(len(self.values))
        if self.is_prime:
            return range((self.k - 1) // 2 + 1) if self.k >= 1 else range(0)
        return range(self.k // 2 + 1)

    def denominator_factors(self, i: int) -> Tuple[Fraction, ...]:
        """Linear factors (k+t)(k+t-1)... in the denominator of coefficient i."""
        top = self.k + self.twist
        count = i + 1 if self.is_prime else i
        return tuple(top - j for j in range(count))

    def __str__(self):
        if self.kind is Kind.DEFAULT:
            return f"default(k={self.k})"
        if self.kind is Kind.CUSTOM:
            return f"custom(k={self.k}, c={[str(v) for v in self.values]})"
        return f"{self.kind.value}(k={self.k}, m={self.m})"


def well_defined(family: CoefficientFamily) -> bool:
    """Whether every coefficient of the family is a finite rational.

    Twisted families follow the admissible twist range m <= -k-1 or
    m >= -[k/2]; half-twisted families only require that no denominator
    factor vanishes, which always holds for odd m.
    """
    k, m = family.k, family.m
    if family.kind in (Kind.DEFAULT, Kind.CUSTOM):
        return True
    if family.kind in (Kind.TWISTED, Kind.TWISTED_PRIME):
        return m <= -k - 1 or m >= -(k // 2)
    return all(f != 0 for i in family.index_range for f in family.denominator_factors(i))


def coeff(family: CoefficientFamily, i: int) -> Fraction:
    if i not in family.index_range:
        raise IndexError(f"coefficient index {i} outside {family.index_range} for {family}")
    if not well_defined(family):
        raise IllDefinedFamily(f"{family} is not well-defined")
    if family.kind is Kind.CUSTOM:
        return family.values[i]
    denom = Fraction(factorial(i))
    for f in family.denominator_factors(i):
        denom *= f
    return 1 / denom


def coefficients(family: CoefficientFamily) -> Tuple[Fraction, ...]:
    return tuple(coeff(family, i) for i in family.index_range)


def _rising(base: int, count: int) -> int:
    """(base+1)(base+2)...(base+count) as an exact integer product."""
    out = 1
    for j in range(1, count + 1):
        out *= base + j
    return out


def eigen_sum(coeffs: Sequence[Fraction], n: int, k: int, r: int) -> Fraction:
    """sum_{s<=r} c_s r!/(r-s)! (n-k+r+s)!/(n-k+r)!, factorial ratios as products."""
    total = Fraction(0)
    for s in range(min(r, len(coeffs) - 1) + 1):
        total += coeffs[s] * (factorial(r) // factorial(r - s)) * _rising(n - k + r, s)
    return total


def twisted_closed_form(t: Fraction, n: int, k: int, r: int) -> Fraction:
    """(t+n+r+1)...(t+n+2) / ((t+k)...(t+k-r+1)) for effective twist ``t``."""
    num = Fraction(1)
    for j in range(2, r + 2):
        num *= t + n + j
    den = Fraction(1)
    for j in range(r):
        den *= t + k - j
    return num / den


def _require(family: CoefficientFamily) -> Tuple[Fraction, ...]:
    if not well_defined(family):
        raise IllDefinedFamily(f"{family} is not well-defined")
    return coefficients(family)


def eigenvalues(family: CoefficientFamily, model: SymplecticModel) -> Dict[int, Fraction]:
    """Scalar by which T acts on each existing Lefschetz component of degree k."""
    cs = _require(family)
    return {r: eigen_sum(cs, model.n, family.k, r) for r in model.component_range(family.k)}


def is_invertible(family: CoefficientFamily, model: SymplecticModel) -> bool:
    return all(v != 0 for v in eigenvalues(family, model).values())


def _check_degree(family: CoefficientFamily, x: Multivector) -> None:
    if x.degree != family.k:
        raise StructuralError(f"family is for degree {family.k}, element has degree {x.degree}")


def apply_T(family: CoefficientFamily, model: SymplecticModel, x: Multivector) -> Multivector:
    cs = _require(family)
    _check_degree(family, x)
    out = Multivector.zero(model.dim, x.degree)
    for i, c in enumerate(cs):
        if c:
            out = out + op_L_power(model, op_Lambda_power(model, x, i), i).scale(c)
    return out


def invert_T(family: CoefficientFamily, model: SymplecticModel, y: Multivector) -> Multivector:
    """Solve apply_T(family, model, x) = y by dividing each Lefschetz component."""
    _check_degree(family, y)
    eig = eigenvalues(family, model)
    bad = [r for r, v in eig.items() if v == 0]
    if bad:
        raise NotInvertible(f"{family} has zero eigenvalue on components {bad} (n={model.n})")
    out = Multivector.zero(model.dim, y.degree)
    for r, yr in primitive_decompose(model, y).parts:
        out = out + op_L_power(model, yr.scale(1 / eig[r]), r)
    return out


def apply_F_pointwise(family: CoefficientFamily, model: SymplecticModel,
                      x: Multivector) -> Multivector:
    """Pointwise model of the splitting map on the contact distribution: flat o T."""
    return flat_k(model, apply_T(family, model, x))
