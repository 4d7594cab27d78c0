"""Pointwise linear algebra of the contact splitting.

W = V + <R> with V spanned by e_1..e_2n (the contact hyperplane) and
R = e_{2n+1} normalized by gamma(R) = 1.  The contact form extends to
k-vectors by contraction, its kernel is the exterior power of V, and
``lift`` is the right inverse s -> R ^ s.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Tuple

from .exalg import Multivector, StructuralError, contract_one_form, wedge
from .linalg import matrix_of, rank


@dataclass(frozen=True)
class ContactSpace:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"half-dimension must be >= 1, got {self.n}")

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def reeb_index(self) -> int:
        return 2 * self.n + 1

    @property
    def gamma(self) -> Multivector:
        return Multivector.basis(self.dim, (self.reeb_index,), 1, dual=True)

    @property
    def reeb(self) -> Multivector:
        return Multivector.basis(self.dim, (self.reeb_index,))


def gamma_contract(space: ContactSpace, x: Multivector) -> Multivector:
    """gamma(X) as a (k-1)-vector on the hyperplane (dimension 2n)."""
    if x.dim != space.dim:
        raise StructuralError(f"expected dimension {space.dim}, got {x.dim}")
    if x.degree < 1:
        raise StructuralError("gamma contraction needs degree >= 1")
    return contract_one_form(space.gamma, x).embed(2 * space.n)


def lift(space: ContactSpace, s: Multivector) -> Multivector:
    if s.dual:
        raise StructuralError("lift expects a multivector")
    if s.max_index() > 2 * space.n:
        raise StructuralError("section must live on the contact hyperplane")
    if s.dim not in (2 * space.n, space.dim):
        raise StructuralError(f"unexpected dimension {s.dim}")
    return wedge(space.reeb, s.embed(space.dim))


def exactness_dims(space: ContactSpace, k: int) -> Tuple[int, int, int]:
    """(kernel, total, image) dimensions of gamma on k-vectors, by binomials."""
    if not 0 <= k <= space.dim:
        raise ValueError(f"degree {k} outside 0..{space.dim}")
    kernel = comb(2 * space.n, k)
    total = comb(space.dim, k)
    image = comb(2 * space.n, k - 1) if k >= 1 else 0
    assert kernel + image == total
    return kernel, total, image


def gamma_rank(space: ContactSpace, k: int) -> int:
    """Rank of gamma on k-vectors computed from its explicit matrix."""
    if k == 0:
        return 0
    m = matrix_of(lambda e: gamma_contract(space, e), space.dim, k, 2 * space.n, k - 1)
    return rank(m)
