"""Dense exact linear algebra over the rationals.

Used as the brute-force side of the verification checks: operators are
turned into explicit matrices on the monomial basis and their rank,
kernel or solutions are found by plain Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence

from .exalg import Multivector, basis_elements, basis_indices

Matrix = List[List[Fraction]]


def row_echelon(m: Sequence[Sequence], rhs: Sequence | None = None):
    """Reduced row echelon form; returns (rows, pivot_columns, rhs)."""
    a = [[Fraction(x) for x in row] for row in m]
    b = None if rhs is None else [Fraction(x) for x in rhs]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if b is not None:
            b[r], b[piv] = b[piv], b[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        if b is not None:
            b[r] /= p
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                if b is not None:
                    b[i] -= f * b[r]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots, b


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(row_echelon(m)[1])


def is_nonsingular(m: Sequence[Sequence]) -> bool:
    return len(m) == (len(m[0]) if m else 0) and rank(m) == len(m)


def solve(m: Sequence[Sequence], rhs: Sequence) -> List[Fraction]:
    """One solution of ``m x = rhs``; raises ``ValueError`` if inconsistent."""
    n_cols = len(m[0]) if m else 0
    a, pivots, b = row_echelon(m, rhs)
    for i in range(len(pivots), len(a)):
        if b[i] != 0:
            raise ValueError("linear system is inconsistent")
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = b[i]
    return x


def nullspace(m: Sequence[Sequence], n_cols: int | None = None) -> List[List[Fraction]]:
    """Basis of the kernel of ``m`` (column vectors as lists)."""
    if n_cols is None:
        n_cols = len(m[0]) if m else 0
    if not m:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    a, pivots, _ = row_echelon(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -a[i][f]
        basis.append(v)
    return basis


def to_vector(x: Multivector) -> List[Fraction]:
    """Coordinates of ``x`` on the canonical monomial basis."""
    return [x.terms.get(key, Fraction(0)) for key in basis_indices(x.dim, x.degree)]


def from_vector(v: Sequence, dim: int, degree: int, dual: bool = False) -> Multivector:
    keys = basis_indices(dim, degree)
    return Multivector(dim, degree, {key: c for key, c in zip(keys, v) if c}, dual)


def matrix_of(op: Callable[[Multivector], Multivector], dim: int, degree: int,
              out_dim: int | None = None, out_degree: int | None = None,
              dual_in: bool = False) -> Matrix:
    """Matrix (rows = output monomials) of a linear map on the monomial basis."""
    cols = []
    for e in basis_elements(dim, degree, dual_in):
        img = op(e)
        od = img.dim if out_dim is None else out_dim
        og = img.degree if out_degree is None else out_degree
        cols.append([img.terms.get(key, Fraction(0)) for key in basis_indices(od, og)])
    if not cols:
        return []
    return [list(row) for row in zip(*cols)]
