import random
from fractions import Fraction
from math import factorial

import pytest

from contactsplit.exalg import Multivector, contract_form, wedge
from contactsplit.linalg import is_nonsingular, matrix_of
from contactsplit.symplectic import SymplecticModel, flat_k, op_L_power, primitive_decompose
from contactsplit.transforms import (
    CoefficientFamily,
    IllDefinedFamily,
    NotInvertible,
    apply_F_pointwise,
    apply_T,
    coeff,
    coefficients,
    eigen_sum,
    eigenvalues,
    invert_T,
    is_invertible,
    twisted_closed_form,
    well_defined,
)
from contactsplit.verify import random_multivector, zero_eigenvalue_family

M2 = SymplecticModel(2)
F = Fraction


def test_coefficient_examples():
    assert coefficients(CoefficientFamily.default(2)) == (1, F(1, 2))
    assert coeff(CoefficientFamily.twisted(3, -4), 1) == -1
    assert coeff(CoefficientFamily.half_twisted(1, -1), 0) == 1


def test_default_coefficients_formula():
    for k in range(0, 9):
        for i in range(k // 2 + 1):
            want = F(factorial(k - i), factorial(k) * factorial(i))
            assert coeff(CoefficientFamily.default(k), i) == want


def test_prime_coefficients():
    # c'_{m,i} = 1 / ((k+m)...(k+m-i) i!)
    fam = CoefficientFamily.twisted_prime(3, 2)
    assert coefficients(fam) == (F(1, 5), F(1, 5 * 4))
    assert list(CoefficientFamily.twisted_prime(4, 0).index_range) == [0, 1]


def test_well_defined():
    assert well_defined(CoefficientFamily.twisted(3, -4))
    assert not well_defined(CoefficientFamily.twisted(4, -3))
    for m in range(-21, 22, 2):
        assert well_defined(CoefficientFamily.half_twisted(5, m))
    with pytest.raises(IllDefinedFamily):
        coeff(CoefficientFamily.twisted(4, -3), 0)
    with pytest.raises(IndexError):
        coeff(CoefficientFamily.default(2), 2)


def test_apply_T_examples():
    w0 = M2.w0
    assert apply_T(CoefficientFamily.default(2), M2, w0) == w0.scale(2)
    assert apply_T(CoefficientFamily.twisted(2, -1), M2, w0) == w0.scale(3)
    p = Multivector.basis(4, (1, 3))
    assert apply_T(CoefficientFamily.twisted(2, 5), M2, p) == p


def test_eigenvalue_examples():
    assert eigenvalues(CoefficientFamily.default(2), M2) == {0: 1, 1: 2}
    assert eigenvalues(CoefficientFamily.twisted(2, -1), M2) == {0: 1, 1: 3}
    assert twisted_closed_form(F(-1), 2, 2, 1) == 3


@pytest.mark.parametrize("n", [1, 2, 3])
def test_T_acts_by_eigenvalue_on_components(n):
    model = SymplecticModel(n)
    rng = random.Random(5)
    for k in range(1, 2 * n + 1):
        fam = CoefficientFamily.default(k)
        eig = eigenvalues(fam, model)
        x = random_multivector(rng, model.dim, k)
        for r, xr in primitive_decompose(model, x).parts:
            lx = op_L_power(model, xr, r)
            assert apply_T(fam, model, lx) == lx.scale(eig[r])


def test_invertibility_constructed_zero():
    # c0 = 1, c1 = -1/(n-k+2) kills r = 1 for k = 2 <= n
    n, k = 2, 2
    fam = CoefficientFamily.custom(k, [1, F(-1, n - k + 2)])
    assert not is_invertible(fam, M2)
    assert not is_nonsingular(matrix_of(lambda x: apply_T(fam, M2, x), 4, 2))
    with pytest.raises(NotInvertible):
        invert_T(fam, M2, M2.w0)


def test_zero_eigenvalue_family_helper():
    rng = random.Random(1)
    for _ in range(10):
        fam, r = zero_eigenvalue_family(rng, 3, 4)
        assert eigenvalues(fam, SymplecticModel(3))[r] == 0


def test_invert_examples():
    assert invert_T(CoefficientFamily.default(2), M2, M2.w0.scale(2)) == M2.w0
    p = Multivector.basis(4, (1, 3))
    assert invert_T(CoefficientFamily.default(2), M2, p) == p


@pytest.mark.parametrize("n", [1, 2, 3])
def test_invert_round_trip(n):
    rng = random.Random(n)
    model = SymplecticModel(n)
    for k in range(1, 2 * n + 1):
        for fam in (CoefficientFamily.default(k), CoefficientFamily.twisted(k, 1),
                    CoefficientFamily.half_twisted(k, -3)):
            if not is_invertible(fam, model):
                continue
            y = random_multivector(rng, model.dim, k)
            assert apply_T(fam, model, invert_T(fam, model, y)) == y


def test_F_pointwise_examples():
    m1 = SymplecticModel(1)
    assert apply_F_pointwise(CoefficientFamily.default(1), m1, Multivector.basis(2, (1,))) \
        == Multivector.basis(2, (2,), dual=True)
    assert apply_F_pointwise(CoefficientFamily.default(2), M2, M2.w0) == M2.omega.scale(2)


def brute_F(model, k, x):
    # sum_i c_i flat(omega^i(X) ^ w0^i) with explicit wedge powers
    out = Multivector.zero(model.dim, k, dual=True)
    om = Multivector.scalar(model.dim, 1, dual=True)
    w = Multivector.scalar(model.dim, 1)
    for i in range(k // 2 + 1):
        c = F(factorial(k - i), factorial(k) * factorial(i))
        out = out + flat_k(model, wedge(contract_form(om, x), w)).scale(c)
        om, w = wedge(om, model.omega), wedge(w, model.w0)
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_F_pointwise_matrix_vs_brute_force(n):
    model = SymplecticModel(n)
    for k in range(1, 2 * n + 1):
        fam = CoefficientFamily.default(k)
        got = matrix_of(lambda x: apply_F_pointwise(fam, model, x), model.dim, k)
        brute = matrix_of(lambda x: brute_F(model, k, x), model.dim, k)
        assert got == brute
        assert is_nonsingular(got)


def test_eigen_sum_matches_direct_factorials():
    cs = [F(1), F(1, 3), F(-2, 5)]
    n, k, r = 4, 5, 2
    direct = sum(cs[s] * F(factorial(r), factorial(r - s))
                 * F(factorial(n - k + r + s), factorial(n - k + r)) for s in range(r + 1))
    assert eigen_sum(cs, n, k, r) == direct
