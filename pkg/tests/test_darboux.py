import random
from fractions import Fraction

import pytest

from contactsplit.darboux import (
    DarbouxModel,
    F_apply,
    G_apply,
    certify,
    exterior_d,
    format_poly_multivector,
    frame_to_coord,
    gamma0_contract,
    parse_poly_multivector,
    restrict_to_D,
    splitting_section,
    to_coframe,
)
from contactsplit.exalg import Multivector, basis_elements
from contactsplit.poly import Poly
from contactsplit.symplectic import flat_k
from contactsplit.transforms import CoefficientFamily, apply_T
from contactsplit.verify import random_poly_multivector

D1, D2 = DarbouxModel(1), DarbouxModel(2)
z = Poly.var


def as_poly(x):
    return x.map_coefficients(Poly._coerce)


def test_exterior_d_examples():
    assert exterior_d(D1, D1.dz(2, z(1))) == D1.dz(1) ^ D1.dz(2)
    assert D1.dgamma0 == (D1.dz(1) ^ D1.dz(2)).scale(2)
    assert D2.dgamma0 == ((D2.dz(1) ^ D2.dz(2)) + (D2.dz(3) ^ D2.dz(4))).scale(2)
    rng = random.Random(3)
    for k in range(0, 4):
        f = random_poly_multivector(rng, D2.dim, k, D2.dim)
        f = Multivector(f.dim, f.degree, f.terms, dual=True)
        assert exterior_d(D2, exterior_d(D2, f)).is_zero()


def test_frame_spans_kernel_of_gamma():
    for model in (D1, D2):
        for j in range(1, model.frame_dim + 1):
            assert gamma0_contract(model, model.frame_vector(j)).is_zero()


def test_F_examples():
    assert F_apply(D1, 1, D1.d(0)).is_zero()
    assert F_apply(D1, 1, D1.d(1)) == D1.dz(2, 2)


def test_G_examples():
    s1 = Multivector.scalar(D1.dim, Poly.const(1))
    assert G_apply(D1, 1, s1).is_zero()
    sz = Multivector.scalar(D1.dim, z(1))
    assert G_apply(D1, 1, sz) == D1.dz(1)


def test_to_coframe_examples():
    g = to_coframe(D1, D1.dz(0))
    expected = Multivector.basis(3, (1,), Poly.const(1), dual=True) \
        - Multivector.basis(3, (3,), z(1), dual=True) + Multivector.basis(3, (2,), z(2), dual=True)
    assert g == expected
    assert restrict_to_D(D1, D1.gamma0).is_zero()
    assert restrict_to_D(D1, D1.dz(1)) == Multivector.basis(2, (1,), Poly.const(1), dual=True)


@pytest.mark.parametrize("model", [D1, D2])
def test_restricted_F_is_scaled_flat_T(model):
    # on the frame, d gamma0|_D = 2 omega, so F|_D = 2^k flat o T_default
    for k in range(1, model.frame_dim + 1):
        fam = CoefficientFamily.default(k)
        for e in basis_elements(model.frame_dim, k):
            got = restrict_to_D(model, F_apply(model, k, frame_to_coord(model, e)))
            want = flat_k(model.symplectic, apply_T(fam, model.symplectic, e)).scale(2 ** k)
            assert got == as_poly(want)


def test_hand_worked_sections():
    s = parse_poly_multivector("1", D1, frame=True, degree=0)
    assert splitting_section(D1, 1, s) == D1.reeb
    s = parse_poly_multivector("z1", D1, frame=True, degree=0)
    x = splitting_section(D1, 1, s)
    assert x == D1.d(0, z(1) * Fraction(1, 2)) + D1.d(2, Fraction(1, 2))
    assert format_poly_multivector(x) == "(1/2)*z1*d0 + (1/2)*d2"


@pytest.mark.parametrize("n,k", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)])
def test_random_sections_certify(n, k):
    model = DarbouxModel(n)
    rng = random.Random(100 * n + k)
    for _ in range(6):
        s = random_poly_multivector(rng, model.frame_dim, k - 1, model.dim)
        x = splitting_section(model, k, s)
        assert certify(model, k, s, x).ok
        pert = random_poly_multivector(rng, model.frame_dim, k, model.dim)
        assert splitting_section(model, k, s, perturbation=pert) == x


def test_poly_multivector_round_trip():
    rng = random.Random(9)
    for frame in (False, True):
        for dual in (False, True):
            dim = D2.frame_dim if frame else D2.dim
            for k in range(0, 3):
                x = random_poly_multivector(rng, dim, k, D2.dim)
                x = Multivector(dim, k, x.terms, dual)
                text = format_poly_multivector(x, frame=frame)
                assert parse_poly_multivector(text, D2, frame, dual, k) == x


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poly_multivector("z1 +", D1, frame=True)
    with pytest.raises(ValueError):
        parse_poly_multivector("z7", D1, frame=True)
    with pytest.raises(ValueError):
        parse_poly_multivector("X5", D1, frame=True)
    with pytest.raises(ValueError):
        parse_poly_multivector("d1", D1, frame=True)
