import pytest
import sympy

from app.models.algebra import AElem, ELLIPTIC, HYPERBOLIC
from app.services.algebra_service import AlgebraService
from app.utils.errors import DeltaMismatch, NotInvertible, OutOfCone

I = sympy.I


@pytest.mark.parametrize("delta", [HYPERBOLIC, ELLIPTIC])
def test_identity_is_neutral(delta, random_aelem):
    x = random_aelem(delta)
    assert AElem.one(delta) * x == x


def test_split_null_vectors_annihilate():
    assert AElem(1, 1, HYPERBOLIC) * AElem(1, -1, HYPERBOLIC) == AElem.zero(HYPERBOLIC)


def test_elliptic_generator_squares_to_minus_one():
    assert AElem(0, 1, ELLIPTIC) * AElem(0, 1, ELLIPTIC) == AElem(-1, 0, ELLIPTIC)


def test_mixed_delta_is_rejected():
    with pytest.raises(DeltaMismatch):
        AlgebraService.add(AElem.one(HYPERBOLIC), AElem.one(ELLIPTIC))


def test_conj_is_entrywise():
    x = AElem(1 + I, 2 - I, HYPERBOLIC)
    assert x.conj() == AElem(1 - I, 2 + I, HYPERBOLIC)
    assert AElem(I, 0, ELLIPTIC).conj() == AElem(-I, 0, ELLIPTIC)


@pytest.mark.parametrize("delta", [HYPERBOLIC, ELLIPTIC])
def test_ring_laws_on_random_pairs(delta, random_aelem):
    for _ in range(30):
        x, y = random_aelem(delta), random_aelem(delta)
        assert x * y == y * x
        assert sympy.expand((x * y).det() - x.det() * y.det()) == 0
        assert (x * y).conj() == x.conj() * y.conj()
        assert x.conj().conj() == x


def test_det_and_inverse():
    assert AElem.one(HYPERBOLIC).det() == 1
    assert AElem.one(HYPERBOLIC).inverse() == AElem.one(HYPERBOLIC)
    assert AElem(0, 1, ELLIPTIC).inverse() == AElem(0, -1, ELLIPTIC)
    with pytest.raises(NotInvertible):
        AElem(1, 1, HYPERBOLIC).inverse()


@pytest.mark.parametrize("delta", [HYPERBOLIC, ELLIPTIC])
def test_inverse_of_random_units(delta, random_aelem):
    for _ in range(20):
        x = random_aelem(delta, invertible=True)
        assert x * x.inverse() == AElem.one(delta)


def test_sqrt_positive_examples():
    assert AlgebraService.sqrt_positive(AElem.one(HYPERBOLIC)) == AElem.one(HYPERBOLIC)
    x = AElem(sympy.Rational(5, 2), sympy.Rational(3, 2), HYPERBOLIC)
    assert AlgebraService.sqrt_positive(x) == AElem(sympy.Rational(3, 2), sympy.Rational(1, 2), HYPERBOLIC)
    assert AlgebraService.sqrt_positive(AElem(4, 0, ELLIPTIC)) == AElem(2, 0, ELLIPTIC)


def test_sqrt_positive_squares_back(random_aelem):
    for _ in range(20):
        x = random_aelem(HYPERBOLIC, real=True)
        if not AlgebraService.is_positive(x):
            continue
        r = AlgebraService.sqrt_positive(x)
        assert r * r == x


def test_elliptic_sqrt_uses_principal_branch():
    # a + ib = 3 + 4i has principal root 2 + i
    assert AlgebraService.sqrt_positive(AElem(3, 4, ELLIPTIC)) == AElem(2, 1, ELLIPTIC)


def test_sqrt_outside_cone():
    with pytest.raises(OutOfCone):
        AlgebraService.sqrt_positive(AElem(0, 1, HYPERBOLIC))
    with pytest.raises(OutOfCone):
        AlgebraService.sqrt_positive(AElem(-1, 0, ELLIPTIC))


@pytest.mark.parametrize("delta, size", [(ELLIPTIC, 3), (HYPERBOLIC, 9)])
def test_lambda_set(delta, size):
    elements = AlgebraService.lambda_set(delta)
    assert len(elements) == size
    for lam in elements:
        assert lam * lam.conj() == AElem.one(delta)
        assert lam**3 == AElem.one(delta)


def test_split_basis_examples():
    assert AElem.one(HYPERBOLIC).split() == (1, 1)
    assert AElem(3, 1, HYPERBOLIC).split() == (4, 2)
    assert AlgebraService.unsplit(4, 2, HYPERBOLIC) == AElem(3, 1, HYPERBOLIC)


@pytest.mark.parametrize("delta", [HYPERBOLIC, ELLIPTIC])
def test_split_is_multiplicative(delta, random_aelem):
    for _ in range(30):
        x, y = random_aelem(delta), random_aelem(delta)
        (x1, x2), (y1, y2) = x.split(), y.split()
        p1, p2 = (x * y).split()
        assert sympy.expand(p1 - x1 * y1) == 0
        assert sympy.expand(p2 - x2 * y2) == 0
        assert AlgebraService.unsplit(*x.split(), delta) == x


@pytest.mark.parametrize("delta", [HYPERBOLIC, ELLIPTIC])
def test_exp_i_is_a_unit(delta):
    C = AlgebraService.exp_i(0.3, -0.7, delta)
    assert C.numeric
    assert AlgebraService.is_unit(C)


def test_numeric_mode_promotes():
    x = AElem(1, 2, HYPERBOLIC) + AElem(0.5, 0.0, HYPERBOLIC)
    assert x.numeric
    assert x == AElem(1.5, 2.0, HYPERBOLIC)
