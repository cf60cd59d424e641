import pytest
import sympy

from app.models.hermitian import HermitianForm2, Label
from app.schemas.hermitian import HermitianFormIn
from app.services.hermitian_service import HermitianService
from app.services.series_service import SeriesService
from app.utils.errors import NotHermitian, ToleranceBand, WitnessNotFound

I = sympy.I
CANONICAL = [
    ("hermitian_hyperbolic", Label.HYPERBOLIC),
    ("hermitian_elliptic", Label.ELLIPTIC),
    ("hermitian_parabolic", Label.PARABOLIC),
]


@pytest.fixture
def random_congruence(rng):
    def small():
        return sympy.Rational(int(rng.integers(-3, 4)), int(rng.integers(1, 3)))

    def make():
        while True:
            A = sympy.Matrix(2, 2, lambda i, j: small() + I * small())
            B = sympy.Matrix(2, 2, lambda i, j: small())
            if A.det() != 0 and B.det() != 0:
                return A, B

    return make


@pytest.mark.parametrize("name, label", CANONICAL)
def test_canonical_fixtures(name, label, load_fixture):
    H = HermitianFormIn(**load_fixture(name)).to_model()
    result = HermitianService.classify(H)
    assert result.label == label
    assert result.A == sympy.eye(2) and result.B == sympy.eye(2)
    assert HermitianService.canonical_form(label) == H


@pytest.mark.parametrize("name, label", CANONICAL)
def test_label_is_congruence_invariant(name, label, load_fixture, random_congruence):
    H = HermitianFormIn(**load_fixture(name)).to_model()
    for _ in range(8):
        A, B = random_congruence()
        moved = HermitianService.apply_congruence(H, A, B)
        result = HermitianService.classify(moved)
        assert result.label == label
        assert HermitianService.verify_witness(moved, result)


def test_parabolic_label_survives_random_congruences(random_congruence):
    H = HermitianService.canonical_form(Label.PARABOLIC)
    for _ in range(12):
        A, B = random_congruence()
        moved = HermitianService.apply_congruence(H, A, B)
        assert HermitianService.pencil_discriminant(moved) == 0
        result = HermitianService.classify(moved)
        assert result.label == Label.PARABOLIC
        assert HermitianService.verify_witness(moved, result)


def test_witness_falls_back_to_random_congruences(monkeypatch, random_congruence):
    direct = HermitianService._hyperbolic_witness
    calls = []

    def flaky(H):
        calls.append(H)
        if len(calls) == 1:
            raise ArithmeticError("degenerate pencil parameter")
        return direct(H)

    monkeypatch.setattr(HermitianService, "_hyperbolic_witness", staticmethod(flaky))
    A, B = random_congruence()
    H = HermitianService.apply_congruence(HermitianService.canonical_form(Label.HYPERBOLIC), A, B)
    result = HermitianService.classify(H)
    assert result.label == Label.HYPERBOLIC
    assert len(calls) >= 2
    assert HermitianService.verify_witness(H, result)


def test_witness_search_gives_up(monkeypatch):
    def broken(H):
        raise ArithmeticError("degenerate pencil parameter")

    monkeypatch.setattr(HermitianService, "_elliptic_witness", staticmethod(broken))
    H = HermitianForm2(sympy.Matrix([[2, 0], [0, -1]]), sympy.Matrix([[0, 1], [1, 0]]))
    with pytest.raises(WitnessNotFound):
        HermitianService.classify(H)


def test_degenerate_forms():
    H = HermitianForm2(sympy.Matrix([[1, 0], [0, 0]]), sympy.Matrix([[2, 0], [0, 0]]))
    assert not HermitianService.is_nondegenerate(H)
    result = HermitianService.classify(H)
    assert result.label == Label.DEGENERATE
    assert not result.has_witness


def test_discriminant_sign():
    assert HermitianService.pencil_discriminant(HermitianService.canonical_form(Label.HYPERBOLIC)) > 0
    assert HermitianService.pencil_discriminant(HermitianService.canonical_form(Label.ELLIPTIC)) < 0
    assert HermitianService.pencil_discriminant(HermitianService.canonical_form(Label.PARABOLIC)) == 0


def test_numeric_mode_refuses_the_band():
    H = HermitianService.canonical_form(Label.PARABOLIC)
    with pytest.raises(ToleranceBand):
        HermitianService.classify(H, mode="numeric")
    assert HermitianService.classify(HermitianService.canonical_form(Label.ELLIPTIC), mode="numeric").label == Label.ELLIPTIC


def test_non_hermitian_input_is_rejected():
    H = HermitianForm2(sympy.Matrix([[1, 1], [0, 1]]), sympy.Matrix([[0, 1], [1, 0]]))
    with pytest.raises(NotHermitian):
        HermitianService.classify(H)


@pytest.mark.parametrize("delta, label", [(1, Label.HYPERBOLIC), (-1, Label.ELLIPTIC)])
def test_levi_form_of_the_quadric(delta, label):
    S = SeriesService.quadric_series(delta, 4)
    H = HermitianService.levi_form_at_origin(S)
    assert HermitianService.classify(H).label == label
