import pytest
import sympy

from app.models.algebra import AElem, ELLIPTIC, HYPERBOLIC
from app.models.lie import BLOCK_DEGREES, SuElem
from app.services.group_service import GroupService
from app.services.lie_service import LieService
from app.utils import amatrix
from app.utils.errors import NotAMember

DELTAS = [HYPERBOLIC, ELLIPTIC]


@pytest.fixture
def random_su(rng):
    def make(delta: int, block: str = None) -> SuElem:
        coords = [sympy.Rational(int(rng.integers(-4, 5)), int(rng.integers(1, 3))) for _ in range(16)]
        M = LieService.from_coordinates(coords, delta)
        return M.only(block) if block else M

    return make


def pure(delta: int, block: str, value: AElem = None) -> SuElem:
    parts = {name: AElem.zero(delta) for name in BLOCK_DEGREES}
    parts[block] = value if value is not None else AElem.one(delta)
    return SuElem(delta=delta, **parts)


@pytest.mark.parametrize("delta", DELTAS)
def test_dims(delta):
    dims = LieService.dims(delta)
    assert dims["graded"] == [2, 4, 4, 4, 2]
    assert dims["total"] == 16
    assert dims["positive"] == 6


@pytest.mark.parametrize("delta", DELTAS)
def test_membership_examples(delta):
    assert LieService.is_member(SuElem.zero(delta).matrix())
    assert LieService.is_member(pure(delta, "X").matrix())
    bad = list(map(list, pure(delta, "Zc").matrix()))
    bad[0][2] = AElem(sympy.I, 0, delta)
    assert not LieService.is_member(amatrix.freeze(bad))


@pytest.mark.parametrize("delta", DELTAS)
def test_membership_characterizations_agree(delta, random_su, random_aelem):
    for _ in range(20):
        M = random_su(delta).matrix()
        assert LieService.pattern_holds(M) and LieService.form_holds(M)
        assert LieService.is_member(M)
    for _ in range(20):
        M = amatrix.freeze([[random_aelem(delta) for _ in range(3)] for _ in range(3)])
        assert LieService.pattern_holds(M) == LieService.form_holds(M) == LieService.is_member(M)


def test_pack_rejects_non_members(random_aelem):
    M = amatrix.freeze([[random_aelem(HYPERBOLIC, invertible=True) for _ in range(3)] for _ in range(3)])
    with pytest.raises(NotAMember):
        LieService.pack(M)


@pytest.mark.parametrize("delta", DELTAS)
def test_bracket_closure_and_antisymmetry(delta, random_su):
    for _ in range(10):
        M, N = random_su(delta), random_su(delta)
        assert LieService.bracket(M, M).is_zero()
        assert LieService.bracket(M, N) == LieService.bracket(N, M).scale(-1)


@pytest.mark.parametrize("delta", DELTAS)
def test_jacobi_identity(delta, random_su):
    for _ in range(5):
        A, B, C = random_su(delta), random_su(delta), random_su(delta)
        br = LieService.bracket
        total = br(A, br(B, C)) + br(B, br(C, A)) + br(C, br(A, B))
        assert total.is_zero()


@pytest.mark.parametrize("delta", DELTAS)
def test_bracket_respects_grading(delta, random_su):
    for i_block, i in BLOCK_DEGREES.items():
        for j_block, j in BLOCK_DEGREES.items():
            result = LieService.bracket(random_su(delta, i_block), random_su(delta, j_block))
            support = LieService.grade(result).support()
            if abs(i + j) > 2:
                assert support == []
            else:
                assert set(support) <= {i + j}


def test_w_y_bracket_is_grade_zero():
    result = LieService.bracket(pure(HYPERBOLIC, "W"), pure(HYPERBOLIC, "Y"))
    assert LieService.grade(result).support() == [0]


@pytest.mark.parametrize("delta", DELTAS)
def test_grade_sums_back(delta, random_su):
    M = random_su(delta)
    assert LieService.grade(M).total() == M
    assert LieService.grade(pure(delta, "V")).support() == [-2]


@pytest.mark.parametrize("delta", DELTAS)
def test_grading_element_eigenvalues(delta):
    H = LieService.grading_element(delta)
    for block, degree in BLOCK_DEGREES.items():
        E = pure(delta, block)
        assert LieService.bracket(H, E) == E.scale(degree)


@pytest.mark.parametrize("delta", DELTAS)
def test_coordinates_round_trip(delta, random_su):
    M = random_su(delta)
    assert LieService.from_coordinates(LieService.coordinates(M), delta) == M
    assert len(LieService.basis(delta)) == 16
    assert LieService.basis_degrees() == [-2] * 2 + [-1] * 4 + [0] * 4 + [1] * 4 + [2] * 2


@pytest.mark.parametrize("delta", DELTAS)
def test_adjoint_is_a_representation(delta, random_su):
    identity = GroupService.identity(delta)
    M, N = random_su(delta), random_su(delta)
    assert LieService.adjoint(identity, M) == M
    Z0 = AElem(1, 0, delta)
    g = GroupService.translation(Z0, GroupService.quadric_point(Z0, AElem.zero(delta)).W)
    lhs = LieService.adjoint(g, LieService.bracket(M, N))
    rhs = LieService.bracket(LieService.adjoint(g, M), LieService.adjoint(g, N))
    assert lhs == rhs


@pytest.mark.parametrize("delta", DELTAS)
def test_translations_preserve_the_filtration(delta):
    Z0 = AElem(1, sympy.Rational(1, 2), delta)
    g = GroupService.translation(Z0, GroupService.quadric_point(Z0, AElem(2, 0, delta)).W)
    top = pure(delta, "Zc")
    assert LieService.adjoint(g, top) == top
    for block, degree in BLOCK_DEGREES.items():
        moved = LieService.grade(LieService.adjoint(g, pure(delta, block)))
        assert min(moved.support()) == degree
        assert moved[degree] == pure(delta, block)
