import pytest
import sympy
from app.models.algebra import AElem, ELLIPTIC, HYPERBOLIC
from app.models.normalform import CONDITION_IDS, InitialData, Roles
from app.models.series import SurfaceSeries
from app.schemas.series import SeriesIn
from app.services.normalform_service import MODEL_ROLES, NormalFormService, condition_for
from app.services.series_service import SeriesService
from app.utils import scalars
from app.utils.errors import BoundMismatch, InvalidParams, NotInNormalForm, WrongLeviForm

DELTAS = [HYPERBOLIC, ELLIPTIC]


@pytest.mark.parametrize("delta", DELTAS)
def test_quadric_is_in_normal_form(delta):
    report = NormalFormService.check(SeriesService.quadric_series(delta, 6))
    assert report.satisfied
    assert report.matrix_flag
    assert report.kappa == 0
    assert report.nu is None
    assert report.coordinates == ("split" if delta == HYPERBOLIC else "elliptic")


def test_matrix_surface_fixture(load_series):
    S = load_series("matrix_surface")
    assert NormalFormService.check(S).satisfied
    assert NormalFormService.is_matrix_surface(S)
    assert NormalFormService.kappa(S) == 0


def test_nonmatrix_fixture_kappa(load_series):
    S = load_series("nonmatrix_elliptic")
    report = NormalFormService.check(S)
    assert report.satisfied
    assert not report.matrix_flag
    assert report.nu == 5
    assert NormalFormService.kappa(S) == sympy.Rational(1, 5)
    assert not NormalFormService.is_matrix_surface(S)


def test_checks_are_per_delta(load_series):
    with pytest.raises(WrongLeviForm):
        NormalFormService.check_elliptic(load_series("matrix_surface"))
    with pytest.raises(WrongLeviForm):
        NormalFormService.check_hyperbolic(load_series("nonmatrix_elliptic"))


def test_wrong_levi_class_is_rejected():
    S = SurfaceSeries(HYPERBOLIC, SeriesService.levi_part(ELLIPTIC), 4)
    with pytest.raises(WrongLeviForm):
        NormalFormService.check(S)
    with pytest.raises(WrongLeviForm):
        NormalFormService.normalize(S)


@pytest.mark.parametrize("delta", DELTAS)
def test_perturbed_quadric_fails_check(delta, perturbation):
    S = SeriesService.regraph(SeriesService.quadric_series(delta, 6), perturbation(6))
    report = NormalFormService.check(S)
    assert not report.satisfied
    assert {v.condition for v in report.violations} <= set(CONDITION_IDS)
    with pytest.raises(NotInNormalForm):
        NormalFormService.kappa(S)


@pytest.mark.parametrize("delta", DELTAS)
def test_normalize_perturbed_quadric(delta, perturbation):
    S = SeriesService.regraph(SeriesService.quadric_series(delta, 6), perturbation(6))
    result = NormalFormService.normalize(S)
    assert result.report.satisfied
    assert result.report.kappa == 0
    assert NormalFormService.is_matrix_surface(result.series)
    assert SeriesService.regraph(S, result.jet) == result.series


@pytest.mark.parametrize("delta", DELTAS)
def test_normalize_is_idempotent(delta, perturbation):
    S = SeriesService.regraph(SeriesService.quadric_series(delta, 6), perturbation(6))
    first = NormalFormService.normalize(S).series
    second = NormalFormService.normalize(first)
    assert second.series == first
    assert second.jet == SeriesService.identity_jet(6)


@pytest.mark.parametrize("delta", DELTAS)
def test_initial_data_on_the_quadric(delta):
    C = AElem(2, 1, delta)
    A = AElem(sympy.I, sympy.Rational(1, 2), delta)
    R = AElem(1, -1, delta)
    Q = SeriesService.quadric_series(delta, 6)
    result = NormalFormService.normalize(Q, InitialData(C, A, R))
    assert result.series == Q
    assert result.jet == SeriesService.isotropy_jet(C, A, R, 6)


def test_kappa_survives_normalization(load_series, perturbation):
    S = load_series("nonmatrix_elliptic")
    moved = SeriesService.regraph(S, perturbation(S.bound))
    result = NormalFormService.normalize(moved)
    assert result.report.kappa == sympy.Rational(1, 5)
    assert NormalFormService.kappa(result.series) == sympy.Rational(1, 5)


def test_matrix_surface_stays_matrix(load_series, perturbation):
    S = SeriesService.truncate(load_series("matrix_surface"), 6)
    result = NormalFormService.normalize(SeriesService.regraph(S, perturbation(6)))
    assert result.report.matrix_flag
    assert NormalFormService.is_matrix_surface(result.series)


# (k, l, m): z_own^k conj(z_own)^l u_own^m
OWN_TERMS = [(2, 1, 0), (2, 2, 0), (3, 1, 0), (1, 1, 1), (2, 1, 1), (4, 2, 0), (3, 3, 0), (2, 2, 1)]


def _slots(k: int, l: int, m: int, z: int, zb: int, u: int) -> dict:
    def place(e, slot):
        return [e, 0] if slot == 0 else [0, e]

    return {"z": place(k, z), "zb": place(l, zb), "u": place(m, u)}


def _levi_terms(delta: int) -> list:
    if delta == HYPERBOLIC:
        one, zero = scalars.encode(sympy.Integer(1)), scalars.encode(sympy.Integer(0))
        return [
            {**_slots(1, 1, 0, 0, 0, 0), "c": [one, zero]},
            {**_slots(1, 1, 0, 1, 1, 1), "c": [zero, one]},
        ]
    return [{**_slots(1, 1, 0, 0, 1, 0), "c": [scalars.encode(sympy.Integer(1))]}]


def _series(delta: int, bound: int, terms: list) -> SurfaceSeries:
    coordinates = "split" if delta == HYPERBOLIC else "elliptic"
    return SeriesIn(delta=delta, bound=bound, coordinates=coordinates, terms=_levi_terms(delta) + terms).to_model()


@pytest.fixture
def random_matrix_surface(rng, random_aelem):
    """Levi part plus random own-variable terms, in model coordinates."""

    def make(delta: int, bound: int = 6) -> SurfaceSeries:
        terms = []
        picks = rng.choice(len(OWN_TERMS), size=3, replace=False)
        if delta == HYPERBOLIC:
            zero = scalars.encode(sympy.Integer(0))
            for j in (0, 1):
                for index in picks:
                    k, l, m = OWN_TERMS[index]
                    c = random_aelem(delta).a
                    if k == l:
                        c = sympy.re(c)
                    pair = [scalars.encode(c), zero] if j == 0 else [zero, scalars.encode(c)]
                    terms.append({**_slots(k, l, m, j, j, j), "c": pair})
                    if k != l:
                        conj = [scalars.encode(scalars.conj(c)), zero] if j == 0 else [zero, scalars.encode(scalars.conj(c))]
                        terms.append({**_slots(l, k, m, j, j, j), "c": conj})
        else:
            for index in picks:
                k, l, m = OWN_TERMS[index]
                terms.append({**_slots(k, l, m, 0, 1, 0), "c": [scalars.encode(random_aelem(delta).a)]})
        return _series(delta, bound, [t for t in terms if SurfaceSeries.weight_of((*t["z"], *t["zb"], *t["u"])) <= bound])

    return make


@pytest.fixture
def random_nonmatrix_surface(random_aelem):
    """Normal form whose lowest non-matrix term sits at weight 5."""

    def make(delta: int, bound: int = 5) -> SurfaceSeries:
        c = random_aelem(delta).a
        while scalars.is_zero(c):
            c = random_aelem(delta).a
        if delta == HYPERBOLIC:
            zero = scalars.encode(sympy.Integer(0))
            terms = [
                {"z": [2, 0], "zb": [0, 3], "u": [0, 0], "c": [scalars.encode(c), zero]},
                {"z": [0, 3], "zb": [2, 0], "u": [0, 0], "c": [scalars.encode(scalars.conj(c)), zero]},
            ]
        else:
            terms = [{"z": [0, 2], "zb": [3, 0], "u": [0, 0], "c": [scalars.encode(c)]}]
        return _series(delta, bound, terms)

    return make


@pytest.fixture
def random_initial_data(random_aelem):
    """C = m^2 / conj(m) keeps sigma = 1 / m Gaussian rational."""

    def make(delta: int) -> InitialData:
        m = random_aelem(delta, invertible=True)
        return InitialData(m * m / m.conj(), random_aelem(delta), random_aelem(delta, real=True))

    return make


def test_random_matrix_surfaces_normalize_to_matrix_forms(random_matrix_surface, random_initial_data):
    for index in range(5):
        delta = DELTAS[index % 2]
        S = random_matrix_surface(delta)
        assert NormalFormService.is_matrix_surface(S)
        result = NormalFormService.normalize(S, random_initial_data(delta))
        assert result.report.satisfied
        assert result.report.matrix_flag
        assert result.report.kappa == 0
        assert NormalFormService.is_matrix_surface(result.series)


def test_kappa_does_not_depend_on_initial_data(random_nonmatrix_surface, random_initial_data):
    for index in range(5):
        delta = DELTAS[index % 2]
        S = random_nonmatrix_surface(delta)
        assert NormalFormService.check(S).satisfied
        kappa = NormalFormService.kappa(S)
        assert kappa == sympy.Rational(1, 5)
        for _ in range(10):
            result = NormalFormService.normalize(S, random_initial_data(delta))
            assert result.report.satisfied
            assert result.report.kappa == kappa


def test_normalize_bounds_and_params():
    Q = SeriesService.quadric_series(HYPERBOLIC, 6)
    with pytest.raises(BoundMismatch):
        NormalFormService.normalize(Q, bound=8)
    assert NormalFormService.normalize(Q, bound=4).series.bound == 4
    zero = AElem.zero(HYPERBOLIC)
    with pytest.raises(InvalidParams):
        NormalFormService.normalize(Q, InitialData(zero, zero, zero))
    with pytest.raises(InvalidParams):
        NormalFormService.normalize(Q, InitialData.identity(ELLIPTIC))
    with pytest.raises(InvalidParams):
        NormalFormService.normalize(Q, InitialData(AElem.one(HYPERBOLIC), zero, AElem(sympy.I, 0, HYPERBOLIC)))


@pytest.mark.parametrize(
    "monomial, expected",
    [
        ((1, 0, 1, 0, 0, 0), "levi"),
        ((1, 0, 0, 1, 0, 0), "nonmatrix-11"),
        ((0, 1, 1, 0, 0, 0), "nonmatrix-11"),
        ((2, 0, 0, 0, 0, 0), "matrix-part"),
        ((2, 0, 2, 0, 0, 0), "matrix-part"),
        ((4, 0, 2, 0, 0, 0), None),
        ((1, 1, 0, 0, 0, 0), "nonmatrix-k0"),
        ((0, 0, 1, 1, 0, 0), "nonmatrix-0k"),
        ((1, 0, 1, 0, 0, 1), "nonmatrix-11"),
        ((2, 0, 1, 0, 0, 1), "nonmatrix-k1"),
        ((1, 0, 2, 0, 0, 1), "nonmatrix-1k"),
        ((1, 1, 0, 1, 0, 0), "nonmatrix-21"),
        ((0, 1, 1, 1, 0, 0), "nonmatrix-12"),
        ((1, 1, 1, 1, 0, 0), "nonmatrix-22"),
        ((3, 0, 3, 0, 0, 1), None),
    ],
)
def test_condition_ids(monomial, expected):
    assert condition_for(monomial, Roles(0, 0, 0)) == expected


def test_elliptic_roles_mirror_the_split_ones():
    (roles,) = MODEL_ROLES[ELLIPTIC]
    assert condition_for((1, 0, 0, 1, 0, 0), roles) == "levi"
    assert condition_for((0, 2, 3, 0, 0, 0), roles) is None
    assert condition_for((1, 1, 0, 1, 0, 0), roles) == "nonmatrix-k1"
    assert condition_for((2, 0, 1, 0, 0, 0), roles) is None
    assert condition_for((1, 0, 1, 0, 0, 0), roles) == "nonmatrix-11"
