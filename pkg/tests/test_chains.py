import numpy as np
import pytest

from app.models.algebra import AElem, ELLIPTIC, HYPERBOLIC
from app.models.chains import ChainSpec
from app.models.frame import P2Point
from app.services.chain_service import ChainService, closed_form_v, solve_chain_v
from app.services.group_service import GroupService
from app.services.normalform_service import NormalFormService
from app.services.series_service import SeriesService
from app.utils.errors import NoRealBranch, NotMatrixNormalForm

DELTAS = [HYPERBOLIC, ELLIPTIC]


def u_grid(delta: int, n: int = 9):
    return [AElem(u, 0.5 * u, delta) for u in np.linspace(-0.6, 0.6, n)]


@pytest.mark.parametrize("delta", DELTAS)
def test_chain_lies_on_quadric(delta):
    spec = ChainSpec(AElem(0.3 + 0.1j, 0.2 - 0.1j, delta), delta)
    sample = ChainService.chain_on_quadric(spec, u_grid(delta))
    assert not sample.failures
    assert max(sample.residuals()) <= 1e-10
    for p in sample.points:
        assert (p.Z - spec.A * p.W).to_numeric().is_zero()


@pytest.mark.parametrize("delta", DELTAS)
def test_zero_slope_chain_is_the_u_axis(delta):
    spec = ChainSpec(AElem.zero(delta), delta)
    grid = u_grid(delta, 5)
    sample = ChainService.chain_on_quadric(spec, grid)
    for p, U in zip(sample.points, grid):
        assert p.Z.is_zero()
        assert p.W.equals(U)


def test_chain_through_point():
    delta = HYPERBOLIC
    p = GroupService.quadric_point(AElem(0.2, -0.1j, delta), AElem(0.3, 0.1, delta))
    spec = ChainSpec(AElem(0.25, 0.1, delta), delta)
    sample = ChainService.chain_through_point(p, spec, u_grid(delta))
    assert max(sample.residuals()) <= 1e-10
    origin_index = len(sample.points) // 2
    assert (sample.points[origin_index].Z - p.Z).to_numeric().is_zero()


def test_out_of_range_grid_point_is_recorded():
    delta = HYPERBOLIC
    spec = ChainSpec(AElem(0.5, 0.0, delta), delta)
    grid = [AElem(0.1, 0.0, delta), AElem(3.0, 0.0, delta)]
    sample = ChainService.chain_on_quadric(spec, grid)
    assert sample.points[0] is not None
    assert sample.points[1] is None
    assert 1 in sample.failures
    k = spec.A * spec.A.conj()
    assert closed_form_v(k, grid[1]) is None
    with pytest.raises(NoRealBranch):
        solve_chain_v(k, grid[1])


@pytest.mark.parametrize("delta", DELTAS)
def test_newton_matches_closed_form(delta):
    k = AElem(0.2, 0.05, delta)
    for U in u_grid(delta, 5):
        expected = closed_form_v(k, U)
        assert expected is not None
        V = solve_chain_v(k, U)
        assert (V - expected).to_numeric().is_zero()


@pytest.mark.parametrize("delta", DELTAS)
def test_distribution_conserves_slope(delta):
    start = P2Point.from_coordinates(
        [0.1, -0.05, 0.02, 0.03, 0.0, 0.0, 1.2, 0.1, 0.2, 0.1, -0.1, 0.05, 0.3, -0.2, 0.1, 0.0],
        delta,
    )
    path = [AElem(0.05 * k, -0.02 * k, delta) for k in range(1, 9)]
    result = ChainService.integrate_chain_distribution(start, path)
    assert len(result.frames) == len(path) + 1
    assert max(result.conserved_drift.values()) <= 1e-8
    assert result.slope_residual <= 1e-7
    for q in result.projection:
        assert GroupService.on_quadric(q)


def test_chain_in_normal_coordinates(load_series):
    S = load_series("matrix_surface")
    chain = ChainService.chain_in_normal_coordinates(S)
    assert chain.original is None
    assert len(chain.factors) == 2
    assert all(not r for r in ChainService.on_surface_residual(S, chain.germ))


def test_chain_pulled_back_to_original_coordinates(load_series, perturbation):
    S = SeriesService.regraph(SeriesService.truncate(load_series("matrix_surface"), 6), perturbation(6))
    result = NormalFormService.normalize(S)
    chain = ChainService.chain_in_normal_coordinates(result.series, result.jet)
    assert all(not r for r in ChainService.on_surface_residual(result.series, chain.germ))
    assert all(not r for r in ChainService.on_surface_residual(S, chain.original))


def test_nonmatrix_surface_has_no_normal_chain(load_series):
    with pytest.raises(NotMatrixNormalForm):
        ChainService.chain_in_normal_coordinates(load_series("nonmatrix_elliptic"))
    S = SeriesService.quadric_series(ELLIPTIC, 6)
    assert ChainService.chain_in_normal_coordinates(S).factors == []
