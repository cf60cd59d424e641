import numpy as np
import pytest

from app.config.tolerance_config import FLATNESS_THRESHOLD
from app.models.algebra import AElem, ELLIPTIC, HYPERBOLIC
from app.models.frame import P2Point
from app.models.lie import SuElem
from app.services.group_service import GroupService
from app.services.lie_service import LieService
from app.services.quadric_frame_service import QuadricFrameService

DELTAS = [HYPERBOLIC, ELLIPTIC]


@pytest.fixture
def point(rng):
    def make(delta: int) -> P2Point:
        return QuadricFrameService.random_point(rng, delta)

    return make


@pytest.mark.parametrize("delta", DELTAS)
def test_frame_is_nondegenerate(delta, point):
    for _ in range(3):
        frame = QuadricFrameService.omega_at(point(delta))
        assert frame.values.shape == (16, 16)
        assert abs(frame.det) > 1e-6


@pytest.mark.parametrize("delta", DELTAS)
def test_form_is_flat(delta):
    report = QuadricFrameService.flatness_scan(delta, points=3, step=1e-4, seed=7)
    assert report.points == 3
    assert len(report.residuals) == 3
    assert report.max_residual <= FLATNESS_THRESHOLD


@pytest.mark.parametrize("delta", DELTAS)
def test_perturbed_form_is_not_flat(delta):
    report = QuadricFrameService.flatness_scan(delta, points=3, step=1e-4, seed=7, perturb_psi=0.5)
    assert report.max_residual >= 1e-2


def test_nonpositive_step_is_rejected(point):
    with pytest.raises(ValueError):
        QuadricFrameService.maurer_cartan_residual(point(HYPERBOLIC), h=0.0)


@pytest.mark.parametrize("delta", DELTAS)
def test_form_at_identity_fibre(delta):
    """At the identity fibre over the origin, dZ feeds the degree-1 block only."""
    x = P2Point.identity_fibre(delta)
    frame = QuadricFrameService.omega_at(x)
    dZ = LieService.from_coordinates(frame.column(0), delta)
    assert isinstance(dZ, SuElem)
    assert set(LieService.grade(dZ).support()) == {1}


@pytest.mark.parametrize("delta", DELTAS)
def test_group_chart_round_trip(delta, point):
    for _ in range(3):
        x = point(delta)
        G = QuadricFrameService.group_element_at(x)
        assert GroupService.is_member(G)
        y = QuadricFrameService.point_from_group_element(G, reference=x)
        np.testing.assert_allclose(y.coordinates(), x.coordinates(), atol=1e-9)


@pytest.mark.parametrize("delta", DELTAS)
def test_form_is_invariant_under_right_action(delta, point):
    Z0 = AElem(0.1, -0.05j, delta)
    g = GroupService.translation(Z0, GroupService.quadric_point(Z0, AElem(0.2, 0.1, delta)).W)
    assert QuadricFrameService.mc_left_invariance_check(point(delta), g) <= 1e-6
