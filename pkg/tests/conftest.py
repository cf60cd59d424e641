import json
from pathlib import Path

import numpy as np
import pytest
import sympy
from fastapi.testclient import TestClient
from sympy.polys.domains import QQ_I

from app.main import app
from app.models.algebra import AElem
from app.models.series import JET_RING, HoloMapJet
from app.schemas.series import SeriesIn

FIXTURES_DIR = Path(__file__).resolve().parents[1] / "app" / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(20240)


@pytest.fixture
def client():
    return TestClient(app)


@pytest.fixture
def load_fixture():
    def load(name: str) -> dict:
        return json.loads((FIXTURES_DIR / f"{name}.json").read_text())

    return load


@pytest.fixture
def load_series(load_fixture):
    def load(name: str):
        return SeriesIn(**load_fixture(name)).to_model()

    return load


def _rational(rng, size: int = 5) -> sympy.Rational:
    return sympy.Rational(int(rng.integers(-size, size + 1)), int(rng.integers(1, 4)))


@pytest.fixture
def random_aelem(rng):
    """Exact element with small Gaussian-rational entries."""

    def make(delta: int, real: bool = False, invertible: bool = False) -> AElem:
        while True:
            if real:
                a, b = _rational(rng), _rational(rng)
            else:
                a = _rational(rng) + sympy.I * _rational(rng)
                b = _rational(rng) + sympy.I * _rational(rng)
            x = AElem(a, b, delta)
            if not invertible or x.is_invertible():
                return x

    return make


@pytest.fixture
def perturbation():
    """Jet with identity linear part fixing the origin."""
    z1, z2, w1, w2 = JET_RING.gens

    def make(bound: int) -> HoloMapJet:
        return HoloMapJet(
            (
                z1 + (z1 * z2).mul_ground(QQ_I(1, 1)) + w2.mul_ground(QQ_I(0, 1)),
                z2 + (z1 * w1).mul_ground(QQ_I(-2, 0)),
                w1 + (z2 * z2).mul_ground(QQ_I(1, -1)),
                w2 + (z1 * w2).mul_ground(QQ_I(3, 0)) + (w1 * w1).mul_ground(QQ_I(0, 2)),
            ),
            bound,
        )

    return make
