from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.models.algebra import AElem
from app.models.chains import ChainSample, DistributionPath
from app.schemas.common import AElemIn, encode_aelem
from app.schemas.group import PointIn, encode_point


def _real_pair(u: List[float], delta: int) -> AElem:
    return AElem(complex(u[0]), complex(u[1]), delta)


def encode_sample(sample: ChainSample) -> Dict[str, Any]:
    return {
        "delta": sample.spec.delta,
        "A": encode_aelem(sample.spec.A),
        "points": [encode_point(p) for p in sample.points],
        "failures": {str(k): v for k, v in sorted(sample.failures.items())},
        "max_residual": max(sample.residuals(), default=0.0),
    }


def encode_path(path: DistributionPath) -> Dict[str, Any]:
    return {
        "delta": path.start.delta,
        "slope": encode_aelem(path.slope),
        "offset": encode_aelem(path.offset),
        "projection": [encode_point(p) for p in path.projection],
        "frames": [x.coordinates().tolist() for x in path.frames],
        "conserved_drift": path.conserved_drift,
        "slope_residual": path.slope_residual,
    }


# Request schemas
class ChainRequest(BaseModel):
    delta: int
    A: AElemIn
    grid: List[List[float]] = Field(default_factory=lambda: [[0.0, 0.0]])
    through: Optional[PointIn] = None

    def u_grid(self) -> List[AElem]:
        return [_real_pair(u, self.delta) for u in self.grid]


class DistributionRequest(BaseModel):
    delta: int
    start: List[float] = Field(min_length=16, max_length=16)
    u_path: List[List[float]] = Field(min_length=1)

    def path(self) -> List[AElem]:
        return [_real_pair(u, self.delta) for u in self.u_path]


# Response schemas
class ChainResponse(BaseModel):
    delta: int
    A: Dict[str, Any]
    points: List[Optional[Dict[str, Any]]]
    failures: Dict[str, str]
    max_residual: float


class DistributionResponse(BaseModel):
    delta: int
    slope: Dict[str, Any]
    offset: Dict[str, Any]
    projection: List[Dict[str, Any]]
    frames: List[List[float]]
    conserved_drift: Dict[str, float]
    slope_residual: float


class ChainGermResponse(BaseModel):
    delta: int
    bound: int
    germ: List[List[Dict[str, Any]]]
    original: Optional[List[List[Dict[str, Any]]]] = None
    factors: List[List[List[Dict[str, Any]]]] = Field(default_factory=list)
