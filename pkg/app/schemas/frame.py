from typing import List, Optional

from pydantic import BaseModel, Field

from app.config.settings import DEFAULT_FD_STEP, DEFAULT_FLATNESS_POINTS, DEFAULT_SEED
from app.models.frame import FlatnessReport


# Request schemas
class FramePointIn(BaseModel):
    delta: int
    coordinates: List[float] = Field(min_length=16, max_length=16)


class FlatnessRequest(BaseModel):
    delta: int
    points: int = Field(DEFAULT_FLATNESS_POINTS, ge=1)
    step: float = Field(DEFAULT_FD_STEP, gt=0)
    seed: int = DEFAULT_SEED
    perturb_psi: float = 0.0


class ResidualRequest(FramePointIn):
    step: float = Field(DEFAULT_FD_STEP, gt=0)
    perturb_psi: float = 0.0


# Response schemas
class FrameResponse(BaseModel):
    delta: int
    det: float
    matrix: List[List[float]]


class ResidualResponse(BaseModel):
    delta: int
    residual: float


class FlatnessResponse(BaseModel):
    delta: int
    points: int
    step: float
    seed: int
    max_residual: float
    min_abs_det: float
    residuals: List[float]
    flat: Optional[bool] = None

    @classmethod
    def from_model(cls, report: FlatnessReport, threshold: float) -> "FlatnessResponse":
        return cls(
            delta=report.delta,
            points=report.points,
            step=report.step,
            seed=report.seed,
            max_residual=report.max_residual,
            min_abs_det=report.min_abs_det,
            residuals=report.residuals,
            flat=report.max_residual <= threshold,
        )
