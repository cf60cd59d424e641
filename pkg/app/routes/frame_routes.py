from fastapi import APIRouter, HTTPException, status

from app.config.tolerance_config import FLATNESS_THRESHOLD
from app.models.frame import P2Point
from app.schemas.frame import (
    FlatnessRequest, FlatnessResponse, FramePointIn, FrameResponse,
    ResidualRequest, ResidualResponse,
)
from app.services.quadric_frame_service import QuadricFrameService
from app.utils.errors import CRToolkitError, to_http_exception

frame_router = APIRouter(prefix="/frame", tags=["frame"])
frame_service = QuadricFrameService()


@frame_router.post("/omega", response_model=FrameResponse)
async def omega(request: FramePointIn):
    """
    The 16x16 matrix of the frame form at a point, columns against the coordinate directions.
    """
    try:
        frame = frame_service.omega_at(P2Point.from_coordinates(request.coordinates, request.delta))
        return FrameResponse(delta=request.delta, det=frame.det, matrix=frame.rows())
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )


@frame_router.post("/residual", response_model=ResidualResponse)
async def residual(request: ResidualRequest):
    try:
        x = P2Point.from_coordinates(request.coordinates, request.delta)
        value = frame_service.maurer_cartan_residual(x, request.step, request.perturb_psi)
        return ResidualResponse(delta=request.delta, residual=value)
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )


@frame_router.post("/flatness", response_model=FlatnessResponse)
async def flatness(request: FlatnessRequest):
    try:
        report = frame_service.flatness_scan(
            request.delta,
            points=request.points,
            step=request.step,
            seed=request.seed,
            perturb_psi=request.perturb_psi,
        )
        return FlatnessResponse.from_model(report, FLATNESS_THRESHOLD)
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )
