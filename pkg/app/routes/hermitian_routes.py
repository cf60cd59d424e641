from typing import Optional

from fastapi import APIRouter, HTTPException, Query, status

from app.schemas.hermitian import ClassifyResponse, HermitianFormIn
from app.schemas.series import SeriesIn
from app.services.hermitian_service import HermitianService
from app.utils.errors import CRToolkitError, to_http_exception

hermitian_router = APIRouter(prefix="/hermitian", tags=["hermitian"])
hermitian_service = HermitianService()


@hermitian_router.post("/classify", response_model=ClassifyResponse)
async def classify(request: HermitianFormIn):
    try:
        result = hermitian_service.classify(request.to_model(), mode=request.mode)
        return ClassifyResponse.from_model(result)
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )


@hermitian_router.post("/levi-form", response_model=ClassifyResponse)
async def classify_levi_form(series: SeriesIn, mode: Optional[str] = Query(None, pattern="^(exact|numeric)$")):
    """
    Classify the Levi form read off the quadratic part of a surface series.
    """
    try:
        H = hermitian_service.levi_form_at_origin(series.to_model())
        return ClassifyResponse.from_model(hermitian_service.classify(H, mode=mode or "exact"))
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )
