from fastapi import APIRouter, HTTPException, status

from app.schemas.series import (
    RegraphRequest, RegraphResponse, SeriesIn, SeriesRequest,
    SeriesResponse, encode_series,
)
from app.services.series_service import SeriesService
from app.utils.errors import CRToolkitError, to_http_exception

series_router = APIRouter(prefix="/series", tags=["series"])
series_service = SeriesService()


@series_router.post("/validate", response_model=SeriesResponse)
async def validate(series: SeriesIn):
    """
    Parse, check reality and the Levi part, and echo the series in matrix coordinates.
    """
    try:
        S = series.to_model()
        series_service.validate(S)
        return encode_series(S)
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )


@series_router.post("/transform", response_model=SeriesResponse)
async def transform(request: SeriesRequest):
    try:
        return encode_series(request.series.to_model(), request.coordinates)
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )


@series_router.post("/regraph", response_model=RegraphResponse)
async def regraph(request: RegraphRequest):
    try:
        S = request.series.to_model()
        image = series_service.regraph(S, request.jet.to_model())
        return RegraphResponse(series=encode_series(image, request.coordinates))
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )
