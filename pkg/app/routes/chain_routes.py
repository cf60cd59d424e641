from fastapi import APIRouter, HTTPException, status

from app.models.chains import ChainSpec
from app.models.frame import P2Point
from app.schemas.chains import (
    ChainRequest, ChainResponse, DistributionRequest, DistributionResponse,
    encode_path, encode_sample,
)
from app.services.chain_service import ChainService
from app.utils.errors import CRToolkitError, to_http_exception

chain_router = APIRouter(prefix="/chains", tags=["chains"])
chain_service = ChainService()


@chain_router.post("/quadric", response_model=ChainResponse)
async def chain_on_quadric(request: ChainRequest):
    """
    Sample the chain Z = A W (or its translate through ``through``) over the U grid.
    Grid points without a real branch are reported under ``failures``.
    """
    try:
        spec = ChainSpec(request.A.to_model(request.delta), request.delta)
        if request.through is not None:
            p = request.through.to_model(request.delta)
            sample = chain_service.chain_through_point(p, spec, request.u_grid())
        else:
            sample = chain_service.chain_on_quadric(spec, request.u_grid())
        return encode_sample(sample)
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )


@chain_router.post("/distribution", response_model=DistributionResponse)
async def chain_distribution(request: DistributionRequest):
    try:
        start = P2Point.from_coordinates(request.start, request.delta)
        return encode_path(chain_service.integrate_chain_distribution(start, request.path()))
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )
