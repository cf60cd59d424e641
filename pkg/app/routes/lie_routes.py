from fastapi import APIRouter, Depends, HTTPException, status

from app.dependencies import get_delta
from app.models.lie import BLOCK_DEGREES
from app.schemas.common import encode_matrix
from app.schemas.lie import BasisResponse, BracketRequest, BracketResponse, DimsResponse, encode_su
from app.services.lie_service import LieService
from app.utils.errors import CRToolkitError, to_http_exception

lie_router = APIRouter(prefix="/lie", tags=["lie"])
lie_service = LieService()


@lie_router.get("/dims", response_model=DimsResponse)
async def dims(delta: int = Depends(get_delta)):
    return DimsResponse(delta=delta, **lie_service.dims(delta))


@lie_router.post("/bracket", response_model=BracketResponse)
async def bracket(request: BracketRequest):
    try:
        result = lie_service.bracket(request.M.to_model(request.delta), request.N.to_model(request.delta))
        grades = lie_service.grade(result)
        return BracketResponse(
            delta=request.delta,
            bracket=encode_su(result),
            grades={str(d): encode_su(grades[d]) for d in sorted(BLOCK_DEGREES.values())},
        )
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )


@lie_router.get("/basis", response_model=BasisResponse)
async def basis(delta: int = Depends(get_delta)):
    return BasisResponse(
        delta=delta,
        degrees=lie_service.basis_degrees(),
        basis=[encode_matrix(e.matrix()) for e in lie_service.basis(delta)],
    )
