from fastapi import APIRouter, HTTPException, status

from app.models.group import GroupElem
from app.schemas.common import encode_aelem, encode_matrix
from app.schemas.group import (
    ActRequest, IsotropyRequest, MatrixResponse, PointResponse,
    SigmaRequest, SigmaResponse, TranslationRequest, VerifyRequest,
    VerifyResponse, encode_point,
)
from app.services.group_service import GroupService
from app.utils.errors import CRToolkitError, to_http_exception

group_router = APIRouter(prefix="/group", tags=["group"])
group_service = GroupService()


def _raise(e: Exception):
    if isinstance(e, HTTPException):
        raise e
    if isinstance(e, CRToolkitError):
        raise to_http_exception(e)
    raise HTTPException(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        detail=f"An error occurred: {str(e)}"
    )


@group_router.post("/verify", response_model=VerifyResponse)
async def verify(request: VerifyRequest):
    try:
        U = GroupElem(request.to_model(), request.delta)
        return VerifyResponse(
            delta=request.delta,
            member=group_service.is_member(U),
            isotropy=group_service.is_isotropy(U),
        )
    except Exception as e:
        _raise(e)


@group_router.post("/act", response_model=PointResponse)
async def act(request: ActRequest):
    try:
        U = GroupElem(request.matrix.to_model(), request.matrix.delta)
        image = group_service.act_on_point(U, request.point.to_model(U.delta))
        return PointResponse(delta=U.delta, point=encode_point(image), on_quadric=group_service.on_quadric(image))
    except Exception as e:
        _raise(e)


@group_router.post("/sigma", response_model=SigmaResponse)
async def sigma(request: SigmaRequest):
    try:
        solutions = group_service.solve_sigma(request.C.to_model(request.delta))
        return SigmaResponse(delta=request.delta, count=len(solutions), solutions=[encode_aelem(s) for s in solutions])
    except Exception as e:
        _raise(e)


@group_router.post("/translation", response_model=MatrixResponse)
async def translation(request: TranslationRequest):
    try:
        T = group_service.translation(request.Z.to_model(request.delta), request.W.to_model(request.delta))
        return MatrixResponse(delta=request.delta, rows=encode_matrix(T.matrix))
    except Exception as e:
        _raise(e)


@group_router.post("/isotropy", response_model=MatrixResponse)
async def isotropy(request: IsotropyRequest):
    """
    Isotropy element for (C, A, R), completed with the first admissible sigma.
    """
    try:
        params = group_service.params_from_initial(
            request.C.to_model(request.delta),
            request.A.to_model(request.delta),
            request.R.to_model(request.delta),
        )
        return MatrixResponse(delta=request.delta, rows=encode_matrix(group_service.isotropy_element(params).matrix))
    except Exception as e:
        _raise(e)
