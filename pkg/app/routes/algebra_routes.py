from fastapi import APIRouter, Depends, HTTPException, status

from app.dependencies import get_delta
from app.schemas.algebra import AlgebraResult, BinaryOpRequest, LambdaSetResponse, UnaryOpRequest
from app.schemas.common import encode_aelem
from app.services.algebra_service import AlgebraService
from app.utils import scalars
from app.utils.errors import CRToolkitError, to_http_exception

algebra_router = APIRouter(prefix="/algebra", tags=["algebra"])
algebra_service = AlgebraService()


@algebra_router.post("/binary", response_model=AlgebraResult)
async def binary_op(request: BinaryOpRequest):
    try:
        x, y = request.x.to_model(request.delta), request.y.to_model(request.delta)
        if request.op == "div":
            result = algebra_service.mul(x, algebra_service.inverse(y))
        else:
            result = getattr(algebra_service, request.op)(x, y)
        return AlgebraResult(delta=request.delta, result=encode_aelem(result))
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )


@algebra_router.post("/unary", response_model=AlgebraResult)
async def unary_op(request: UnaryOpRequest):
    """
    conj, inverse and sqrt_positive return an element; det a scalar;
    is_positive a bool; split the pair of split components.
    """
    try:
        x = request.x.to_model(request.delta)
        if request.op == "det":
            result = scalars.encode(algebra_service.det(x))
        elif request.op == "is_positive":
            result = algebra_service.is_positive(x)
        elif request.op == "split":
            result = [scalars.encode(s) for s in algebra_service.split_basis(x)]
        else:
            result = encode_aelem(getattr(algebra_service, request.op)(x))
        return AlgebraResult(delta=request.delta, result=result)
    except HTTPException as e:
        raise e
    except CRToolkitError as e:
        raise to_http_exception(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"An error occurred: {str(e)}"
        )


@algebra_router.get("/lambda-set", response_model=LambdaSetResponse)
async def lambda_set(delta: int = Depends(get_delta)):
    elements = algebra_service.lambda_set(delta)
    return LambdaSetResponse(delta=delta, elements=[encode_aelem(x) for x in elements])
