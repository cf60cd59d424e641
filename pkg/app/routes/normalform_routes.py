from fastapi import APIRouter, HTTPException, status

from app.schemas.chains import ChainGermResponse
from app.schemas.normalform import (
    ChainGermRequest, KappaResponse, MatrixSurfaceResponse, NormalizeRequest,
    NormalizeResponse, ReportResponse, encode_rational, encode_report,
)
from app.schemas.series import SeriesIn, encode_jet, encode_polys, encode_series
from app.services.chain_service import ChainService
from app.services.normalform_service import NormalFormService
from app.utils.errors import CRToolkitError, to_http_exception

normalform_router = APIRouter(prefix="/normal-form", tags=["normal-form"])
normalform_service = NormalFormService()
chain_service = ChainService()


def _raise(e: Exception):
    if isinstance(e, HTTPException):
        raise e
    if isinstance(e, CRToolkitError):
        raise to_http_exception(e)
    raise HTTPException(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        detail=f"An error occurred: {str(e)}"
    )


@normalform_router.post("/check", response_model=ReportResponse)
async def check(series: SeriesIn):
    try:
        return encode_report(normalform_service.check(series.to_model()))
    except Exception as e:
        _raise(e)


@normalform_router.post("/normalize", response_model=NormalizeResponse)
async def normalize(request: NormalizeRequest):
    """
    Bring a series into normal form weight by weight; returns the series,
    the accumulated jet and the report on the result.
    """
    try:
        S = request.series.to_model()
        init = request.init.to_model(S.delta) if request.init else None
        result = normalform_service.normalize(S, init, bound=request.bound)
        return NormalizeResponse(
            series=encode_series(result.series),
            jet=encode_jet(result.jet),
            report=encode_report(result.report),
        )
    except Exception as e:
        _raise(e)


@normalform_router.post("/kappa", response_model=KappaResponse)
async def kappa(series: SeriesIn):
    try:
        S = series.to_model()
        report = normalform_service.check(S)
        return KappaResponse(kappa=encode_rational(normalform_service.kappa(S)), nu=report.nu)
    except Exception as e:
        _raise(e)


@normalform_router.post("/is-matrix", response_model=MatrixSurfaceResponse)
async def is_matrix(series: SeriesIn):
    try:
        return MatrixSurfaceResponse(matrix_surface=normalform_service.is_matrix_surface(series.to_model()))
    except Exception as e:
        _raise(e)


@normalform_router.post("/chain-germ", response_model=ChainGermResponse)
async def chain_germ(request: ChainGermRequest):
    try:
        S = request.series.to_model()
        jet = None
        if request.normalize:
            result = normalform_service.normalize(S)
            S, jet = result.series, result.jet
        chain = chain_service.chain_in_normal_coordinates(S, jet)
        return ChainGermResponse(
            delta=chain.delta,
            bound=chain.bound,
            germ=encode_polys(chain.germ),
            original=None if chain.original is None else encode_polys(chain.original),
            factors=[encode_polys(f) for f in chain.factors],
        )
    except Exception as e:
        _raise(e)
