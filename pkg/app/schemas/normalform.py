from typing import Any, Dict, List, Optional

import sympy
from pydantic import BaseModel

from app.models.normalform import InitialData, NormalFormReport
from app.schemas.common import AElemIn
from app.schemas.series import JetResponse, SeriesIn, SeriesResponse
from app.utils import scalars


def encode_rational(q: sympy.Rational) -> Any:
    """Integers as JSON numbers, other rationals as [p, q]."""
    q = sympy.Rational(q)
    return int(q.p) if q.q == 1 else [int(q.p), int(q.q)]


def encode_report(report: NormalFormReport) -> Dict[str, Any]:
    return {
        "satisfied": report.satisfied,
        "matrix_flag": report.matrix_flag,
        "kappa": encode_rational(report.kappa),
        "nu": report.nu,
        "coordinates": report.coordinates,
        "violations": [
            {
                "condition": v.condition,
                "component": v.component,
                "monomial": {"z": list(v.monomial.z), "zb": list(v.monomial.zb), "u": list(v.monomial.u)},
                "coefficient": scalars.encode(v.coefficient),
            }
            for v in report.violations
        ],
    }


# Request schemas
class InitialDataIn(BaseModel):
    C: AElemIn = AElemIn(a=[1, 1, 0, 1])
    A: AElemIn = AElemIn()
    R: AElemIn = AElemIn()

    def to_model(self, delta: int) -> InitialData:
        return InitialData(self.C.to_model(delta), self.A.to_model(delta), self.R.to_model(delta))


class NormalizeRequest(BaseModel):
    series: SeriesIn
    init: Optional[InitialDataIn] = None
    bound: Optional[int] = None


class ChainGermRequest(BaseModel):
    series: SeriesIn
    normalize: bool = True


# Response schemas
class ReportResponse(BaseModel):
    satisfied: bool
    matrix_flag: bool
    kappa: Any
    nu: Optional[int] = None
    coordinates: str
    violations: List[Dict[str, Any]]


class NormalizeResponse(BaseModel):
    series: SeriesResponse
    jet: JetResponse
    report: ReportResponse


class KappaResponse(BaseModel):
    kappa: Any
    nu: Optional[int] = None


class MatrixSurfaceResponse(BaseModel):
    matrix_surface: bool
