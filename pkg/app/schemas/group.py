from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from app.models.group import QuadricPoint
from app.schemas.common import AElemIn, AMatrixIn, encode_aelem


def encode_point(p: Optional[QuadricPoint]) -> Optional[Dict[str, Any]]:
    if p is None:
        return None
    return {"Z": encode_aelem(p.Z), "W": encode_aelem(p.W)}


# Request schemas
class PointIn(BaseModel):
    Z: AElemIn
    W: AElemIn

    def to_model(self, delta: int) -> QuadricPoint:
        return QuadricPoint(self.Z.to_model(delta), self.W.to_model(delta), delta)


class VerifyRequest(AMatrixIn):
    pass


class ActRequest(BaseModel):
    matrix: AMatrixIn
    point: PointIn


class SigmaRequest(BaseModel):
    delta: int
    C: AElemIn


class TranslationRequest(BaseModel):
    delta: int
    Z: AElemIn
    W: AElemIn


class IsotropyRequest(BaseModel):
    delta: int
    C: AElemIn
    A: AElemIn = AElemIn()
    R: AElemIn = AElemIn()


# Response schemas
class VerifyResponse(BaseModel):
    delta: int
    member: bool
    isotropy: bool


class PointResponse(BaseModel):
    delta: int
    point: Dict[str, Any]
    on_quadric: bool


class SigmaResponse(BaseModel):
    delta: int
    count: int
    solutions: List[Dict[str, Any]]


class MatrixResponse(BaseModel):
    delta: int
    rows: List[List[Dict[str, Any]]]
