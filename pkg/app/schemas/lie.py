from typing import Any, Dict, List

from pydantic import BaseModel, Field

from app.models.lie import SuElem
from app.schemas.common import AElemIn, encode_aelem


def encode_su(M: SuElem) -> Dict[str, Any]:
    return {name: encode_aelem(getattr(M, name)) for name in ("X", "Y", "W", "Zc", "V")}


# Request schemas
class SuElemIn(BaseModel):
    X: AElemIn = Field(default_factory=AElemIn)
    Y: AElemIn = Field(default_factory=AElemIn)
    W: AElemIn = Field(default_factory=AElemIn)
    Zc: AElemIn = Field(default_factory=AElemIn)
    V: AElemIn = Field(default_factory=AElemIn)

    def to_model(self, delta: int) -> SuElem:
        return SuElem(
            X=self.X.to_model(delta),
            Y=self.Y.to_model(delta),
            W=self.W.to_model(delta),
            Zc=self.Zc.to_model(delta),
            V=self.V.to_model(delta),
            delta=delta,
        )


class BracketRequest(BaseModel):
    delta: int
    M: SuElemIn
    N: SuElemIn


# Response schemas
class DimsResponse(BaseModel):
    delta: int
    total: int
    graded: List[int]
    positive: int


class BracketResponse(BaseModel):
    delta: int
    bracket: Dict[str, Any]
    grades: Dict[str, Dict[str, Any]]


class BasisResponse(BaseModel):
    delta: int
    degrees: List[int]
    basis: List[List[List[Dict[str, Any]]]]
