from typing import Any, Dict, List, Literal

from pydantic import BaseModel

from app.schemas.common import AElemIn


# Request schemas
class BinaryOpRequest(BaseModel):
    delta: int
    op: Literal["add", "sub", "mul", "div"]
    x: AElemIn
    y: AElemIn


class UnaryOpRequest(BaseModel):
    delta: int
    op: Literal["conj", "inverse", "det", "sqrt_positive", "is_positive", "split"]
    x: AElemIn


# Response schemas
class AlgebraResult(BaseModel):
    delta: int
    result: Any


class LambdaSetResponse(BaseModel):
    delta: int
    elements: List[Dict[str, Any]]
