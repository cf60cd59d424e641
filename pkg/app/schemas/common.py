from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from app.models.algebra import AElem, check_delta
from app.utils import scalars
from app.utils.amatrix import AMatrix
from app.utils.errors import DeltaMismatch

# [re_num, re_den, im_num, im_den] (exact), [re, im] (numeric) or {"expr": "..."}
ScalarJSON = Union[List[Union[int, float]], Dict[str, str]]

ZERO_JSON = [0, 1, 0, 1]


def encode_aelem(x: AElem) -> Dict[str, Any]:
    return {"delta": x.delta, "a": scalars.encode(x.a), "b": scalars.encode(x.b)}


def encode_matrix(m: AMatrix) -> List[List[Dict[str, Any]]]:
    return [[encode_aelem(x) for x in row] for row in m]


class AElemIn(BaseModel):
    """An element of A^delta; ``delta`` may be omitted when the enclosing request carries it."""

    delta: Optional[int] = None
    a: ScalarJSON = ZERO_JSON
    b: ScalarJSON = ZERO_JSON

    def to_model(self, delta: int) -> AElem:
        delta = check_delta(delta)
        if self.delta is not None and check_delta(self.delta) != delta:
            raise DeltaMismatch(f"element has delta {self.delta:+d}, request has delta {delta:+d}")
        return AElem(scalars.decode(self.a), scalars.decode(self.b), delta)


class AMatrixIn(BaseModel):
    delta: int
    rows: List[List[AElemIn]] = Field(min_length=3, max_length=3)

    def to_model(self) -> AMatrix:
        return tuple(tuple(x.to_model(self.delta) for x in row) for row in self.rows)


class ErrorResponse(BaseModel):
    error: str
    detail: str
    weight: Optional[int] = None
