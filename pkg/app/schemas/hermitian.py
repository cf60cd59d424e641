from typing import Any, List, Literal, Optional

import sympy
from pydantic import BaseModel, Field

from app.config.settings import DEFAULT_MODE
from app.models.hermitian import ClassLabel, HermitianForm2
from app.schemas.common import ScalarJSON
from app.utils import scalars


def _matrix(rows: List[List[ScalarJSON]]) -> sympy.ImmutableMatrix:
    return sympy.ImmutableMatrix([[scalars.decode(x) for x in row] for row in rows])


def encode_sympy_matrix(M: Optional[sympy.MatrixBase]) -> Optional[List[List[Any]]]:
    if M is None:
        return None
    return [[scalars.encode(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


# Request schemas
class HermitianFormIn(BaseModel):
    H1: List[List[ScalarJSON]] = Field(min_length=2, max_length=2)
    H2: List[List[ScalarJSON]] = Field(min_length=2, max_length=2)
    mode: Literal["exact", "numeric"] = DEFAULT_MODE

    def to_model(self) -> HermitianForm2:
        return HermitianForm2(_matrix(self.H1), _matrix(self.H2))


# Response schemas
class ClassifyResponse(BaseModel):
    label: str
    A: Optional[List[List[Any]]] = None
    B: Optional[List[List[Any]]] = None
    discriminant: Optional[Any] = None

    @classmethod
    def from_model(cls, result: ClassLabel) -> "ClassifyResponse":
        return cls(
            label=result.label.value,
            A=encode_sympy_matrix(result.A),
            B=encode_sympy_matrix(result.B),
            discriminant=None if result.discriminant is None else scalars.encode(result.discriminant),
        )
