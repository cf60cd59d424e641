from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import sympy

from app.models.algebra import AElem, check_delta
from app.models.series import HoloMapJet, Monomial, SurfaceSeries

# Condition ids reported by the normal-form checks
CONDITION_IDS = (
    "levi",
    "matrix-part",
    "nonmatrix-k0",
    "nonmatrix-0k",
    "nonmatrix-11",
    "nonmatrix-k1",
    "nonmatrix-1k",
    "nonmatrix-21",
    "nonmatrix-12",
    "nonmatrix-22",
)


class Roles(NamedTuple):
    """Slots of the own factor of a model component: holomorphic z, antiholomorphic z, u."""

    z: int
    zb: int
    u: int


@dataclass(frozen=True)
class Violation:
    condition: str
    component: int
    monomial: Monomial
    coefficient: sympy.Expr


@dataclass(frozen=True)
class NormalFormReport:
    satisfied: bool
    violations: List[Violation] = field(default_factory=list)
    matrix_flag: bool = True
    kappa: sympy.Rational = sympy.Integer(0)
    nu: Optional[int] = None
    coordinates: str = "split"


@dataclass(frozen=True, eq=False)
class InitialData:
    C: AElem
    A: AElem
    R: AElem

    @property
    def delta(self) -> int:
        return self.C.delta

    @classmethod
    def identity(cls, delta: int) -> "InitialData":
        check_delta(delta)
        return cls(AElem.one(delta), AElem.zero(delta), AElem.zero(delta))


@dataclass(frozen=True, eq=False)
class NormalizationResult:
    series: SurfaceSeries
    jet: HoloMapJet  # original coordinates -> normal coordinates
    report: NormalFormReport
