from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy.polys.rings import PolyElement

from app.models.algebra import AElem, check_delta
from app.models.frame import P2Point
from app.models.group import QuadricPoint


@dataclass(frozen=True, eq=False)
class ChainSpec:
    """Chain Z = A W through the origin of the quadric."""

    A: AElem
    delta: int

    def __post_init__(self):
        check_delta(self.delta)
        if self.A.delta != self.delta:
            raise ValueError("Slope and chain have different delta")


@dataclass(frozen=True, eq=False)
class ChainSample:
    spec: ChainSpec
    u_grid: List[AElem]
    points: List[Optional[QuadricPoint]]
    failures: Dict[int, str] = field(default_factory=dict)  # grid index -> reason

    def residuals(self) -> List[float]:
        """|V - Z conj(Z)| at every solved grid point."""
        out = []
        for p in self.points:
            if p is None:
                continue
            r = p.residual().to_numeric()
            out.append(max(abs(r.a), abs(r.b)))
        return out


@dataclass(frozen=True, eq=False)
class DistributionPath:
    """Solution of the chain distribution along a path of U values."""

    start: P2Point
    u_path: List[AElem]
    frames: List[P2Point]
    projection: List[QuadricPoint]
    slope: AElem  # Z - slope W is constant along the projection
    offset: AElem
    conserved_drift: Dict[str, float]
    slope_residual: float


@dataclass(frozen=True, eq=False)
class NormalCoordinateChain:
    """The chain {z = 0, v = 0} of a matrix normal form.

    ``germ`` and ``original`` are 4-tuples of polynomials in the real
    parameters (u1, u2), stored in the w-slots of the jet ring.
    """

    delta: int
    bound: int
    germ: Tuple[PolyElement, ...]
    original: Optional[Tuple[PolyElement, ...]] = None
    factors: List[Tuple[PolyElement, PolyElement]] = field(default_factory=list)
