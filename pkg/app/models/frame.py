from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from app.models.algebra import AElem, check_delta
from app.services.algebra_service import AlgebraService

# Order of the 16 real coordinates of a point of the frame bundle
COORDINATE_NAMES = (
    "Re Z.a", "Im Z.a", "Re Z.b", "Im Z.b",
    "U.a", "U.b",
    "D.a", "D.b",
    "Re T.a", "Im T.a", "Re T.b", "Im T.b",
    "s", "t",
    "S.a", "S.b",
)


@dataclass(frozen=True, eq=False)
class P2Point:
    """Point of the frame bundle over the quadric.

    The base point is (Z, W = U + i Z conj(Z)); the fibre coordinates are
    D (positive), T, C = exp_i(s, t) and S (real). All values are numeric.
    """

    Z: AElem
    U: AElem
    D: AElem
    T: AElem
    s: float
    t: float
    S: AElem
    delta: int

    def __post_init__(self):
        check_delta(self.delta)
        for name in ("Z", "U", "D", "T", "S"):
            object.__setattr__(self, name, getattr(self, name).to_numeric())
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "t", float(self.t))

    @property
    def C(self) -> AElem:
        return AlgebraService.exp_i(self.s, self.t, self.delta)

    @property
    def W(self) -> AElem:
        return self.U + 1j * self.Z * self.Z.conj()

    def coordinates(self) -> np.ndarray:
        Z, U, D, T, S = self.Z, self.U, self.D, self.T, self.S
        return np.array(
            [
                Z.a.real, Z.a.imag, Z.b.real, Z.b.imag,
                U.a.real, U.b.real,
                D.a.real, D.b.real,
                T.a.real, T.a.imag, T.b.real, T.b.imag,
                self.s, self.t,
                S.a.real, S.b.real,
            ]
        )

    @classmethod
    def from_coordinates(cls, x: Sequence[float], delta: int) -> "P2Point":
        x = [float(v) for v in x]
        if len(x) != 16:
            raise ValueError(f"Expected 16 coordinates, got {len(x)}")
        return cls(
            Z=AElem(complex(x[0], x[1]), complex(x[2], x[3]), delta),
            U=AElem(complex(x[4]), complex(x[5]), delta),
            D=AElem(complex(x[6]), complex(x[7]), delta),
            T=AElem(complex(x[8], x[9]), complex(x[10], x[11]), delta),
            s=x[12],
            t=x[13],
            S=AElem(complex(x[14]), complex(x[15]), delta),
            delta=delta,
        )

    @classmethod
    def identity_fibre(cls, delta: int) -> "P2Point":
        """Z = 0, U = 0, D = E, T = 0, C = E, S = 0."""
        return cls.from_coordinates([0.0] * 6 + [1.0, 0.0] + [0.0] * 8, delta)


@dataclass(frozen=True, eq=False)
class FrameMatrix:
    """Values of the su-valued form on the 16 coordinate vectors.

    Column k holds the coordinates, against the fixed su basis, of the form
    evaluated on the k-th coordinate direction.
    """

    values: np.ndarray
    delta: int

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.values))

    def column(self, k: int) -> np.ndarray:
        return self.values[:, k]

    def rows(self) -> List[List[float]]:
        return self.values.tolist()


@dataclass(frozen=True)
class FlatnessReport:
    delta: int
    points: int
    step: float
    seed: int
    max_residual: float
    residuals: List[float]
    min_abs_det: float
