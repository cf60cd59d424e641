from dataclasses import dataclass, field
from typing import Dict

import sympy

from app.models.algebra import AElem, check_delta
from app.utils import amatrix
from app.utils.amatrix import AMatrix

# Degree of each block under ad of the grading element diag(E, 0, -E)
BLOCK_DEGREES = {"V": -2, "W": -1, "X": 0, "Y": 1, "Zc": 2}
DEGREE_BLOCKS = {degree: block for block, degree in BLOCK_DEGREES.items()}


def _i(x: AElem):
    return 1j if x.numeric else sympy.I


def _half(x: AElem):
    return 0.5 if x.numeric else sympy.Rational(1, 2)


@dataclass(frozen=True, eq=False)
class SuElem:
    """Element of su^delta(2,1) in block form:

        [[X, Y,               Zc        ],
         [W, -2i Im X,        2i conj(Y)],
         [V, -(i/2) conj(W),  -conj(X)  ]]

    with Zc and V real.
    """

    X: AElem
    Y: AElem
    W: AElem
    Zc: AElem
    V: AElem
    delta: int

    def __post_init__(self):
        check_delta(self.delta)

    @classmethod
    def zero(cls, delta: int) -> "SuElem":
        z = AElem.zero(delta)
        return cls(z, z, z, z, z, delta)

    def block(self, name: str) -> AElem:
        return getattr(self, name)

    def matrix(self) -> AMatrix:
        X, Y, W, Zc, V = self.X, self.Y, self.W, self.Zc, self.V
        i = _i(X)
        return amatrix.freeze(
            [
                [X, Y, Zc],
                [W, -2 * i * X.im(), 2 * i * Y.conj()],
                [V, -i * _half(X) * W.conj(), -X.conj()],
            ]
        )

    def only(self, name: str) -> "SuElem":
        """Copy keeping a single block."""
        z = AElem.zero(self.delta)
        parts = {b: (self.block(b) if b == name else z) for b in BLOCK_DEGREES}
        return SuElem(delta=self.delta, **parts)

    def __add__(self, other: "SuElem") -> "SuElem":
        return SuElem(
            self.X + other.X, self.Y + other.Y, self.W + other.W,
            self.Zc + other.Zc, self.V + other.V, self.delta,
        )

    def __sub__(self, other: "SuElem") -> "SuElem":
        return SuElem(
            self.X - other.X, self.Y - other.Y, self.W - other.W,
            self.Zc - other.Zc, self.V - other.V, self.delta,
        )

    def scale(self, c) -> "SuElem":
        return SuElem(c * self.X, c * self.Y, c * self.W, c * self.Zc, c * self.V, self.delta)

    def is_zero(self) -> bool:
        return all(self.block(b).is_zero() for b in BLOCK_DEGREES)

    def equals(self, other: "SuElem") -> bool:
        return (self - other).is_zero()

    def __eq__(self, other):
        if not isinstance(other, SuElem):
            return NotImplemented
        return self.delta == other.delta and self.equals(other)

    __hash__ = None


@dataclass(frozen=True)
class GradedDecomposition:
    """Projections of an SuElem onto g_-2 ... g_2, keyed by degree."""

    components: Dict[int, SuElem] = field(default_factory=dict)

    def __getitem__(self, degree: int) -> SuElem:
        return self.components[degree]

    def total(self) -> SuElem:
        parts = [self.components[d] for d in sorted(self.components)]
        acc = parts[0]
        for part in parts[1:]:
            acc = acc + part
        return acc

    def support(self) -> list:
        """Degrees carrying a nonzero component."""
        return [d for d in sorted(self.components) if not self.components[d].is_zero()]
