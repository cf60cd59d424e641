from dataclasses import dataclass

from app.models.algebra import AElem, check_delta
from app.utils import amatrix
from app.utils.amatrix import AMatrix


@dataclass(frozen=True, eq=False)
class GroupElem:
    """3x3 matrix over A^delta; membership in SU^delta(2,1) is checked by GroupService."""

    matrix: AMatrix
    delta: int

    def __post_init__(self):
        check_delta(self.delta)
        object.__setattr__(self, "matrix", amatrix.freeze(self.matrix))
        if amatrix.delta_of(self.matrix) != self.delta:
            raise ValueError("matrix entries do not share the element's delta")

    def __getitem__(self, index):
        i, j = index
        return self.matrix[i][j]

    def __matmul__(self, other: "GroupElem") -> "GroupElem":
        return GroupElem(amatrix.matmul(self.matrix, other.matrix), self.delta)

    def equals(self, other: "GroupElem") -> bool:
        return self.delta == other.delta and amatrix.equals(self.matrix, other.matrix)

    def __eq__(self, other):
        if not isinstance(other, GroupElem):
            return NotImplemented
        return self.equals(other)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class IsotropyParams:
    C: AElem
    A: AElem
    R: AElem
    sigma: AElem

    @property
    def delta(self) -> int:
        return self.C.delta


@dataclass(frozen=True, eq=False)
class QuadricPoint:
    """Affine point (Z, W) of the quadric Im W = Z conj(Z)."""

    Z: AElem
    W: AElem
    delta: int

    @property
    def U(self) -> AElem:
        return self.W.re()

    @property
    def V(self) -> AElem:
        return self.W.im()

    def residual(self) -> AElem:
        """Im W - Z conj(Z); zero on the quadric."""
        return self.W.im() - self.Z * self.Z.conj()

    def equals(self, other: "QuadricPoint") -> bool:
        return self.Z.equals(other.Z) and self.W.equals(other.W)

    def __eq__(self, other):
        if not isinstance(other, QuadricPoint):
            return NotImplemented
        return self.equals(other)

    __hash__ = None
