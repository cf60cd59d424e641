from dataclasses import dataclass
from enum import Enum
from typing import Optional

import sympy


class Label(str, Enum):
    HYPERBOLIC = "Hyperbolic"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    DEGENERATE = "Degenerate"


# Exit codes for `classify-hermitian --exit-with-label`
LABEL_EXIT_CODES = {
    Label.HYPERBOLIC: 10,
    Label.ELLIPTIC: 11,
    Label.PARABOLIC: 12,
    Label.DEGENERATE: 13,
}


@dataclass(frozen=True)
class HermitianForm2:
    """R^2-valued Hermitian form h_k(z) = z^* H_k z on C^2.

    The coefficient of z_i conj(z_j) in h_k is H_k[j, i].
    """

    H1: sympy.ImmutableMatrix
    H2: sympy.ImmutableMatrix

    def __post_init__(self):
        object.__setattr__(self, "H1", sympy.ImmutableMatrix(self.H1))
        object.__setattr__(self, "H2", sympy.ImmutableMatrix(self.H2))
        for name in ("H1", "H2"):
            if getattr(self, name).shape != (2, 2):
                raise ValueError(f"{name} must be 2x2")

    @property
    def numeric(self) -> bool:
        return bool(self.H1.atoms(sympy.Float) or self.H2.atoms(sympy.Float))

    def pair(self):
        return (self.H1, self.H2)


@dataclass(frozen=True)
class ClassLabel:
    label: Label
    A: Optional[sympy.ImmutableMatrix] = None  # complex, invertible
    B: Optional[sympy.ImmutableMatrix] = None  # real, invertible
    discriminant: Optional[sympy.Expr] = None

    @property
    def has_witness(self) -> bool:
        return self.A is not None and self.B is not None
