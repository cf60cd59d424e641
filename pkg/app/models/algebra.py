from dataclasses import dataclass
from numbers import Number
from typing import Tuple

import sympy

from app.utils import scalars
from app.utils.errors import DeltaMismatch, NotInvertible
from app.utils.scalars import Scalar

HYPERBOLIC = 1
ELLIPTIC = -1


def check_delta(delta: int) -> int:
    if delta not in (HYPERBOLIC, ELLIPTIC):
        raise DeltaMismatch(f"delta must be +1 or -1, got {delta}")
    return int(delta)


@dataclass(frozen=True, eq=False)
class AElem:
    """Element (a, delta*b; b, a) of the commutative algebra A^delta.

    Both scalars are exact sympy values or both are Python complex values;
    mixing promotes to numeric.
    """

    a: Scalar
    b: Scalar
    delta: int

    def __post_init__(self):
        check_delta(self.delta)
        a, b = scalars.coerce(self.a), scalars.coerce(self.b)
        if scalars.is_numeric(a) != scalars.is_numeric(b):
            a, b = scalars.to_complex(a), scalars.to_complex(b)
        object.__setattr__(self, "a", scalars.clean(a))
        object.__setattr__(self, "b", scalars.clean(b))

    # Constructors
    @classmethod
    def scalar(cls, c, delta: int) -> "AElem":
        return cls(c, 0.0 if scalars.is_numeric(c) else 0, delta)

    @classmethod
    def one(cls, delta: int) -> "AElem":
        return cls(1, 0, delta)

    @classmethod
    def zero(cls, delta: int) -> "AElem":
        return cls(0, 0, delta)

    @classmethod
    def generator(cls, delta: int) -> "AElem":
        """The element J = (0, 1), with J*J = delta*E."""
        return cls(0, 1, delta)

    @classmethod
    def from_split(cls, s1: Scalar, s2: Scalar, delta: int) -> "AElem":
        s1, s2 = scalars.coerce(s1), scalars.coerce(s2)
        if scalars.is_numeric(s1) or scalars.is_numeric(s2):
            s1, s2 = scalars.to_complex(s1), scalars.to_complex(s2)
            half, i = 0.5, 1j
        else:
            half, i = sympy.Rational(1, 2), sympy.I
        if delta == HYPERBOLIC:
            return cls(half * (s1 + s2), half * (s1 - s2), delta)
        return cls(half * (s1 + s2), -i * half * (s1 - s2), delta)

    @property
    def numeric(self) -> bool:
        return scalars.is_numeric(self.a)

    # Arithmetic
    def _lift(self, other) -> "AElem":
        if isinstance(other, AElem):
            if other.delta != self.delta:
                raise DeltaMismatch(f"Cannot combine delta={self.delta} with delta={other.delta}")
            return other
        if isinstance(other, (Number, sympy.Basic)):
            return AElem.scalar(other, self.delta)
        return NotImplemented

    def _operands(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return None
        if self.numeric != other.numeric:
            return self.to_numeric(), other.to_numeric()
        return self, other

    def __add__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return AElem(x.a + y.a, x.b + y.b, self.delta)

    __radd__ = __add__

    def __neg__(self):
        return AElem(-self.a, -self.b, self.delta)

    def __sub__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return AElem(x.a - y.a, x.b - y.b, self.delta)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._operands(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return AElem(
            x.a * y.a + self.delta * x.b * y.b,
            x.a * y.b + x.b * y.a,
            self.delta,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = AElem.scalar(1.0 if self.numeric else 1, self.delta)
        for _ in range(abs(n)):
            result = result * base
        return result

    def conj(self) -> "AElem":
        return AElem(scalars.conj(self.a), scalars.conj(self.b), self.delta)

    def re(self) -> "AElem":
        return AElem(scalars.re(self.a), scalars.re(self.b), self.delta)

    def im(self) -> "AElem":
        return AElem(scalars.im(self.a), scalars.im(self.b), self.delta)

    def det(self) -> Scalar:
        return scalars.clean(self.a * self.a - self.delta * self.b * self.b)

    def is_invertible(self) -> bool:
        return not scalars.is_zero(self.det())

    def inverse(self) -> "AElem":
        d = self.det()
        if scalars.is_zero(d):
            raise NotInvertible(f"{self} is a zero divisor (det = 0)")
        if isinstance(d, sympy.Basic):
            inv = sympy.radsimp(1 / d)
            return AElem(scalars.rationalize(self.a * inv), scalars.rationalize(-self.b * inv), self.delta)
        return AElem(self.a / d, -self.b / d, self.delta)

    def split(self) -> Tuple[Scalar, Scalar]:
        if self.delta == HYPERBOLIC:
            return scalars.clean(self.a + self.b), scalars.clean(self.a - self.b)
        i = 1j if self.numeric else sympy.I
        return scalars.clean(self.a + i * self.b), scalars.clean(self.a - i * self.b)

    def to_numeric(self) -> "AElem":
        return AElem(scalars.to_complex(self.a), scalars.to_complex(self.b), self.delta)

    # Predicates
    def is_zero(self) -> bool:
        return scalars.is_zero(self.a) and scalars.is_zero(self.b)

    def is_real(self) -> bool:
        return scalars.is_real(self.a) and scalars.is_real(self.b)

    def equals(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return (self - other).is_zero()

    def __eq__(self, other):
        if not isinstance(other, (AElem, Number, sympy.Basic)):
            return NotImplemented
        if isinstance(other, AElem) and other.delta != self.delta:
            return False
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"AElem(a={self.a}, b={self.b}, delta={self.delta:+d})"
