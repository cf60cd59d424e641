import cmath
import logging
from typing import List, Tuple

import sympy

from app.models.algebra import AElem, ELLIPTIC, HYPERBOLIC, check_delta
from app.utils import scalars
from app.utils.errors import DeltaMismatch, OutOfCone
from app.utils.scalars import Scalar

logger = logging.getLogger(__name__)


def principal_sqrt(s: Scalar) -> Scalar:
    """Principal square root; exact inputs stay exact (denested when possible)."""
    if not isinstance(s, sympy.Basic):
        return cmath.sqrt(s)
    p, q = sympy.expand(s).as_real_imag()
    if q == 0:
        return sympy.sqrt(p) if p >= 0 else sympy.I * sympy.sqrt(-p)
    modulus = sympy.sqrt(p * p + q * q)
    real = sympy.sqrtdenest(sympy.sqrt((modulus + p) / 2))
    imag = sympy.sqrtdenest(sympy.sqrt((modulus - p) / 2))
    return sympy.expand(real + sympy.sign(q) * sympy.I * imag)


def cube_roots(t: Scalar) -> List[Scalar]:
    """All three cube roots of a nonzero scalar, exact when ``t`` is."""
    if not isinstance(t, sympy.Basic):
        r = complex(t) ** (1.0 / 3.0)
        w = cmath.exp(2j * cmath.pi / 3)
        return [r, r * w, r * w * w]
    x = sympy.Symbol("x")
    root = None
    if scalars.is_gaussian_rational(t):
        _, factors = sympy.factor_list(x**3 - t, x, gaussian=True)
        for factor, _multiplicity in factors:
            poly = sympy.Poly(factor, x)
            if poly.degree() == 1:
                root = -poly.nth(0) / poly.nth(1)
                break
    if root is None:
        root = sympy.root(t, 3)
    # the other two differ by the primitive cube roots of unity
    omega = (-1 + sympy.I * sympy.sqrt(3)) / 2
    return [scalars.rationalize(root * u) for u in (sympy.Integer(1), omega, omega**2)]


class AlgebraService:
    """Operations on the commutative algebra A^delta."""

    @staticmethod
    def _same(x: AElem, y: AElem) -> None:
        if x.delta != y.delta:
            raise DeltaMismatch(f"delta {x.delta:+d} does not match delta {y.delta:+d}")

    @staticmethod
    def add(x: AElem, y: AElem) -> AElem:
        AlgebraService._same(x, y)
        return x + y

    @staticmethod
    def sub(x: AElem, y: AElem) -> AElem:
        AlgebraService._same(x, y)
        return x - y

    @staticmethod
    def neg(x: AElem) -> AElem:
        return -x

    @staticmethod
    def mul(x: AElem, y: AElem) -> AElem:
        AlgebraService._same(x, y)
        return x * y

    @staticmethod
    def conj(x: AElem) -> AElem:
        return x.conj()

    @staticmethod
    def det(x: AElem) -> Scalar:
        return x.det()

    @staticmethod
    def inverse(x: AElem) -> AElem:
        return x.inverse()

    @staticmethod
    def power(x: AElem, n: int) -> AElem:
        return x**n

    @staticmethod
    def is_real(x: AElem) -> bool:
        return x.is_real()

    @staticmethod
    def split_basis(x: AElem) -> Tuple[Scalar, Scalar]:
        return x.split()

    @staticmethod
    def unsplit(s1: Scalar, s2: Scalar, delta: int) -> AElem:
        return AElem.from_split(s1, s2, check_delta(delta))

    @staticmethod
    def is_positive(x: AElem) -> bool:
        """Membership in the positive cone of G^1."""
        if not x.is_real():
            return False
        s1, s2 = x.split()
        if x.delta == HYPERBOLIC:
            return scalars.sign_of_real(s1) > 0 and scalars.sign_of_real(s2) > 0
        if scalars.is_zero(s1):
            return False
        return not (scalars.is_real(s1) and scalars.sign_of_real(scalars.re(s1)) < 0)

    @staticmethod
    def sqrt_positive(x: AElem) -> AElem:
        if not AlgebraService.is_positive(x):
            raise OutOfCone(f"{x} is outside the positive cone")
        s1, s2 = x.split()
        if x.delta == HYPERBOLIC:
            return AElem.from_split(principal_sqrt(s1), principal_sqrt(s2), x.delta)
        r = principal_sqrt(s1)
        return AElem.from_split(r, scalars.conj(r), x.delta)

    @staticmethod
    def lambda_set(delta: int, numeric: bool = False) -> List[AElem]:
        """All lambda with lambda*conj(lambda) = E and lambda^3 = E."""
        delta = check_delta(delta)
        omega = (-1 + sympy.I * sympy.sqrt(3)) / 2
        units = [sympy.Integer(1), sympy.expand(omega), sympy.expand(omega**2)]
        elements = [AElem(u, 0, delta) for u in units]
        if delta == HYPERBOLIC:
            for u in units:
                a = sympy.expand(-u / 2)  # a^3 = -1/8
                for sign in (1, -1):
                    elements.append(AElem(a, sympy.expand(sign * a * sympy.I * sympy.sqrt(3)), delta))
        if numeric:
            elements = [e.to_numeric() for e in elements]
        logger.debug("lambda_set(delta=%+d) has %d elements", delta, len(elements))
        return elements

    @staticmethod
    def exp_i(s: Scalar, t: Scalar, delta: int) -> AElem:
        """exp(i(s E + t J)); a unit (C conj(C) = E) for real s, t."""
        delta = check_delta(delta)
        j1, j2 = AElem.generator(delta).split()
        if scalars.is_numeric(s) or scalars.is_numeric(t):
            s, t = float(s), float(t)
            j1, j2 = complex(j1), complex(j2)
            return AElem.from_split(cmath.exp(1j * (s + j1 * t)), cmath.exp(1j * (s + j2 * t)), delta)
        return AElem.from_split(sympy.exp(sympy.I * (s + j1 * t)), sympy.exp(sympy.I * (s + j2 * t)), delta)

    @staticmethod
    def is_unit(x: AElem) -> bool:
        """C conj(C) = E."""
        return (x * x.conj()).equals(1)
