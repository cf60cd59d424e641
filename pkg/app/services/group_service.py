import logging
from typing import List

import sympy

from app.models.algebra import AElem, HYPERBOLIC, check_delta
from app.models.group import GroupElem, IsotropyParams, QuadricPoint
from app.services.algebra_service import cube_roots
from app.services.lie_service import invariant_form
from app.utils import amatrix, scalars
from app.utils.errors import (
    AtInfinity,
    ConstraintViolated,
    InvalidParams,
    NotAMember,
    NotInvertible,
    NotOnQuadric,
)

logger = logging.getLogger(__name__)

# Points are row vectors (E, Z, W) multiplied on the right by U and
# normalized by the slot carrying E.
HOMOGENEOUS_EMBEDDING = ("E", "Z", "W")
NORMALIZING_SLOT = 0


def _i(x: AElem):
    return 1j if x.numeric else sympy.I


class GroupService:
    """SU^delta(2,1), its isotropy subgroup and translations."""

    @staticmethod
    def identity(delta: int) -> GroupElem:
        return GroupElem(amatrix.identity(check_delta(delta)), delta)

    @staticmethod
    def is_member(U: GroupElem) -> bool:
        numeric = any(x.numeric for row in U.matrix for x in row)
        J = invariant_form(U.delta, numeric)
        preserved = amatrix.equals(amatrix.matmul(amatrix.matmul(U.matrix, J), amatrix.conj_transpose(U.matrix)), J)
        return preserved and amatrix.det3(U.matrix).equals(1)

    @staticmethod
    def _require_member(U: GroupElem) -> None:
        if not GroupService.is_member(U):
            raise NotAMember("Matrix is not in SU(2,1) over A^delta")

    @staticmethod
    def compose(U: GroupElem, V: GroupElem, check: bool = True) -> GroupElem:
        if check:
            GroupService._require_member(U)
            GroupService._require_member(V)
        return U @ V

    @staticmethod
    def inverse(U: GroupElem) -> GroupElem:
        GroupService._require_member(U)
        return GroupElem(amatrix.inverse3(U.matrix), U.delta)

    # Isotropy subgroup
    @staticmethod
    def solve_sigma(C: AElem) -> List[AElem]:
        """All sigma with sigma conj(sigma) C conj(C) = E and sigma^3 C^2 conj(C) = E."""
        if not C.is_invertible():
            raise NotInvertible(f"C = {C} is not invertible")
        c1, c2 = C.split()
        solutions: List[AElem] = []
        if C.delta == HYPERBOLIC:
            # componentwise: s_j = k_j / c_j with k_j^3 = c_j / conj(c_j)
            first = [k / c1 for k in cube_roots(scalars.rationalize(c1 / scalars.conj(c1)))]
            second = [k / c2 for k in cube_roots(scalars.rationalize(c2 / scalars.conj(c2)))]
            for s1 in first:
                for s2 in second:
                    solutions.append(AElem.from_split(scalars.rationalize(s1), scalars.rationalize(s2), C.delta))
        else:
            # conj swaps the split components: s1 = k / c1, s2 = 1 / (conj(k) c2)
            for k in cube_roots(scalars.rationalize(c1 / scalars.conj(c2))):
                s1 = scalars.rationalize(k / c1)
                s2 = scalars.rationalize(1 / (scalars.conj(k) * c2))
                solutions.append(AElem.from_split(s1, s2, C.delta))
        logger.debug("solve_sigma found %d solutions", len(solutions))
        return solutions

    @staticmethod
    def params_valid(p: IsotropyParams) -> bool:
        C, sigma = p.C, p.sigma
        if not (C.is_invertible() and sigma.is_invertible() and p.R.is_real()):
            return False
        return (sigma * sigma.conj() * C * C.conj()).equals(1) and (sigma**3 * C * C * C.conj()).equals(1)

    @staticmethod
    def params_from_initial(C: AElem, A: AElem, R: AElem) -> IsotropyParams:
        """Complete (C, A, R) with the first sigma returned by solve_sigma."""
        return IsotropyParams(C=C, A=A, R=R, sigma=GroupService.solve_sigma(C)[0])

    @staticmethod
    def isotropy_element(p: IsotropyParams) -> GroupElem:
        if not GroupService.params_valid(p):
            raise InvalidParams("Isotropy parameters violate the sigma equations or R is not real")
        C, A, R, s = p.C, p.A, p.R, p.sigma
        i = _i(C)
        z = AElem.zero(C.delta)
        rows = [
            [s, z, z],
            [-2 * i * s * A.conj(), s * C, z],
            [-s * (R + i * A * A.conj()), s * C * A, s * C * C.conj()],
        ]
        return GroupElem(rows, C.delta)

    @staticmethod
    def isotropy_params(U: GroupElem) -> IsotropyParams:
        """Read (C, A, R, sigma) back from a matrix of the isotropy shape."""
        sigma = U[0, 0]
        C = U[1, 1] / sigma
        A = U[2, 1] / (sigma * C)
        i = _i(sigma)
        R = -U[2, 0] / sigma - i * A * A.conj()
        return IsotropyParams(C=C, A=A, R=R, sigma=sigma)

    @staticmethod
    def is_isotropy(U: GroupElem) -> bool:
        origin = GroupService.origin(U.delta)
        try:
            return GroupService.act_on_point(U, origin).equals(origin)
        except AtInfinity:
            return False

    @staticmethod
    def compose_params(p: IsotropyParams, q: IsotropyParams) -> IsotropyParams:
        product = GroupService.isotropy_element(p) @ GroupService.isotropy_element(q)
        return GroupService.isotropy_params(product)

    @staticmethod
    def chi(p: IsotropyParams) -> amatrix.AMatrix:
        C, A, R = p.C, p.A, p.R
        if not (C * C.conj()).equals(1):
            raise ConstraintViolated("chi requires C conj(C) = E")
        i = _i(C)
        z, e = AElem.zero(C.delta), AElem.one(C.delta)
        c_inv, cbar_inv = C.inverse(), C.conj().inverse()
        both = c_inv * cbar_inv
        return amatrix.freeze(
            [
                [both, z, z, z],
                [-2 * A * both, c_inv, z, z],
                [-2 * A.conj() * both, z, cbar_inv, z],
                [-4 * R * both, -2 * i * A.conj() * c_inv, 2 * i * A * cbar_inv, e],
            ]
        )

    # Quadric and translations
    @staticmethod
    def origin(delta: int) -> QuadricPoint:
        return QuadricPoint(AElem.zero(delta), AElem.zero(delta), delta)

    @staticmethod
    def on_quadric(p: QuadricPoint) -> bool:
        return p.residual().is_zero()

    @staticmethod
    def quadric_point(Z: AElem, U: AElem) -> QuadricPoint:
        """The quadric point over (Z, U): W = U + i Z conj(Z)."""
        return QuadricPoint(Z, U + _i(Z) * Z * Z.conj(), Z.delta)

    @staticmethod
    def translation(Z0: AElem, W0: AElem) -> GroupElem:
        p = QuadricPoint(Z0, W0, Z0.delta)
        if not GroupService.on_quadric(p):
            raise NotOnQuadric(f"({Z0}, {W0}) violates Im W = Z conj(Z)")
        i = _i(Z0)
        z, e = AElem.zero(Z0.delta), AElem.one(Z0.delta)
        rows = [
            [e, Z0, W0],
            [z, e, 2 * i * Z0.conj()],
            [z, z, e],
        ]
        return GroupElem(rows, Z0.delta)

    @staticmethod
    def act_on_point(U: GroupElem, p: QuadricPoint) -> QuadricPoint:
        row = [AElem.one(p.delta), p.Z, p.W]
        image = [sum((row[k] * U[k, j] for k in range(1, 3)), row[0] * U[0, j]) for j in range(3)]
        normalizer = image[NORMALIZING_SLOT]
        if not normalizer.is_invertible():
            logger.warning("Point sent to infinity: normalizing coordinate %s is a zero divisor", normalizer)
            raise AtInfinity(f"Normalizing coordinate {normalizer} is not invertible")
        inv = normalizer.inverse()
        return QuadricPoint(image[1] * inv, image[2] * inv, p.delta)

    @staticmethod
    def isotropy_slope_image(A: AElem, p: IsotropyParams) -> AElem:
        """Slope of the image of the chain Z = A W under the isotropy element p."""
        return (A + p.A) * p.C.conj().inverse()
