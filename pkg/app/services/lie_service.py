import logging
from typing import Dict, List, Sequence

import sympy

from app.models.algebra import AElem, check_delta
from app.models.group import GroupElem
from app.models.lie import BLOCK_DEGREES, GradedDecomposition, SuElem
from app.utils import amatrix, scalars
from app.utils.amatrix import AMatrix
from app.utils.errors import NotAMember

logger = logging.getLogger(__name__)

# Basis order: V(2), W(4), X(4), Y(4), Zc(2)
BASIS_LAYOUT = [("V", True), ("W", False), ("X", False), ("Y", False), ("Zc", True)]
GRADED_DIMS = {-2: 2, -1: 4, 0: 4, 1: 4, 2: 2}


def invariant_form(delta: int, numeric: bool = False) -> AMatrix:
    """J = [[0, 0, -(i/2)E], [0, E, 0], [(i/2)E, 0, 0]]."""
    half_i = 0.5j if numeric else sympy.I / 2
    z, e = AElem.zero(delta), AElem.one(delta)
    if numeric:
        z, e = z.to_numeric(), e.to_numeric()
    return amatrix.freeze([[z, z, -half_i * e], [z, e, z], [half_i * e, z, z]])


def _block_units(delta: int, real: bool) -> List[AElem]:
    if real:
        return [AElem(1, 0, delta), AElem(0, 1, delta)]
    i = sympy.I
    return [AElem(1, 0, delta), AElem(i, 0, delta), AElem(0, 1, delta), AElem(0, i, delta)]


class LieService:
    """The graded Lie algebra su^delta(2,1)."""

    @staticmethod
    def pattern_holds(M: AMatrix) -> bool:
        """Block pattern of SuElem.matrix()."""
        try:
            candidate = SuElem(M[0][0], M[0][1], M[1][0], M[0][2], M[2][0], amatrix.delta_of(M))
        except Exception:
            return False
        if not (candidate.Zc.is_real() and candidate.V.is_real()):
            return False
        return amatrix.equals(candidate.matrix(), M)

    @staticmethod
    def form_holds(M: AMatrix) -> bool:
        """M J + J conj(M)^T = 0 and trace M = 0."""
        delta = amatrix.delta_of(M)
        numeric = any(x.numeric for row in M for x in row)
        J = invariant_form(delta, numeric)
        lhs = amatrix.add(amatrix.matmul(M, J), amatrix.matmul(J, amatrix.conj_transpose(M)))
        return amatrix.is_zero(lhs) and amatrix.trace(M).is_zero()

    @staticmethod
    def is_member(M: AMatrix) -> bool:
        """Both characterizations: the block pattern and the J-anti-self-adjoint, traceless form."""
        pattern, form = LieService.pattern_holds(M), LieService.form_holds(M)
        if pattern != form:
            logger.warning("Membership tests disagree: pattern=%s form=%s", pattern, form)
        return pattern and form

    @staticmethod
    def pack(M: AMatrix) -> SuElem:
        if not LieService.pattern_holds(M):
            raise NotAMember("Matrix does not have the su(2,1) block pattern")
        return SuElem(M[0][0], M[0][1], M[1][0], M[0][2], M[2][0], amatrix.delta_of(M))

    @staticmethod
    def bracket(M: SuElem, N: SuElem) -> SuElem:
        return LieService.pack(amatrix.commutator(M.matrix(), N.matrix()))

    @staticmethod
    def grade(M: SuElem) -> GradedDecomposition:
        return GradedDecomposition({degree: M.only(block) for block, degree in BLOCK_DEGREES.items()})

    @staticmethod
    def dims(delta: int) -> Dict[str, object]:
        """Rank of the basis and the dimension of each graded piece, computed exactly."""
        basis = LieService.basis(check_delta(delta))
        rows = []
        for element in basis:
            row = []
            for entry in (x for r in element.matrix() for x in r):
                for s in (entry.a, entry.b):
                    row.extend([scalars.re(s), scalars.im(s)])
            rows.append(row)
        graded = {degree: 0 for degree in sorted(GRADED_DIMS)}
        for element in basis:
            for degree in LieService.grade(element).support():
                graded[degree] += 1
        return {
            "graded": [graded[d] for d in sorted(graded)],
            "total": sympy.Matrix(rows).rank(),
            "positive": graded[1] + graded[2],
        }

    @staticmethod
    def grading_element(delta: int) -> SuElem:
        z = AElem.zero(delta)
        return SuElem(AElem.one(delta), z, z, z, z, delta)

    @staticmethod
    def adjoint(g: GroupElem, M: SuElem) -> SuElem:
        inverse = amatrix.inverse3(g.matrix)
        return LieService.pack(amatrix.matmul(amatrix.matmul(g.matrix, M.matrix()), inverse))

    @staticmethod
    def basis(delta: int) -> List[SuElem]:
        delta = check_delta(delta)
        zero = SuElem.zero(delta)
        elements = []
        for block, real in BASIS_LAYOUT:
            for unit in _block_units(delta, real):
                parts = {b: zero.block(b) for b in BLOCK_DEGREES}
                parts[block] = unit
                elements.append(SuElem(delta=delta, **parts))
        return elements

    @staticmethod
    def coordinates(M: SuElem) -> list:
        """Real coordinates against ``basis``."""
        coords = []
        for block, real in BASIS_LAYOUT:
            x = M.block(block)
            if real:
                coords.extend([scalars.re(x.a), scalars.re(x.b)])
            else:
                coords.extend([scalars.re(x.a), scalars.im(x.a), scalars.re(x.b), scalars.im(x.b)])
        if M.X.numeric:
            return [complex(c).real for c in coords]
        return coords

    @staticmethod
    def from_coordinates(coords: Sequence, delta: int) -> SuElem:
        if len(coords) != 16:
            raise ValueError(f"Expected 16 coordinates, got {len(coords)}")
        acc = SuElem.zero(delta)
        for c, element in zip(coords, LieService.basis(delta)):
            if c != 0:
                acc = acc + element.scale(scalars.coerce(c))
        return acc

    @staticmethod
    def basis_degrees() -> List[int]:
        degrees = []
        for block, real in BASIS_LAYOUT:
            degrees.extend([BLOCK_DEGREES[block]] * (2 if real else 4))
        return degrees
