import logging
from typing import Optional, Tuple

import numpy as np
import sympy

from app.config.settings import DEFAULT_SEED
from app.config.tolerance_config import CLASSIFY_TOLERANCE_BAND, NUMERIC_ZERO_TOL, WITNESS_RETRIES
from app.models.hermitian import ClassLabel, HermitianForm2, Label
from app.models.series import SurfaceSeries, levi_monomial
from app.utils import scalars
from app.utils.errors import MalformedSeries, NotHermitian, ToleranceBand, WitnessNotFound

logger = logging.getLogger(__name__)

I = sympy.I
_SWAP = sympy.ImmutableMatrix([[0, 1], [1, 0]])

CANONICAL_FORMS = {
    Label.HYPERBOLIC: HermitianForm2(sympy.eye(2), _SWAP),
    Label.ELLIPTIC: HermitianForm2(sympy.diag(1, -1), _SWAP),
    Label.PARABOLIC: HermitianForm2(sympy.diag(1, 0), _SWAP),
}


def _simplify(M) -> sympy.ImmutableMatrix:
    return sympy.ImmutableMatrix(M).applyfunc(scalars.rationalize)


def _rank(M: sympy.Matrix, numeric: bool) -> int:
    if numeric:
        values = np.array(M.evalf(), dtype=complex)
        return int(np.linalg.matrix_rank(values, tol=NUMERIC_ZERO_TOL))
    return sympy.Matrix(M).applyfunc(scalars.rationalize).rank(simplify=True)


def _real_vector(M: sympy.Matrix) -> list:
    out = []
    for entry in M:
        real, imag = sympy.expand(entry).as_real_imag()
        out.extend([real, imag])
    return out


def _rank_one_factor(K: sympy.Matrix) -> Tuple[sympy.Matrix, sympy.Expr]:
    """For Hermitian rank-1 K, a column c and scalar k with K = c c^* / k."""
    for j in range(2):
        if not scalars.is_zero(K[j, j]):
            return K[:, j], K[j, j]
    raise ArithmeticError("Rank-one Hermitian matrix with vanishing diagonal")


def _random_congruence(rng: np.random.Generator) -> Tuple[sympy.Matrix, sympy.Matrix]:
    """Invertible complex A and real B with small integer entries."""
    while True:
        re, im, real = rng.integers(-2, 3, size=(3, 2, 2))
        A = sympy.Matrix(2, 2, lambda i, j: int(re[i, j]) + I * int(im[i, j]))
        B = sympy.Matrix(2, 2, lambda i, j: int(real[i, j]))
        if A.det() != 0 and B.det() != 0:
            return A, B


class HermitianService:
    """Non-degeneracy and classification of R^2-valued Hermitian forms on C^2."""

    @staticmethod
    def is_hermitian(M: sympy.Matrix) -> bool:
        return all(scalars.is_zero(x) for x in (sympy.Matrix(M) - sympy.Matrix(M).H))

    @staticmethod
    def require_hermitian(H: HermitianForm2) -> None:
        for name, M in (("H1", H.H1), ("H2", H.H2)):
            if not HermitianService.is_hermitian(M):
                raise NotHermitian(f"{name} is not Hermitian")

    @staticmethod
    def pencil_coefficients(H: HermitianForm2) -> Tuple[sympy.Expr, sympy.Expr, sympy.Expr]:
        """q(x, y) = det(x H1 + y H2) = a x^2 + b x y + c y^2."""
        a = scalars.rationalize(H.H1.det())
        c = scalars.rationalize(H.H2.det())
        b = scalars.rationalize((H.H1 + H.H2).det() - a - c)
        return sympy.re(a), sympy.re(b), sympy.re(c)

    @staticmethod
    def pencil_discriminant(H: HermitianForm2) -> sympy.Expr:
        a, b, c = HermitianService.pencil_coefficients(H)
        return scalars.rationalize(b * b - 4 * a * c)

    @staticmethod
    def is_nondegenerate(H: HermitianForm2) -> bool:
        numeric = H.numeric
        independent = _rank(sympy.Matrix([_real_vector(H.H1), _real_vector(H.H2)]), numeric) == 2
        common_kernel_trivial = _rank(sympy.Matrix.vstack(sympy.Matrix(H.H1), sympy.Matrix(H.H2)), numeric) == 2
        return independent and common_kernel_trivial

    @staticmethod
    def apply_congruence(H: HermitianForm2, A: sympy.Matrix, B: sympy.Matrix) -> HermitianForm2:
        """The form z -> B . H(Az, Az)."""
        A = sympy.Matrix(A)
        moved = [A.H * sympy.Matrix(Hj) * A for Hj in H.pair()]
        out = [B[k, 0] * moved[0] + B[k, 1] * moved[1] for k in range(2)]
        return HermitianForm2(_simplify(out[0]), _simplify(out[1]))

    @staticmethod
    def canonical_form(label: Label) -> HermitianForm2:
        return CANONICAL_FORMS[Label(label)]

    @staticmethod
    def verify_witness(H: HermitianForm2, result: ClassLabel) -> bool:
        if not result.has_witness:
            return result.label == Label.DEGENERATE
        image = HermitianService.apply_congruence(H, result.A, result.B)
        target = HermitianService.canonical_form(result.label)
        return all(
            scalars.is_zero(x)
            for x in list(image.H1 - target.H1) + list(image.H2 - target.H2)
        )

    @staticmethod
    def _hyperbolic_witness(H: HermitianForm2) -> Tuple[sympy.Matrix, sympy.Matrix]:
        a, b, c = HermitianService.pencil_coefficients(H)
        disc = b * b - 4 * a * c
        if not scalars.is_zero(a):
            root = sympy.sqrt(disc)
            roots = [((-b + root) / (2 * a), sympy.Integer(1)), ((-b - root) / (2 * a), sympy.Integer(1))]
        else:
            roots = [(sympy.Integer(1), sympy.Integer(0)), (-c, b)]
        rows_M, rows_B = [], []
        for x, y in roots:
            K = _simplify(x * H.H1 + y * H.H2)
            col, k = _rank_one_factor(K)
            rows_M.append(list(col.H))
            rows_B.append([k * x, k * y])
        A0 = sympy.Matrix(rows_M).inv()
        B0 = sympy.Matrix(rows_B)
        # (|z1|^2, |z2|^2) -> H^1
        S = sympy.Matrix([[1, 1], [1, -1]])
        B1 = sympy.Matrix([[1, 1], [1, -1]]) / 2
        return _simplify(A0 * S), _simplify(B1 * B0)

    @staticmethod
    def _elliptic_witness(H: HermitianForm2) -> Tuple[sympy.Matrix, sympy.Matrix]:
        a, b, c = HermitianService.pencil_coefficients(H)
        disc = b * b - 4 * a * c
        lam = scalars.rationalize((-b + I * sympy.sqrt(-disc)) / (2 * a))
        K = _simplify(lam * H.H1 + H.H2)
        for i in range(2):
            for j in range(2):
                if not scalars.is_zero(K[i, j]):
                    p = K[:, j] / K[i, j]
                    q_row = K[i, :]
                    break
            else:
                continue
            break
        frame = sympy.Matrix.vstack(p.H, q_row)
        A = frame.inv() * sympy.Matrix([[1, -I], [1, I]])
        B = sympy.Matrix([[sympy.re(lam), 1], [sympy.im(lam), 0]])
        return _simplify(A), _simplify(B)

    @staticmethod
    def _parabolic_witness(H: HermitianForm2) -> Tuple[sympy.Matrix, sympy.Matrix]:
        a, b, c = HermitianService.pencil_coefficients(H)
        if not scalars.is_zero(a):
            x0, y0 = scalars.rationalize(-b / (2 * a)), sympy.Integer(1)
            x1, y1 = sympy.Integer(1), sympy.Integer(0)
        else:
            x0, y0 = sympy.Integer(1), sympy.Integer(0)
            x1, y1 = sympy.Integer(0), sympy.Integer(1)
        K0 = _simplify(x0 * H.H1 + y0 * H.H2)
        K1 = _simplify(x1 * H.H1 + y1 * H.H2)
        col, k = _rank_one_factor(K0)
        s = 1 / k
        kernel = sympy.Matrix([sympy.conjugate(col[1]), -sympy.conjugate(col[0])])
        first = col / (col.H * col)[0, 0]
        alpha = scalars.rationalize((first.H * K1 * first)[0, 0])
        beta = scalars.rationalize((first.H * K1 * kernel)[0, 0])
        A = sympy.Matrix.hstack(first, kernel / beta)
        B = sympy.Matrix([[x0 / s, y0 / s], [x1 - alpha * x0 / s, y1 - alpha * y0 / s]])
        return _simplify(A), _simplify(B)

    @staticmethod
    def _try_builder(H: HermitianForm2, label: Label) -> Optional[Tuple[sympy.Matrix, sympy.Matrix]]:
        builder = {
            Label.HYPERBOLIC: HermitianService._hyperbolic_witness,
            Label.ELLIPTIC: HermitianService._elliptic_witness,
            Label.PARABOLIC: HermitianService._parabolic_witness,
        }[label]
        try:
            return builder(H)
        except (ArithmeticError, ValueError) as e:
            logger.debug("Direct %s witness failed: %s", label.value, e)
            return None

    @staticmethod
    def find_witness(H: HermitianForm2, label: Label, disc=None, seed: int = DEFAULT_SEED) -> ClassLabel:
        """Witness (A, B) taking H to the canonical form of ``label``.

        When the direct construction fails or does not verify (a degenerate
        pencil parameter), H is first moved by seeded random congruences with
        small integer entries and the two congruences are composed.
        """
        found = HermitianService._try_builder(H, label)
        if found is not None:
            result = ClassLabel(label, sympy.ImmutableMatrix(found[0]), sympy.ImmutableMatrix(found[1]), disc)
            if HermitianService.verify_witness(H, result):
                return result
        rng = np.random.default_rng(seed)
        for attempt in range(1, WITNESS_RETRIES + 1):
            A1, B1 = _random_congruence(rng)
            found = HermitianService._try_builder(HermitianService.apply_congruence(H, A1, B1), label)
            if found is None:
                continue
            # canonical(z) = B2 B1 H(A1 A2 z)
            A2, B2 = found
            result = ClassLabel(label, _simplify(A1 * A2), _simplify(B2 * B1), disc)
            if HermitianService.verify_witness(H, result):
                logger.info("Found %s witness after %d random congruence(s)", label.value, attempt)
                return result
        logger.error("No %s witness after %d random congruences", label.value, WITNESS_RETRIES)
        raise WitnessNotFound(f"Could not construct a {label.value} witness")

    @staticmethod
    def classify(H: HermitianForm2, mode: str = "exact") -> ClassLabel:
        HermitianService.require_hermitian(H)
        if not HermitianService.is_nondegenerate(H):
            return ClassLabel(Label.DEGENERATE)
        disc = HermitianService.pencil_discriminant(H)
        if mode == "numeric" or H.numeric:
            value = float(sympy.N(disc))
            if abs(value) < CLASSIFY_TOLERANCE_BAND:
                raise ToleranceBand(f"Discriminant {value:.3e} is inside the tolerance band")
            sign = 1 if value > 0 else -1
        else:
            sign = scalars.sign_of_real(disc)
        label = Label.HYPERBOLIC if sign > 0 else Label.ELLIPTIC if sign < 0 else Label.PARABOLIC
        target = CANONICAL_FORMS[label]
        if all(scalars.is_zero(x) for x in list(H.H1 - target.H1) + list(H.H2 - target.H2)):
            result = ClassLabel(label, sympy.ImmutableMatrix(sympy.eye(2)), sympy.ImmutableMatrix(sympy.eye(2)), disc)
        else:
            result = HermitianService.find_witness(H, label, disc)
        logger.info("Classified Hermitian form as %s", label.value)
        return result

    @staticmethod
    def levi_form_at_origin(S: SurfaceSeries) -> HermitianForm2:
        """Pair of Hermitian matrices read from the z_i conj(z_j) coefficients."""
        low = [m for p in S.components for m in p.keys() if S.weight_of(m) < 2]
        if low:
            raise MalformedSeries("Series has a constant or linear part")
        matrices = []
        for component in S.components:
            M = sympy.zeros(2, 2)
            for i in range(2):
                for j in range(2):
                    M[j, i] = S.to_sympy(component.get(levi_monomial(i, j), S.ring.domain.zero))
            matrices.append(M)
        return HermitianForm2(*matrices)
