import logging
from functools import lru_cache
from typing import Dict, List, Optional

import numpy as np

from app.config.settings import DEFAULT_FD_STEP, DEFAULT_FLATNESS_POINTS, DEFAULT_SEED
from app.config.tolerance_config import FRAME_DET_FLOOR
from app.models.algebra import AElem, HYPERBOLIC, check_delta
from app.models.frame import FlatnessReport, FrameMatrix, P2Point
from app.models.group import GroupElem, IsotropyParams
from app.models.lie import SuElem
from app.services.algebra_service import AlgebraService
from app.services.group_service import GroupService
from app.services.lie_service import LieService
from app.utils import amatrix
from app.utils.errors import DegenerateFrame

logger = logging.getLogger(__name__)

FORM_NAMES = ("theta_hat", "omega_hat", "phi", "phiphi", "mu", "psi")


def _unit_directions(delta: int) -> List[Dict[str, object]]:
    """Differentials (dZ, dU, dD, dT, ds, dt, dS) along each coordinate vector."""
    zero = AElem(0j, 0j, delta)
    base = {"Z": zero, "U": zero, "D": zero, "T": zero, "s": 0.0, "t": 0.0, "S": zero}
    units = [AElem(1.0, 0j, delta), AElem(1j, 0j, delta), AElem(0j, 1.0, delta), AElem(0j, 1j, delta)]
    real_units = [units[0], units[2]]
    directions = []
    for unit in units:
        directions.append({**base, "Z": unit})
    for name in ("U", "D"):
        for unit in real_units:
            directions.append({**base, name: unit})
    for unit in units:
        directions.append({**base, "T": unit})
    directions.append({**base, "s": 1.0})
    directions.append({**base, "t": 1.0})
    for unit in real_units:
        directions.append({**base, "S": unit})
    return directions


@lru_cache(maxsize=2)
def _structure_constants(delta: int) -> np.ndarray:
    """c[k, l, m]: m-th coordinate of [e_k, e_l] for the fixed su basis."""
    blocks = [amatrix.to_blocks(e.matrix()) for e in LieService.basis(delta)]
    flat = np.array([np.concatenate([b.real.ravel(), b.imag.ravel()]) for b in blocks]).T
    pinv = np.linalg.pinv(flat)
    c = np.zeros((16, 16, 16))
    for k, bk in enumerate(blocks):
        for l, bl in enumerate(blocks):
            commutator = bk @ bl - bl @ bk
            c[k, l] = pinv @ np.concatenate([commutator.real.ravel(), commutator.imag.ravel()])
    return c


class QuadricFrameService:
    """The explicit parallelism on the frame bundle over the quadric and its flatness checks."""

    @staticmethod
    def forms_at(x: P2Point, d: Dict[str, object], perturb_psi: float = 0.0) -> Dict[str, AElem]:
        """The forms theta_hat, omega_hat, phi, phiphi, mu, psi evaluated on one tangent vector."""
        Z, D, T, S, C = x.Z, x.D, x.T, x.S, x.C
        Zb, Tb, Cb = Z.conj(), T.conj(), C.conj()
        root = AlgebraService.sqrt_positive(D)
        D_inv = D.inverse()
        J = AElem.generator(x.delta).to_numeric()
        i = 1j

        dZ, dU, dD, dT, dS = d["Z"], d["U"], d["D"], d["T"], d["S"]
        dZb, dTb = dZ.conj(), dT.conj()
        log_dD = D_inv * dD
        Cb_dC = i * (d["s"] + d["t"] * J)

        theta = 0.5 * D * (dU - i * Zb * dZ + i * Z * dZb)
        omega = T * theta + C * root * dZ
        omega_b = omega.conj()
        phi = S * theta + i * C * Tb * root * dZ - i * Cb * T * root * dZb - log_dD
        phiphi = 0.5 * (S - 3 * i * T * Tb) * theta + 2 * i * Tb * omega + i * T * omega_b - Cb_dC - 0.5 * log_dD
        mu = (
            i * T * T * Tb * theta
            + 0.5 * (S - i * T * Tb) * omega
            - i * T * T * omega_b
            - dT
            + T * Cb_dC
            - 0.5 * T * log_dD
        )
        psi = (
            (0.5 + perturb_psi) * S * S * theta
            - 1.5 * T * T * Tb * Tb * theta
            + (i * S * Tb + T * Tb * Tb) * omega
            + (-i * S * T + T * T * Tb) * omega_b
            - dS
            - i * Tb * dT
            + i * T * dTb
            + 2 * i * T * Tb * Cb_dC
            - S * log_dD
        )
        return {"theta_hat": theta, "omega_hat": omega, "phi": phi, "phiphi": phiphi, "mu": mu, "psi": psi}

    @staticmethod
    def su_value(forms: Dict[str, AElem], delta: int) -> SuElem:
        return SuElem(
            X=-(forms["phiphi"] + forms["phi"]) * (1.0 / 3.0),
            Y=forms["omega_hat"],
            W=-1j * forms["mu"].conj(),
            Zc=2.0 * forms["theta_hat"],
            V=-0.25 * forms["psi"],
            delta=delta,
        )

    @staticmethod
    def omega_at(x: P2Point, perturb_psi: float = 0.0, check: bool = True) -> FrameMatrix:
        columns = []
        for d in _unit_directions(x.delta):
            forms = QuadricFrameService.forms_at(x, d, perturb_psi)
            columns.append(LieService.coordinates(QuadricFrameService.su_value(forms, x.delta)))
        frame = FrameMatrix(np.array(columns, dtype=float).T, x.delta)
        if check and abs(frame.det) < FRAME_DET_FLOOR:
            logger.error("Frame degenerate at %s", x.coordinates().tolist())
            raise DegenerateFrame(f"|det| = {abs(frame.det):.3e} at the given point")
        return frame

    @staticmethod
    def maurer_cartan_residual(x: P2Point, h: float = DEFAULT_FD_STEP, perturb_psi: float = 0.0) -> float:
        """max |d_i w_j - d_j w_i - [w_i, w_j]| over all coordinate pairs, by central differences."""
        if h <= 0:
            raise ValueError("Finite-difference step must be positive")
        base = x.coordinates()
        F = QuadricFrameService.omega_at(x, perturb_psi, check=False).values
        derivatives = []
        for k in range(16):
            step = np.zeros(16)
            step[k] = h
            plus = QuadricFrameService.omega_at(P2Point.from_coordinates(base + step, x.delta), perturb_psi, check=False).values
            minus = QuadricFrameService.omega_at(P2Point.from_coordinates(base - step, x.delta), perturb_psi, check=False).values
            derivatives.append((plus - minus) / (2 * h))
        dF = np.array(derivatives)  # dF[k, m, j] = d_k of the m-th coordinate of w_j
        brackets = np.einsum("ki,lj,klm->ijm", F, F, _structure_constants(x.delta))
        curl = np.transpose(dF, (0, 2, 1)) - np.transpose(dF, (2, 0, 1))  # [i, j, m] = d_i w_j - d_j w_i
        residual = curl - brackets
        upper = np.triu_indices(16, k=1)
        return float(np.max(np.abs(residual[upper])))

    # Group chart
    @staticmethod
    def group_element_at(x: P2Point) -> GroupElem:
        """G(x) = sigma L(conj(C)/sqrt(D), -T/2, -S/4) t(Z, W), with dG G^-1 the form above."""
        delta = x.delta
        root = AlgebraService.sqrt_positive(x.D)
        sigma = AlgebraService.exp_i(x.s / 3.0, x.t / 3.0, delta) * root
        params = IsotropyParams(C=x.C.conj() / root, A=-0.5 * x.T, R=-0.25 * x.S, sigma=sigma)
        return GroupService.isotropy_element(params) @ GroupService.translation(x.Z, x.W)

    @staticmethod
    def point_from_group_element(G: GroupElem, reference: Optional[P2Point] = None) -> P2Point:
        """Inverse of group_element_at; angles are taken on the branch nearest to ``reference``."""
        delta = G.delta
        M = amatrix.to_numeric(G.matrix)
        sigma = M[0][0]
        Z, W = M[0][1] / sigma, M[0][2] / sigma
        translation = GroupService.translation(Z, W)
        isotropy = GroupElem(amatrix.matmul(M, amatrix.inverse3(translation.matrix)), delta)
        params = GroupService.isotropy_params(isotropy)
        D = (params.sigma * params.sigma.conj()).re()
        root = AlgebraService.sqrt_positive(D)
        unit_1, unit_2 = (params.sigma / root).split()
        if delta == HYPERBOLIC:
            a1, a2 = np.angle(unit_1), np.angle(unit_2)
            if reference is not None:
                a1 = _nearest_branch(a1, (reference.s + reference.t) / 3.0)
                a2 = _nearest_branch(a2, (reference.s - reference.t) / 3.0)
            s, t = 1.5 * (a1 + a2), 1.5 * (a1 - a2)
        else:
            a = np.angle(unit_1)
            if reference is not None:
                a = _nearest_branch(a, reference.s / 3.0)
            s, t = 3.0 * a, -3.0 * np.log(abs(unit_1))
        return P2Point(
            Z=Z,
            U=W.re(),
            D=D,
            T=-2.0 * params.A,
            s=s,
            t=t,
            S=(-4.0 * params.R).re(),
            delta=delta,
        )

    @staticmethod
    def mc_left_invariance_check(x: P2Point, g: GroupElem, h: float = DEFAULT_FD_STEP) -> float:
        """Residual between the form and its pullback along the lifted action G(x) -> G(x) g."""
        g = GroupElem(amatrix.to_numeric(g.matrix), g.delta)

        def moved(y: P2Point) -> P2Point:
            return QuadricFrameService.point_from_group_element(QuadricFrameService.group_element_at(y) @ g, reference=image)

        image = QuadricFrameService.point_from_group_element(QuadricFrameService.group_element_at(x) @ g)
        base = x.coordinates()
        jacobian = np.zeros((16, 16))
        for k in range(16):
            step = np.zeros(16)
            step[k] = h
            plus = moved(P2Point.from_coordinates(base + step, x.delta)).coordinates()
            minus = moved(P2Point.from_coordinates(base - step, x.delta)).coordinates()
            jacobian[:, k] = (plus - minus) / (2 * h)
        pulled_back = QuadricFrameService.omega_at(image, check=False).values @ jacobian
        return float(np.max(np.abs(pulled_back - QuadricFrameService.omega_at(x, check=False).values)))

    # Harness
    @staticmethod
    def random_point(rng: np.random.Generator, delta: int) -> P2Point:
        delta = check_delta(delta)
        x = rng.uniform(-0.5, 0.5, 16)
        x[6] = rng.uniform(1.0, 1.5)
        x[7] = rng.uniform(-0.4, 0.4)
        x[12:14] = rng.uniform(-1.0, 1.0, 2)
        return P2Point.from_coordinates(x, delta)

    @staticmethod
    def flatness_scan(
        delta: int,
        points: int = DEFAULT_FLATNESS_POINTS,
        step: float = DEFAULT_FD_STEP,
        seed: int = DEFAULT_SEED,
        perturb_psi: float = 0.0,
    ) -> FlatnessReport:
        rng = np.random.default_rng(seed)
        residuals, dets = [], []
        for _ in range(points):
            x = QuadricFrameService.random_point(rng, delta)
            dets.append(abs(QuadricFrameService.omega_at(x, perturb_psi).det))
            residuals.append(QuadricFrameService.maurer_cartan_residual(x, step, perturb_psi))
        report = FlatnessReport(
            delta=delta,
            points=points,
            step=step,
            seed=seed,
            max_residual=max(residuals, default=0.0),
            residuals=residuals,
            min_abs_det=min(dets, default=0.0),
        )
        logger.info("Flatness scan delta=%+d: max residual %.3e over %d points", delta, report.max_residual, points)
        return report


def _nearest_branch(angle: float, target: float) -> float:
    return angle + 2 * np.pi * np.round((target - angle) / (2 * np.pi))
