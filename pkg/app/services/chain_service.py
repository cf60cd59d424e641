import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from sympy.polys.rings import PolyElement

from app.config.tolerance_config import NEWTON_MAX_ITER, NEWTON_TOL, NUMERIC_ZERO_TOL, ODE_ATOL, ODE_RTOL
from app.models.algebra import AElem, HYPERBOLIC
from app.models.chains import ChainSample, ChainSpec, DistributionPath, NormalCoordinateChain
from app.models.frame import P2Point
from app.models.group import QuadricPoint
from app.models.series import JET_RING, JET_WEIGHTS, HoloMapJet, SurfaceSeries, conj_coeff
from app.services.algebra_service import AlgebraService
from app.services.group_service import GroupService
from app.services.normalform_service import NormalFormService
from app.services.series_service import HALF, I_, SeriesService, substitute, truncate_poly
from app.utils.errors import NoRealBranch, NotMatrixNormalForm, SingularG, StepFailure

logger = logging.getLogger(__name__)


def _size(x: AElem) -> float:
    x = x.to_numeric()
    return max(abs(x.a), abs(x.b))


def _conj_coefficients(p: PolyElement) -> PolyElement:
    return p.ring.from_dict({m: conj_coeff(c) for m, c in p.items()})


def closed_form_v(k: AElem, U: AElem) -> Optional[AElem]:
    """Origin branch V = (E - sqrt(E - 4 k^2 U^2)) / (2k), when the radicand is in the positive cone."""
    k, U = k.to_numeric(), U.to_numeric()
    if not k.is_invertible():
        return None
    radicand = 1.0 - 4.0 * k * k * U * U
    if not AlgebraService.is_positive(radicand):
        return None
    return (1.0 - AlgebraService.sqrt_positive(radicand)) / (2.0 * k)


def solve_chain_v(k: AElem, U: AElem) -> AElem:
    """Newton iteration from V = 0 for k V^2 - V + k U^2 = 0."""
    k, U = k.to_numeric(), U.to_numeric()
    V = AElem(0.0, 0.0, k.delta)
    for _ in range(NEWTON_MAX_ITER):
        derivative = 2.0 * k * V - 1.0
        if not derivative.is_invertible():
            raise NoRealBranch(f"Newton derivative vanishes at U = {U}")
        step = (k * V * V - V + k * U * U) / derivative
        V = V - step
        if _size(step) < NEWTON_TOL * (1.0 + _size(V)):
            break
    else:
        raise NoRealBranch(f"Newton iteration did not converge at U = {U}")
    if not V.is_real():
        raise NoRealBranch(f"Origin branch is not real at U = {U}")
    return V.re()


class ChainService:
    """Chains on the quadric, the chain distribution, and chains of matrix normal forms."""

    @staticmethod
    def chain_on_quadric(spec: ChainSpec, u_grid: Sequence[AElem]) -> ChainSample:
        A = spec.A
        k = A * A.conj()
        points: List[Optional[QuadricPoint]] = []
        failures = {}
        for index, U in enumerate(u_grid):
            if k.is_zero():
                points.append(GroupService.quadric_point(A * 0, U))
                continue
            try:
                V = solve_chain_v(k, U)
            except NoRealBranch as e:
                logger.warning("Chain grid point %d skipped: %s", index, e.detail)
                points.append(None)
                failures[index] = e.detail
                continue
            W = U.to_numeric() + 1j * V
            points.append(QuadricPoint(A.to_numeric() * W, W, spec.delta))
        logger.info("Sampled chain with %d points (%d failures)", len(points), len(failures))
        return ChainSample(spec=spec, u_grid=list(u_grid), points=points, failures=failures)

    @staticmethod
    def chain_through_point(p: QuadricPoint, spec: ChainSpec, u_grid: Sequence[AElem]) -> ChainSample:
        """Image of the chain Z = A W under the translation taking the origin to p."""
        translation = GroupService.translation(p.Z, p.W)
        sample = ChainService.chain_on_quadric(spec, u_grid)
        moved = [None if q is None else GroupService.act_on_point(translation, q) for q in sample.points]
        return ChainSample(spec=spec, u_grid=sample.u_grid, points=moved, failures=sample.failures)

    @staticmethod
    def integrate_chain_distribution(start: P2Point, u_path: Sequence[AElem]) -> DistributionPath:
        """Follow the chain distribution from ``start`` through the U values of ``u_path``.

        C, D and S are held fixed; Z and T solve
        dZ = -K (E - m)^-1 dU / 2 and dT = i T^2 conj(T) D (E - m)^-1 dU / 2
        with K = conj(C) T sqrt(D) and m = i (conj(Z) K - Z conj(K)) / 2.
        """
        delta = start.delta
        C, D = start.C, start.D
        root = AlgebraService.sqrt_positive(D)
        conj_C = C.conj()

        def G_of(Z: AElem, T: AElem) -> AElem:
            return C - 1j * T * root * Z.conj()

        def rhs(_tau, y, dU):
            Z, T = AElem(y[0], y[1], delta), AElem(y[2], y[3], delta)
            K = conj_C * T * root
            m = 0.5j * (Z.conj() * K - Z * K.conj())
            factor = 1.0 - m
            if not factor.is_invertible():
                raise StepFailure("E - m became singular along the path")
            inverse = factor.inverse() * dU
            dZ = -0.5 * K * inverse
            dT = 0.5j * T * T * T.conj() * D * inverse
            return [dZ.a, dZ.b, dT.a, dT.b]

        G0 = G_of(start.Z, start.T)
        if not G0.is_invertible():
            raise SingularG("G = C - i T sqrt(D) conj(Z) is not invertible at the start")
        frames = [start]
        y = np.array([start.Z.a, start.Z.b, start.T.a, start.T.b], dtype=complex)
        U = start.U
        for target in u_path:
            target = target.to_numeric()
            dU = target - U
            sol = solve_ivp(rhs, (0.0, 1.0), y, method="RK45", rtol=ODE_RTOL, atol=ODE_ATOL, args=(dU,))
            if not sol.success:
                logger.error("Chain distribution step failed: %s", sol.message)
                raise StepFailure(sol.message)
            y = sol.y[:, -1]
            U = target
            frames.append(
                P2Point(
                    Z=AElem(y[0], y[1], delta), U=U, D=D, T=AElem(y[2], y[3], delta),
                    s=start.s, t=start.t, S=start.S, delta=delta,
                )
            )

        Q0 = start.T * D / G0
        N0 = G0 * G0.conj()
        slope = -0.5 * start.T * root / G0
        offset = start.Z - slope * start.W
        drift = {"TDG^-1": 0.0, "G conj(G)": 0.0}
        slope_residual = 0.0
        projection = []
        for x in frames:
            G = G_of(x.Z, x.T)
            if not G.is_invertible():
                raise SingularG("G became singular along the path")
            drift["TDG^-1"] = max(drift["TDG^-1"], _size(x.T * D / G - Q0))
            drift["G conj(G)"] = max(drift["G conj(G)"], _size(G * G.conj() - N0))
            slope_residual = max(slope_residual, _size(x.Z - slope * x.W - offset))
            projection.append(QuadricPoint(x.Z, x.W, delta))
        logger.info("Integrated chain distribution over %d steps, drift %s", len(u_path), drift)
        return DistributionPath(
            start=start,
            u_path=list(u_path),
            frames=frames,
            projection=projection,
            slope=slope,
            offset=offset,
            conserved_drift=drift,
            slope_residual=slope_residual,
        )

    # Normal coordinates
    @staticmethod
    def chain_in_normal_coordinates(S: SurfaceSeries, jet: Optional[HoloMapJet] = None) -> NormalCoordinateChain:
        """The germ {z = 0, v = 0} of a matrix normal form, optionally pulled back through ``jet``."""
        report = NormalFormService.check(S)
        if not (report.satisfied and report.matrix_flag):
            raise NotMatrixNormalForm("Series is not a matrix normal form")
        _, _, w1, w2 = JET_RING.gens
        zero = JET_RING.zero
        germ = (zero, zero, w1, w2)
        original = None
        if jet is not None:
            inverse = SeriesService.invert_jet(jet)
            original = tuple(substitute(p, germ, S.bound, JET_WEIGHTS) for p in inverse.components)
        factors = []
        if S.delta == HYPERBOLIC:
            forward, _ = SeriesService.model_jets(S.delta, S.bound)
            model = [substitute(p, germ, S.bound, JET_WEIGHTS) for p in forward.components]
            factors = [(model[0], model[2]), (model[1], model[3])]
        return NormalCoordinateChain(delta=S.delta, bound=S.bound, germ=germ, original=original, factors=factors)

    @staticmethod
    def on_surface_residual(S: SurfaceSeries, chain: Sequence[PolyElement]) -> Tuple[PolyElement, PolyElement]:
        """Im w - P(z, conj z, Re w) along a chain parameterized by real (u1, u2), truncated at S.bound."""
        z1, z2, w1, w2 = chain
        conj_w = [_conj_coefficients(w) for w in (w1, w2)]
        real_w = [(w + cw).mul_ground(HALF) for w, cw in zip((w1, w2), conj_w)]
        imag_w = [(w - cw).mul_ground(HALF / I_) for w, cw in zip((w1, w2), conj_w)]
        values = [z1, z2, _conj_coefficients(z1), _conj_coefficients(z2), real_w[0], real_w[1]]
        residual = []
        for im, P in zip(imag_w, S.components):
            residual.append(truncate_poly(im - substitute(P, values, S.bound, JET_WEIGHTS), S.bound, JET_WEIGHTS))
        return residual[0], residual[1]
