import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from app.models.algebra import ELLIPTIC, HYPERBOLIC
from app.models.hermitian import Label
from app.models.normalform import InitialData, NormalFormReport, NormalizationResult, Roles, Violation
from app.models.series import (
    JET_RING,
    JET_WEIGHTS,
    SERIES_RING,
    SERIES_WEIGHTS,
    HoloMapJet,
    ModelSeries,
    Monomial,
    SurfaceSeries,
    to_sympy,
)
from app.services.hermitian_service import HermitianService
from app.services.series_service import HALF, I_, ONE, ZERO, SeriesService, conj_poly
from app.utils import scalars
from app.utils.errors import (
    BoundMismatch,
    InvalidParams,
    LinearSolveSingular,
    MalformedSeries,
    NotInNormalForm,
    WrongLeviForm,
)

logger = logging.getLogger(__name__)

EXPECTED_LABEL = {HYPERBOLIC: Label.HYPERBOLIC, ELLIPTIC: Label.ELLIPTIC}

# Own factor of each model component.
# Split coordinates: component j lives on (z_j, conj z_j, u_j).
# Elliptic coordinates: the single component lives on (zeta1, conj zeta2, U).
MODEL_ROLES = {
    HYPERBOLIC: (Roles(0, 0, 0), Roles(1, 1, 1)),
    ELLIPTIC: (Roles(0, 1, 0),),
}

# (k, l) bidegrees of the matrix part allowed besides (4, 2) and (2, 4) start at k + l = 7
_TRACE_FREE_EXCLUDED = {(2, 2), (2, 3), (3, 2), (3, 3)}


def monomials_of_weight(target: int, weights: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    def walk(slot: int, left: int):
        if slot == len(weights) - 1:
            if left % weights[slot] == 0:
                yield (left // weights[slot],)
            return
        for e in range(left // weights[slot] + 1):
            for rest in walk(slot + 1, left - e * weights[slot]):
                yield (e, *rest)

    yield from walk(0, target)


def allowed_in_matrix_part(k: int, l: int) -> bool:
    return min(k, l) >= 2 and (k, l) not in _TRACE_FREE_EXCLUDED


def _degrees(m: Sequence[int], roles: Roles):
    K, L, M = m[0:2], m[2:4], m[4:6]
    return (K[roles.z], K[1 - roles.z], L[roles.zb], L[1 - roles.zb], M[roles.u], M[1 - roles.u])


def is_levi_monomial(m: Sequence[int], roles: Roles) -> bool:
    return _degrees(m, roles) == (1, 0, 1, 0, 0, 0)


def is_nonmatrix(m: Sequence[int], roles: Roles) -> bool:
    _, kx, _, lx, _, mx = _degrees(m, roles)
    return kx + lx + mx > 0


def condition_for(m: Sequence[int], roles: Roles) -> Optional[str]:
    """Condition id that forbids the monomial in a normal form, or None if allowed."""
    if is_levi_monomial(m, roles):
        return "levi"
    ko, kx, lo, lx, mo, mx = _degrees(m, roles)
    k, l = ko + kx, lo + lx
    if kx + lx + mx == 0:
        return None if allowed_in_matrix_part(ko, lo) else "matrix-part"
    if l == 0:
        return "nonmatrix-k0"
    if k == 0:
        return "nonmatrix-0k"
    if k == 1 and l == 1:
        return "nonmatrix-11"
    if k >= 2 and (lo, lx) == (1, 0):
        return "nonmatrix-k1"
    if l >= 2 and (ko, kx) == (1, 0):
        return "nonmatrix-1k"
    if (ko, kx, lo, lx) == (1, 1, 0, 1):
        return "nonmatrix-21"
    if (ko, kx, lo, lx) == (0, 1, 1, 1):
        return "nonmatrix-12"
    if (ko, kx, lo, lx) == (1, 1, 1, 1):
        return "nonmatrix-22"
    return None


def _target(m: Sequence[int], roles: Roles):
    return ONE if is_levi_monomial(m, roles) else ZERO


def _model_w(delta: int) -> List[PolyElement]:
    """w on the model quadric, in model slots."""
    z1, z2, zb1, zb2, u1, u2 = SERIES_RING.gens
    if delta == HYPERBOLIC:
        return [u1 + (z1 * zb1).mul_ground(I_), u2 + (z2 * zb2).mul_ground(I_)]
    return [u1 + (z1 * zb2).mul_ground(I_), u2 + (zb1 * z2).mul_ground(I_)]


class NormalFormService:
    """Normal-form predicates, the kappa invariant and the order-by-order normalizer."""

    # Predicates
    @staticmethod
    def _require_levi_class(S: SurfaceSeries) -> None:
        SeriesService.validate(S, require_levi=False)
        levi = HermitianService.levi_form_at_origin(S)
        label = HermitianService.classify(levi).label
        if label != EXPECTED_LABEL[S.delta]:
            raise WrongLeviForm(f"Levi form at the origin is {label.value}, expected {EXPECTED_LABEL[S.delta].value}")

    @staticmethod
    def scan(model: ModelSeries, weights: Optional[Sequence[int]] = None) -> Tuple[List[Violation], Optional[int]]:
        """Violations (optionally restricted to some weights) and the lowest non-matrix weight."""
        roles = MODEL_ROLES[model.delta]
        violations: List[Violation] = []
        nu: Optional[int] = None
        wanted = set(weights) if weights is not None else None
        for index, (p, r) in enumerate(zip(model.components, roles)):
            monomials = set(p.keys())
            levi = next(m for m in monomials_of_weight(2, SERIES_WEIGHTS) if is_levi_monomial(m, r))
            monomials.add(levi)
            for m in sorted(monomials):
                w = SurfaceSeries.weight_of(m)
                c = p.get(m, ZERO)
                if c and is_nonmatrix(m, r) and (nu is None or w < nu):
                    nu = w
                if wanted is not None and w not in wanted:
                    continue
                condition = condition_for(m, r)
                if condition is None or c == _target(m, r):
                    continue
                violations.append(Violation(condition, index + 1, Monomial.from_exponents(m), to_sympy(c)))
        return violations, nu

    @staticmethod
    def _report(S: SurfaceSeries) -> NormalFormReport:
        NormalFormService._require_levi_class(S)
        model = SeriesService.to_model(S)
        violations, nu = NormalFormService.scan(model)
        return NormalFormReport(
            satisfied=not violations,
            violations=violations,
            matrix_flag=nu is None,
            kappa=sympy.Integer(0) if nu is None else sympy.Rational(1, nu),
            nu=nu,
            coordinates=model.kind,
        )

    @staticmethod
    def check_hyperbolic(S: SurfaceSeries) -> NormalFormReport:
        if S.delta != HYPERBOLIC:
            raise WrongLeviForm("check_hyperbolic needs a delta = +1 series")
        return NormalFormService._report(S)

    @staticmethod
    def check_elliptic(S: SurfaceSeries) -> NormalFormReport:
        if S.delta != ELLIPTIC:
            raise WrongLeviForm("check_elliptic needs a delta = -1 series")
        return NormalFormService._report(S)

    @staticmethod
    def check(S: SurfaceSeries) -> NormalFormReport:
        if S.delta == HYPERBOLIC:
            return NormalFormService.check_hyperbolic(S)
        return NormalFormService.check_elliptic(S)

    @staticmethod
    def kappa(S: SurfaceSeries) -> sympy.Rational:
        report = NormalFormService.check(S)
        if not report.satisfied:
            raise NotInNormalForm(f"{len(report.violations)} normal-form condition(s) violated")
        return report.kappa

    @staticmethod
    def is_matrix_surface(S: SurfaceSeries) -> bool:
        model = SeriesService.to_model(S)
        roles = MODEL_ROLES[S.delta]
        return all(not is_nonmatrix(m, r) for p, r in zip(model.components, roles) for m in p.keys())

    # Normalizer
    @staticmethod
    def _unknowns(delta: int, weight: int) -> List[Tuple[int, tuple, object]]:
        """(jet slot, jet monomial, unit) triples parameterizing the weight-``weight`` correction."""
        unknowns = []
        for slot in range(4):
            target = weight - 1 if slot < 2 else weight
            for m in monomials_of_weight(target, JET_WEIGHTS):
                if weight == 2 and (slot < 2 or sum(m[2:]) > 0):
                    continue
                own_w = tuple(1 if k == 2 + slot else 0 for k in range(4))
                if weight == 3 and slot < 2 and m == own_w:
                    continue
                for unit in (ONE, I_):
                    if weight == 4 and slot >= 2:
                        own_w2 = tuple(2 if k == slot else 0 for k in range(4))
                        if m == own_w2:
                            if delta == HYPERBOLIC and unit == ONE:
                                continue
                            if delta == ELLIPTIC and slot == 2:
                                continue
                    unknowns.append((slot, m, unit))
        return unknowns

    @staticmethod
    def _linearized(delta: int, slot: int, m: tuple, unit) -> List[PolyElement]:
        """Change of the model series, to first order, under the correction unit * monomial in ``slot``."""
        z1, z2, zb1, zb2, _, _ = SERIES_RING.gens
        w = _model_w(delta)
        value = SERIES_RING.one.mul_ground(unit)
        for base, e in zip((z1, z2, w[0], w[1]), m):
            for _ in range(e):
                value = value * base
        zb = (zb1, zb2)
        if delta == HYPERBOLIC:
            out = [SERIES_RING.zero, SERIES_RING.zero]
            j = slot % 2
            if slot < 2:
                t = zb[j] * value
                out[j] = -(t + conj_poly(t))
            else:
                out[j] = (value - conj_poly(value)).mul_ground(HALF / I_)
            return out
        if slot == 0:
            return [-(value * zb2)]
        if slot == 1:
            return [-(z1 * conj_poly(value, swap_u=True))]
        if slot == 2:
            return [value.mul_ground(HALF / I_)]
        return [-conj_poly(value, swap_u=True).mul_ground(HALF / I_)]

    @staticmethod
    def _solve_weight(model: ModelSeries, weight: int) -> Dict[Tuple[int, tuple], object]:
        """Coefficients of the weight-``weight`` correction clearing every forbidden monomial."""
        delta = model.delta
        roles = MODEL_ROLES[delta]
        unknowns = NormalFormService._unknowns(delta, weight)
        images = [NormalFormService._linearized(delta, *u) for u in unknowns]
        n = len(unknowns)
        rows: Dict[int, Dict[int, object]] = {}
        count = 0
        for index, (p, r) in enumerate(zip(model.components, roles)):
            for m in monomials_of_weight(weight, SERIES_WEIGHTS):
                if condition_for(m, r) is None:
                    continue
                entries = {}
                for col, image in enumerate(images):
                    c = image[index].get(m, ZERO)
                    if c:
                        entries[col] = c
                rhs = _target(m, r) - p.get(m, ZERO)
                for part in ("x", "y"):
                    row = {col: getattr(c, part) for col, c in entries.items() if getattr(c, part)}
                    value = getattr(rhs, part)
                    if value:
                        row[n] = value
                    if row:
                        rows[count] = {col: QQ.convert(v) for col, v in row.items()}
                        count += 1
        if not rows:
            return {}
        system = DomainMatrix.from_dod(rows, (count, n + 1), QQ)
        reduced, pivots = system.rref()
        if n in pivots:
            logger.error("Normalizing system inconsistent at weight %d", weight)
            raise LinearSolveSingular(weight)
        entries = reduced.to_dod()
        solution: Dict[Tuple[int, tuple], object] = {}
        for row, col in enumerate(pivots):
            value = entries.get(row, {}).get(n, QQ.zero)
            if not value:
                continue
            slot, m, unit = unknowns[col]
            key = (slot, m)
            solution[key] = solution.get(key, ZERO) + unit * QQ_I.convert_from(value, QQ)
        logger.debug("Weight %d: %d unknowns, %d equations, %d nonzero corrections", weight, n, count, len(solution))
        return solution

    @staticmethod
    def _model_correction(solution: Dict[Tuple[int, tuple], object], bound: int) -> HoloMapJet:
        components = list(JET_RING.gens)
        for (slot, m), c in solution.items():
            components[slot] = components[slot] + JET_RING({m: c})
        return HoloMapJet(tuple(components), bound)

    @staticmethod
    def _canonicalize_levi(S: SurfaceSeries) -> Tuple[SurfaceSeries, HoloMapJet]:
        levi = HermitianService.levi_form_at_origin(S)
        result = HermitianService.classify(levi)
        if result.label != EXPECTED_LABEL[S.delta]:
            raise WrongLeviForm(f"Levi form at the origin is {result.label.value}, expected {EXPECTED_LABEL[S.delta].value}")
        entries = list(result.A.inv()) + list(result.B)
        if not all(scalars.is_gaussian_rational(scalars.rationalize(x)) for x in entries):
            raise WrongLeviForm("The congruence to the canonical Levi form is not Gaussian rational")
        A_inv = result.A.inv().applyfunc(scalars.rationalize)
        jet = SeriesService.linear_jet(A_inv.tolist(), result.B.tolist(), S.bound)
        if result.A == sympy.eye(2) and result.B == sympy.eye(2):
            return S, jet
        logger.info("Applied congruence to the canonical Levi form")
        return SeriesService.regraph(S, jet), jet

    @staticmethod
    def normalize(S: SurfaceSeries, init: Optional[InitialData] = None, bound: Optional[int] = None) -> NormalizationResult:
        """Normal form of S with prescribed initial data, and the jet mapping S onto it."""
        if bound is not None and bound != S.bound:
            if bound > S.bound:
                raise BoundMismatch(f"Series is exact only up to weight {S.bound}, asked for {bound}")
            S = SeriesService.truncate(S, bound)
        init = init or InitialData.identity(S.delta)
        if init.delta != S.delta:
            raise InvalidParams("Initial data and series have different delta")
        if not init.C.is_invertible() or not init.R.is_real():
            raise InvalidParams("Initial data needs invertible C and real R")
        SeriesService.validate(S, require_levi=False)

        current, total = NormalFormService._canonicalize_levi(S)
        try:
            isotropy = SeriesService.isotropy_jet(init.C, init.A, init.R, S.bound)
        except MalformedSeries as e:
            raise InvalidParams(f"Initial data must be Gaussian rational: {e.detail}") from e
        if not isotropy.equals(SeriesService.identity_jet(S.bound)):
            current = SeriesService.regraph(current, isotropy)
            total = SeriesService.compose_jets(isotropy, total)

        forward, backward = SeriesService.model_jets(S.delta, S.bound)
        for weight in range(2, S.bound + 1):
            model = SeriesService.to_model(current)
            solution = NormalFormService._solve_weight(model, weight)
            if not solution:
                continue
            correction = NormalFormService._model_correction(solution, S.bound)
            step = SeriesService.compose_jets(backward, SeriesService.compose_jets(correction, forward))
            current = SeriesService.regraph(current, step)
            total = SeriesService.compose_jets(step, total)
            remaining, _ = NormalFormService.scan(SeriesService.to_model(current), weights=[weight])
            if remaining:
                raise LinearSolveSingular(weight, f"Correction left {len(remaining)} violation(s) at weight {weight}")
            logger.info("Normalized series at weight %d", weight)

        report = NormalFormService._report(current)
        if not report.satisfied:
            raise LinearSolveSingular(S.bound, "Normalized series fails the normal-form check")
        return NormalizationResult(series=current, jet=total, report=report)
