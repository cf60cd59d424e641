import logging
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from app.models.algebra import AElem, ELLIPTIC, HYPERBOLIC, check_delta
from app.models.group import QuadricPoint
from app.models.series import (
    JET_RING,
    JET_WEIGHTS,
    SERIES_RING,
    SERIES_WEIGHTS,
    HoloMapJet,
    ModelSeries,
    SurfaceSeries,
    conj_coeff,
    gaussian,
    levi_monomial,
    weight,
)
from app.utils.errors import (
    BoundMismatch,
    DeltaMismatch,
    ImplicitSolveFailure,
    MalformedSeries,
    NonInvertibleLinearPart,
    NotOnQuadric,
)

logger = logging.getLogger(__name__)

I_ = QQ_I.from_sympy(sympy.I)
HALF = QQ_I.from_sympy(sympy.Rational(1, 2))
ZERO = QQ_I.zero
ONE = QQ_I.one


# Polynomial plumbing
def weights_for(ring) -> Tuple[int, ...]:
    return JET_WEIGHTS if ring == JET_RING else SERIES_WEIGHTS


def total_degree(p: PolyElement) -> int:
    return max((sum(m) for m in p.keys()), default=0)


def truncate_poly(p: PolyElement, bound: int, weights: Optional[Sequence[int]] = None) -> PolyElement:
    weights = weights or weights_for(p.ring)
    return p.ring.from_dict({m: c for m, c in p.items() if weight(m, weights) <= bound})


def mul_truncated(p: PolyElement, q: PolyElement, bound: Optional[int] = None, weights=None) -> PolyElement:
    """Product of p and q keeping terms of weight <= bound (exact when bound is None)."""
    if bound is None:
        return p * q
    weights = weights or weights_for(p.ring)
    right = sorted(((weight(m, weights), m, c) for m, c in q.items()), key=lambda t: t[0])
    out: Dict[tuple, object] = {}
    zero = p.ring.domain.zero
    for m1, c1 in p.items():
        room = bound - weight(m1, weights)
        if room < 0:
            continue
        for w2, m2, c2 in right:
            if w2 > room:
                break
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, zero) + c1 * c2
    return p.ring.from_dict(out)


def _too_heavy(monom: tuple, lowest: Sequence[Optional[int]], bound: int) -> bool:
    """True when every term of the substituted monomial lies above bound (or vanishes)."""
    total = 0
    for e, w in zip(monom, lowest):
        if e == 0:
            continue
        if w is None:
            return True
        total += e * w
    return total > bound


def substitute(p: PolyElement, values: Sequence[PolyElement], bound: Optional[int] = None, weights=None) -> PolyElement:
    """p(values[0], values[1], ...) truncated at ``bound`` in the target ring."""
    target = values[0].ring
    weights = weights or weights_for(target)
    lowest = [min((weight(m, weights) for m in v.keys()), default=None) for v in values]
    powers: List[List[PolyElement]] = [[target.one] for _ in values]

    def power(i: int, e: int) -> PolyElement:
        cache = powers[i]
        while len(cache) <= e:
            cache.append(mul_truncated(cache[-1], values[i], bound, weights))
        return cache[e]

    prefix: Dict[tuple, PolyElement] = {(): target.one}
    result = target.zero
    for monom, coeff in sorted(p.items()):
        if bound is not None and _too_heavy(monom, lowest, bound):
            continue
        key: tuple = ()
        term = target.one
        for i, e in enumerate(monom):
            key = key + (e,)
            cached = prefix.get(key)
            if cached is None:
                cached = term if e == 0 else mul_truncated(term, power(i, e), bound, weights)
                prefix[key] = cached
            term = cached
        result += term.mul_ground(coeff)
    return result


def conj_poly(p: PolyElement, swap_u: bool = False) -> PolyElement:
    """Complex conjugate of a series in (z, conj z, u); swap_u for the (U, conj U) slots."""
    out = {}
    for m, c in p.items():
        u = (m[5], m[4]) if swap_u else (m[4], m[5])
        out[(m[2], m[3], m[0], m[1], *u)] = conj_coeff(c)
    return p.ring.from_dict(out)


def is_real_poly(p: PolyElement) -> bool:
    return conj_poly(p) == p


def _unit(n: int, j: int) -> tuple:
    return tuple(1 if k == j else 0 for k in range(n))


def _apply_matrix(rows: Sequence[Sequence], vector: Sequence[PolyElement]) -> List[PolyElement]:
    out = []
    for row in rows:
        acc = vector[0].ring.zero
        for c, v in zip(row, vector):
            if c:
                acc += v.mul_ground(c)
        out.append(acc)
    return out


def invert_map(components: Sequence[PolyElement], bound: int) -> List[PolyElement]:
    """Formal inverse x(y) of y = components(x), in the same ring.

    Affine maps are inverted exactly. Maps without constant term whose
    k-th component has no term of weight below that of the k-th slot are
    inverted order by order up to ``bound``.
    """
    ring = components[0].ring
    weights = weights_for(ring)
    n = ring.ngens
    origin = (0,) * n
    constant = [p.get(origin, ZERO) for p in components]
    linear = [[p.get(_unit(n, j), ZERO) for j in range(n)] for p in components]
    L = DomainMatrix(linear, (n, n), QQ_I)
    if L.det() == ZERO:
        raise NonInvertibleLinearPart("Linear part of the map is singular")
    inverse = L.inv().to_list()
    nonlinear = []
    for k, p in enumerate(components):
        rest = dict(p)
        rest.pop(origin, None)
        for j in range(n):
            rest.pop(_unit(n, j), None)
        nonlinear.append(ring.from_dict(rest))
    gens = ring.gens
    shifted = [gens[k] - constant[k] for k in range(n)]
    x = _apply_matrix(inverse, shifted)
    if all(not q for q in nonlinear):
        return x
    if any(constant):
        raise ImplicitSolveFailure("Map has both a constant term and a nonlinear part")
    for k, p in enumerate(components):
        if any(weight(m, weights) < weights[k] for m in p.keys()):
            raise ImplicitSolveFailure(f"Component {k} lowers the weight filtration")
    x = [truncate_poly(q, bound, weights) for q in x]
    for _ in range(bound + 2):
        residual = [gens[k] - substitute(nonlinear[k], x, bound, weights) for k in range(n)]
        updated = _apply_matrix(inverse, residual)
        if updated == x:
            return x
        x = updated
    raise ImplicitSolveFailure(f"Order-by-order inversion did not settle within weight {bound}")


# A^delta-valued polynomials, pairs (a, b) standing for (a, delta b; b, a)
def _amul(x, y, delta: int, bound: Optional[int], weights) -> Tuple[PolyElement, PolyElement]:
    a = mul_truncated(x[0], y[0], bound, weights) + mul_truncated(x[1], y[1], bound, weights) * delta
    b = mul_truncated(x[0], y[1], bound, weights) + mul_truncated(x[1], y[0], bound, weights)
    return a, b


def _const(value: AElem, ring) -> Tuple[PolyElement, PolyElement]:
    try:
        return ring(gaussian(value.a)), ring(gaussian(value.b))
    except Exception as e:
        raise MalformedSeries(f"Coefficient {value} is not Gaussian rational") from e


def aelem_matrix(x: AElem) -> List[List]:
    """2x2 matrix of multiplication by x on (z1, z2)."""
    return [[x.a, x.delta * x.b], [x.b, x.a]]


class SeriesService:
    """Weighted truncated series of surface graphs and holomorphic jets acting on them."""

    # Validation and constructors
    @staticmethod
    def levi_part(delta: int) -> Tuple[PolyElement, PolyElement]:
        """The components of Z conj(Z)."""
        z1, z2, zb1, zb2, _, _ = SERIES_RING.gens
        delta = check_delta(delta)
        return z1 * zb1 + z2 * zb2 * delta, z1 * zb2 + z2 * zb1

    @staticmethod
    def quadric_series(delta: int, bound: int) -> SurfaceSeries:
        return SurfaceSeries(delta, SeriesService.levi_part(delta), bound)

    @staticmethod
    def validate(S: SurfaceSeries, require_levi: bool = True) -> None:
        """Reality, vanishing constant and linear part, and (optionally) Levi part equal to H^delta."""
        for k, p in enumerate(S.components):
            if not is_real_poly(p):
                raise MalformedSeries(f"Component {k + 1} is not real")
            if any(sum(m) <= 1 for m in p.keys()):
                raise MalformedSeries(f"Component {k + 1} has a constant or linear term")
        if not require_levi:
            return
        expected = SeriesService.levi_part(S.delta)
        for k, (p, q) in enumerate(zip(S.components, expected)):
            for i in range(2):
                for j in range(2):
                    m = levi_monomial(i, j)
                    if p.get(m, ZERO) != q.get(m, ZERO):
                        raise MalformedSeries(f"Component {k + 1} has Levi part different from H^delta")

    @staticmethod
    def _same_shape(S: SurfaceSeries, T: SurfaceSeries) -> None:
        if S.delta != T.delta:
            raise DeltaMismatch(f"delta {S.delta:+d} does not match delta {T.delta:+d}")
        if S.bound != T.bound:
            raise BoundMismatch(f"Weight bounds {S.bound} and {T.bound} differ")

    # Arithmetic
    @staticmethod
    def add(S: SurfaceSeries, T: SurfaceSeries) -> SurfaceSeries:
        SeriesService._same_shape(S, T)
        return SurfaceSeries(S.delta, tuple(p + q for p, q in zip(S.components, T.components)), S.bound)

    @staticmethod
    def sub(S: SurfaceSeries, T: SurfaceSeries) -> SurfaceSeries:
        SeriesService._same_shape(S, T)
        return SurfaceSeries(S.delta, tuple(p - q for p, q in zip(S.components, T.components)), S.bound)

    @staticmethod
    def scale(S: SurfaceSeries, c) -> SurfaceSeries:
        c = gaussian(c)
        return SurfaceSeries(S.delta, tuple(p.mul_ground(c) for p in S.components), S.bound)

    @staticmethod
    def mul(S: SurfaceSeries, T: SurfaceSeries) -> SurfaceSeries:
        """Product in A^delta, truncated at the common bound."""
        SeriesService._same_shape(S, T)
        product = _amul(S.components, T.components, S.delta, S.bound, SERIES_WEIGHTS)
        return SurfaceSeries(S.delta, product, S.bound)

    @staticmethod
    def truncate(S: SurfaceSeries, bound: int) -> SurfaceSeries:
        if bound > S.bound:
            raise BoundMismatch(f"Cannot raise the weight bound from {S.bound} to {bound}")
        return SurfaceSeries(S.delta, tuple(truncate_poly(p, bound) for p in S.components), bound)

    @staticmethod
    def conj_series(S: SurfaceSeries) -> SurfaceSeries:
        return SurfaceSeries(S.delta, tuple(conj_poly(p) for p in S.components), S.bound)

    # Jets
    @staticmethod
    def identity_jet(bound: int) -> HoloMapJet:
        return HoloMapJet(tuple(JET_RING.gens), bound)

    @staticmethod
    def linear_jet(A, B, bound: int) -> HoloMapJet:
        """z* = A z, w* = B w for 2x2 Gaussian-rational matrices."""
        z1, z2, w1, w2 = JET_RING.gens
        a = [[gaussian(A[i][j]) for j in range(2)] for i in range(2)]
        b = [[gaussian(B[i][j]) for j in range(2)] for i in range(2)]
        return HoloMapJet(
            (
                z1.mul_ground(a[0][0]) + z2.mul_ground(a[0][1]),
                z1.mul_ground(a[1][0]) + z2.mul_ground(a[1][1]),
                w1.mul_ground(b[0][0]) + w2.mul_ground(b[0][1]),
                w1.mul_ground(b[1][0]) + w2.mul_ground(b[1][1]),
            ),
            bound,
        )

    @staticmethod
    def linear_automorphism_jet(C: AElem, bound: int) -> HoloMapJet:
        """z* = C z, w* = C conj(C) w."""
        return SeriesService.linear_jet(aelem_matrix(C), aelem_matrix(C * C.conj()), bound)

    @staticmethod
    def isotropy_jet(C: AElem, A: AElem, R: AElem, bound: int) -> HoloMapJet:
        """Series of z* = C(z + A w)/d, w* = C conj(C) w / d with d = 1 - 2i conj(A) z - (R + i A conj(A)) w."""
        delta = C.delta
        z1, z2, w1, w2 = JET_RING.gens
        Z, W = (z1, z2), (w1, w2)
        weights = JET_WEIGHTS
        i = AElem(sympy.I, 0, delta)
        two_i_abar = _const(2 * i * A.conj(), JET_RING)
        r_term = _const(R + i * A * A.conj(), JET_RING)
        q = tuple(x + y for x, y in zip(_amul(two_i_abar, Z, delta, bound, weights), _amul(r_term, W, delta, bound, weights)))
        inverse_d = (JET_RING.one, JET_RING.zero)
        q_power = (JET_RING.one, JET_RING.zero)
        for _ in range(bound):
            q_power = _amul(q_power, q, delta, bound, weights)
            if not any(q_power):
                break
            inverse_d = (inverse_d[0] + q_power[0], inverse_d[1] + q_power[1])
        numerator_z = _amul(_const(C, JET_RING), tuple(x + y for x, y in zip(Z, _amul(_const(A, JET_RING), W, delta, bound, weights))), delta, bound, weights)
        numerator_w = _amul(_const(C * C.conj(), JET_RING), W, delta, bound, weights)
        z_star = _amul(numerator_z, inverse_d, delta, bound, weights)
        w_star = _amul(numerator_w, inverse_d, delta, bound, weights)
        return HoloMapJet((*z_star, *w_star), bound)

    @staticmethod
    def translation_jet(Z0: AElem, W0: AElem, bound: int) -> HoloMapJet:
        """The automorphism z* = z + Z0, w* = w + W0 + 2i conj(Z0) z of the quadric."""
        point = QuadricPoint(Z0, W0, Z0.delta)
        if not point.residual().is_zero():
            raise NotOnQuadric(f"({Z0}, {W0}) violates Im W = Z conj(Z)")
        delta = Z0.delta
        z1, z2, w1, w2 = JET_RING.gens
        shift_z = _const(Z0, JET_RING)
        shift_w = _const(W0, JET_RING)
        cross = _amul(_const(2 * AElem(sympy.I, 0, delta) * Z0.conj(), JET_RING), (z1, z2), delta, None, JET_WEIGHTS)
        return HoloMapJet(
            (z1 + shift_z[0], z2 + shift_z[1], w1 + shift_w[0] + cross[0], w2 + shift_w[1] + cross[1]),
            bound,
        )

    @staticmethod
    def compose_jets(g: HoloMapJet, f: HoloMapJet) -> HoloMapJet:
        """g after f."""
        bound = min(g.bound, f.bound)
        affine = all(total_degree(p) <= 1 for p in f.components) and all(total_degree(p) <= 1 for p in g.components)
        limit = None if affine else bound
        return HoloMapJet(tuple(substitute(p, f.components, limit, JET_WEIGHTS) for p in g.components), bound)

    @staticmethod
    def invert_jet(f: HoloMapJet) -> HoloMapJet:
        return HoloMapJet(tuple(invert_map(f.components, f.bound)), f.bound)

    # Re-graphing
    @staticmethod
    def regraph(S: SurfaceSeries, f: HoloMapJet) -> SurfaceSeries:
        """Defining series of the image of {v = P} under f, solved for v*."""
        bound = S.bound
        z1, z2, zb1, zb2, u1, u2 = SERIES_RING.gens
        P1, P2 = S.components
        affine = all(total_degree(p) <= 1 for p in f.components)
        has_constant = any(p.get((0, 0, 0, 0), ZERO) for p in f.components)
        if has_constant and not affine:
            raise ImplicitSolveFailure("Jet moves the origin and is not affine")
        limit = None if affine else bound
        point = [z1, z2, u1 + P1.mul_ground(I_), u2 + P2.mul_ground(I_)]
        image = [substitute(p, point, limit) for p in f.components]
        z_star, w_star = image[:2], image[2:]
        u_star = [(w + conj_poly(w)).mul_ground(HALF) for w in w_star]
        v_star = [(w - conj_poly(w)).mul_ground(HALF / I_) for w in w_star]
        phi = [z_star[0], z_star[1], conj_poly(z_star[0]), conj_poly(z_star[1]), u_star[0], u_star[1]]
        x = invert_map(phi, bound)
        exact = all(total_degree(p) <= 1 for p in x)
        components = [substitute(v, x, None if exact else bound) for v in v_star]
        components = [truncate_poly(p, bound) for p in components]
        for k, p in enumerate(components):
            if not is_real_poly(p):
                logger.error("Re-graphed component %d lost reality", k + 1)
                raise ImplicitSolveFailure(f"Re-graphed component {k + 1} is not real")
        logger.debug("Re-graphed series up to weight %d", bound)
        return SurfaceSeries(S.delta, tuple(components), bound)

    # Model coordinates
    @staticmethod
    def split_transform(S: SurfaceSeries) -> ModelSeries:
        """delta = +1: coordinates z1 + z2, z1 - z2 in which the quadric is two copies of v = |z|^2."""
        if S.delta != HYPERBOLIC:
            raise DeltaMismatch("split_transform needs delta = +1")
        y1, y2, yb1, yb2, s1, s2 = SERIES_RING.gens
        values = [
            (y1 + y2).mul_ground(HALF), (y1 - y2).mul_ground(HALF),
            (yb1 + yb2).mul_ground(HALF), (yb1 - yb2).mul_ground(HALF),
            (s1 + s2).mul_ground(HALF), (s1 - s2).mul_ground(HALF),
        ]
        P1, P2 = (substitute(p, values, S.bound) for p in S.components)
        return ModelSeries("split", (P1 + P2, P1 - P2), S.bound, S.delta)

    @staticmethod
    def unsplit_transform(M: ModelSeries) -> SurfaceSeries:
        if M.kind != "split":
            raise MalformedSeries(f"Expected split coordinates, got {M.kind}")
        z1, z2, zb1, zb2, u1, u2 = SERIES_RING.gens
        values = [z1 + z2, z1 - z2, zb1 + zb2, zb1 - zb2, u1 + u2, u1 - u2]
        Q1, Q2 = (substitute(p, values, M.bound) for p in M.components)
        return SurfaceSeries(HYPERBOLIC, ((Q1 + Q2).mul_ground(HALF), (Q1 - Q2).mul_ground(HALF)), M.bound)

    @staticmethod
    def elliptic_transform(S: SurfaceSeries) -> ModelSeries:
        """delta = -1: the complex series V1 + i V2 in (zeta, conj zeta, U, conj U)."""
        if S.delta != ELLIPTIC:
            raise DeltaMismatch("elliptic_transform needs delta = -1")
        t1, t2, tb1, tb2, s, sb = SERIES_RING.gens
        values = [
            (t1 + t2).mul_ground(HALF),
            (t1 - t2).mul_ground(HALF / I_),
            (tb1 + tb2).mul_ground(HALF),
            (tb1 - tb2).mul_ground(HALF * I_),
            (s + sb).mul_ground(HALF),
            (s - sb).mul_ground(HALF / I_),
        ]
        P1, P2 = (substitute(p, values, S.bound) for p in S.components)
        return ModelSeries("elliptic", (P1 + P2.mul_ground(I_),), S.bound, S.delta)

    @staticmethod
    def inverse_elliptic_transform(M: ModelSeries) -> SurfaceSeries:
        if M.kind != "elliptic":
            raise MalformedSeries(f"Expected elliptic coordinates, got {M.kind}")
        z1, z2, zb1, zb2, u1, u2 = SERIES_RING.gens
        (V,) = M.components
        V_bar = conj_poly(V, swap_u=True)
        P1 = (V + V_bar).mul_ground(HALF)
        P2 = (V - V_bar).mul_ground(HALF / I_)
        values = [
            z1 + z2.mul_ground(I_), z1 - z2.mul_ground(I_),
            zb1 - zb2.mul_ground(I_), zb1 + zb2.mul_ground(I_),
            u1 + u2.mul_ground(I_), u1 - u2.mul_ground(I_),
        ]
        return SurfaceSeries(ELLIPTIC, tuple(substitute(p, values, M.bound) for p in (P1, P2)), M.bound)

    @staticmethod
    def to_model(S: SurfaceSeries) -> ModelSeries:
        if S.delta == HYPERBOLIC:
            return SeriesService.split_transform(S)
        return SeriesService.elliptic_transform(S)

    @staticmethod
    def from_model(M: ModelSeries) -> SurfaceSeries:
        if M.kind == "split":
            return SeriesService.unsplit_transform(M)
        return SeriesService.inverse_elliptic_transform(M)

    @staticmethod
    def model_jets(delta: int, bound: int) -> Tuple[HoloMapJet, HoloMapJet]:
        """Holomorphic coordinate change T into model coordinates and its inverse."""
        z1, z2, w1, w2 = JET_RING.gens
        j = ONE if check_delta(delta) == HYPERBOLIC else I_
        forward = HoloMapJet((z1 + z2.mul_ground(j), z1 - z2.mul_ground(j), w1 + w2.mul_ground(j), w1 - w2.mul_ground(j)), bound)
        back = HALF / j
        backward = HoloMapJet(
            ((z1 + z2).mul_ground(HALF), (z1 - z2).mul_ground(back), (w1 + w2).mul_ground(HALF), (w1 - w2).mul_ground(back)),
            bound,
        )
        return forward, backward
