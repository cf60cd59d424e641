"""Weighted truncated power series in (z, conj(z), u) and holomorphic jets in (z, w).

Slots of the surface ring are (z1, z2, zb1, zb2, u1, u2) with weights
(1, 1, 1, 1, 2, 2); slots of the jet ring are (z1, z2, w1, w2) with weights
(1, 1, 2, 2). Coefficients are Gaussian rationals.
"""
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyElement, ring

from app.models.algebra import check_delta
from app.utils.errors import MalformedSeries

SERIES_RING, *_SERIES_GENS = ring("z1,z2,zb1,zb2,u1,u2", QQ_I)
SERIES_WEIGHTS = (1, 1, 1, 1, 2, 2)

JET_RING, *_JET_GENS = ring("z1,z2,w1,w2", QQ_I)
JET_WEIGHTS = (1, 1, 2, 2)

COORDINATE_SYSTEMS = ("matrix", "split", "elliptic")

Exponents = Tuple[int, ...]


def weight(monom: Exponents, weights: Sequence[int] = SERIES_WEIGHTS) -> int:
    return sum(e * w for e, w in zip(monom, weights))


def levi_monomial(i: int, j: int) -> Exponents:
    """Exponent tuple of z_i conj(z_j)."""
    exps = [0] * 6
    exps[i] += 1
    exps[2 + j] += 1
    return tuple(exps)


def gaussian(value) -> "QQ_I.dtype":
    """Gaussian-rational coefficient from a sympy value or number."""
    return QQ_I.from_sympy(sympy.expand(sympy.sympify(value, rational=True)))


def to_sympy(c) -> sympy.Expr:
    return QQ_I.to_sympy(c)


def conj_coeff(c):
    return c.new(c.x, -c.y)


class Monomial(NamedTuple):
    z: Tuple[int, int]
    zb: Tuple[int, int]
    u: Tuple[int, int]

    @property
    def exponents(self) -> Exponents:
        return (*self.z, *self.zb, *self.u)

    @property
    def weight(self) -> int:
        return weight(self.exponents)

    @classmethod
    def from_exponents(cls, exps: Exponents) -> "Monomial":
        return cls(tuple(exps[0:2]), tuple(exps[2:4]), tuple(exps[4:6]))

    def conjugate(self) -> "Monomial":
        return Monomial(self.zb, self.z, self.u)


def _check_bound(components: Sequence[PolyElement], bound: int, weights: Sequence[int], what: str) -> None:
    if bound < 2:
        raise MalformedSeries(f"{what} weight bound must be at least 2, got {bound}")
    for p in components:
        for monom in p.keys():
            if weight(monom, weights) > bound:
                raise MalformedSeries(f"{what} stores a term of weight {weight(monom, weights)} above bound {bound}")


@dataclass(frozen=True, eq=False)
class SurfaceSeries:
    """Defining series v = (P1, P2)(z, conj(z), u) of a surface graph in C^4."""

    delta: int
    components: Tuple[PolyElement, PolyElement]
    bound: int

    ring = SERIES_RING
    weights = SERIES_WEIGHTS

    def __post_init__(self):
        check_delta(self.delta)
        comps = tuple(SERIES_RING(p) if not isinstance(p, PolyElement) else p for p in self.components)
        if len(comps) != 2:
            raise MalformedSeries("A surface series has exactly two components")
        object.__setattr__(self, "components", comps)
        _check_bound(comps, self.bound, SERIES_WEIGHTS, "Surface series")

    @staticmethod
    def weight_of(monom: Exponents) -> int:
        return weight(monom, SERIES_WEIGHTS)

    @staticmethod
    def to_sympy(c) -> sympy.Expr:
        return to_sympy(c)

    def coefficient(self, monomial: Monomial) -> Tuple[sympy.Expr, sympy.Expr]:
        m = monomial.exponents
        return tuple(to_sympy(p.get(m, QQ_I.zero)) for p in self.components)

    def monomials(self) -> List[Exponents]:
        return sorted({m for p in self.components for m in p.keys()})

    def terms(self) -> List[Tuple[Monomial, Tuple]]:
        return [(Monomial.from_exponents(m), tuple(p.get(m, QQ_I.zero) for p in self.components)) for m in self.monomials()]

    def equals(self, other: "SurfaceSeries") -> bool:
        return (
            self.delta == other.delta
            and self.bound == other.bound
            and all(p == q for p, q in zip(self.components, other.components))
        )

    def __eq__(self, other):
        if not isinstance(other, SurfaceSeries):
            return NotImplemented
        return self.equals(other)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ModelSeries:
    """A surface series written in model coordinates.

    ``split``: two real components (one per factor) in slots
    (z1*, z2*, conj z1*, conj z2*, u1*, u2*).
    ``elliptic``: one complex component in slots
    (zeta1, zeta2, conj zeta1, conj zeta2, U, conj U).
    """

    kind: str
    components: Tuple[PolyElement, ...]
    bound: int
    delta: int

    def __post_init__(self):
        if self.kind not in ("split", "elliptic"):
            raise MalformedSeries(f"Unknown model coordinates {self.kind!r}")
        expected = 2 if self.kind == "split" else 1
        if len(self.components) != expected:
            raise MalformedSeries(f"{self.kind} model series has {expected} component(s)")
        object.__setattr__(self, "components", tuple(self.components))
        _check_bound(self.components, self.bound, SERIES_WEIGHTS, "Model series")

    def equals(self, other: "ModelSeries") -> bool:
        return self.kind == other.kind and self.bound == other.bound and all(
            p == q for p, q in zip(self.components, other.components)
        )


@dataclass(frozen=True, eq=False)
class HoloMapJet:
    """Truncated holomorphic map (z, w) -> (z*, w*); components (z1*, z2*, w1*, w2*)."""

    components: Tuple[PolyElement, PolyElement, PolyElement, PolyElement]
    bound: int

    ring = JET_RING
    weights = JET_WEIGHTS

    def __post_init__(self):
        comps = tuple(JET_RING(p) if not isinstance(p, PolyElement) else p for p in self.components)
        if len(comps) != 4:
            raise MalformedSeries("A holomorphic jet has four components")
        object.__setattr__(self, "components", comps)

    def linear_part(self) -> List[List]:
        """4x4 matrix of first-order coefficients, rows = components."""
        gens = JET_RING.gens
        return [[p.coeff(g) for g in gens] for p in self.components]

    def constant_part(self) -> List:
        return [p.get((0, 0, 0, 0), QQ_I.zero) for p in self.components]

    def equals(self, other: "HoloMapJet") -> bool:
        return all(p == q for p, q in zip(self.components, other.components))

    def __eq__(self, other):
        if not isinstance(other, HoloMapJet):
            return NotImplemented
        return self.equals(other)

    __hash__ = None


def coefficient_table(p: PolyElement) -> Dict[Exponents, sympy.Expr]:
    return {m: to_sympy(c) for m, c in sorted(p.items())}
