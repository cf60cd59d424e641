from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from app.config.settings import DEFAULT_WEIGHT_BOUND
from app.models.algebra import ELLIPTIC, HYPERBOLIC, check_delta
from app.models.series import JET_RING, SERIES_RING, HoloMapJet, ModelSeries, SurfaceSeries, gaussian, to_sympy
from app.services.series_service import SeriesService
from app.utils import scalars
from app.utils.errors import MalformedSeries


def _encode_coefficient(c) -> Any:
    return scalars.encode(to_sympy(c))


def _decode_coefficient(value) -> Any:
    try:
        return gaussian(scalars.decode(value))
    except Exception as e:
        raise MalformedSeries(f"Coefficient {value!r} is not Gaussian rational") from e


# Request schemas
class SeriesTerm(BaseModel):
    z: List[int] = Field(min_length=2, max_length=2)
    zb: List[int] = Field(min_length=2, max_length=2)
    u: List[int] = Field(min_length=2, max_length=2)
    c: List[Any] = Field(min_length=1, max_length=2)


class SeriesIn(BaseModel):
    delta: int
    bound: int = DEFAULT_WEIGHT_BOUND
    coordinates: Literal["matrix", "split", "elliptic"] = "matrix"
    terms: List[SeriesTerm] = Field(default_factory=list)

    def to_model(self) -> SurfaceSeries:
        delta = check_delta(self.delta)
        width = 1 if self.coordinates == "elliptic" else 2
        if self.coordinates == "split" and delta != HYPERBOLIC:
            raise MalformedSeries("split coordinates need delta = +1")
        if self.coordinates == "elliptic" and delta != ELLIPTIC:
            raise MalformedSeries("elliptic coordinates need delta = -1")
        tables: List[Dict[tuple, Any]] = [{} for _ in range(width)]
        for term in self.terms:
            if len(term.c) != width:
                raise MalformedSeries(f"{self.coordinates} terms carry {width} coefficient(s)")
            if min(term.z + term.zb + term.u) < 0:
                raise MalformedSeries("Exponents must be non-negative")
            m = (*term.z, *term.zb, *term.u)
            for table, value in zip(tables, term.c):
                table[m] = table.get(m, SERIES_RING.domain.zero) + _decode_coefficient(value)
        components = tuple(SERIES_RING.from_dict(t) for t in tables)
        if self.coordinates == "matrix":
            return SurfaceSeries(delta, components, self.bound)
        model = ModelSeries(self.coordinates, components, self.bound, delta)
        return SeriesService.from_model(model)


class JetTerm(BaseModel):
    m: List[int] = Field(min_length=4, max_length=4)
    c: Any


class JetIn(BaseModel):
    bound: int
    components: List[List[JetTerm]] = Field(min_length=4, max_length=4)

    def to_model(self) -> HoloMapJet:
        polys = []
        for terms in self.components:
            table: Dict[tuple, Any] = {}
            for term in terms:
                m = tuple(term.m)
                table[m] = table.get(m, JET_RING.domain.zero) + _decode_coefficient(term.c)
            polys.append(JET_RING.from_dict(table))
        return HoloMapJet(tuple(polys), self.bound)


class SeriesRequest(BaseModel):
    series: SeriesIn
    coordinates: Literal["matrix", "split", "elliptic"] = "matrix"


# Response schemas
def encode_series(S: SurfaceSeries, coordinates: str = "matrix") -> Dict[str, Any]:
    if coordinates == "matrix":
        components, bound = S.components, S.bound
    else:
        model = SeriesService.to_model(S)
        if model.kind != coordinates:
            raise MalformedSeries(f"delta {S.delta:+d} series cannot be written in {coordinates} coordinates")
        components, bound = model.components, model.bound
    monomials = sorted({m for p in components for m in p.keys()})
    zero = SERIES_RING.domain.zero
    terms = [
        {
            "z": list(m[0:2]),
            "zb": list(m[2:4]),
            "u": list(m[4:6]),
            "c": [_encode_coefficient(p.get(m, zero)) for p in components],
        }
        for m in monomials
    ]
    return {"delta": S.delta, "bound": bound, "coordinates": coordinates, "terms": terms}


def encode_jet(f: HoloMapJet) -> Dict[str, Any]:
    return {
        "bound": f.bound,
        "components": [[{"m": list(m), "c": _encode_coefficient(c)} for m, c in sorted(p.items())] for p in f.components],
    }


def encode_polys(polys) -> List[List[Dict[str, Any]]]:
    return [[{"m": list(m), "c": _encode_coefficient(c)} for m, c in sorted(p.items())] for p in polys]


class SeriesResponse(BaseModel):
    delta: int
    bound: int
    coordinates: str
    terms: List[Dict[str, Any]]


class JetResponse(BaseModel):
    bound: int
    components: List[List[Dict[str, Any]]]


class RegraphResponse(BaseModel):
    series: SeriesResponse
    jet: Optional[JetResponse] = None


class RegraphRequest(BaseModel):
    series: SeriesIn
    jet: JetIn
    coordinates: Literal["matrix", "split", "elliptic"] = "matrix"
