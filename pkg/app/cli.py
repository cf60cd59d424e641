"""Command-line front end.

    python -m app.cli <verb> [source] [flags]

``source`` is a path to a JSON file or inline JSON; ``--fixture NAME`` picks
a bundled fixture instead. The report is printed as JSON on stdout (or written
to ``--out``); logs go to stderr. Exit codes: 0 success, 1 domain error,
2 malformed input; ``classify-hermitian --exit-with-label`` returns 10-13.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from pydantic import ValidationError

from app.config.settings import (
    DEFAULT_DELTA,
    DEFAULT_FD_STEP,
    DEFAULT_FLATNESS_POINTS,
    DEFAULT_MODE,
    DEFAULT_SEED,
    DEFAULT_WEIGHT_BOUND,
    LOG_LEVEL,
)
from app.config.tolerance_config import FLATNESS_THRESHOLD
from app.models.chains import ChainSpec
from app.models.frame import P2Point
from app.models.group import GroupElem
from app.models.hermitian import LABEL_EXIT_CODES
from app.models.lie import BLOCK_DEGREES
from app.schemas.chains import ChainRequest, DistributionRequest, encode_path, encode_sample
from app.schemas.common import encode_aelem, encode_matrix
from app.schemas.frame import FlatnessResponse
from app.schemas.group import ActRequest, SigmaRequest, VerifyRequest, encode_point
from app.schemas.hermitian import ClassifyResponse, HermitianFormIn
from app.schemas.lie import BracketRequest, encode_su
from app.schemas.normalform import NormalizeRequest, encode_rational, encode_report
from app.schemas.series import SeriesIn, encode_jet, encode_polys, encode_series
from app.services.chain_service import ChainService
from app.services.group_service import GroupService
from app.services.hermitian_service import HermitianService
from app.services.lie_service import LieService
from app.services.normalform_service import NormalFormService
from app.services.quadric_frame_service import QuadricFrameService
from app.utils.errors import CRToolkitError, MalformedSeries, NotHermitian

logger = logging.getLogger("app.cli")

FIXTURES_DIR = Path(__file__).parent / "fixtures"

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_MALFORMED = 2


class InputError(Exception):
    """Source JSON missing or unreadable."""


def load_source(source: Optional[str], fixture: Optional[str]) -> Any:
    if fixture:
        path = FIXTURES_DIR / f"{fixture}.json"
        if not path.exists():
            raise InputError(f"Unknown fixture {fixture!r}")
        return json.loads(path.read_text())
    if source is None:
        raise InputError("A JSON source or --fixture is required")
    stripped = source.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(stripped)
    return json.loads(Path(source).read_text())


def _series(payload: Dict[str, Any], args) -> SeriesIn:
    series = SeriesIn(**payload)
    if args.delta is not None and args.delta != series.delta:
        raise MalformedSeries(f"--delta {args.delta} contradicts the series delta {series.delta}")
    return series


# Verbs
def run_classify(payload, args) -> Dict[str, Any]:
    request = HermitianFormIn(**payload)
    mode = args.mode or request.mode
    result = HermitianService.classify(request.to_model(), mode=mode)
    report = ClassifyResponse.from_model(result).model_dump()
    if args.exit_with_label:
        args.exit_code = LABEL_EXIT_CODES[result.label]
    return report


def run_normalize(payload, args) -> Dict[str, Any]:
    request = NormalizeRequest(**payload) if "series" in payload else NormalizeRequest(series=payload)
    S = request.series.to_model()
    init = request.init.to_model(S.delta) if request.init else None
    result = NormalFormService.normalize(S, init, bound=args.bound or request.bound)
    return {"series": encode_series(result.series), "jet": encode_jet(result.jet), "report": encode_report(result.report)}


def run_check(payload, args) -> Dict[str, Any]:
    return encode_report(NormalFormService.check(_series(payload, args).to_model()))


def run_kappa(payload, args) -> Dict[str, Any]:
    S = _series(payload, args).to_model()
    kappa = NormalFormService.kappa(S)
    report = {"kappa": encode_rational(kappa)}
    if kappa != 0:
        report["nu"] = int(1 / kappa)
    return report


def run_is_matrix(payload, args) -> Dict[str, Any]:
    return {"matrix_surface": NormalFormService.is_matrix_surface(_series(payload, args).to_model())}


def run_chain(payload, args) -> Dict[str, Any]:
    request = ChainRequest(**payload)
    spec = ChainSpec(request.A.to_model(request.delta), request.delta)
    if request.through is not None:
        sample = ChainService.chain_through_point(request.through.to_model(request.delta), spec, request.u_grid())
    else:
        sample = ChainService.chain_on_quadric(spec, request.u_grid())
    return encode_sample(sample)


def run_chain_distribution(payload, args) -> Dict[str, Any]:
    request = DistributionRequest(**payload)
    start = P2Point.from_coordinates(request.start, request.delta)
    return encode_path(ChainService.integrate_chain_distribution(start, request.path()))


def run_chain_germ(payload, args) -> Dict[str, Any]:
    request = NormalizeRequest(**payload) if "series" in payload else NormalizeRequest(series=payload)
    result = NormalFormService.normalize(request.series.to_model(), bound=args.bound or request.bound)
    chain = ChainService.chain_in_normal_coordinates(result.series, result.jet)
    return {
        "delta": chain.delta,
        "bound": chain.bound,
        "germ": encode_polys(chain.germ),
        "original": encode_polys(chain.original),
        "factors": [encode_polys(f) for f in chain.factors],
    }


def run_flatness(payload, args) -> Dict[str, Any]:
    delta = args.delta if args.delta is not None else DEFAULT_DELTA
    report = QuadricFrameService.flatness_scan(
        delta,
        points=args.points or DEFAULT_FLATNESS_POINTS,
        step=args.step or DEFAULT_FD_STEP,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
    )
    return FlatnessResponse.from_model(report, FLATNESS_THRESHOLD).model_dump()


def run_group_verify(payload, args) -> Dict[str, Any]:
    request = VerifyRequest(**payload)
    U = _group_elem(request)
    return {"delta": request.delta, "member": GroupService.is_member(U), "isotropy": GroupService.is_isotropy(U)}


def run_group_act(payload, args) -> Dict[str, Any]:
    request = ActRequest(**payload)
    U = _group_elem(request.matrix)
    image = GroupService.act_on_point(U, request.point.to_model(U.delta))
    return {"delta": U.delta, "point": encode_point(image), "on_quadric": GroupService.on_quadric(image)}


def run_group_sigma(payload, args) -> Dict[str, Any]:
    request = SigmaRequest(**payload)
    solutions = GroupService.solve_sigma(request.C.to_model(request.delta))
    return {"delta": request.delta, "count": len(solutions), "solutions": [encode_aelem(s) for s in solutions]}


def run_lie_dims(payload, args) -> Dict[str, Any]:
    delta = args.delta if args.delta is not None else DEFAULT_DELTA
    return {"delta": delta, **LieService.dims(delta)}


def run_lie_bracket(payload, args) -> Dict[str, Any]:
    request = BracketRequest(**payload)
    result = LieService.bracket(request.M.to_model(request.delta), request.N.to_model(request.delta))
    grades = LieService.grade(result)
    return {
        "delta": request.delta,
        "bracket": encode_su(result),
        "grades": {str(d): encode_su(grades[d]) for d in sorted(BLOCK_DEGREES.values())},
    }


def run_lie_basis(payload, args) -> Dict[str, Any]:
    delta = args.delta if args.delta is not None else DEFAULT_DELTA
    return {
        "delta": delta,
        "degrees": LieService.basis_degrees(),
        "basis": [encode_matrix(e.matrix()) for e in LieService.basis(delta)],
    }


def _group_elem(request) -> GroupElem:
    return GroupElem(request.to_model(), request.delta)


NEEDS_SOURCE = {
    "classify-hermitian", "normalize", "check-normal-form", "kappa", "is-matrix",
    "chain", "chain-distribution", "chain-germ", "group",
}

VERBS: Dict[str, Callable] = {
    "classify-hermitian": run_classify,
    "normalize": run_normalize,
    "check-normal-form": run_check,
    "kappa": run_kappa,
    "is-matrix": run_is_matrix,
    "chain": run_chain,
    "chain-distribution": run_chain_distribution,
    "chain-germ": run_chain_germ,
    "flatness": run_flatness,
    "group verify": run_group_verify,
    "group act": run_group_act,
    "group sigma": run_group_sigma,
    "lie dims": run_lie_dims,
    "lie bracket": run_lie_bracket,
    "lie dump-basis": run_lie_basis,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("source", nargs="?", help="JSON file or inline JSON")
    common.add_argument("--fixture", help="bundled fixture name")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--delta", type=int, choices=(1, -1))
    common.add_argument("--bound", type=int, help=f"weight bound (default: the series bound, {DEFAULT_WEIGHT_BOUND} if it has none)")
    common.add_argument("--mode", choices=("exact", "numeric"), help=f"default {DEFAULT_MODE}")
    common.add_argument("--seed", type=int)
    common.add_argument("--step", type=float)
    common.add_argument("--points", type=int)

    parser = argparse.ArgumentParser(prog="python -m app.cli", description="CR codimension-2 toolkit")
    verbs = parser.add_subparsers(dest="verb", required=True)
    classify = verbs.add_parser("classify-hermitian", parents=[common])
    classify.add_argument("--exit-with-label", action="store_true", help="exit 10-13 by label")
    for name in ("normalize", "check-normal-form", "kappa", "is-matrix", "chain", "chain-distribution", "chain-germ", "flatness"):
        verbs.add_parser(name, parents=[common])
    for group_name, actions in (("group", ("verify", "act", "sigma")), ("lie", ("dims", "bracket", "dump-basis"))):
        sub = verbs.add_parser(group_name).add_subparsers(dest="action", required=True)
        for action in actions:
            sub.add_parser(action, parents=[common])
    return parser


def _emit(report: Dict[str, Any], out: Optional[str]) -> None:
    text = json.dumps(report, sort_keys=True, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.exit_with_label = getattr(args, "exit_with_label", False)
    args.exit_code = EXIT_OK
    key = args.verb if getattr(args, "action", None) is None else f"{args.verb} {args.action}"
    handler = VERBS[key]
    try:
        payload = load_source(args.source, args.fixture) if args.verb in NEEDS_SOURCE or key == "lie bracket" else None
        report = handler(payload, args)
    except (InputError, json.JSONDecodeError, ValidationError, MalformedSeries, NotHermitian, OSError) as e:
        logger.error("Malformed input for %s: %s", key, e)
        detail = e.detail if isinstance(e, CRToolkitError) else str(e)
        _emit({"error": "MalformedInput", "detail": detail}, args.out)
        return EXIT_MALFORMED
    except CRToolkitError as e:
        logger.error("%s failed: %s", key, e.detail)
        _emit(e.to_dict(), args.out)
        return EXIT_DOMAIN
    _emit(report, args.out)
    logger.info("%s finished", key)
    return args.exit_code


def main() -> None:
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    sys.exit(run())


if __name__ == "__main__":
    main()
