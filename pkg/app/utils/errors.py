from fastapi import HTTPException, status


class CRToolkitError(Exception):
    """Base class for every domain failure raised by the services.

    ``code`` is the stable identifier reported by the CLI and the HTTP API.
    """

    code = "CRToolkitError"
    status_code = status.HTTP_422_UNPROCESSABLE_CONTENT

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.code)
        self.detail = detail or self.code

    def to_dict(self) -> dict:
        return {"error": self.code, "detail": self.detail}


# algebra
class DeltaMismatch(CRToolkitError):
    code = "DeltaMismatch"
    status_code = status.HTTP_400_BAD_REQUEST


class NotInvertible(CRToolkitError):
    code = "NotInvertible"


class OutOfCone(CRToolkitError):
    code = "OutOfCone"


# group
class NotAMember(CRToolkitError):
    code = "NotAMember"


class InvalidParams(CRToolkitError):
    code = "InvalidParams"


class NotOnQuadric(CRToolkitError):
    code = "NotOnQuadric"


class AtInfinity(CRToolkitError):
    code = "AtInfinity"


class ConstraintViolated(CRToolkitError):
    code = "ConstraintViolated"


# hermitian
class ToleranceBand(CRToolkitError):
    code = "ToleranceBand"


class NotHermitian(CRToolkitError):
    code = "NotHermitian"
    status_code = status.HTTP_400_BAD_REQUEST


class WitnessNotFound(CRToolkitError):
    code = "WitnessNotFound"


# series
class MalformedSeries(CRToolkitError):
    code = "MalformedSeries"
    status_code = status.HTTP_400_BAD_REQUEST


class BoundMismatch(CRToolkitError):
    code = "BoundMismatch"
    status_code = status.HTTP_400_BAD_REQUEST


class NonInvertibleLinearPart(CRToolkitError):
    code = "NonInvertibleLinearPart"


class ImplicitSolveFailure(CRToolkitError):
    code = "ImplicitSolveFailure"


# normalform
class WrongLeviForm(CRToolkitError):
    code = "WrongLeviForm"


class NotInNormalForm(CRToolkitError):
    code = "NotInNormalForm"


class LinearSolveSingular(CRToolkitError):
    code = "LinearSolveSingular"

    def __init__(self, weight: int, detail: str = ""):
        super().__init__(detail or f"Per-weight normalizing system is inconsistent at weight {weight}")
        self.weight = weight

    def to_dict(self) -> dict:
        return {"error": self.code, "detail": self.detail, "weight": self.weight}


# quadric_frame
class DegenerateFrame(CRToolkitError):
    code = "DegenerateFrame"


# chains
class NoRealBranch(CRToolkitError):
    code = "NoRealBranch"


class StepFailure(CRToolkitError):
    code = "StepFailure"


class SingularG(CRToolkitError):
    code = "SingularG"


class NotMatrixNormalForm(CRToolkitError):
    code = "NotMatrixNormalForm"


def to_http_exception(e: CRToolkitError) -> HTTPException:
    return HTTPException(status_code=e.status_code, detail=e.to_dict())
