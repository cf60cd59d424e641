from fastapi import HTTPException, Query, status

from app.config.settings import DEFAULT_DELTA
from app.models.algebra import ELLIPTIC, HYPERBOLIC


async def get_delta(delta: int = Query(DEFAULT_DELTA, description="+1 hyperbolic, -1 elliptic")) -> int:
    if delta not in (HYPERBOLIC, ELLIPTIC):
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail={"error": "DeltaMismatch", "detail": f"delta must be +1 or -1, got {delta}"},
        )
    return delta
