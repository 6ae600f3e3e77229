"""Search and survey limits."""

import os

from .errors import DomainError

DEFAULT_SEARCH_CAP = 12
HEIGHT_SCHEDULE = (1, 2, 3, 4, 6, 8, 12, 16, 24, 32)
SEARCH_CAP_VAR = "BIQUAD_SEARCH_CAP"

SURVEY_RMAX_CAP = 60
DEFAULT_POOL_HEIGHT = 2
MAX_POOL_HEIGHT = 3


def search_cap() -> int:
    """Largest height an escalating search may try."""
    raw = os.environ.get(SEARCH_CAP_VAR)
    if raw is None:
        return DEFAULT_SEARCH_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"{SEARCH_CAP_VAR}={raw!r} is not an integer") from None
    if cap < 1:
        raise DomainError(f"{SEARCH_CAP_VAR}={cap} must be positive")
    return cap


def height_schedule(cap: int | None = None) -> tuple[int, ...]:
    """Escalation heights up to and including the cap."""
    if cap is None:
        cap = search_cap()
    heights = [h for h in HEIGHT_SCHEDULE if h <= cap]
    if not heights or heights[-1] != cap:
        heights.append(cap)
    return tuple(heights)
