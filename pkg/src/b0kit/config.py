"""Runtime knobs read from the environment."""

import os

DEFAULT_BUDGET = 10**6
ORACLE_BUDGET = 81


def enumeration_budget() -> int:
    raw = os.environ.get("B0KIT_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"B0KIT_BUDGET must be an integer, got {raw!r}") from None
