"""Size caps for the exact oracles.

Every cap is a hard limit: oracles raise ``CapExceeded`` instead of
truncating. ``WIDTHLAB_MAX_N`` overrides all defaults at once.
"""
from __future__ import annotations

import os

from ..errors import CapExceeded

DEFAULT_CAPS = {
    "tw": 20,
    "pw": 18,
    "ltw": 10,
    "lpw": 9,
    "rtw": 8,
    "rpw": 8,
    "minor": 14,
}
ENV_VAR = "WIDTHLAB_MAX_N"


def cap_for(oracle: str, override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_CAPS[oracle]


def check_cap(oracle: str, n: int, override: int | None = None) -> None:
    cap = cap_for(oracle, override)
    if n > cap:
        raise CapExceeded(oracle, n, cap)
