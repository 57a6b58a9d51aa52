"""Default resource caps.

All caps can be overridden through one environment variable,
``ARTINDIV_CAPS``, holding comma separated ``name=value`` pairs, e.g.
``ARTINDIV_CAPS="closure=200000,lattice=5000,cosets=100000"``.
"""

from __future__ import annotations

import os

ENV_VAR = "ARTINDIV_CAPS"

_DEFAULTS = {
    "closure": 1_000_000,  # elements enumerated by group_from_generators
    "lattice": 2000,  # group order for subgroup lattices / character tables
    "cosets": 100_000,  # cosets defined during coset enumeration
}


def _from_env() -> dict[str, int]:
    caps = dict(_DEFAULTS)
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return caps
    for item in raw.split(","):
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in caps:
            raise ValueError(f"{ENV_VAR}: unknown cap {name!r}")
        caps[name] = int(value)
    return caps


_overrides: dict[str, int] = {}


def set_overrides(values: dict[str, int]) -> None:
    """Process-wide overrides (used by the command line ``--cap`` flag)."""
    for name in values:
        if name not in _DEFAULTS:
            raise ValueError(f"unknown cap {name!r}")
    _overrides.clear()
    _overrides.update(values)


def cap(name: str) -> int:
    if name in _overrides:
        return _overrides[name]
    return _from_env()[name]
