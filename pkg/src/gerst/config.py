"""Runtime limits and backend selection (environment driven)."""

import os

DEFAULT_MAX_ENTRIES = 10**8


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured size guard."""


def max_entries() -> int:
    raw = os.environ.get("GERST_MAX_ENTRIES")
    if raw is None or raw == "":
        return DEFAULT_MAX_ENTRIES
    return int(raw)


def guard(n_entries: int, what: str) -> None:
    limit = max_entries()
    if n_entries > limit:
        raise ResourceLimitError(
            f"{what}: {n_entries} entries exceeds GERST_MAX_ENTRIES={limit}"
        )


def use_numba() -> bool:
    """Numba kernels are on unless GERST_DISABLE_NUMBA is set to a true value."""
    flag = os.environ.get("GERST_DISABLE_NUMBA", "").strip().lower()
    return flag not in ("1", "true", "yes", "on")
