"""Kernel selection: compiled extension when present, pure Python otherwise.

The compiled kernel (`_masks_c`, Cython) handles universes of at most 64
bits with C integers; the pure module handles any size.  Set
POWMON_FORCE_PURE=1 to ignore the extension (used by the benchmark and the
agreement tests).
"""

from __future__ import annotations

import os

from . import masks_py

try:  # pragma: no cover - exercised only when the extension is built
    from . import _masks_c
except ImportError:
    _masks_c = None

_C_BITS = 64


def compiled_available() -> bool:
    return _masks_c is not None


def _force_pure() -> bool:
    return os.environ.get("POWMON_FORCE_PURE", "") not in ("", "0")


def kernel_for(universe_bits: int):
    """The kernel module to use for a universe of the given bit width."""
    if _masks_c is not None and universe_bits <= _C_BITS and not _force_pure():
        return _masks_c
    return masks_py


def backend_name(universe_bits: int) -> str:
    return "c" if kernel_for(universe_bits) is _masks_c else "python"
