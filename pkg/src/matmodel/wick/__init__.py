"""Brute-force Wick-pairing oracle with a compiled fast path.

At import time the package selects the compiled pairing kernel when the
extension module is available, falling back to the pure-Python twin.  Set
``MATMODEL_PURE=1`` to force the pure kernel.
"""

from __future__ import annotations

import os

from . import _corepy

if os.environ.get("MATMODEL_PURE"):
    _kernel = _corepy
    _KERNEL_NAME = "pure"
else:
    try:
        from . import _corecy as _kernel  # type: ignore[no-redef]

        _KERNEL_NAME = "compiled"
    except ImportError:
        _kernel = _corepy
        _KERNEL_NAME = "pure"

pairing_sums = _kernel.pairing_sums


def kernel_name() -> str:
    """Which pairing kernel is active: ``"compiled"`` or ``"pure"``."""
    return _KERNEL_NAME


from .oracle import (  # noqa: E402  (oracle needs pairing_sums above)
    DEFAULT_DART_CAP,
    DartCapExceeded,
    connected_moment,
    cumulant_connected_moment,
    gaussian_moment,
    oracle_correlator,
)

__all__ = [
    "DEFAULT_DART_CAP",
    "DartCapExceeded",
    "connected_moment",
    "cumulant_connected_moment",
    "gaussian_moment",
    "kernel_name",
    "oracle_correlator",
    "pairing_sums",
]
