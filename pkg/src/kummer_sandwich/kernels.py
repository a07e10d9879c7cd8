"""Kernel selection: the compiled core when available, else the pure-Python fallback.

``KUMMER_SANDWICH_PURE=1`` forces the fallback; ``KUMMER_SANDWICH_THREADS`` sets the
thread count of the row-parallel character sum.
"""

from __future__ import annotations

import os

from . import _kernels_py as pure

try:
    if os.environ.get("KUMMER_SANDWICH_PURE", "") not in ("", "0"):
        raise ImportError("pure kernels requested")
    from . import _kernels as compiled  # type: ignore[attr-defined]
except ImportError:
    compiled = None

BACKEND = "compiled" if compiled is not None else "pure"
_active = compiled if compiled is not None else pure


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("KUMMER_SANDWICH_THREADS", "1")))
    except ValueError:
        return 1


def charsum_matrix(matrix, p: int, residues, threads: int | None = None) -> int:
    return _active.charsum_matrix(matrix, p, residues, threads or default_threads())


def closed_form_naive(a: int, b: int, c: int, p: int, binom) -> int:
    return _active.closed_form_naive(a, b, c, p, binom)


def closed_form_conv(a: int, b: int, c: int, p: int, binom) -> int:
    return _active.closed_form_conv(a, b, c, p, binom)


def backends() -> dict:
    """Every available implementation by name, for benchmarks and cross-checks."""
    out = {"pure": pure}
    if compiled is not None:
        out["compiled"] = compiled
    return out
