"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
module is the fallback.  Both produce bit-identical results, so the
choice only affects speed.  CRASHSIM_KERNELS=pure|compiled forces a
backend (compiled raises if the extension is missing).
"""

import os
from contextlib import contextmanager

from . import pure

_requested = os.environ.get("CRASHSIM_KERNELS", "auto")
if _requested not in ("auto", "pure", "compiled"):
    raise RuntimeError(f"CRASHSIM_KERNELS must be auto|pure|compiled, got {_requested!r}")

compiled = None
if _requested in ("auto", "compiled"):
    try:
        from . import _ext as compiled
    except ImportError:
        if _requested == "compiled":
            raise

_active = compiled if compiled is not None else pure


def active():
    """The kernel module analysis code should dispatch to."""
    return _active


def backend_name() -> str:
    return _active.BACKEND


def available_backends() -> tuple[str, ...]:
    return ("pure",) if compiled is None else ("pure", "compiled")


def get(name: str):
    if name == "pure":
        return pure
    if name == "compiled":
        if compiled is None:
            raise RuntimeError("compiled kernel backend is not built")
        return compiled
    raise ValueError(f"unknown backend {name!r}")


@contextmanager
def use(name: str):
    """Temporarily switch the active backend (benchmarks, parity checks)."""
    global _active
    previous = _active
    _active = get(name)
    try:
        yield _active
    finally:
        _active = previous
