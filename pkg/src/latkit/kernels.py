"""Kernel backend selection.

The hot loops (OSD candidate reprocessing, codebook weight walks) exist
twice: a compiled Cython extension (latkit._cykernel) and a pure-numpy
fallback (latkit._pykernel) with identical semantics.  The compiled backend
is preferred when importable; set LATKIT_PURE_PYTHON=1 to force the
fallback.  benchmarks/bench_kernels.py compares the two.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    from . import _cykernel
except ImportError:  # extension not built on this install
    _cykernel = None

_FORCE_PY = os.environ.get("LATKIT_PURE_PYTHON", "") not in ("", "0")
_DEFAULT = _pykernel if (_cykernel is None or _FORCE_PY) else _cykernel


def get_backend(name: str | None = None):
    """Backend module by name ('cython' | 'python'), or the default."""
    if name is None:
        return _DEFAULT
    if name == "python":
        return _pykernel
    if name == "cython":
        if _cykernel is None:
            raise ImportError("compiled kernel latkit._cykernel is not available")
        return _cykernel
    raise ValueError(f"unknown backend {name!r}")


def backend_name() -> str:
    return _DEFAULT.BACKEND


def available_backends() -> list[str]:
    out = ["python"]
    if _cykernel is not None:
        out.insert(0, "cython")
    return out
