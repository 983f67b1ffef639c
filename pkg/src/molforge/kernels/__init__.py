"""Hot numeric kernels with two interchangeable backends.

The numba backend compiles the inner loops with @njit; the numpy backend is
a pure-numpy fallback. Selection happens once at import from the
MOLFORGE_KERNELS environment variable ("auto", "numba", "numpy"; default
"auto" = numba when importable) and can be switched at runtime with use().

Both backends produce the same values up to floating-point rounding of
reductions; each backend on its own is deterministic run to run.
"""

from __future__ import annotations

import os
import warnings

from . import numpy_impl

_FUNCS = (
    "softmax_fwd", "softmax_bwd",
    "layernorm_fwd", "layernorm_bwd",
    "cross_entropy_fwd", "cross_entropy_bwd",
    "adam_update", "embedding_grad", "tanimoto_matrix",
)

_state = {"name": "numpy", "mod": numpy_impl}


def _load_numba():
    from . import numba_impl
    return numba_impl


def use(name: str) -> str:
    """Select the kernel backend; returns the backend actually in effect."""
    if name not in ("auto", "numba", "numpy"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name == "numpy":
        _state.update(name="numpy", mod=numpy_impl)
    else:
        try:
            _state.update(name="numba", mod=_load_numba())
        except ImportError:
            if name == "numba":
                warnings.warn("numba requested but not importable; using numpy kernels")
            _state.update(name="numpy", mod=numpy_impl)
    return _state["name"]


def active() -> str:
    return _state["name"]


def __getattr__(attr):
    if attr in _FUNCS:
        return getattr(_state["mod"], attr)
    raise AttributeError(attr)


use(os.environ.get("MOLFORGE_KERNELS", "auto"))
