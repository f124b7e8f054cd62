"""Backend selector for the integer-word kernels.

The compiled module is used when it was built; ``SPACEWB_PURE=1`` or
``use_backend("python")`` forces the pure-Python one.
"""

import os

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

_FUNCS = ("free_reduce", "min_rotation", "canonical", "norm", "weight", "collapse_empty", "successors",
          "bfs_vanish")

BACKEND = None


def available():
    return ("compiled", "python") if _ckernels is not None else ("python",)


def use_backend(name):
    global BACKEND
    mod = {"python": _kernels_py, "compiled": _ckernels}.get(name)
    if mod is None:
        raise ValueError(f"backend {name!r} is not available")
    for f in _FUNCS:
        globals()[f] = getattr(mod, f)
    BACKEND = name


def module(name):
    return {"python": _kernels_py, "compiled": _ckernels}[name]


use_backend("python" if _ckernels is None or os.environ.get("SPACEWB_PURE") == "1"
            else "compiled")
