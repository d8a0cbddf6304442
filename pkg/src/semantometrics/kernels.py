"""Backend selection for the pairwise-distance kernels.

The compiled extension is used when it was built; otherwise the pure-Python
fallback is loaded.  Both produce bit-identical results.
"""
from __future__ import annotations

import importlib
import logging

log = logging.getLogger(__name__)

BACKENDS = ("compiled", "python")

try:
    from . import _ckernels as _impl

    backend = "compiled"
except ImportError:  # extension not built
    from . import _pykernels as _impl

    backend = "python"
    log.debug("compiled kernels unavailable, using pure-Python fallback")


def available_backends() -> list[str]:
    found = ["python"]
    try:
        importlib.import_module(f"{__package__}._ckernels")
        found.insert(0, "compiled")
    except ImportError:
        pass
    return found


def load(name: str):
    """Return the kernel module for backend ``name``."""
    if name == "compiled":
        return importlib.import_module(f"{__package__}._ckernels")
    if name == "python":
        return importlib.import_module(f"{__package__}._pykernels")
    raise ValueError(f"unknown kernel backend {name!r}; choose from {BACKENDS}")


def use_backend(name: str) -> None:
    """Switch the process-wide backend (used by tests and benchmarks)."""
    global _impl, backend
    _impl = load(name)
    backend = name


def sparse_dot(indptr, indices, data, ra, rb):
    return _impl.sparse_dot(indptr, indices, data, ra, rb)


def mean_pair_distance(indptr, indices, data, a_rows, b_rows):
    return _impl.mean_pair_distance(indptr, indices, data, a_rows, b_rows)


def contribution_batch(indptr, indices, data, a_ptr, a_rows, b_ptr, b_rows, out):
    return _impl.contribution_batch(indptr, indices, data, a_ptr, a_rows, b_ptr, b_rows, out)
