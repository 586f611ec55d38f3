"""Kernel backend selection.

The Grover iteration inner loop exists twice: a Cython extension
(``_grover_c``) and a numpy fallback (``_grover_py``).  The compiled
version is preferred when it imported successfully; set the environment
variable ``GROVERDYN_BACKEND=python`` (or ``cython``) to force a choice.
``benchmarks/bench_kernels.py`` compares the two.
"""

import os

from . import _grover_py

_IMPLS = {"python": _grover_py}

try:
    from . import _grover_c

    _IMPLS["cython"] = _grover_c
except ImportError:  # extension not built; fallback only
    _grover_c = None


def available_backends() -> tuple[str, ...]:
    """Names of the kernel implementations importable in this install."""
    return tuple(sorted(_IMPLS))


def get_impl(name: str):
    """Return the kernel module registered under ``name``."""
    try:
        return _IMPLS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {available_backends()}"
        ) from None


def _select():
    requested = os.environ.get("GROVERDYN_BACKEND")
    if requested:
        return get_impl(requested)
    return _IMPLS.get("cython", _grover_py)


_active = _select()

run_grover = _active.run_grover


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return _active.NAME
