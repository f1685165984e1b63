"""Backend selection for the polynomial kernels.

The compiled extension is used when it was built and the modulus fits in a
machine word; everything else goes through the pure-Python kernels.  Set
``FLEXENC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels as py

trim = py.trim
add = py.add
sub = py.sub
scale = py.scale

try:
    if os.environ.get("FLEXENC_PURE_PYTHON"):
        raise ImportError("pure-Python kernels forced")
    from . import _kernels as ext
except ImportError:
    ext = None

BACKEND = "cython" if ext is not None else "python"
_LIMIT = ext.MAX_MODULUS if ext is not None else 0


def mul(a, b, p):
    if p < _LIMIT:
        return ext.mul(a, b, p)
    return py.mul(a, b, p)


def divmod_(a, b, p):
    if p < _LIMIT:
        return ext.divmod_(a, b, p)
    return py.divmod_(a, b, p)


def evaluate(a, x, p):
    if p < _LIMIT:
        return ext.evaluate(a, x, p)
    return py.evaluate(a, x, p)


def use_backend(name: str) -> None:
    """Switch between "cython" and "python" at runtime (benchmarks, tests)."""
    global BACKEND, _LIMIT
    if name == "cython":
        if ext is None:
            raise ImportError("the compiled kernels are not available")
        BACKEND, _LIMIT = "cython", ext.MAX_MODULUS
    elif name == "python":
        BACKEND, _LIMIT = "python", 0
    else:
        raise ValueError(f"unknown backend {name!r}")
