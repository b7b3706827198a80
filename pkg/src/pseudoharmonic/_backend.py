"""Select the compiled kernels when available, else the numpy fallback."""
from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_ACTIVE = _compiled if _compiled is not None else _kernels_py


def name():
    """Return ``"cython"`` or ``"python"`` for the active kernel set."""
    return "cython" if _ACTIVE is _compiled else "python"


def available():
    """Backends importable in this installation."""
    return ["python"] + (["cython"] if _compiled is not None else [])


def use(backend):
    """Force a backend by name; used by the benchmark and tests."""
    global _ACTIVE
    if backend == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        _ACTIVE = _compiled
    elif backend == "python":
        _ACTIVE = _kernels_py
    else:
        raise ValueError(f"unknown backend {backend!r}")


def laguerre_array(n, eta, z):
    return _ACTIVE.laguerre_array(n, eta, z)


def hermite_array(n, z):
    return _ACTIVE.hermite_array(n, z)


def kummer_series_scaled(p, q, z):
    return _ACTIVE.kummer_series_scaled(p, q, z)
