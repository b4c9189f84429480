"""Kernel selection: compiled extension when importable, Python otherwise.

Set ``ICL_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

_compiled = None
if not os.environ.get("ICL_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

_impl = _compiled if _compiled is not None else _kernels_py

IMPLEMENTATION = _impl.IMPLEMENTATION
divides = _impl.divides
find_divisor = _impl.find_divisor
normal_form = _impl.normal_form
antichain_minimize = _impl.antichain_minimize
antichain_sum = _impl.antichain_sum
dominates_any = _impl.dominates_any
closure_points = _impl.closure_points


def available():
    """Names of the kernel implementations importable in this process."""
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "cython")
    return names


def implementation(name):
    """Return the kernel module called ``name`` ("python" or "cython")."""
    if name == "python":
        return _kernels_py
    if name == "cython" and _compiled is not None:
        return _compiled
    raise ImportError(f"kernel implementation {name!r} is not available")


_EXPORTS = ("divides", "find_divisor", "normal_form", "antichain_minimize", "antichain_sum",
            "dominates_any", "closure_points")


def select(name):
    """Rebind this module's kernel functions to implementation ``name``.

    Callers look kernels up through this module at call time, so the
    switch affects the whole package.  Returns the previous name."""
    global IMPLEMENTATION
    mod = implementation(name)
    old = IMPLEMENTATION
    g = globals()
    for fn in _EXPORTS:
        g[fn] = getattr(mod, fn)
    IMPLEMENTATION = mod.IMPLEMENTATION
    return old
