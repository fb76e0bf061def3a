"""Backend selection for the hot loops.

The compiled extension is used when it imports and the data fits in int64;
otherwise the pure-Python kernels run.  Set ``BIHOM3_PURE_PYTHON=1`` to
force the fallback.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from . import _kernels_py

try:
    if os.environ.get("BIHOM3_PURE_PYTHON"):
        raise ImportError("compiled kernels disabled by environment")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

import numpy as np

BACKENDS = ("compiled", "python") if _compiled is not None else ("python",)
DEFAULT_BACKEND = BACKENDS[0]

_INT64_SAFE = 2**62


def compiled_available() -> bool:
    return _compiled is not None


def _resolve(backend: str | None) -> str:
    backend = backend or DEFAULT_BACKEND
    if backend not in ("compiled", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "compiled" and _compiled is None:
        raise RuntimeError("compiled kernels are not available")
    return backend


def _as_rational(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if getattr(x, "im", 0):
        return None
    return Fraction(x.re)


def _integerize(values):
    """Scale rational values to integers; None if any value is non-real."""
    rats = []
    for x in values:
        q = _as_rational(x)
        if q is None:
            return None, 0
        rats.append(q)
    den = 1
    for q in rats:
        den = den * q.denominator // math.gcd(den, q.denominator)
    return [int(q * den) for q in rats], den


def jacobi_scan(outer, inner, n, backend: str | None = None):
    backend = _resolve(backend)
    if backend == "compiled":
        flat_o = [x for a in outer for b in a for r in b for x in r]
        flat_i = [x for a in inner for b in a for c in b for x in c]
        io, _ = _integerize(flat_o)
        ii, _ = _integerize(flat_i)
        if io is not None and ii is not None:
            mo = max(map(abs, io), default=0)
            mi = max(map(abs, ii), default=0)
            if 3 * n * mo * mi < _INT64_SAFE:
                o = np.array(io, dtype=np.int64).reshape(n, n, n, n)
                i = np.array(ii, dtype=np.int64).reshape(n, n, n, n)
                return _compiled.jacobi_scan(o, i, n)
    return _kernels_py.jacobi_scan(outer, inner, n)


def box_square_search(n, bound, free_pos, dep_pos, dep_num, denom, sign, backend: str | None = None):
    backend = _resolve(backend)
    if backend == "compiled":
        widest = max((sum(abs(c) for c in row) for row in dep_num), default=0)
        if max(widest * bound, n * bound * bound) < _INT64_SAFE:
            return _compiled.box_square_search(
                n,
                bound,
                np.array(free_pos, dtype=np.int64),
                np.array(dep_pos, dtype=np.int64),
                np.array(dep_num, dtype=np.int64).reshape(len(dep_pos), len(free_pos)),
                denom,
                sign,
            )
    return _kernels_py.box_square_search(n, bound, free_pos, dep_pos, dep_num, denom, sign)
