"""Dense linear algebra over F_q through lookup tables.

Matrices are int64 arrays of encoded field elements.  The hot loops come in
two interchangeable implementations: numba-jitted scalar loops and pure-numpy
fancy indexing.  The EQUICHAR_BACKEND environment variable picks one at
import time ("numba", "numpy", or the default "auto" = numba when available).
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import InputValidationError
from .field import SplittingField

_ENV_VAR = "EQUICHAR_BACKEND"


def _resolve_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "auto").lower()
    if choice not in {"auto", "numba", "numpy"}:
        raise InputValidationError(f"{_ENV_VAR} must be auto, numba or numpy, got {choice!r}")
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise
        return "numpy"
    return "numba"


# -- numpy implementations ----------------------------------------------------


def _np_matmul(a, b, add, mul):
    n, kk = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=np.int64)
    for t in range(kk):
        col = a[:, t]
        if not col.any():
            continue
        out = add[out, mul[col[:, None], b[t][None, :]]]
    return out


def _np_rref(a, add, mul, inv, neg):
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        pv = a[r, col]
        if pv != 1:
            a[r] = mul[int(inv[pv]), a[r]]
        rest = np.nonzero(a[:, col])[0]
        rest = rest[rest != r]
        if rest.size:
            f = neg[a[rest, col]]
            a[rest] = add[a[rest], mul[f[:, None], a[r][None, :]]]
        pivots[r] = col
        r += 1
    return a, pivots[:r]


# -- numba implementations ----------------------------------------------------


def _make_numba_kernels():
    from numba import njit

    @njit(cache=True)
    def nb_matmul(a, b, add, mul):  # pragma: no cover - exercised via dispatch
        n, kk = a.shape
        m = b.shape[1]
        out = np.zeros((n, m), dtype=np.int64)
        for i in range(n):
            for t in range(kk):
                v = a[i, t]
                if v != 0:
                    for j in range(m):
                        w = b[t, j]
                        if w != 0:
                            out[i, j] = add[out[i, j], mul[v, w]]
        return out

    @njit(cache=True)
    def nb_rref(a, add, mul, inv, neg):  # pragma: no cover - exercised via dispatch
        a = a.copy()
        rows, cols = a.shape
        cap = rows if rows < cols else cols
        pivots = np.empty(cap, dtype=np.int64)
        r = 0
        for col in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            pv = a[r, col]
            if pv != 1:
                ipv = inv[pv]
                for j in range(cols):
                    a[r, j] = mul[ipv, a[r, j]]
            for i in range(rows):
                if i != r and a[i, col] != 0:
                    f = neg[a[i, col]]
                    for j in range(cols):
                        a[i, j] = add[a[i, j], mul[f, a[r, j]]]
            pivots[r] = col
            r += 1
        return a, pivots[:r]

    return nb_matmul, nb_rref


_BACKEND = _resolve_backend()
if _BACKEND == "numba":
    _matmul_impl, _rref_impl = _make_numba_kernels()
else:
    _matmul_impl, _rref_impl = _np_matmul, _np_rref


def active_backend() -> str:
    return _BACKEND


# -- public API ----------------------------------------------------------------


def identity(d: int) -> np.ndarray:
    """Identity matrix; the encoding of 1 in F_q is the integer 1."""
    return np.eye(d, dtype=np.int64)


def as_matrix(rows) -> np.ndarray:
    return np.asarray(rows, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, fld: SplittingField) -> np.ndarray:
    return _matmul_impl(
        np.ascontiguousarray(a, dtype=np.int64),
        np.ascontiguousarray(b, dtype=np.int64),
        fld.add,
        fld.mul,
    )


def rref(a: np.ndarray, fld: SplittingField) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form and the pivot column indices."""
    return _rref_impl(
        np.ascontiguousarray(a, dtype=np.int64), fld.add, fld.mul, fld.inv, fld.neg
    )


def rank(a: np.ndarray, fld: SplittingField) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, fld)[1])


def nullspace(a: np.ndarray, fld: SplittingField) -> np.ndarray:
    """Columns form a basis of the right kernel of `a`."""
    rows, cols = a.shape
    red, pivots = rref(a, fld)
    pivot_set = set(int(c) for c in pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, fcol in enumerate(free):
        basis[fcol, j] = 1
        for i, pcol in enumerate(pivots):
            basis[int(pcol), j] = fld.neg[red[i, fcol]]
    return basis


def solve(a: np.ndarray, b: np.ndarray, fld: SplittingField) -> np.ndarray:
    """Solve a @ x = b for a with full column rank; raises if inconsistent."""
    k = a.shape[1]
    aug = np.concatenate([a, b], axis=1)
    red, pivots = rref(aug, fld)
    if len(pivots) != k or (len(pivots) and int(pivots[-1]) >= k):
        raise InputValidationError("system is rank-deficient or inconsistent")
    return red[:k, k:]


def inverse(a: np.ndarray, fld: SplittingField) -> np.ndarray:
    return solve(a, identity(a.shape[0]), fld)
