"""Hot kernels for the matrix-group closure enumeration.

Matrices over Q(zeta_N) are stored as integer coordinate arrays of shape
(d, d, phi) plus a positive integer denominator.  The product kernel does
the coordinate convolution and the power-basis reduction in one pass.
Numba is used when available; set NECKLACE_NO_NUMBA=1 to force the pure
numpy path (the benchmark in benchmarks/ compares both).
"""

import math
import os

import numpy as np

USE_NUMBA = os.environ.get("NECKLACE_NO_NUMBA", "") == ""
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
        USE_NUMBA = False


def _mm_numpy(A, B, RED):
    d, p = A.shape[0], A.shape[2]
    T = np.zeros((d, d, 2 * p - 1), dtype=np.int64)
    for ci in range(p):
        Ac = A[:, :, ci]
        if not Ac.any():
            continue
        for cj in range(p):
            Bc = B[:, :, cj]
            if Bc.any():
                T[:, :, ci + cj] += Ac @ Bc
    return T @ RED


if USE_NUMBA:

    @njit(cache=True, nogil=True)
    def _mm_numba(A, B, RED):  # pragma: no cover - numba-compiled
        d = A.shape[0]
        p = A.shape[2]
        T = np.zeros((d, d, 2 * p - 1), dtype=np.int64)
        for i in range(d):
            for k in range(d):
                for ci in range(p):
                    a = A[i, k, ci]
                    if a != 0:
                        for j in range(d):
                            for cj in range(p):
                                b = B[k, j, cj]
                                if b != 0:
                                    T[i, j, ci + cj] += a * b
        q = RED.shape[1]
        C = np.zeros((d, d, q), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                for kk in range(2 * p - 1):
                    c = T[i, j, kk]
                    if c != 0:
                        for m in range(q):
                            C[i, j, m] += c * RED[kk, m]
        return C

    def cyc_matmul(A, B, RED):
        return _mm_numba(A, B, RED)

else:

    def cyc_matmul(A, B, RED):
        return _mm_numpy(A, B, RED)


_OVERFLOW_LIMIT = 1 << 45


def normalize(arr, den):
    """Divide out the integer content; keep den positive. Returns (arr, den)."""
    den = int(den)
    g = int(np.gcd.reduce(np.abs(arr), axis=None))
    g = math.gcd(g, den)
    if g > 1:
        arr = arr // g
        den //= g
    if int(np.abs(arr).max(initial=0)) > _OVERFLOW_LIMIT or den > _OVERFLOW_LIMIT:
        raise OverflowError("closure entries outgrew the int64 budget")
    return arr, den
