"""Hot numeric kernels for sparse bivariate Laurent arithmetic.

Series are handled as parallel arrays: an (n, 2) int64 array of exponent
pairs (eS, eT) and an (n, d) int64 array of coefficient vectors, where a
coefficient vector holds the polynomial-basis coordinates of an element of
(Z/pe)[x]/(modulus) with monic degree-d modulus.  The kernels below do the
term-by-term convolution and the duplicate-exponent merge, which dominate
the runtime of reductions and pairings.

Both a numba ``@njit`` path and a pure-numpy path are provided; selection
happens at import time via the ``PARSHIN_JIT`` environment variable
(``PARSHIN_JIT=0`` forces the numpy fallback).  ``benchmarks/bench_kernels.py``
compares the two.
"""

import os

import numpy as np

_flag = os.environ.get("PARSHIN_JIT", "1").strip().lower()
_want_jit = _flag not in ("0", "false", "no", "off")

njit = None
if _want_jit:
    try:
        from numba import njit
    except ImportError:
        njit = None

JIT_ENABLED = njit is not None

# Exponent pairs are packed into a single int64 sort key.  |exponent| must
# stay below _OFF; reduction chains top out around 10^7.
_OFF = 1 << 30
_SHIFT = 1 << 31


def _combine_np(exps, coefs, pe):
    """Merge duplicate exponent rows mod pe and drop zero coefficients."""
    n = exps.shape[0]
    if n == 0:
        return exps, coefs
    keys = (exps[:, 0] + _OFF) * _SHIFT + (exps[:, 1] + _OFF)
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    exps = exps[order]
    coefs = coefs[order] % pe
    _, start = np.unique(keys, return_index=True)
    out_c = np.add.reduceat(coefs, start, axis=0) % pe
    out_e = exps[start]
    nz = np.any(out_c != 0, axis=1)
    return np.ascontiguousarray(out_e[nz]), np.ascontiguousarray(out_c[nz])


def _conv_np(eA, cA, eB, cB, modred, pe):
    """All pairwise term products with coefficient mul in (Z/pe)[x]/(modulus)."""
    nA, d = cA.shape
    nB = cB.shape[0]
    if nA == 0 or nB == 0:
        return np.zeros((0, 2), np.int64), np.zeros((0, d), np.int64)
    ee = (eA[:, None, :] + eB[None, :, :]).reshape(nA * nB, 2)
    full = np.zeros((nA, nB, 2 * d - 1), dtype=np.int64)
    for s in range(d):
        for t in range(d):
            full[:, :, s + t] += (cA[:, s, None] * cB[None, :, t]) % pe
    for k in range(2 * d - 2, d - 1, -1):
        top = full[:, :, k] % pe
        for t in range(d):
            full[:, :, k - d + t] -= top * modred[t]
        full[:, :, k] = 0
    cc = (full[:, :, :d] % pe).reshape(nA * nB, d)
    return _combine_np(ee, cc, pe)


if JIT_ENABLED:

    @njit(cache=True)
    def _combine_jit(exps, coefs, pe):  # pragma: no cover - numba
        n = exps.shape[0]
        d = coefs.shape[1]
        if n == 0:
            return exps, coefs
        keys = np.empty(n, np.int64)
        for i in range(n):
            keys[i] = (exps[i, 0] + _OFF) * _SHIFT + (exps[i, 1] + _OFF)
        order = np.argsort(keys)
        out_e = np.empty((n, 2), np.int64)
        out_c = np.zeros((n, d), np.int64)
        m = -1
        prev = np.int64(-1)
        for idx in range(n):
            i = order[idx]
            if keys[i] != prev:
                m += 1
                prev = keys[i]
                out_e[m, 0] = exps[i, 0]
                out_e[m, 1] = exps[i, 1]
            for t in range(d):
                out_c[m, t] = (out_c[m, t] + coefs[i, t]) % pe
        # drop zero rows
        w = 0
        for r in range(m + 1):
            nz = False
            for t in range(d):
                if out_c[r, t] != 0:
                    nz = True
                    break
            if nz:
                out_e[w, 0] = out_e[r, 0]
                out_e[w, 1] = out_e[r, 1]
                for t in range(d):
                    out_c[w, t] = out_c[r, t]
                w += 1
        return out_e[:w].copy(), out_c[:w].copy()

    @njit(cache=True)
    def _conv_jit(eA, cA, eB, cB, modred, pe):  # pragma: no cover - numba
        nA = cA.shape[0]
        d = cA.shape[1]
        nB = cB.shape[0]
        if nA == 0 or nB == 0:
            return np.zeros((0, 2), np.int64), np.zeros((0, d), np.int64)
        ee = np.empty((nA * nB, 2), np.int64)
        cc = np.empty((nA * nB, d), np.int64)
        tmp = np.empty(2 * d - 1, np.int64)
        idx = 0
        for i in range(nA):
            for j in range(nB):
                ee[idx, 0] = eA[i, 0] + eB[j, 0]
                ee[idx, 1] = eA[i, 1] + eB[j, 1]
                for k in range(2 * d - 1):
                    tmp[k] = 0
                for s in range(d):
                    a = cA[i, s]
                    if a == 0:
                        continue
                    for t in range(d):
                        tmp[s + t] = (tmp[s + t] + a * cB[j, t]) % pe
                for k in range(2 * d - 2, d - 1, -1):
                    top = tmp[k]
                    if top != 0:
                        for t in range(d):
                            tmp[k - d + t] = (tmp[k - d + t] - top * modred[t]) % pe
                for t in range(d):
                    cc[idx, t] = tmp[t]
                idx += 1
        return _combine_jit(ee, cc, pe)

    series_conv = _conv_jit
    series_combine = _combine_jit
else:
    series_conv = _conv_np
    series_combine = _combine_np
