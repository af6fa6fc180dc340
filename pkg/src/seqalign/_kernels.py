"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The dynamic program over the monotone alignment lattice is the only loop
that dominates runtime at scale.  Set ``SEQALIGN_DISABLE_NUMBA=1`` to force
the numpy implementation (useful for debugging and for the benchmark in
``benchmarks/bench_lmo.py``).
"""

import os

import numpy as np

_DISABLE = os.environ.get("SEQALIGN_DISABLE_NUMBA", "0").lower() in ("1", "true", "yes")

HAVE_NUMBA = False
if not _DISABLE:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        pass


def _dp_align_numpy(cost):
    """Suffix-cost DP over monotone unit-step paths, vectorized over rows.

    ``cost`` is a (J, I) float64 matrix; forbidden cells carry +inf.
    Returns (value, path) where path[i] is the 0-based row assigned to
    column i.  Ties prefer staying on the current row.
    """
    J, I = cost.shape
    S = np.full((J, I), np.inf)
    S[J - 1, I - 1] = cost[J - 1, I - 1]
    shifted = np.empty(J)
    for i in range(I - 2, -1, -1):
        nxt = S[:, i + 1]
        shifted[:-1] = nxt[1:]
        shifted[-1] = np.inf
        jlo = max(0, J - I + i)
        jhi = min(J - 1, i)
        sl = slice(jlo, jhi + 1)
        S[sl, i] = cost[sl, i] + np.minimum(nxt[sl], shifted[sl])
    value = S[0, 0]
    path = np.empty(I, dtype=np.int64)
    path[0] = 0
    j = 0
    for i in range(1, I):
        if j + 1 < J and S[j + 1, i] < S[j, i]:
            j += 1
        path[i] = j
    return value, path


def _dp_align_loops(cost):
    J, I = cost.shape
    S = np.full((J, I), np.inf)
    S[J - 1, I - 1] = cost[J - 1, I - 1]
    for i in range(I - 2, -1, -1):
        jlo = max(0, J - I + i)
        jhi = min(J - 1, i)
        for j in range(jlo, jhi + 1):
            best = S[j, i + 1]
            if j + 1 < J and S[j + 1, i + 1] < best:
                best = S[j + 1, i + 1]
            S[j, i] = cost[j, i] + best
    value = S[0, 0]
    path = np.empty(I, dtype=np.int64)
    path[0] = 0
    j = 0
    for i in range(1, I):
        if j + 1 < J and S[j + 1, i] < S[j, i]:
            j += 1
        path[i] = j
    return value, path


if HAVE_NUMBA:
    _dp_align_numba = njit(cache=True)(_dp_align_loops)
    dp_align = _dp_align_numba
else:
    dp_align = _dp_align_numpy
