# cython: boundscheck=False, wraparound=False, cdivision=True
"""Selected inversion of a sparse LDL^T factor (Takahashi recursion).

Given the unit lower-triangular factor L and diagonal d of Q = L D L^T, the
recursion fills the entries of Sigma = Q^{-1} restricted to the sparsity
pattern of L, sweeping columns from last to first:

    Sigma[i, j] = -sum_k L[k, j] * Sigma[k, i]        for i in col j, i > j
    Sigma[j, j] = 1/d[j] - sum_k L[k, j] * Sigma[k, j]

with k ranging over the off-diagonal pattern of column j. Every Sigma entry
referenced on the right-hand side lives in a column > j (or is an
already-computed off-diagonal of column j), so a single reverse sweep
suffices. Cost is sum_j |col_j|^2 * log|col_j|, far below the dense or
column-solve alternatives when the factor is sparse.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline double _lookup(const cnp.int64_t[::1] indptr,
                           const cnp.int64_t[::1] indices,
                           const double[::1] sel,
                           Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    # binary search for row a within column b (indices sorted ascending)
    cdef Py_ssize_t lo = indptr[b]
    cdef Py_ssize_t hi = indptr[b + 1] - 1
    cdef Py_ssize_t mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if indices[mid] == a:
            return sel[mid]
        elif indices[mid] < a:
            lo = mid + 1
        else:
            hi = mid - 1
    return 0.0


def takahashi(const cnp.int64_t[::1] indptr,
              const cnp.int64_t[::1] indices,
              const double[::1] lvals,
              const double[::1] d):
    """Sigma entries on the lower-triangular pattern of L, CSC data order.

    Parameters
    ----------
    indptr, indices, lvals
        CSC arrays of the unit lower-triangular factor L. Row indices must
        be sorted within each column and the unit diagonal stored first.
    d
        Positive diagonal of D.

    Returns
    -------
    ndarray parallel to ``lvals`` holding Sigma on the same pattern.
    """
    cdef Py_ssize_t n = d.shape[0]
    out = np.zeros(indices.shape[0], dtype=np.float64)
    cdef double[::1] sel = out
    cdef Py_ssize_t j, idx, kk, i, k, a, b, c0, c1
    cdef double s

    with nogil:
        for j in range(n - 1, -1, -1):
            c0 = indptr[j]
            c1 = indptr[j + 1]
            for idx in range(c1 - 1, c0, -1):
                i = indices[idx]
                s = 0.0
                for kk in range(c0 + 1, c1):
                    k = indices[kk]
                    if k >= i:
                        a = k
                        b = i
                    else:
                        a = i
                        b = k
                    s += lvals[kk] * _lookup(indptr, indices, sel, a, b)
                sel[idx] = -s
            s = 0.0
            for kk in range(c0 + 1, c1):
                s += lvals[kk] * sel[kk]
            sel[c0] = 1.0 / d[j] - s

    return out
