# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairwise-distance kernels over CSR document rows.

Mirrors ``_pykernels`` operation for operation; both must stay bit-identical
(compile without FMA contraction).
"""
from libc.math cimport NAN

ctypedef long long idx_t

cdef double COSINE_SNAP = 1e-12


cdef inline double _dot(const idx_t[::1] indptr, const idx_t[::1] indices,
                        const double[::1] data, idx_t ra, idx_t rb) nogil:
    cdef idx_t i = indptr[ra], iend = indptr[ra + 1]
    cdef idx_t j = indptr[rb], jend = indptr[rb + 1]
    cdef double total = 0.0
    cdef idx_t ti, tj
    while i < iend and j < jend:
        ti = indices[i]
        tj = indices[j]
        if ti == tj:
            total += data[i] * data[j]
            i += 1
            j += 1
        elif ti < tj:
            i += 1
        else:
            j += 1
    if total > 1.0 - COSINE_SNAP:
        return 1.0
    return total


cdef inline double _mean_distance(const idx_t[::1] indptr, const idx_t[::1] indices,
                                  const double[::1] data,
                                  const idx_t[::1] a_rows, idx_t a0, idx_t a1,
                                  const idx_t[::1] b_rows, idx_t b0, idx_t b1) nogil:
    cdef double total = 0.0
    cdef idx_t ia, ib
    if a1 <= a0 or b1 <= b0:
        return NAN
    for ia in range(a0, a1):
        for ib in range(b0, b1):
            total += 1.0 - _dot(indptr, indices, data, a_rows[ia], b_rows[ib])
    return total / <double>((a1 - a0) * (b1 - b0))


def sparse_dot(const idx_t[::1] indptr, const idx_t[::1] indices,
               const double[::1] data, idx_t ra, idx_t rb):
    return _dot(indptr, indices, data, ra, rb)


def mean_pair_distance(const idx_t[::1] indptr, const idx_t[::1] indices,
                       const double[::1] data,
                       const idx_t[::1] a_rows, const idx_t[::1] b_rows):
    return _mean_distance(indptr, indices, data, a_rows, 0, a_rows.shape[0],
                          b_rows, 0, b_rows.shape[0])


def contribution_batch(const idx_t[::1] indptr, const idx_t[::1] indices,
                       const double[::1] data,
                       const idx_t[::1] a_ptr, const idx_t[::1] a_rows,
                       const idx_t[::1] b_ptr, const idx_t[::1] b_rows,
                       double[::1] out):
    cdef idx_t p, n = out.shape[0]
    with nogil:
        for p in range(n):
            out[p] = _mean_distance(indptr, indices, data,
                                    a_rows, a_ptr[p], a_ptr[p + 1],
                                    b_rows, b_ptr[p], b_ptr[p + 1])
