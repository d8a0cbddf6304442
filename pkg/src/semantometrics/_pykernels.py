"""Pure-Python fallback for the compiled kernels in ``_ckernels.pyx``.

Same loop structure and summation order, so results are bit-identical.
"""
import math

COSINE_SNAP = 1e-12


def _dot(indptr, indices, data, ra, rb):
    i, iend = indptr[ra], indptr[ra + 1]
    j, jend = indptr[rb], indptr[rb + 1]
    total = 0.0
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
    return 1.0 if total > 1.0 - COSINE_SNAP else total


def _mean_distance(indptr, indices, data, a_rows, a0, a1, b_rows, b0, b1):
    if a1 <= a0 or b1 <= b0:
        return math.nan
    total = 0.0
    for ia in range(a0, a1):
        ra = a_rows[ia]
        for ib in range(b0, b1):
            total += 1.0 - _dot(indptr, indices, data, ra, b_rows[ib])
    return total / float((a1 - a0) * (b1 - b0))


def sparse_dot(indptr, indices, data, ra, rb):
    return _dot(indptr.tolist(), indices.tolist(), data.tolist(), int(ra), int(rb))


def mean_pair_distance(indptr, indices, data, a_rows, b_rows):
    a_rows = a_rows.tolist()
    b_rows = b_rows.tolist()
    return _mean_distance(indptr.tolist(), indices.tolist(), data.tolist(),
                          a_rows, 0, len(a_rows), b_rows, 0, len(b_rows))


def contribution_batch(indptr, indices, data, a_ptr, a_rows, b_ptr, b_rows, out):
    indptr, indices, data = indptr.tolist(), indices.tolist(), data.tolist()
    a_ptr, a_rows, b_ptr, b_rows = a_ptr.tolist(), a_rows.tolist(), b_ptr.tolist(), b_rows.tolist()
    for p in range(len(out)):
        out[p] = _mean_distance(indptr, indices, data,
                                a_rows, a_ptr[p], a_ptr[p + 1],
                                b_rows, b_ptr[p], b_ptr[p + 1])
