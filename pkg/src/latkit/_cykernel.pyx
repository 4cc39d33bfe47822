# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend: bit-packed OSD reprocessing and codebook walks.

Must match latkit._pykernel decision-for-decision: same reliability sort,
same pivoting, same candidate order, same tie handling.  Scores are float64
sums taken in bit-index order, so the last ulp can differ from the numpy
dot product in the fallback; ties at that scale are measure-zero for
continuous inputs.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, uint64_t

cnp.import_array()

cdef extern from *:
    """
    static inline int latkit_ctz64(unsigned long long x)
    { return __builtin_ctzll(x); }
    static inline int latkit_popcount64(unsigned long long x)
    { return __builtin_popcountll(x); }
    """
    int latkit_ctz64(unsigned long long x) nogil
    int latkit_popcount64(unsigned long long x) nogil

BACKEND = "cython"


cdef inline double _score(uint64_t * cand, double * wvec, int nwords) nogil:
    cdef double s = 0.0
    cdef uint64_t x
    cdef int wd, base
    for wd in range(nwords):
        x = cand[wd]
        base = wd << 6
        while x:
            s += wvec[base + latkit_ctz64(x)]
            x &= x - 1
    return s


def osd_decode_batch(gen_bits, ys, int order, cap=None):
    """Order-l OSD decode of a batch of soft words against one generator."""
    gen_u8 = np.ascontiguousarray(gen_bits, dtype=np.uint8)
    ys2 = np.ascontiguousarray(np.atleast_2d(ys), dtype=np.float64)
    cdef int k = gen_u8.shape[0]
    cdef int n = gen_u8.shape[1]
    cdef int nbatch = ys2.shape[0]
    cdef int nwords = (n + 63) >> 6
    if order > k:
        order = k
    cdef long long budget = -1
    if cap is not None:
        budget = int(cap)

    rel = np.abs(ys2 - 0.5)
    perms = np.ascontiguousarray(np.argsort(-rel, axis=1, kind="stable"), dtype=np.int64)

    out = np.empty((nbatch, n), dtype=np.uint8)

    cdef uint8_t[:, ::1] gen = gen_u8
    cdef double[:, ::1] yv = ys2
    cdef int64_t[:, ::1] pv = perms
    cdef uint8_t[:, ::1] ov = out

    work_np = np.empty((k, nwords), dtype=np.uint64)
    cdef uint64_t[:, ::1] work = work_np
    buf_np = np.empty((4, nwords), dtype=np.uint64)  # c0, cand, best, swap
    cdef uint64_t[:, ::1] buf = buf_np
    yp_np = np.empty(n, dtype=np.float64)
    cdef double[::1] yp = yp_np
    wvec_np = np.empty(n, dtype=np.float64)
    cdef double[::1] wvec = wvec_np
    mrb_np = np.empty(k, dtype=np.int64)
    cdef int64_t[::1] mrb = mrb_np
    comb_np = np.empty(order if order > 0 else 1, dtype=np.int64)
    cdef int64_t[::1] comb = comb_np

    cdef int b, r, rr, col, wd, bit, j, piv, wgt, x, ok
    cdef long long produced
    cdef uint64_t mask
    cdef double s, best_score
    cdef bint exhausted

    for b in range(nbatch):
        # Permute observation and generator columns by descending reliability.
        for j in range(n):
            yp[j] = yv[b, pv[b, j]]
            wvec[j] = 1.0 - 2.0 * yp[j]
        for r in range(k):
            for wd in range(nwords):
                work[r, wd] = 0
            for j in range(n):
                if gen[r, pv[b, j]]:
                    work[r, j >> 6] |= (<uint64_t> 1) << (j & 63)

        # Full row reduction; dependent columns are skipped rightward.
        r = 0
        ok = 0
        for col in range(n):
            wd = col >> 6
            mask = (<uint64_t> 1) << (col & 63)
            piv = -1
            for rr in range(r, k):
                if work[rr, wd] & mask:
                    piv = rr
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(nwords):
                    buf[3, j] = work[r, j]
                    work[r, j] = work[piv, j]
                    work[piv, j] = buf[3, j]
            for rr in range(k):
                if rr != r and (work[rr, wd] & mask):
                    for j in range(nwords):
                        work[rr, j] ^= work[r, j]
            mrb[r] = col
            r += 1
            if r == k:
                ok = 1
                break
        if not ok:
            raise ValueError(f"generator rank {r} < {k}")

        # Order-0 candidate: re-encode hard decisions on the MRB.
        for j in range(nwords):
            buf[0, j] = 0
        for r in range(k):
            if yp[mrb[r]] > 0.5:
                for j in range(nwords):
                    buf[0, j] ^= work[r, j]
        best_score = _score(&buf[0, 0], &wvec[0], nwords)
        for j in range(nwords):
            buf[2, j] = buf[0, j]

        # Reprocess test-error patterns: weight ascending, lexicographic.
        produced = 0
        exhausted = budget == 0
        for wgt in range(1, order + 1):
            if exhausted:
                break
            if wgt > k:
                break
            for x in range(wgt):
                comb[x] = x
            while True:
                for j in range(nwords):
                    buf[1, j] = buf[0, j]
                for x in range(wgt):
                    for j in range(nwords):
                        buf[1, j] ^= work[comb[x], j]
                s = _score(&buf[1, 0], &wvec[0], nwords)
                if s < best_score:
                    best_score = s
                    for j in range(nwords):
                        buf[2, j] = buf[1, j]
                produced += 1
                if budget >= 0 and produced >= budget:
                    exhausted = True
                    break
                x = wgt - 1
                while x >= 0 and comb[x] == k - wgt + x:
                    x -= 1
                if x < 0:
                    break
                comb[x] += 1
                for j in range(x + 1, wgt):
                    comb[j] = comb[j - 1] + 1

        # Undo the column permutation.
        for j in range(n):
            ov[b, pv[b, j]] = 1 if (buf[2, j >> 6] >> (j & 63)) & 1 else 0

    return out


def weight_profile(gen_bits):
    """Exact (min nonzero weight, multiplicity) via a Gray-code codebook walk."""
    gen_u8 = np.ascontiguousarray(gen_bits, dtype=np.uint8)
    cdef int k = gen_u8.shape[0]
    cdef int n = gen_u8.shape[1]
    cdef int nwords = (n + 63) >> 6
    if k > 62:
        raise ValueError("weight_profile limited to k <= 62")

    rows_np = np.zeros((k, nwords), dtype=np.uint64)
    cdef uint64_t[:, ::1] rows = rows_np
    cdef uint8_t[:, ::1] gen = gen_u8
    cdef int r, j
    for r in range(k):
        for j in range(n):
            if gen[r, j]:
                rows[r, j >> 6] |= (<uint64_t> 1) << (j & 63)

    cw_np = np.zeros(nwords, dtype=np.uint64)
    cdef uint64_t[::1] cw = cw_np
    cdef int best = n + 1
    cdef long long count = 0
    cdef unsigned long long i, total = (<unsigned long long> 1) << k
    cdef int w, flip
    with nogil:
        i = 1
        while i < total:
            flip = latkit_ctz64(i)
            for j in range(nwords):
                cw[j] ^= rows[flip, j]
            w = 0
            for j in range(nwords):
                w += latkit_popcount64(cw[j])
            if w < best:
                best = w
                count = 1
            elif w == best:
                count += 1
            i += 1
    return best, int(count)
