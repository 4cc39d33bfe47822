"""Pure-numpy kernel backend.

Reference implementation of the two hot loops (OSD candidate reprocessing
and codebook weight enumeration).  latkit._cykernel implements the same
contracts in C; latkit.kernels picks whichever is available.  Both backends
must enumerate candidates in the same order (weight ascending, then
lexicographic) and break score ties toward the earlier candidate.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import RankDeficientError

BACKEND = "python"


def _pattern_indices(k: int, order: int, cap) -> list[np.ndarray]:
    """Test-error patterns as per-weight index arrays, cap applied cumulatively."""
    out = []
    budget = math.inf if cap is None else int(cap)
    for wgt in range(1, order + 1):
        if budget <= 0:
            break
        combos = np.array(list(itertools.combinations(range(k), wgt)), dtype=np.int64)
        if combos.shape[0] > budget:
            combos = combos[: int(budget)]
        budget -= combos.shape[0]
        out.append(combos)
    return out


def _eliminate(m: np.ndarray) -> np.ndarray:
    """In-place full row reduction with rightward skip of dependent columns.

    Returns the pivot column of each row (the most-reliable-basis positions
    when columns were pre-sorted by reliability).
    """
    k, n = m.shape
    mrb = np.empty(k, dtype=np.int64)
    r = 0
    for col in range(n):
        nz = np.nonzero(m[r:, col])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        rows = np.nonzero(m[:, col])[0]
        rows = rows[rows != r]
        if rows.size:
            m[rows] ^= m[r]
        mrb[r] = col
        r += 1
        if r == k:
            break
    if r < k:
        raise RankDeficientError(f"generator rank {r} < {k}")
    return mrb


def osd_decode_batch(gen_bits: np.ndarray, ys: np.ndarray, order: int,
                     cap=None) -> np.ndarray:
    """Order-l OSD decode of a batch of soft words against one generator.

    gen_bits: (k, n) uint8 generator; ys: (B, n) float64 observations in
    [0, 1].  Returns (B, n) uint8 codewords in original column order.
    """
    gen_bits = np.ascontiguousarray(gen_bits, dtype=np.uint8)
    ys = np.ascontiguousarray(np.atleast_2d(ys), dtype=np.float64)
    k, n = gen_bits.shape
    order = min(order, k)
    rel = np.abs(ys - 0.5)
    perms = np.argsort(-rel, axis=1, kind="stable")
    patterns = _pattern_indices(k, order, cap)
    out = np.empty((ys.shape[0], n), dtype=np.uint8)
    for b in range(ys.shape[0]):
        perm = perms[b]
        yp = ys[b, perm]
        work = gen_bits[:, perm].copy()
        mrb = _eliminate(work)
        wvec = 1.0 - 2.0 * yp
        u0 = (yp[mrb] > 0.5).astype(np.uint8)
        c0 = (u0.astype(np.uint32) @ work.astype(np.uint32) % 2).astype(np.uint8)
        best = c0
        best_score = float(c0.astype(np.float64) @ wvec)
        for combos in patterns:
            cands = np.bitwise_xor.reduce(work[combos], axis=1) ^ c0
            scores = cands.astype(np.float64) @ wvec
            j = int(np.argmin(scores))
            if scores[j] < best_score:
                best_score = float(scores[j])
                best = cands[j]
        out[b, perm] = best
    return out


def weight_profile(gen_bits: np.ndarray) -> tuple[int, int]:
    """Exact (min nonzero weight, multiplicity) via a Gray-code codebook walk."""
    gen_bits = np.asarray(gen_bits, dtype=np.uint8)
    k, n = gen_bits.shape
    rows = [int.from_bytes(np.packbits(gen_bits[i], bitorder="little").tobytes(), "little")
            for i in range(k)]
    best = n + 1
    count = 0
    cw = 0
    for i in range(1, 1 << k):
        cw ^= rows[(i & -i).bit_length() - 1]
        w = cw.bit_count()
        if w < best:
            best = w
            count = 1
        elif w == best:
            count += 1
    return best, count
