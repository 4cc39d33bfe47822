"""Polar code construction and analytic minimum-weight multiplicity.

Rows of the n x n polar transform (m-fold Kronecker power of [[1,0],[1,1]])
are subset indicators: row i has ones exactly at columns j with j & ~i == 0,
so wt(row i) = 2^popcount(i).  For information sets closed under the index
partial order, the number tau_c of minimum-weight codewords has a closed
form over the minimum-weight rows alone; non-closed sets fall back to
codebook enumeration (small k only).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .binmat import BitMatrix
from .codes import ENUMERATION_BOUND, BinaryCode, CodeFamily, brute_force_weight_profile
from .errors import InfeasibleError, InvalidParamsError, PartialOrderViolatedError

MAX_M = 10
EXHAUSTIVE_COMPLETION_LIMIT = 10**6


@lru_cache(maxsize=None)
def _transform_rows(m: int) -> tuple[int, ...]:
    """Rows of the polar transform as packed ints (bit j = column j)."""
    if not 1 <= m <= MAX_M:
        raise InvalidParamsError(f"need 1 <= m <= {MAX_M}, got {m}")
    rows = [1]
    for stage in range(m):
        half = 1 << stage
        rows = rows + [r | (r << half) for r in rows]
    return tuple(rows)


def polar_transform(m: int) -> BitMatrix:
    """n x n binary polar transform, n = 2^m; lower triangular, unit diagonal."""
    return BitMatrix.from_row_ints(list(_transform_rows(m)), 1 << m)


def _dominates(j: int, i: int) -> bool:
    """Index partial order: j >= i iff the 1-positions of i match injectively
    into 1-positions of j that are at least as significant (this closure of
    bitwise containment plus moving a 1 leftward)."""
    pi = [t for t in range(i.bit_length()) if i >> t & 1]
    pj = [t for t in range(j.bit_length()) if j >> t & 1]
    if len(pj) < len(pi):
        return False
    pi.reverse()
    pj.reverse()
    return all(qj >= qi for qi, qj in zip(pi, pj))


def check_partial_order(info_set, m: int) -> bool:
    """True iff the information set is closed upward under the index order."""
    n = 1 << m
    members = set(info_set)
    if any(not 0 <= i < n for i in members):
        raise InvalidParamsError(f"info set indices must lie in [0, {n - 1}]")
    outside = [j for j in range(n) if j not in members]
    return not any(_dominates(j, i) for i in members for j in outside)


@dataclass(frozen=True)
class PolarSpec:
    """Information set of a length-2^m polar code."""

    m: int
    info_set: tuple[int, ...]
    satisfies_partial_order: bool

    @classmethod
    def make(cls, m: int, info_set) -> "PolarSpec":
        info = tuple(sorted(set(int(i) for i in info_set)))
        if not info:
            raise InvalidParamsError("info set must be nonempty")
        if info[0] < 0 or info[-1] >= (1 << m):
            raise InvalidParamsError(f"info set indices must lie in [0, {(1 << m) - 1}]")
        return cls(m=m, info_set=info, satisfies_partial_order=check_partial_order(info, m))

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def k(self) -> int:
        return len(self.info_set)

    @property
    def d_c(self) -> int:
        return min(1 << i.bit_count() for i in self.info_set)

    def min_weight_rows(self) -> tuple[int, ...]:
        d = self.d_c
        return tuple(i for i in self.info_set if 1 << i.bit_count() == d)

    def to_string(self) -> str:
        return f"polar:m={self.m}:info={','.join(str(i) for i in self.info_set)}"


@lru_cache(maxsize=None)
def _log2_multiplicity_share(m: int, i: int) -> int:
    """|K_i|: rows j > i with wt(g_j) >= wt(g_i ^ g_j) = wt(g_i)."""
    rows = _transform_rows(m)
    gi, wi = rows[i], rows[i].bit_count()
    count = 0
    for j in range(i + 1, 1 << m):
        gj = rows[j]
        if gj.bit_count() >= wi and (gi ^ gj).bit_count() == wi:
            count += 1
    return count


def multiplicity_partial_order(spec: PolarSpec) -> int:
    """tau_c of a partial-order spec: sum over minimum-weight rows of 2^|K_i|.

    Depends only on the minimum-weight subset of the information set.
    """
    if not spec.satisfies_partial_order or not check_partial_order(spec.info_set, spec.m):
        raise PartialOrderViolatedError(
            "information set is not closed under the index partial order"
        )
    return sum(1 << _log2_multiplicity_share(spec.m, i) for i in spec.min_weight_rows())


def polar_generator(spec: PolarSpec) -> BinaryCode:
    """BinaryCode whose generator rows are the info-set rows of the transform.

    For partial-order specs the derived d_c (minimum row weight) is the true
    minimum distance and tau_c comes from the analytic multiplicity;
    otherwise both are left unknown.
    """
    rows = _transform_rows(spec.m)
    gen = BitMatrix.from_row_ints([rows[i] for i in spec.info_set], spec.n)
    d_c = tau = None
    if spec.satisfies_partial_order:
        d_c = spec.d_c
        tau = multiplicity_partial_order(spec)
    return BinaryCode(
        name=f"polar({spec.n},{spec.k},{d_c if d_c else '?'})",
        n=spec.n,
        k=spec.k,
        gen=gen,
        d_c=d_c,
        tau_c=tau,
        family=CodeFamily.POLAR,
    )


def _closed_within_weight_class(chosen: set[int], candidates: set[int]) -> bool:
    """Closure check restricted to rows of one weight: dominators inside the
    class must already be chosen (heavier rows are always included)."""
    return all(
        j in chosen
        for i in chosen
        for j in candidates
        if j != i and _dominates(j, i)
    )


def design_polar(m: int, target_dc: int, k: int) -> PolarSpec:
    """Partial-order polar design at a target minimum distance and dimension.

    All rows heavier than target_dc are taken (no rate loss); the remaining
    k - |heavy| rows are chosen among weight-target_dc rows so the set stays
    closed under the partial order and tau_c is minimal.  The search is
    exhaustive while the number of completions is small, greedy beyond that;
    ties go to the lexicographically smallest index set.
    """
    if target_dc < 1 or target_dc & (target_dc - 1):
        raise InfeasibleError(f"row weights are powers of two; target d_c {target_dc} is not")
    n = 1 << m
    t = target_dc.bit_length() - 1
    if t > m:
        raise InfeasibleError(f"no rows of weight {target_dc} at m={m}")
    heavy = [i for i in range(n) if i.bit_count() > t]
    weight_class = [i for i in range(n) if i.bit_count() == t]
    need = k - len(heavy)
    if need < 1 or need > len(weight_class):
        raise InfeasibleError(
            f"k={k} unreachable at d_c={target_dc} (|heavy|={len(heavy)}, "
            f"|weight class|={len(weight_class)})"
        )

    cand = set(weight_class)
    share = {i: 1 << _log2_multiplicity_share(m, i) for i in weight_class}

    n_comb = math.comb(len(weight_class), need)
    best: tuple[int, tuple[int, ...]] | None = None
    if n_comb <= EXHAUSTIVE_COMPLETION_LIMIT:
        for combo in itertools.combinations(sorted(weight_class), need):
            if not _closed_within_weight_class(set(combo), cand):
                continue
            tau = sum(share[i] for i in combo)
            key = (tau, combo)
            if best is None or key < best:
                best = key
        if best is None:
            raise InfeasibleError("no partial-order completion exists")
        chosen = list(best[1])
    else:
        # Greedy: repeatedly add the admissible row (all same-weight dominators
        # already chosen) with the smallest multiplicity share.
        chosen_set: set[int] = set()
        while len(chosen_set) < need:
            admissible = [
                i for i in weight_class
                if i not in chosen_set
                and all(j in chosen_set for j in weight_class
                        if j != i and _dominates(j, i))
            ]
            if not admissible:
                raise InfeasibleError("greedy completion stalled; no admissible row")
            chosen_set.add(min(admissible, key=lambda i: (share[i], i)))
        chosen = sorted(chosen_set)

    return PolarSpec.make(m, heavy + chosen)


@dataclass(frozen=True)
class SearchResult:
    spec: PolarSpec
    d_c: int | None
    tau_c: int | None  # None = not determinable (no partial order, k too big)


def search_info_sets(m: int, target_dc: int, k: int, *, tries: int = 200,
                     seed: int = 0) -> list[SearchResult]:
    """Randomized search over information sets that need not be partial-order.

    Keeps every sampled set whose minimum row weight equals target_dc.
    tau_c comes from the analytic form when the set is closed, from codebook
    enumeration when k is within the enumeration bound, and is reported as
    unknown otherwise.  Results are sorted best-known-tau first.
    """
    n = 1 << m
    t = target_dc.bit_length() - 1
    heavy = [i for i in range(n) if i.bit_count() > t]
    weight_class = [i for i in range(n) if i.bit_count() == t]
    need = k - len(heavy)
    if need < 1 or need > len(weight_class):
        raise InfeasibleError(f"k={k} unreachable at d_c={target_dc}")
    rng = random.Random(seed)
    seen: set[tuple[int, ...]] = set()
    out: list[SearchResult] = []
    for _ in range(tries):
        combo = tuple(sorted(rng.sample(weight_class, need)))
        if combo in seen:
            continue
        seen.add(combo)
        spec = PolarSpec.make(m, heavy + list(combo))
        if spec.satisfies_partial_order:
            out.append(SearchResult(spec, spec.d_c, multiplicity_partial_order(spec)))
        elif k <= ENUMERATION_BOUND:
            d, tau = brute_force_weight_profile(polar_generator(spec))
            out.append(SearchResult(spec, d, tau))
        else:
            out.append(SearchResult(spec, None, None))
    out.sort(key=lambda r: (r.tau_c is None, r.tau_c if r.tau_c is not None else 0))
    return out
