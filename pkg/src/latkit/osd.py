"""Order-l ordered-statistics decoding over soft inputs in [0, 1].

Observations arrive in the folded domain produced by the mod* front-end, so
bit reliabilities are distances from the decision threshold, r_j = |y_j -
0.5|, and candidates are scored by squared Euclidean distance to the
observation.  The decoder re-encodes the hard decision over the most
reliable independent basis (MRB) plus every test-error pattern of weight up
to l over the MRB positions and keeps the closest candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .binmat import BitVector
from .codes import BinaryCode
from .errors import DimensionMismatchError, InvalidParamsError


@dataclass(frozen=True)
class SoftWord:
    """Length-n folded-domain observation, entries in [0, 1]."""

    values: np.ndarray

    @classmethod
    def make(cls, values) -> "SoftWord":
        arr = np.asarray(values, dtype=np.float64).ravel()
        if arr.size == 0:
            raise DimensionMismatchError("soft word must have length >= 1")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise InvalidParamsError("soft word entries must lie in [0, 1]")
        return cls(arr)

    @property
    def n(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class OsdConfig:
    """Reprocessing order and optional cap on test patterns."""

    order: int = 2
    reprocess_cap: int | None = None

    def __post_init__(self):
        if self.order < 0:
            raise InvalidParamsError(f"order must be >= 0, got {self.order}")
        if self.reprocess_cap is not None and self.reprocess_cap < 0:
            raise InvalidParamsError("reprocess_cap must be >= 0")


def candidate_count(k: int, order: int) -> int:
    """Number of reprocessed test patterns beyond the order-0 candidate."""
    if order > k:
        raise InvalidParamsError(f"order {order} exceeds dimension {k}")
    return sum(math.comb(k, i) for i in range(1, order + 1))


class OsdDecoder:
    """Reusable decoder bound to one code; holds the unpacked generator.

    Instances are cheap and independent; build one per worker.  The kernel
    backend (compiled or pure) is chosen at import time, see latkit.kernels.
    """

    def __init__(self, code: BinaryCode, cfg: OsdConfig | None = None,
                 backend: str | None = None):
        cfg = cfg or OsdConfig()
        if cfg.order > code.k:
            raise InvalidParamsError(f"order {cfg.order} exceeds code dimension {code.k}")
        self.code = code
        self.cfg = cfg
        self._gen_bits = code.gen_bits()
        self._kernel = kernels.get_backend(backend)

    def decode_batch(self, ys: np.ndarray) -> np.ndarray:
        """Decode (B, n) soft observations to (B, n) codeword bits."""
        ys = np.atleast_2d(np.asarray(ys, dtype=np.float64))
        if ys.shape[1] != self.code.n:
            raise DimensionMismatchError(
                f"soft words have length {ys.shape[1]}, code length is {self.code.n}"
            )
        return self._kernel.osd_decode_batch(
            self._gen_bits, ys, self.cfg.order, self.cfg.reprocess_cap
        )

    def decode(self, y: SoftWord | np.ndarray) -> BitVector:
        values = y.values if isinstance(y, SoftWord) else np.asarray(y, dtype=np.float64)
        return BitVector.from_bits(self.decode_batch(values[None, :])[0])


def osd_decode(y: SoftWord | np.ndarray, code: BinaryCode,
               cfg: OsdConfig | None = None) -> BitVector:
    """One-shot order-l OSD decode; returns the winning codeword."""
    return OsdDecoder(code, cfg).decode(y)
