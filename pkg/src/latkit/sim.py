"""Monte Carlo AWGN evaluation of construction A lattices.

Pipeline per trial: draw a uniform message, encode to a codeword, transmit
the lattice point x = x_c + 2z (z = 0 by coset invariance), add Gaussian
noise at the variance implied by the configured VNR, fold with mod*, decode
the code level with OSD, recover the integer level by rounding, and count an
error when the decoded lattice point differs from the transmitted one in any
coordinate.

Reproducibility: every trial owns a counter-based RNG substream keyed by
(seed, trial index), so results are bit-identical for a given (seed, config)
no matter how trials are scheduled across workers.  Trials advance in fixed
batches; the early-stop check runs at batch boundaries only, so the error
count may overshoot min_errors but the reported trial count is exact.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .binmat import BitMatrix, BitVector, encode_bits
from .bound import sigma2_from_vnr
from .codes import BinaryCode
from .errors import DimensionMismatchError, InvalidParamsError
from .osd import OsdConfig, OsdDecoder

BATCH_TRIALS = 1024  # fixed: independent of worker count


@dataclass(frozen=True)
class SimConfig:
    vnr_db: float
    seed: int = 1
    min_errors: int = 100
    max_trials: int = 1_000_000
    osd_order: int = 2
    workers: int = 1

    def __post_init__(self):
        if self.min_errors < 1 or self.max_trials < 1:
            raise InvalidParamsError("need min_errors >= 1 and max_trials >= 1")
        if self.workers < 1:
            raise InvalidParamsError("need workers >= 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidParamsError("seed must fit in 64 bits")


@dataclass(frozen=True)
class WEREstimate:
    trials: int
    errors: int
    wer: float
    ci95: tuple[float, float]
    seed: int
    vnr_db: float

    def csv_row(self) -> str:
        return (
            f"{self.vnr_db:.3f},{self.trials},{self.errors},{self.wer:.4e},"
            f"{self.ci95[0]:.4e},{self.ci95[1]:.4e},{self.seed}"
        )

    CSV_HEADER = "vnr_db,trials,errors,wer,ci_low,ci_high,seed"


def encode_point(u: BitVector, z: np.ndarray, code: BinaryCode) -> np.ndarray:
    """Lattice point x = x_c + 2z for message u and integer vector z."""
    z = np.asarray(z)
    if u.n != code.k or z.size != code.n:
        raise DimensionMismatchError(
            f"need len(u) = {code.k} and len(z) = {code.n}, got {u.n} and {z.size}"
        )
    return code.encode(u).to_bits().astype(np.float64) + 2.0 * z.astype(np.float64)


def mod_star(y: np.ndarray) -> np.ndarray:
    """Fold channel output into [0, 1] preserving distances to {0, 1}:
    |mod_2(y + 1) - 1| componentwise."""
    return np.abs(np.mod(np.asarray(y, dtype=np.float64) + 1.0, 2.0) - 1.0)


def decode_point(y: np.ndarray, code: BinaryCode,
                 cfg: OsdConfig | None = None) -> tuple[BitVector, np.ndarray, np.ndarray]:
    """Two-stage decode: OSD on the folded word, then integer recovery.

    Returns (codeword estimate, integer estimate, lattice point estimate).
    Half-integer rounding ties go to even (numpy rint), a measure-zero event.
    """
    y = np.asarray(y, dtype=np.float64)
    xc_hat = OsdDecoder(code, cfg).decode(mod_star(y))
    z_hat = np.rint((y - xc_hat.to_bits()) / 2.0)
    x_hat = xc_hat.to_bits().astype(np.float64) + 2.0 * z_hat
    return xc_hat, z_hat.astype(np.int64), x_hat


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Counter-based substream for one trial; key = (seed, trial)."""
    return np.random.Generator(np.random.Philox(key=(seed << 64) | trial))


def _run_slice(gen_bits_bytes: bytes, k: int, n: int, sigma: float, seed: int,
               start: int, stop: int, osd_order: int, cap, random_z: bool) -> int:
    """Decode trials [start, stop); returns the error count.

    Module-level so worker processes can unpickle it.  Draw order per trial
    is fixed (message, noise, optional z) to keep paired runs comparable.
    """
    gen_bits = np.frombuffer(gen_bits_bytes, dtype=np.uint8).reshape(k, n)
    count = stop - start
    if count <= 0:
        return 0
    msgs = np.empty((count, k), dtype=np.uint8)
    noise = np.empty((count, n), dtype=np.float64)
    zs = np.zeros((count, n), dtype=np.int64)
    for t in range(count):
        rng = _trial_rng(seed, start + t)
        msgs[t] = rng.integers(0, 2, size=k, dtype=np.uint8)
        noise[t] = rng.standard_normal(n)
        if random_z:
            zs[t] = rng.integers(0, 2, size=n, dtype=np.int64)
    xc = encode_bits(gen_bits, msgs)
    x = xc.astype(np.float64) + 2.0 * zs
    y = x + sigma * noise

    code = BinaryCode(name="sim", n=n, k=k, gen=BitMatrix.from_bits(gen_bits))
    dec = OsdDecoder(code, OsdConfig(order=osd_order, reprocess_cap=cap))
    xc_hat = dec.decode_batch(mod_star(y))
    z_hat = np.rint((y - xc_hat) / 2.0)
    x_hat = xc_hat + 2.0 * z_hat
    return int(np.any(x_hat != x, axis=1).sum())


def _confidence_interval(errors: int, trials: int) -> tuple[float, float]:
    wer = errors / trials
    if errors == 0:
        # one-sided exact 95% upper bound
        return 0.0, 1.0 - 0.05 ** (1.0 / trials)
    half = 1.96 * math.sqrt(wer * (1.0 - wer) / trials)
    return max(0.0, wer - half), min(1.0, wer + half)


def simulate_wer(code: BinaryCode, cfg: SimConfig, *, random_z: bool = False) -> WEREstimate:
    """Monte Carlo WER until min_errors error events or max_trials trials.

    random_z transmits a random z in {0,1}^n instead of z = 0; it exists to
    demonstrate coset invariance and shares the message/noise draws with the
    z = 0 run at equal seed.
    """
    sigma = math.sqrt(sigma2_from_vnr(cfg.vnr_db, code.rate))
    gen_bytes = code.gen_bits().tobytes()
    errors = 0
    trials = 0
    pool = ProcessPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
    try:
        while trials < cfg.max_trials and errors < cfg.min_errors:
            batch = min(BATCH_TRIALS, cfg.max_trials - trials)
            if pool is None:
                errors += _run_slice(gen_bytes, code.k, code.n, sigma, cfg.seed,
                                     trials, trials + batch, cfg.osd_order, None, random_z)
            else:
                bounds = np.linspace(trials, trials + batch, cfg.workers + 1, dtype=np.int64)
                futures = [
                    pool.submit(_run_slice, gen_bytes, code.k, code.n, sigma, cfg.seed,
                                int(a), int(b), cfg.osd_order, None, random_z)
                    for a, b in zip(bounds[:-1], bounds[1:])
                ]
                errors += sum(f.result() for f in futures)
            trials += batch
    finally:
        if pool is not None:
            pool.shutdown()
    return WEREstimate(
        trials=trials,
        errors=errors,
        wer=errors / trials,
        ci95=_confidence_interval(errors, trials),
        seed=cfg.seed,
        vnr_db=cfg.vnr_db,
    )
