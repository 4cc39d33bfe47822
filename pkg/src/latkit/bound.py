"""Truncated-union-bound WER estimation and required-VNR design search.

The word error rate of a lattice under ML decoding is estimated by summing
pairwise error probabilities over the truncated theta terms,

    P_e ~= sum_i tau_i * Q(sqrt(d_i^2 / (4 sigma^2))),

with sigma^2 tied to the volume-to-noise ratio through the component code
rate: sigma^2 = 4^(1-R) / (2 pi e * VNR).  The inverse map (target P_e ->
required VNR) is found by bisection in dB; P_e is strictly decreasing in VNR
so the root is unique.  All probability work runs in the log domain so that
estimates far below double underflow (P_e ~ 1e-47 and beyond) stay usable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import BracketFailureError, DegenerateThetaError, InvalidParamsError, NoCandidatesError
from .theta import TruncatedTheta, code_theta

TWO_PI_E = 2.0 * math.pi * math.e

# Bisection bracket and convergence for required_vnr.
BRACKET_DB = (-5.0, 25.0)
REL_TOL = 1e-6
MAX_ITER = 200


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def q_function(x):
    """Gaussian tail Q(x) = P(N(0,1) > x)."""
    return special.ndtr(-np.asarray(x, dtype=float))


def log_q_function(x):
    """ln Q(x), accurate far past double underflow of Q itself."""
    return special.log_ndtr(-np.asarray(x, dtype=float))


def sigma2_from_vnr(vnr_db: float, rate: float) -> float:
    """Per-dimension noise variance at a given VNR for component code rate R."""
    if not 0.0 < rate <= 1.0:
        raise InvalidParamsError(f"rate must be in (0, 1], got {rate}")
    return 4.0 ** (1.0 - rate) / (TWO_PI_E * db_to_linear(vnr_db))


def _check_terms(theta: TruncatedTheta):
    terms = theta.nonzero_terms()
    if not terms:
        raise DegenerateThetaError("theta series has only the zero term")
    return terms


def pe_estimate_log(theta: TruncatedTheta, vnr_db: float, rate: float) -> float:
    """ln of the truncated union bound estimate at the given VNR."""
    s2 = sigma2_from_vnr(vnr_db, rate)
    logs = [
        math.log(count) + float(special.log_ndtr(-math.sqrt(d2 / (4.0 * s2))))
        for d2, count in _check_terms(theta)
    ]
    return float(special.logsumexp(logs))


def pe_estimate(theta: TruncatedTheta, vnr_db: float, rate: float) -> float:
    """Truncated union bound WER estimate; may exceed 1 at low VNR."""
    return math.exp(pe_estimate_log(theta, vnr_db, rate))


def required_vnr(theta: TruncatedTheta, rate: float, target_pe: float,
                 bracket_db: tuple[float, float] = BRACKET_DB) -> float:
    """VNR (dB) at which the union bound estimate equals target_pe.

    Bisection on the dB scale over ``bracket_db``; converges to relative
    tolerance REL_TOL on P_e.  Raises BracketFailureError when the target is
    outside the achievable range on the bracket.
    """
    if not 0.0 < target_pe < 1.0:
        raise InvalidParamsError(f"target_pe must be in (0, 1), got {target_pe}")
    lo, hi = bracket_db
    if not lo < hi:
        raise InvalidParamsError(f"empty bracket {bracket_db}")
    log_target = math.log(target_pe)
    pe_lo = pe_estimate_log(theta, lo, rate)
    pe_hi = pe_estimate_log(theta, hi, rate)
    if pe_lo < log_target:
        raise BracketFailureError(
            f"target {target_pe:g} above estimate {math.exp(pe_lo):g} at {lo:g} dB"
        )
    if pe_hi > log_target:
        raise BracketFailureError(
            f"target {target_pe:g} below estimate reachable at {hi:g} dB"
        )
    mid = 0.5 * (lo + hi)
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        diff = pe_estimate_log(theta, mid, rate) - log_target
        if abs(math.expm1(diff)) <= REL_TOL:
            return mid
        if diff > 0:
            lo = mid
        else:
            hi = mid
    return mid


class DesignRule(enum.Enum):
    TRUNCATED_UNION_BOUND = "tub"
    BALANCED_DISTANCE = "balanced"
    EQUAL_ERROR_PROBABILITY = "eep"


@dataclass(frozen=True)
class DesignOutcome:
    """A selected component code plus the VNR it needs for the target WER."""

    code: object  # BinaryCode
    rule: DesignRule
    target_pe: float
    required_vnr_db: float
    estimated_pe_at_vnr: float

    def __post_init__(self):
        if not 0.0 < self.target_pe < 1.0:
            raise InvalidParamsError("target_pe must be in (0, 1)")
        if not math.isfinite(self.required_vnr_db):
            raise InvalidParamsError("required_vnr_db must be finite")

    def to_dict(self) -> dict:
        return {
            "code": self.code.name,
            "n": self.code.n,
            "k": self.code.k,
            "d_c": self.code.d_c,
            "tau_c": self.code.tau_c,
            "rule": self.rule.value,
            "target_pe": self.target_pe,
            "required_vnr_db": self.required_vnr_db,
            "estimated_pe_at_vnr": self.estimated_pe_at_vnr,
        }


def _outcome(code, rule: DesignRule, target_pe: float,
             bracket_db: tuple[float, float] = BRACKET_DB) -> DesignOutcome:
    th = code_theta(code)
    vnr = required_vnr(th, code.rate, target_pe, bracket_db)
    return DesignOutcome(
        code=code,
        rule=rule,
        target_pe=target_pe,
        required_vnr_db=vnr,
        estimated_pe_at_vnr=pe_estimate(th, vnr, code.rate),
    )


def select_best(candidates, target_pe: float,
                bracket_db: tuple[float, float] = BRACKET_DB) -> DesignOutcome:
    """Candidate with minimal required VNR; ties to larger k, then smaller tau_c."""
    if not candidates:
        raise NoCandidatesError("empty candidate list")
    outcomes = [_outcome(c, DesignRule.TRUNCATED_UNION_BOUND, target_pe, bracket_db)
                for c in candidates]
    return min(outcomes, key=lambda o: (o.required_vnr_db, -o.code.k, o.code.tau_c))


def pe_for_target_vnr(candidates, vnr_db: float):
    """Dual design criterion: (code, estimate) pairs at a fixed VNR, best first."""
    if not candidates:
        raise NoCandidatesError("empty candidate list")
    scored = [(math.exp(pe_estimate_log(code_theta(c), vnr_db, c.rate)), c)
              for c in candidates]
    scored.sort(key=lambda t: (t[0], -t[1].k, t[1].tau_c))
    return [(c, p) for p, c in scored]


def balanced_distance_pick(candidates, target_pe: float = 1e-5,
                           bracket_db: tuple[float, float] = BRACKET_DB) -> DesignOutcome:
    """Classic rule: highest-rate candidate whose d_c matches the 4 of 2Z^n."""
    if not candidates:
        raise NoCandidatesError("empty candidate list")
    matched = [c for c in candidates if c.d_c == 4]
    if not matched:
        raise NoCandidatesError("no candidate with d_c 4 for the balanced distance rule")
    pick = max(matched, key=lambda c: c.k)
    return _outcome(pick, DesignRule.BALANCED_DISTANCE, target_pe, bracket_db)


def _log_pe_code_level(code, sigma2: float) -> float:
    """ln union-bound WER of the code level alone: tau_c 2^d_c Q(sqrt(d_c/(4 s^2)))."""
    return (
        math.log(code.tau_c) + code.d_c * math.log(2.0)
        + float(special.log_ndtr(-math.sqrt(code.d_c / (4.0 * sigma2))))
    )


def _log_pe_integer_level(n: int, sigma2: float) -> float:
    """ln WER of the 2Z^n level alone: 1 - (1 - 2Q(1/sigma))^n."""
    log_2q = math.log(2.0) + float(special.log_ndtr(-1.0 / math.sqrt(sigma2)))
    if log_2q < -50.0:
        # 1 - (1 - p)^n ~= n p to relative O(n p)
        return math.log(n) + log_2q
    p = min(math.exp(log_2q), 1.0 - 1e-16)
    return _log1m_exp(n * math.log1p(-p))


def _log1m_exp(t: float) -> float:
    """ln(1 - e^t) for t < 0, stable near both ends."""
    if t > -1e-17:
        t = -1e-17
    if t > math.log(0.5):
        return math.log(-math.expm1(t))
    return math.log1p(-math.exp(t))


def equal_error_probability_pick(candidates, vnr_db: float, target_pe: float = 1e-5,
                                 bracket_db: tuple[float, float] = BRACKET_DB) -> DesignOutcome:
    """Classic rule: match the code-level WER to the 2Z^n-level WER at a VNR.

    The integer level is modeled exactly for ML decoding of 2Z^n alone,
    P2 = 1 - (1 - 2Q(1/sigma))^n; the code level by its union-bound term
    tau_c 2^d_c Q(sqrt(d_c)/(2 sigma)).  The candidate minimizing
    |ln P1 - ln P2| at the operating VNR wins.  The matching point is a
    modeling choice; see README.
    """
    if not candidates:
        raise NoCandidatesError("empty candidate list")
    usable = [c for c in candidates if c.d_c is not None and c.tau_c is not None]
    if not usable:
        raise NoCandidatesError("no candidate with known (d_c, tau_c)")

    def mismatch(code):
        s2 = sigma2_from_vnr(vnr_db, code.rate)
        return abs(_log_pe_code_level(code, s2) - _log_pe_integer_level(code.n, s2))

    pick = min(usable, key=lambda c: (mismatch(c), -c.k, c.tau_c))
    return _outcome(pick, DesignRule.EQUAL_ERROR_PROBABILITY, target_pe, bracket_db)


def snr_norm_from_vnr(vnr_db: float, power: float, rate_lattice: float,
                      volume: float, n: int) -> float:
    """Rate-normalized SNR (dB) of a lattice code from the coding lattice VNR.

    SNR_norm = P / ((2^(2 R_L) - 1) sigma^2) relates to VNR through the
    lattice volume: SNR_norm(dB) = VNR(dB) + 10 log10(2 pi e P)
    - 10 log10((2^(2 R_L) - 1) V^(2/n)).
    """
    if power <= 0 or rate_lattice <= 0:
        raise InvalidParamsError("need power > 0 and lattice-code rate > 0")
    return (
        vnr_db
        + 10.0 * math.log10(TWO_PI_E * power)
        - 10.0 * math.log10((4.0**rate_lattice - 1.0) * volume ** (2.0 / n))
    )
