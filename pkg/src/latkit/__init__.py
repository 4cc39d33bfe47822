"""latkit: modulo-2 construction A lattice design and evaluation.

Builds lattices C + 2Z^n from binary linear codes, estimates their word
error rate with an exact truncated theta series and the union bound, selects
component codes by minimizing the required volume-to-noise ratio, and
validates designs with a seeded Monte Carlo AWGN simulator using order-l
ordered-statistics decoding.
"""

from .binmat import BitMatrix, BitVector, encode, rank, systematize, weight
from .bound import (
    DesignOutcome,
    DesignRule,
    balanced_distance_pick,
    equal_error_probability_pick,
    pe_estimate,
    q_function,
    required_vnr,
    select_best,
    sigma2_from_vnr,
    snr_norm_from_vnr,
)
from .codes import (
    BinaryCode,
    CodeFamily,
    Registry,
    RegistryEntry,
    bch_code,
    bch_generator,
    brute_force_weight_profile,
    ebch_code,
    extend_even_parity,
    extended_hamming_code,
    hamming_code,
    load_builtin_registry,
    registry_lookup,
)
from .errors import LatkitError
from .kernels import backend_name
from .osd import OsdConfig, OsdDecoder, SoftWord, candidate_count, osd_decode
from .polar import (
    PolarSpec,
    check_partial_order,
    design_polar,
    multiplicity_partial_order,
    polar_generator,
    polar_transform,
)
from .sim import SimConfig, WEREstimate, decode_point, encode_point, mod_star, simulate_wer
from .theta import TruncatedTheta, code_theta, theta_2zn, theta_construction_a, truncation_depth

__version__ = "0.1.0"
