import numpy as np
import pytest

from latkit import bound, codes, theta
from latkit.binmat import BitVector
from latkit.errors import DimensionMismatchError, InvalidParamsError
from latkit.osd import OsdConfig
from latkit.sim import (
    SimConfig,
    WEREstimate,
    decode_point,
    encode_point,
    mod_star,
    simulate_wer,
)


# -- encode_point ---------------------------------------------------------------

def test_encode_point_origin(exthamming8):
    x = encode_point(BitVector.zeros(4), np.zeros(8), exthamming8)
    assert np.array_equal(x, np.zeros(8))


def test_encode_point_integer_shift(exthamming8):
    z = np.zeros(8)
    z[0] = 1
    x = encode_point(BitVector.zeros(4), z, exthamming8)
    assert x[0] == 2.0 and (x[1:] == 0).all()
    assert (x**2).sum() == 4.0  # minimum norm of 2Z^n


def test_encode_point_codeword(exthamming8):
    x = encode_point(BitVector.unit(4, 0), np.zeros(8), exthamming8)
    assert (x**2).sum() == 4.0  # weight-4 codeword


def test_encode_point_dimension_mismatch(exthamming8):
    with pytest.raises(DimensionMismatchError):
        encode_point(BitVector.zeros(3), np.zeros(8), exthamming8)
    with pytest.raises(DimensionMismatchError):
        encode_point(BitVector.zeros(4), np.zeros(7), exthamming8)


# -- mod_star ---------------------------------------------------------------------

def test_mod_star_fixed_points():
    assert mod_star(np.array([0.0, 1.0, 2.0])).tolist() == [0.0, 1.0, 0.0]


def test_mod_star_examples():
    assert mod_star(np.array([2.3]))[0] == pytest.approx(0.3, abs=1e-12)
    assert mod_star(np.array([-0.4]))[0] == pytest.approx(0.4, abs=1e-12)


def test_mod_star_range_and_integer_parity():
    rng = np.random.default_rng(0)
    y = rng.normal(0, 10, 1000)
    out = mod_star(y)
    assert (out >= 0).all() and (out <= 1).all()
    ints = rng.integers(-50, 50, 200)
    got = mod_star(ints.astype(float))
    assert np.array_equal(got, (ints % 2).astype(float))


def test_mod_star_folds_away_even_shifts():
    rng = np.random.default_rng(1)
    y = rng.normal(0, 2, 500)
    shift = 2 * rng.integers(-5, 5, 500)
    assert np.allclose(mod_star(y + shift), mod_star(y), atol=1e-12)


# -- decode_point -------------------------------------------------------------------

def test_decode_point_exact_lattice_point(exthamming8):
    rng = np.random.default_rng(2)
    for _ in range(20):
        u = BitVector.from_bits(rng.integers(0, 2, 4, dtype=np.uint8))
        z = rng.integers(-3, 4, 8)
        x = encode_point(u, z, exthamming8)
        _, _, x_hat = decode_point(x, exthamming8, OsdConfig(order=4))
        assert np.array_equal(x_hat, x)


def test_decode_point_small_noise(exthamming8):
    rng = np.random.default_rng(3)
    for _ in range(20):
        u = BitVector.from_bits(rng.integers(0, 2, 4, dtype=np.uint8))
        z = rng.integers(-2, 3, 8)
        x = encode_point(u, z, exthamming8)
        y = x + rng.uniform(-0.2, 0.2, 8)
        _, _, x_hat = decode_point(y, exthamming8, OsdConfig(order=4))
        assert np.array_equal(x_hat, x)


def test_decode_point_integer_recovery(exthamming8):
    y = np.zeros(8)
    y[0] = 2.3
    xc_hat, z_hat, x_hat = decode_point(y, exthamming8, OsdConfig(order=4))
    assert xc_hat.to_bits()[0] == 0
    assert z_hat[0] == 1
    assert x_hat[0] == 2.0


# -- simulate_wer ---------------------------------------------------------------------

def test_zero_noise_no_errors(exthamming8):
    cfg = SimConfig(vnr_db=40.0, seed=1, min_errors=10, max_trials=3000, osd_order=4)
    est = simulate_wer(exthamming8, cfg)
    assert est.errors == 0 and est.trials == 3000
    assert est.wer == 0.0
    assert est.ci95[0] == 0.0 and 0.0 < est.ci95[1] < 1.0  # one-sided CI


def test_simulation_matches_bound_at_1e3(exthamming8):
    th = theta.code_theta(exthamming8)
    vnr = bound.required_vnr(th, exthamming8.rate, 1e-3)
    cfg = SimConfig(vnr_db=vnr, seed=5, min_errors=300, max_trials=2_000_000, osd_order=4)
    est = simulate_wer(exthamming8, cfg)
    assert est.errors >= 300
    assert 0.5e-3 <= est.wer <= 2e-3


def test_seed_determinism_same_workers(exthamming8):
    cfg = SimConfig(vnr_db=4.0, seed=9, min_errors=30, max_trials=8000, osd_order=2)
    assert simulate_wer(exthamming8, cfg) == simulate_wer(exthamming8, cfg)


def test_worker_count_determinism(exthamming8):
    base = dict(vnr_db=3.5, seed=13, min_errors=25, max_trials=6000, osd_order=4)
    results = [
        simulate_wer(exthamming8, SimConfig(workers=w, **base)) for w in (1, 4, 8)
    ]
    assert results[0] == results[1] == results[2]


def test_coset_invariance_exact(exthamming8):
    # mod* folds 2z away exactly, so paired runs agree error-for-error
    cfg = SimConfig(vnr_db=3.8, seed=21, min_errors=40, max_trials=20000, osd_order=4)
    a = simulate_wer(exthamming8, cfg)
    b = simulate_wer(exthamming8, cfg, random_z=True)
    assert a.errors == b.errors and a.trials == b.trials


def test_different_seeds_differ(exthamming8):
    cfg1 = SimConfig(vnr_db=3.5, seed=1, min_errors=50, max_trials=20000, osd_order=2)
    cfg2 = SimConfig(vnr_db=3.5, seed=2, min_errors=50, max_trials=20000, osd_order=2)
    a = simulate_wer(exthamming8, cfg1)
    b = simulate_wer(exthamming8, cfg2)
    assert (a.trials, a.errors) != (b.trials, b.errors)


def test_estimate_invariants(exthamming8):
    cfg = SimConfig(vnr_db=3.0, seed=4, min_errors=20, max_trials=4000, osd_order=2)
    est = simulate_wer(exthamming8, cfg)
    assert est.errors <= est.trials
    assert est.wer == est.errors / est.trials
    assert est.ci95[0] <= est.wer <= est.ci95[1]
    assert est.seed == 4 and est.vnr_db == 3.0


def test_csv_row_format(exthamming8):
    est = WEREstimate(trials=1000, errors=13, wer=0.013, ci95=(0.006, 0.02),
                      seed=7, vnr_db=3.25)
    row = est.csv_row()
    assert row.startswith("3.250,1000,13,1.3000e-02,")
    assert row.endswith(",7")
    assert WEREstimate.CSV_HEADER.count(",") == row.count(",")


def test_config_validation():
    with pytest.raises(InvalidParamsError):
        SimConfig(vnr_db=3.0, min_errors=0)
    with pytest.raises(InvalidParamsError):
        SimConfig(vnr_db=3.0, max_trials=0)
    with pytest.raises(InvalidParamsError):
        SimConfig(vnr_db=3.0, workers=0)
    with pytest.raises(InvalidParamsError):
        SimConfig(vnr_db=3.0, seed=2**64)
