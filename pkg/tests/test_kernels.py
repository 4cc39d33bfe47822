import numpy as np
import pytest

from latkit import codes, kernels
from latkit.sim import mod_star

from oracles import weight_profile_by_enumeration

HAVE_CYTHON = "cython" in kernels.available_backends()

needs_cython = pytest.mark.skipif(not HAVE_CYTHON, reason="compiled kernel not built")


def test_default_backend_valid():
    assert kernels.backend_name() in ("cython", "python")
    assert kernels.get_backend().BACKEND == kernels.backend_name()


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.get_backend("rust")


@needs_cython
def test_backends_agree_on_osd(exthamming8):
    rng = np.random.default_rng(0)
    gen = exthamming8.gen_bits()
    msgs = rng.integers(0, 2, (2_000, 4), dtype=np.uint8)
    x = (msgs @ gen % 2).astype(np.float64)
    ys = mod_star(x + 0.4 * rng.standard_normal(x.shape))
    for order in (0, 1, 2, 4):
        a = kernels.get_backend("python").osd_decode_batch(gen, ys, order, None)
        b = kernels.get_backend("cython").osd_decode_batch(gen, ys, order, None)
        assert np.array_equal(a, b), f"order {order}"


@needs_cython
def test_backends_agree_on_osd_long_code(ebch106):
    rng = np.random.default_rng(1)
    gen = ebch106.gen_bits()
    msgs = rng.integers(0, 2, (8, 106), dtype=np.uint8)
    x = (msgs @ gen % 2).astype(np.float64)
    ys = mod_star(x + 0.18 * rng.standard_normal(x.shape))
    a = kernels.get_backend("python").osd_decode_batch(gen, ys, 2, None)
    b = kernels.get_backend("cython").osd_decode_batch(gen, ys, 2, None)
    assert np.array_equal(a, b)


@needs_cython
def test_backends_agree_with_cap(exthamming8):
    rng = np.random.default_rng(2)
    ys = rng.uniform(0, 1, (500, 8))
    gen = exthamming8.gen_bits()
    for cap in (0, 1, 3, 7):
        a = kernels.get_backend("python").osd_decode_batch(gen, ys, 4, cap)
        b = kernels.get_backend("cython").osd_decode_batch(gen, ys, 4, cap)
        assert np.array_equal(a, b), f"cap {cap}"


@needs_cython
def test_backends_agree_on_weight_profile():
    rng = np.random.default_rng(3)
    for _ in range(20):
        k = int(rng.integers(1, 10))
        n = int(rng.integers(k, 20))
        bits = rng.integers(0, 2, (k, n), dtype=np.uint8)
        if not bits.any():
            continue
        from oracles import naive_rank

        if naive_rank(bits.tolist()) < k:
            continue
        a = kernels.get_backend("python").weight_profile(bits)
        b = kernels.get_backend("cython").weight_profile(bits)
        assert a == b == weight_profile_by_enumeration(bits)


def test_weight_profile_wide_rows():
    # multi-word rows (n > 64)
    eh = codes.extended_hamming_code(4)
    wide = np.hstack([eh.gen_bits(), eh.gen_bits()])  # (11, 32), doubled weights
    wide = np.hstack([wide, np.zeros((11, 80), dtype=np.uint8)])  # n = 112
    got = kernels.get_backend().weight_profile(wide)
    assert got == (8, 140)


def test_pure_python_env_override(monkeypatch):
    import importlib

    monkeypatch.setenv("LATKIT_PURE_PYTHON", "1")
    import latkit.kernels as mod

    reloaded = importlib.reload(mod)
    try:
        assert reloaded.backend_name() == "python"
    finally:
        monkeypatch.delenv("LATKIT_PURE_PYTHON")
        importlib.reload(mod)
