import itertools

import numpy as np
import pytest

from latkit import binmat, codes, polar
from latkit.errors import InfeasibleError, InvalidParamsError, PartialOrderViolatedError

from oracles import dominates_by_moves, weight_profile_by_enumeration


def rm_info_set(r, m):
    return [i for i in range(1 << m) if i.bit_count() >= m - r]


# -- transform ----------------------------------------------------------------

def test_transform_base_kernel():
    assert polar.polar_transform(1).to_bits().tolist() == [[1, 0], [1, 1]]


def test_transform_m2_row_weights():
    t = polar.polar_transform(2)
    assert [int(row.sum()) for row in t.to_bits()] == [1, 2, 2, 4]


def test_transform_m7_last_row_all_ones():
    t = polar.polar_transform(7)
    assert t.to_bits()[127].tolist() == [1] * 128


def test_transform_row_weight_identity_all_m():
    for m in range(1, 8):
        t = polar.polar_transform(m)
        for i in range(1 << m):
            assert int(t.to_bits()[i].sum()) == 2 ** i.bit_count()


def test_transform_lower_triangular_full_rank():
    for m in (2, 4, 6):
        t = polar.polar_transform(m)
        bits = t.to_bits()
        assert np.array_equal(np.triu(bits, 1), np.zeros_like(bits))
        assert bits.diagonal().all()
        assert binmat.rank(t) == 1 << m


# -- partial order ------------------------------------------------------------

def test_domination_matches_covering_move_oracle():
    for m in (3, 4, 5):
        n = 1 << m
        for i in range(n):
            for j in range(n):
                assert polar._dominates(j, i) == dominates_by_moves(j, i, m), (i, j, m)


def test_rm_sets_are_partial_order():
    for m in (3, 5, 7):
        for r in range(m + 1):
            assert polar.check_partial_order(rm_info_set(r, m), m)


def test_singleton_zero_not_closed():
    assert not polar.check_partial_order([0], 2)


def test_example_set_m3():
    assert polar.check_partial_order([3, 5, 6, 7], 3)
    assert not polar.check_partial_order([3, 5, 7], 3)  # 6 dominates 3, missing


# -- analytic multiplicity ------------------------------------------------------

def test_rm47_multiplicity():
    spec = polar.PolarSpec.make(7, rm_info_set(4, 7))
    assert spec.k == 99 and spec.d_c == 8
    assert polar.multiplicity_partial_order(spec) == 188976


def test_rm13_multiplicity_matches_enumeration():
    spec = polar.PolarSpec.make(3, rm_info_set(1, 3))
    assert polar.multiplicity_partial_order(spec) == 14
    code = polar.polar_generator(spec)
    assert weight_profile_by_enumeration(code.gen_bits()) == (4, 14)


def test_128_100_design_multiplicity():
    spec = polar.design_polar(7, 4, 100)
    tau = polar.multiplicity_partial_order(spec)
    assert tau == 32
    # consistency with the d_c = 4 theta relation: 32*2^4 + 2*128 = 768
    assert tau * 16 + 256 == 768


def test_multiplicity_requires_partial_order():
    spec = polar.PolarSpec(m=3, info_set=(1, 2, 4), satisfies_partial_order=False)
    with pytest.raises(PartialOrderViolatedError):
        polar.multiplicity_partial_order(spec)
    # lying about the flag does not help: the check reruns
    lied = polar.PolarSpec(m=3, info_set=(1, 2, 4), satisfies_partial_order=True)
    with pytest.raises(PartialOrderViolatedError):
        polar.multiplicity_partial_order(lied)


def test_multiplicity_depends_only_on_min_weight_rows():
    # two partial-order specs sharing the same minimum-weight subset {10, 12}
    # but differing in heavier rows (7 present vs absent)
    a = polar.PolarSpec.make(4, [7, 10, 11, 12, 13, 14, 15])
    b = polar.PolarSpec.make(4, [10, 11, 12, 13, 14, 15])
    assert a.satisfies_partial_order and b.satisfies_partial_order
    assert a.d_c == b.d_c == 4
    assert a.min_weight_rows() == b.min_weight_rows() == (10, 12)
    assert polar.multiplicity_partial_order(a) == polar.multiplicity_partial_order(b)


# -- design -------------------------------------------------------------------

def test_design_rm47():
    spec = polar.design_polar(7, 8, 99)
    assert spec.info_set == tuple(sorted(rm_info_set(4, 7)))


def test_design_single_allones_row():
    spec = polar.design_polar(3, 8, 1)
    assert spec.info_set == (7,)


def test_design_m5_k20_matches_enumeration():
    spec = polar.design_polar(5, 4, 20)
    code = polar.polar_generator(spec)
    d, tau = codes.brute_force_weight_profile(code)
    assert (d, tau) == (spec.d_c, polar.multiplicity_partial_order(spec))


def test_design_infeasible():
    with pytest.raises(InfeasibleError):
        polar.design_polar(3, 8, 2)  # only one weight-8 row exists
    with pytest.raises(InfeasibleError):
        polar.design_polar(3, 3, 4)  # weights are powers of two
    with pytest.raises(InfeasibleError):
        polar.design_polar(4, 4, 3)  # k below the heavy-row count


def test_design_minimizes_tau_over_closed_completions():
    # m = 4, d_c = 4, one completion row: exhaustive reference over all
    # closed single completions
    m, k = 4, 6
    spec = polar.design_polar(m, 4, k)
    heavy = [i for i in range(16) if i.bit_count() > 2]
    wclass = [i for i in range(16) if i.bit_count() == 2]
    best = None
    for combo in itertools.combinations(wclass, k - len(heavy)):
        info = heavy + list(combo)
        if not polar.check_partial_order(info, m):
            continue
        tau = polar.multiplicity_partial_order(polar.PolarSpec.make(m, info))
        if best is None or tau < best:
            best = tau
    assert polar.multiplicity_partial_order(spec) == best


def test_polar_generator_repetition_like():
    code = polar.polar_generator(polar.PolarSpec.make(3, [7]))
    assert code.gen.to_bits().tolist() == [[1] * 8]


def test_rm13_equals_extended_hamming_row_space():
    # identify transform column j with the point j of F_2^3: the extended
    # Hamming code built on positions 1..7 plus trailing parity matches after
    # routing the parity position to point 0
    code = polar.polar_generator(polar.PolarSpec.make(3, rm_info_set(1, 3)))
    eh = codes.extended_hamming_code(3)
    perm = [7, 0, 1, 2, 3, 4, 5, 6]  # eh column carrying point j of F_2^3
    stacked = np.vstack([code.gen_bits(), eh.gen_bits()[:, perm]])
    assert binmat.rank(binmat.BitMatrix.from_bits(stacked)) == 4


def test_polar_generator_rm47_parameters():
    code = polar.polar_generator(polar.design_polar(7, 8, 99))
    assert (code.n, code.k, code.d_c, code.tau_c) == (128, 99, 8, 188976)


def test_spec_string_parsing_forms():
    from latkit.cli import parse_code_spec, load_registry

    reg = load_registry(None)
    a = parse_code_spec("polar:m=3:k=4:dc=4", reg)
    b = parse_code_spec("polar:m=3:info=3,5,6,7", reg)
    assert a.gen == b.gen


def test_search_info_sets_reports_unknown_for_large_nonclosed():
    results = polar.search_info_sets(7, 4, 100, tries=5, seed=1)
    assert any(r.tau_c is None for r in results) or all(
        r.spec.satisfies_partial_order for r in results
    )


def test_search_info_sets_small_k_enumerates():
    results = polar.search_info_sets(4, 4, 8, tries=30, seed=2)
    assert all(r.tau_c is not None for r in results)
    for r in results[:3]:
        code = polar.polar_generator(r.spec)
        assert weight_profile_by_enumeration(code.gen_bits()) == (r.d_c, r.tau_c)


def test_invalid_spec_inputs():
    with pytest.raises(InvalidParamsError):
        polar.PolarSpec.make(3, [])
    with pytest.raises(InvalidParamsError):
        polar.PolarSpec.make(3, [9])
