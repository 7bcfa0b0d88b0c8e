import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_p_leaders
from pmfa.dyadic import DyadicIndex, children_in_3lambda
from pmfa.leaders import l_leaders, p_leaders, wavelet_leaders
from pmfa.wavelet import CoefficientField


def random_field(seed, j_max, sparsity=0.0, spread=4.0):
    rng = np.random.default_rng(seed)
    detail = []
    for j in range(j_max + 1):
        d = rng.standard_normal(2 ** j) * 2.0 ** rng.uniform(-spread, spread, 2 ** j)
        d[rng.random(2 ** j) < sparsity] = 0.0
        detail.append(d)
    return CoefficientField(j_max, tuple(detail))


def single(j_max, j0, k0, v):
    detail = [np.zeros(2 ** j) for j in range(j_max + 1)]
    detail[j0][k0] = v
    return CoefficientField(j_max, tuple(detail))


def assert_same(fast, brute, rtol):
    for j, (a, b) in enumerate(zip(fast, brute)):
        assert np.array_equal(np.isnan(a), np.isnan(b)), j
        ok = ~np.isnan(a)
        if rtol == 0:
            assert np.array_equal(a[ok], b[ok]), j
        else:
            assert np.all(np.abs(a[ok] - b[ok]) <= rtol * np.abs(b[ok])), j


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 3.7])
def test_p_leaders_match_brute_force(p):
    f = random_field(0, 6)
    assert_same(p_leaders(f, p).values, brute_p_leaders(f.detail, p), 1e-12)


def test_sup_leaders_match_brute_force_exactly():
    f = random_field(1, 6, sparsity=0.3)
    assert_same(wavelet_leaders(f).values, brute_p_leaders(f.detail, math.inf), 0)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 31), j_max=st.integers(0, 6),
       sparsity=st.sampled_from([0.0, 0.5, 0.9]), p=st.sampled_from([0.3, 1.0, 2.5, math.inf]))
def test_leaders_property(seed, j_max, sparsity, p):
    f = random_field(seed, j_max, sparsity)
    fast = p_leaders(f, p).values
    assert_same(fast, brute_p_leaders(f.detail, p), 0 if math.isinf(p) else 1e-12)


def test_single_coefficient_closed_form():
    j_max, j0, k0, v = 8, 6, 37, 2.5
    f = single(j_max, j0, k0, v)
    for p in (0.5, 1.0, 2.0):
        lead = p_leaders(f, p)
        for j in range(j0 + 1):
            for k in range(2 ** j):
                covers = k0 in children_in_3lambda(DyadicIndex(j, k), j0)
                val = lead.values[j][k]
                if covers:
                    assert abs(val - v * 2.0 ** (-(j0 - j) / p)) < 1e-12 * v
                else:
                    assert np.isnan(val)
        # nothing lives below j0
        for j in range(j0 + 1, j_max + 1):
            assert lead.all_undefined or np.all(np.isnan(lead.values[j]))


def test_large_p_approaches_sup_leaders():
    f = random_field(2, 7, spread=2.0)
    sup = wavelet_leaders(f).values
    big = p_leaders(f, 64).values
    j_max = f.j_max
    for j, (a, b) in enumerate(zip(big, sup)):
        # the sup sits at most j_max - j scales down; at most 3 (j_max - j + 1) terms
        # weigh 2^{-(j'-j)}
        lo = b * 2.0 ** (-(j_max - j) / 64)
        hi = b * (3.0 * (j_max - j + 1)) ** (1 / 64)
        assert np.all(a >= lo * (1 - 1e-12)) and np.all(a <= hi * (1 + 1e-12))
        assert np.all(np.abs(a / b - 1) < 0.1)


def test_leader_dominates_own_coefficient():
    f = random_field(3, 7)
    lead = wavelet_leaders(f)
    for j in range(f.j_max + 1):
        assert np.all(lead.values[j] >= np.abs(f.detail[j]))


def test_p_leaders_increase_with_weight_order():
    # sum_{λ'} |c|^p 2^{-(j'-j)} is a weighted mean with total weight <= 3 (j'-j+1),
    # so the p-leaders are bounded by the sup-leaders up to that weight
    f = random_field(4, 6)
    sup = wavelet_leaders(f).values
    for p in (1.0, 2.0):
        lead = p_leaders(f, p).values
        for j, (a, b) in enumerate(zip(lead, sup)):
            assert np.all(a <= b * (3.0 * (f.j_max - j + 1)) ** (1 / p) * (1 + 1e-12))


def test_zero_field_is_undefined():
    f = CoefficientField.zeros(5)
    assert p_leaders(f, 2.0).all_undefined
    assert wavelet_leaders(f).all_undefined
    assert p_leaders(f, 2.0).j_range is None


def test_amplitude_scaling_is_exact():
    f = random_field(5, 6)
    for p in (0.7, 2.0, math.inf):
        a = p_leaders(f, p).values
        b = p_leaders(f.scaled(3.0), p).values
        for x, y in zip(a, b):
            assert np.allclose(3.0 * x, y, rtol=1e-14, atol=0)


def test_l_leader_of_single_coefficient_is_one():
    f = single(7, 4, 5, 1.7)
    lead = l_leaders(f, 0.5, 0.05)
    assert abs(lead.values[4][5] - 1.0) < 1e-12


def test_l_leaders_ratio_definition():
    f = random_field(6, 6)
    q, dq = 0.4, 0.1
    L = l_leaders(f, q, dq).values
    a = p_leaders(f, 1 / (q + dq)).values
    b = p_leaders(f, 1 / q).values
    for x, y, z in zip(L, a, b):
        assert np.allclose(x, (y / z) ** (1 / dq), rtol=1e-10)
    L0 = l_leaders(f, 0.0, 0.5).values
    sup = wavelet_leaders(f).values
    two = p_leaders(f, 2.0).values
    for x, y, z in zip(L0, two, sup):
        assert np.allclose(x, (y / z) ** 2, rtol=1e-10)


def test_along_chain():
    f = random_field(7, 6)
    lead = p_leaders(f, 2.0)
    chain = lead.along(0.3)
    assert chain.size == 7
    for j in range(7):
        assert chain[j] == lead.values[j][math.floor(0.3 * 2 ** j)]


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan])
def test_p_domain_errors(bad):
    with pytest.raises(ValueError):
        p_leaders(random_field(0, 3), bad)


def test_l_leader_domain_errors():
    f = random_field(0, 3)
    with pytest.raises(ValueError):
        l_leaders(f, 0.2, 0.0)
    with pytest.raises(ValueError):
        l_leaders(f, -0.1, 0.1)
