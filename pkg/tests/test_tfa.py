import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from qhalab import sampling
from qhalab.core import LatticeSpec, rank_one, tf_shift
from qhalab.errors import DimensionMismatch, LengthMismatch
from qhalab.frames import tighten
from qhalab.tfa import cohen_q, cohen_q_cross, spectrogram, stft
from qhalab.windows import hermite_window, periodized_gaussian, random_window

seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize("L", [1, 3, 4, 7])
def test_stft_matches_inner_products(L):
    rng = np.random.default_rng(L)
    psi, phi = sampling.signal(rng, L), sampling.signal(rng, L)
    assert np.allclose(stft(psi, phi), oracles.stft(psi, phi), atol=1e-12)


def test_stft_of_dirac_with_dirac():
    e0 = np.zeros(5)
    e0[0] = 1
    V = stft(e0, e0)
    assert np.allclose(V[0], 1) and np.allclose(V[1:], 0)


@settings(max_examples=40)
@given(seeds, st.sampled_from([2, 4, 6, 8]))
def test_moyal_constant(seed, L):
    rng = np.random.default_rng(seed)
    psi, phi = sampling.signal(rng, L), sampling.signal(rng, L)
    total = spectrogram(psi, phi).sum()
    expected = L * np.linalg.norm(psi) ** 2 * np.linalg.norm(phi) ** 2
    assert total == pytest.approx(expected, rel=1e-10)


def test_length_checks():
    with pytest.raises(LengthMismatch):
        stft(np.ones(4), np.ones(5))
    with pytest.raises(LengthMismatch):
        stft(np.ones((2, 2)), np.ones(4))
    with pytest.raises(DimensionMismatch):
        cohen_q(np.eye(3), np.ones(4))


@pytest.mark.parametrize("L", [3, 4])
def test_cohen_cross_matches_definition(L):
    rng = np.random.default_rng(11)
    S = sampling.operator(rng, L)
    psi, phi = sampling.signal(rng, L), sampling.signal(rng, L)
    assert np.allclose(cohen_q_cross(S, psi, phi), oracles.cohen(S, psi, phi), atol=1e-12)


@settings(max_examples=25)
@given(seeds)
def test_rank_one_cohen_is_spectrogram(seed):
    rng = np.random.default_rng(seed)
    psi, phi = sampling.signal(rng, 6), sampling.signal(rng, 6)
    assert np.allclose(cohen_q(rank_one(phi), psi), spectrogram(psi, phi), atol=1e-10)


@settings(max_examples=25)
@given(seeds, st.integers(0, 5), st.integers(0, 5))
def test_cohen_covariance(seed, k, l):
    rng = np.random.default_rng(seed)
    S, psi = sampling.positive(rng, 6), sampling.signal(rng, 6)
    shifted = cohen_q(S, tf_shift(6, (k, l)) @ psi)
    assert np.allclose(shifted, np.roll(cohen_q(S, psi), (k, l), axis=(0, 1)), atol=1e-10)


def test_cohen_of_positive_operator_is_real_and_nonnegative():
    rng = np.random.default_rng(2)
    Q = cohen_q(sampling.positive(rng, 5), sampling.signal(rng, 5))
    assert Q.dtype.kind == "f" and Q.min() > -1e-12
    Qc = cohen_q(sampling.operator(rng, 5), sampling.signal(rng, 5))
    assert Qc.dtype.kind == "c"


def test_windows_are_unit_norm_and_match_reference():
    for L in (2, 8, 31):
        g = periodized_gaussian(L)
        assert np.linalg.norm(g) == pytest.approx(1)
        assert np.allclose(g, oracles.gaussian(L))
    assert np.allclose(periodized_gaussian(9, 2.0, 0.3, 0.2), oracles.gaussian(9, 2.0, 0.3, 0.2))
    h0, h1 = hermite_window(32, 0), hermite_window(32, 1)
    assert np.allclose(h0, periodized_gaussian(32))
    assert abs(np.vdot(h0, h1)) < 1e-8
    assert np.array_equal(random_window(8, 3), random_window(8, 3))


def test_mixed_state_cohen_is_weighted_spectrogram_sum():
    rng = np.random.default_rng(5)
    windows = [sampling.signal(rng, 8) for _ in range(3)]
    weights = [0.5, 0.3, 0.2]
    S = sum(s * rank_one(w) for s, w in zip(weights, windows))
    psi = sampling.signal(rng, 8)
    expected = sum(s * spectrogram(psi, w) for s, w in zip(weights, windows))
    assert np.allclose(cohen_q(S, psi), expected, atol=1e-10)


def test_cross_cohen_sums_to_inner_product_for_density_operator():
    lat = LatticeSpec(8, 2, 2)
    rng = np.random.default_rng(6)
    S = tighten(sampling.positive(rng, 8, rank=2), lat)
    psi, phi = sampling.signal(rng, 8), sampling.signal(rng, 8)
    total = cohen_q_cross(S, psi, phi)[::2, ::2].sum()
    assert total == pytest.approx(np.vdot(phi, psi), abs=1e-10)
