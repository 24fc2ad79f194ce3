import numpy as np
import pytest
from scipy import constants
from scipy.stats import unitary_group

from functions.dynamics import (
    LocalizationMap,
    coexcitation_series,
    evolve,
    free_evolution,
    mean_photon_series,
    time_series,
)
from functions.exceptions import InvalidParameter
from functions.gaussian import coherent_state, vacuum
from tests.states import random_state

SPLITTER = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)


@pytest.fixture
def beating():
    """Two modes 100 cm^-1 apart with amplitude loaded into localized mode 0."""
    alpha = 1.2
    loc = LocalizationMap(U_l=SPLITTER, freq=[1000.0, 1100.0])
    normal_mean = SPLITTER.conj().T @ np.array([alpha, 0.0])
    return coherent_state(normal_mean), loc, alpha


def test_identity_at_time_zero():
    state = random_state(3, np.random.default_rng(3))
    loc = LocalizationMap(U_l=np.eye(3), freq=[900.0, 1200.0, 1600.0])
    evolved = evolve(state, loc, 0.0)
    np.testing.assert_allclose(evolved.cov, state.cov, atol=1e-14)
    np.testing.assert_allclose(evolved.mean, state.mean, atol=1e-14)


def test_coherent_populations_static_without_mixing():
    state = coherent_state([0.8, 0.4j])
    loc = LocalizationMap(U_l=np.eye(2), freq=[1000.0, 1500.0])
    series = time_series(state, loc, [0.0, 25.0, 80.0, 140.0], mode=0, cutoff=8)
    for dist in series[1:]:
        np.testing.assert_allclose(dist.table, series[0].table, atol=1e-12)


def test_total_photon_number_conserved():
    rng = np.random.default_rng(12)
    state = random_state(3, rng)
    loc = LocalizationMap(
        U_l=unitary_group.rvs(3, random_state=rng), freq=[800.0, 1300.0, 2100.0]
    )
    totals = mean_photon_series(state, loc, np.linspace(0.0, 100.0, 21)).sum(axis=1)
    np.testing.assert_allclose(totals, totals[0], atol=1e-10)


def test_beating_between_localized_modes(beating):
    state, loc, alpha = beating
    period = 1e15 / (constants.c * 100 * 100.0)
    assert period == pytest.approx(333.6, rel=0.02)

    times = np.linspace(0.0, 2 * period, 41)
    means = mean_photon_series(state, loc, times)
    expected = alpha**2 * (1 + np.cos(2 * np.pi * times / period)) / 2
    np.testing.assert_allclose(means[:, 0], expected, atol=1e-9)
    np.testing.assert_allclose(means.sum(axis=1), alpha**2, atol=1e-9)

    # first revival of the excitation in the initial site
    fine = np.linspace(0.6 * period, 1.4 * period, 801)
    revival = fine[np.argmax(mean_photon_series(state, loc, fine)[:, 0])]
    assert revival == pytest.approx(333.6, rel=0.02)


def test_beating_distribution_swaps(beating):
    state, loc, alpha = beating
    half = 0.5e15 / (constants.c * 100 * 100.0)
    start, middle = time_series(state, loc, [0.0, half], mode=1, cutoff=10)
    assert start.probability([0]) == pytest.approx(1.0, abs=1e-12)
    assert middle.probability([0]) == pytest.approx(np.exp(-(alpha**2)), abs=1e-9)


def test_semigroup():
    state = random_state(2, np.random.default_rng(5))
    freq = [1100.0, 1700.0]
    twice = free_evolution(free_evolution(state, freq, 12.5), freq, 30.0)
    once = free_evolution(state, freq, 42.5)
    np.testing.assert_allclose(twice.cov, once.cov, atol=1e-12)
    np.testing.assert_allclose(twice.mean, once.mean, atol=1e-12)


def test_vacuum_is_stationary():
    loc = LocalizationMap(U_l=SPLITTER, freq=[1000.0, 1100.0])
    series = time_series(vacuum(2), loc, [0.0, 50.0, 300.0], mode=0, cutoff=4)
    for dist in series:
        np.testing.assert_allclose(dist.table, [1.0, 0.0, 0.0, 0.0, 0.0], atol=1e-14)


def test_parallel_matches_serial(beating):
    state, loc, _ = beating
    times = np.linspace(0.0, 300.0, 9)
    serial = coexcitation_series(state, loc, times, [0, 1], cutoff=5)
    parallel = coexcitation_series(state, loc, times, [0, 1], cutoff=5, workers=3)
    for a, b in zip(serial, parallel):
        np.testing.assert_array_equal(a.table, b.table)


def test_coexcitation_of_coherent_product(beating):
    state, loc, alpha = beating
    (table,) = coexcitation_series(state, loc, [0.0], [0, 1], cutoff=8)
    assert table.coexcitation() == pytest.approx(0.0, abs=1e-12)


def test_rejects_non_unitary():
    with pytest.raises(InvalidParameter):
        LocalizationMap(U_l=[[1.0, 0.2], [0.0, 1.0]], freq=[1000.0, 1100.0])


def test_rejects_negative_time(beating):
    state, loc, _ = beating
    with pytest.raises(InvalidParameter):
        evolve(state, loc, -1.0)


def test_rejects_mode_mismatch():
    loc = LocalizationMap(U_l=np.eye(2), freq=[1000.0, 1100.0])
    with pytest.raises(InvalidParameter):
        evolve(vacuum(3), loc, 1.0)
