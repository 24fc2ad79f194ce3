import unittest

import numpy as np
from scipy.stats import unitary_group

from functions.exceptions import InvalidParameter, InvalidState
from functions.gaussian import (
    GaussianState,
    SymplecticMap,
    apply,
    apply_doktorov,
    coherent_state,
    mean_photon_numbers,
    reduce,
    squeezed_vacuum,
    two_mode_squeezed_vacuum,
    vacuum,
    xmat,
)
from functions.probabilities import pattern_probability
from functions.vibronic import DoktorovParams
from tests.states import random_state


class TestGaussianState(unittest.TestCase):
    """Tests for Gaussian states and symplectic maps."""

    def setUp(self):
        self.rng = np.random.default_rng(1234)

    def test_vacuum(self):
        state = vacuum(3)
        np.testing.assert_array_equal(state.cov, 0.5 * np.eye(6))
        np.testing.assert_array_equal(state.mean, np.zeros(3))
        self.assertAlmostEqual(np.linalg.det(state.q_matrix).real, 1.0, places=12)
        self.assertEqual(state.num_modes, 3)

    def test_vacuum_rejects_zero_modes(self):
        with self.assertRaises(ValueError):
            vacuum(0)

    def test_state_is_immutable(self):
        state = vacuum(1)
        with self.assertRaises(ValueError):
            state.cov[0, 0] = 1.0

    def test_bad_covariance_shape(self):
        with self.assertRaises(InvalidState):
            GaussianState(mean=np.zeros(2), cov=np.eye(3))

    def test_zero_displacement_is_identity(self):
        state = vacuum(2)
        shifted = apply(state, SymplecticMap.displace([0.0, 0.0]))
        np.testing.assert_array_equal(shifted.mean, state.mean)
        np.testing.assert_array_equal(shifted.cov, state.cov)

    def test_displacement_leaves_covariance(self):
        state = apply(vacuum(1), SymplecticMap.displace([1.0]))
        np.testing.assert_allclose(state.mean, [1.0])
        np.testing.assert_array_equal(state.cov, 0.5 * np.eye(2))

    def test_identity_rotation(self):
        state = random_state(3, self.rng)
        rotated = apply(state, SymplecticMap.rotation(np.eye(3)))
        np.testing.assert_allclose(rotated.cov, state.cov, atol=1e-12)
        np.testing.assert_allclose(rotated.mean, state.mean, atol=1e-12)

    def test_non_unitary_rotation_rejected(self):
        with self.assertRaises(InvalidParameter):
            SymplecticMap.rotation([[1.0, 0.1], [0.0, 1.0]])

    def test_dimension_mismatch(self):
        with self.assertRaises(InvalidParameter):
            apply(vacuum(2), SymplecticMap.squeeze([0.1, 0.2, 0.3]))

    def test_structure_preserved(self):
        for num_modes in (1, 2, 4):
            state = random_state(num_modes, self.rng)
            state.validate()
            x = xmat(num_modes)
            np.testing.assert_allclose(state.cov, state.cov.conj().T, atol=1e-10)
            np.testing.assert_allclose(state.cov, x @ state.cov.conj() @ x, atol=1e-10)

    def test_rotation_composition(self):
        state = random_state(3, self.rng)
        u1 = unitary_group.rvs(3, random_state=self.rng)
        u2 = unitary_group.rvs(3, random_state=self.rng)
        twice = apply(apply(state, SymplecticMap.rotation(u1)), SymplecticMap.rotation(u2))
        once = apply(state, SymplecticMap.rotation(u2 @ u1))
        np.testing.assert_allclose(twice.cov, once.cov, atol=1e-10)
        np.testing.assert_allclose(twice.mean, once.mean, atol=1e-10)

    def test_passive_maps_preserve_photon_number(self):
        state = random_state(3, self.rng)
        total = mean_photon_numbers(state).sum()
        rotated = apply(state, SymplecticMap.rotation(unitary_group.rvs(3, random_state=self.rng)))
        phased = apply(rotated, SymplecticMap.phase(self.rng.uniform(0, 2 * np.pi, 3)))
        self.assertAlmostEqual(mean_photon_numbers(rotated).sum(), total, delta=1e-10)
        self.assertAlmostEqual(mean_photon_numbers(phased).sum(), total, delta=1e-10)

    def test_squeezed_vacuum_photon_number(self):
        r = 0.7
        state = squeezed_vacuum([r])
        self.assertAlmostEqual(mean_photon_numbers(state)[0], np.sinh(r) ** 2, places=12)
        self.assertAlmostEqual(pattern_probability(state, [0]), 1 / np.cosh(r), places=12)


class TestReduce(unittest.TestCase):
    """Tests for reduced states."""

    def test_vacuum_reduces_to_vacuum(self):
        reduced = reduce(vacuum(3), [0, 2])
        np.testing.assert_array_equal(reduced.cov, 0.5 * np.eye(4))
        self.assertEqual(reduced.num_modes, 2)

    def test_product_coherent(self):
        reduced = reduce(coherent_state([0.3, 1.2 - 0.5j, -0.7]), [1])
        np.testing.assert_allclose(reduced.mean, [1.2 - 0.5j])
        np.testing.assert_allclose(reduced.cov, 0.5 * np.eye(2))

    def test_two_mode_squeezed_is_thermal(self):
        r = 0.5
        reduced = reduce(two_mode_squeezed_vacuum(r), [0])
        nbar = np.sinh(r) ** 2
        self.assertAlmostEqual(mean_photon_numbers(reduced)[0], nbar, places=12)
        for n in range(6):
            expected = nbar**n / (1 + nbar) ** (n + 1)
            self.assertAlmostEqual(pattern_probability(reduced, [n]), expected, places=12)

    def test_order_is_respected(self):
        state = coherent_state([0.1, 0.2, 0.3])
        np.testing.assert_allclose(reduce(state, [2, 0]).mean, [0.3, 0.1])

    def test_invalid_indices(self):
        with self.assertRaises(InvalidParameter):
            reduce(vacuum(3), [0, 0])
        with self.assertRaises(InvalidParameter):
            reduce(vacuum(3), [3])
        with self.assertRaises(InvalidParameter):
            reduce(vacuum(3), [])

    def test_reduce_commutes_with_untouched_maps(self):
        rng = np.random.default_rng(7)
        state = random_state(3, rng)
        squeezed_third = apply(state, SymplecticMap.squeeze([0.0, 0.0, 0.4]))
        np.testing.assert_allclose(
            reduce(squeezed_third, [0, 1]).cov, reduce(state, [0, 1]).cov, atol=1e-12
        )
        np.testing.assert_allclose(
            reduce(squeezed_third, [0, 1]).mean, reduce(state, [0, 1]).mean, atol=1e-12
        )


class TestDoktorov(unittest.TestCase):
    """Tests for the composed Doktorov operator."""

    def test_identity_params(self):
        state = apply_doktorov(vacuum(2), DoktorovParams.identity([1000.0, 1500.0]))
        np.testing.assert_allclose(state.cov, 0.5 * np.eye(4), atol=1e-14)
        np.testing.assert_allclose(state.mean, np.zeros(2), atol=1e-14)

    def test_zero_zero_overlap(self):
        for ratio in (0.25, 1.0, 4.0):
            omega, omega_final = 1000.0, 1000.0 * ratio
            params = DoktorovParams(
                U_L=np.eye(1),
                U_R=np.eye(1),
                sigma=[np.sqrt(omega_final / omega)],
                beta=[0.0],
                freq_final=[omega_final],
                freq_initial=[omega],
            )
            state = apply_doktorov(vacuum(1), params)
            expected = 2 * np.sqrt(omega * omega_final) / (omega + omega_final)
            self.assertAlmostEqual(pattern_probability(state, [0]), expected, delta=1e-9)

    def test_pure_displacement_is_poisson(self):
        delta = 0.8
        params = DoktorovParams(
            U_L=np.eye(1),
            U_R=np.eye(1),
            sigma=[1.0],
            beta=[delta],
            freq_final=[1000.0],
            freq_initial=[1000.0],
        )
        state = apply_doktorov(vacuum(1), params)
        for n in range(8):
            expected = np.exp(-(delta**2)) * delta ** (2 * n) / np.prod(np.arange(1, n + 1))
            self.assertAlmostEqual(pattern_probability(state, [n]), expected, delta=1e-12)


if __name__ == "__main__":
    unittest.main()
