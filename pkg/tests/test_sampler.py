import itertools
import math
import unittest

import numpy as np

from functions.exceptions import CutoffError, InvalidParameter
from functions.gaussian import (
    SymplecticMap,
    apply,
    coherent_state,
    reduce,
    squeezed_vacuum,
    two_mode_squeezed_vacuum,
    vacuum,
)
from functions.probabilities import pattern_probability
from functions.sampler import (
    ChainRuleSampler,
    SamplerConfig,
    coexcitation_probability,
    conditional_probabilities,
    empirical_coexcitation,
    empirical_joint_table,
    empirical_marginals,
    joint_probability_table,
    sample,
    select_contributing_modes,
    single_mode_marginals,
)
from tests.states import random_state


class TestSamplerConfig(unittest.TestCase):
    def test_defaults(self):
        cfg = SamplerConfig()
        self.assertEqual(cfg.cutoff, 10)
        self.assertEqual(cfg.num_samples, 10_000)
        self.assertEqual(cfg.max_total_photons, 40)

    def test_invalid(self):
        with self.assertRaises(InvalidParameter):
            SamplerConfig(cutoff=0)
        with self.assertRaises(InvalidParameter):
            SamplerConfig(num_samples=0)
        with self.assertRaises(InvalidParameter):
            SamplerConfig(seed=-1)


class TestSample(unittest.TestCase):
    """Tests for chain-rule sampling."""

    def test_vacuum(self):
        samples = sample(vacuum(3), SamplerConfig(num_samples=50, seed=1))
        self.assertEqual(samples, [(0, 0, 0)] * 50)

    def test_coherent_vacuum_probability(self):
        samples = sample(coherent_state([1.0]), SamplerConfig(num_samples=10_000, seed=3))
        empirical = np.mean([s[0] == 0 for s in samples])
        self.assertLessEqual(abs(empirical - math.exp(-1)), 0.015)

    def test_two_mode_squeezed_correlation(self):
        samples = sample(two_mode_squeezed_vacuum(0.6), SamplerConfig(num_samples=500, seed=5))
        self.assertTrue(all(n1 == n2 for n1, n2 in samples))

    def test_seed_determinism(self):
        state = random_state(2, np.random.default_rng(8))
        cfg = SamplerConfig(num_samples=200, seed=99)
        self.assertEqual(sample(state, cfg), sample(state, cfg))

    def test_serial_and_parallel_agree(self):
        state = random_state(3, np.random.default_rng(21), max_squeezing=0.3)
        serial = sample(state, SamplerConfig(num_samples=300, seed=7, cutoff=8))
        parallel = sample(state, SamplerConfig(num_samples=300, seed=7, cutoff=8, workers=4))
        self.assertEqual(serial, parallel)

    def test_total_variation_distance(self):
        state = random_state(3, np.random.default_rng(17), max_squeezing=0.3, displacement_scale=0.4)
        cutoff = 6
        samples = sample(state, SamplerConfig(num_samples=10_000, seed=2024, cutoff=cutoff))
        exact = joint_probability_table(state, [0, 1, 2], cutoff)
        empirical = empirical_joint_table(samples, [0, 1, 2], cutoff)
        tvd = 0.5 * np.abs(exact.table / exact.coverage - empirical.table).sum()
        self.assertLessEqual(tvd, 0.05)

    def test_chain_rule_exactness(self):
        state = random_state(3, np.random.default_rng(31))
        pattern = (1, 0, 2)
        product = 1.0
        for k in range(3):
            product *= conditional_probabilities(state, pattern[:k], cutoff=4)[pattern[k]]
        self.assertAlmostEqual(product, pattern_probability(state, pattern), delta=1e-9)

    def test_cutoff_error_reports_prefix(self):
        # mode 2 holds almost no mass below the cutoff
        state = coherent_state([0.0, 6.0])
        sampler = ChainRuleSampler(state, SamplerConfig(cutoff=1, num_samples=1))
        with self.assertRaises(CutoffError) as ctx:
            sampler.draw(0)
        self.assertEqual(ctx.exception.prefix, (0,))

    def test_rare_prefix_uses_conditional_mass(self):
        # Pr(n_1 = 0) = exp(-36), yet mode 2 sits well inside the cutoff
        state = coherent_state([6.0, 0.5])
        sampler = ChainRuleSampler(state, SamplerConfig(cutoff=4, num_samples=1))
        poisson = np.array([math.exp(-0.25) * 0.25**n / math.factorial(n) for n in range(5)])
        np.testing.assert_allclose(sampler.conditional((0,)), poisson / poisson.sum(), rtol=1e-8)

    def test_truncated_mass_is_tracked(self):
        sampler = ChainRuleSampler(coherent_state([1.5]), SamplerConfig(cutoff=3, num_samples=20))
        sampler.run()
        expected = 1 - sum(pattern_probability(coherent_state([1.5]), [n]) for n in range(4))
        self.assertAlmostEqual(sampler.max_truncated_mass, expected, delta=1e-12)


class TestMarginals(unittest.TestCase):
    """Tests for exact and empirical marginals."""

    def test_vacuum_marginals(self):
        for marginal in single_mode_marginals(vacuum(2), 5):
            np.testing.assert_allclose(marginal.table, [1.0, 0, 0, 0, 0, 0], atol=1e-14)

    def test_single_mode_cutoff_of_sixty(self):
        coverages = []
        for beta in (2.0, 2.0j):
            state = apply(squeezed_vacuum([1.0]), SymplecticMap.displace([beta]))
            (marginal,) = single_mode_marginals(state, 60)
            self.assertEqual(marginal.table.shape, (61,))
            coverages.append(marginal.coverage)
        self.assertGreaterEqual(max(coverages), 1 - 1e-6)
        with self.assertRaises(InvalidParameter):
            single_mode_marginals(state, 61)

    def test_product_coherent_marginals(self):
        first, second = single_mode_marginals(coherent_state([1.0, 0.0]), 8)
        np.testing.assert_allclose(second.table, np.eye(9)[0], atol=1e-14)
        for n in range(9):
            self.assertAlmostEqual(
                first.probability([n]), math.exp(-1) / math.factorial(n), delta=1e-12
            )

    def test_reduce_matches_cutoff_joint(self):
        # weak enough that the mass above the cutoff is negligible
        for seed in (1, 2, 3):
            state = random_state(
                3, np.random.default_rng(seed), max_squeezing=0.05, displacement_scale=0.1
            )
            joint = joint_probability_table(state, [0, 1, 2], 6)
            for marginal in single_mode_marginals(state, 6):
                brute = joint.marginal(marginal.modes[0]).table
                np.testing.assert_allclose(brute, marginal.table, atol=1e-9)

    def test_reduce_matches_brute_force(self):
        cutoff = 6
        for seed in (1, 2):
            two_mode = random_state(2, np.random.default_rng(seed), max_squeezing=0.3)
            table = np.zeros((cutoff + 1, cutoff + 1))
            for i, j in itertools.product(range(cutoff + 1), repeat=2):
                table[i, j] = pattern_probability(two_mode, [i, j])
            marginals = single_mode_marginals(two_mode, cutoff)
            for axis, marginal in enumerate(marginals):
                other = 1 - axis
                tail = np.array(
                    [
                        sum(
                            pattern_probability(two_mode, [n, m] if axis == 0 else [m, n])
                            for m in range(cutoff + 1, 30)
                        )
                        for n in range(cutoff + 1)
                    ]
                )
                np.testing.assert_allclose(
                    table.sum(axis=other) + tail, marginal.table, atol=1e-9
                )

    def test_joint_table_two_mode_squeezed(self):
        table = joint_probability_table(two_mode_squeezed_vacuum(0.5), [0, 1], 5)
        off_diagonal = table.table - np.diag(np.diag(table.table))
        self.assertLessEqual(np.abs(off_diagonal).max(), 1e-12)

    def test_inclusion_exclusion(self):
        state = random_state(2, np.random.default_rng(4))
        table = joint_probability_table(state, [0, 1], 3)
        p0 = reduce(state, [0])
        p1 = reduce(state, [1])
        expected = (
            1
            - pattern_probability(p0, [0])
            - pattern_probability(p1, [0])
            + pattern_probability(state, [0, 0])
        )
        # entries beyond the cutoff are not tabulated
        truncated = table.truncated_mass
        self.assertLessEqual(abs(coexcitation_probability(table) - expected), truncated + 1e-12)

    def test_table_size_cap(self):
        with self.assertRaises(InvalidParameter):
            joint_probability_table(vacuum(7), range(7), 9)

    def test_empirical_helpers(self):
        samples = np.array([[0, 1], [1, 1], [2, 0], [1, 3]])
        marginals = empirical_marginals(samples, 2)
        np.testing.assert_allclose(marginals[0].table, [0.25, 0.5, 0.25])
        np.testing.assert_allclose(marginals[1].table, [0.25, 0.5, 0.0])
        self.assertAlmostEqual(empirical_coexcitation(samples, [0, 1]), 0.5)
        self.assertAlmostEqual(empirical_joint_table(samples, [0, 1], 3).coexcitation(), 0.5)

    def test_select_contributing_modes(self):
        U_l = np.array([[0.1, 0.9, 0.3], [0.8, 0.1, 0.2], [0.2, 0.1, 0.9]])
        self.assertEqual(select_contributing_modes(U_l, [0], 2), (1, 2))
        self.assertEqual(select_contributing_modes(U_l, [0, 1], 1), (1,))


class TestSqueezedSampling(unittest.TestCase):
    def test_even_counts_only(self):
        state = apply(squeezed_vacuum([0.7]), SymplecticMap.phase([0.3]))
        samples = sample(state, SamplerConfig(num_samples=300, seed=12))
        self.assertTrue(all(s[0] % 2 == 0 for s in samples))


if __name__ == "__main__":
    unittest.main()
