"""
Exact photon-number sampling by the chain rule over modes, and exact or
empirical marginal distributions.

A pattern is drawn mode by mode: n_1 from the one-mode marginal, then each
n_k from Pr(n_1..n_{k-1}, j) / Pr(n_1..n_{k-1}) evaluated on the k-mode
reduced state. Conditionals are renormalized over the truncated support
j = 0..cutoff and the mass lost to truncation is tracked.
"""

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from logging import getLogger
from typing import Sequence

import numpy as np

from functions.distribution import Distribution
from functions.exceptions import CutoffError, InvalidParameter
from functions.gaussian import GaussianState, reduce
from functions.probabilities import (
    MAX_SINGLE_MODE_PHOTONS,
    MAX_TOTAL_PHOTONS,
    pattern_probability,
    photon_limit,
)

logger = getLogger(__name__)

NORMALIZER_FLOOR = 1e-12
TRUNCATION_WARNING = 1e-3
MAX_TABLE_SIZE = 10**6


@dataclass(frozen=True)
class SamplerConfig:
    """
    Parameters
    ----------
    cutoff : int
        Largest photon number drawn per mode
    seed : int
        Non-negative seed; sample i uses the stream derived from (seed, i)
    max_total_photons : int
        Cap on the photons of a whole pattern
    num_samples : int
        Number of patterns to draw
    workers : int
        Threads drawing samples; 1 runs serially
    """

    cutoff: int = 10
    seed: int = 0
    max_total_photons: int = MAX_TOTAL_PHOTONS
    num_samples: int = 10_000
    workers: int = 1

    def __post_init__(self):
        if self.cutoff < 1:
            raise InvalidParameter(f"cutoff must be at least 1, got {self.cutoff}")
        if self.num_samples < 1:
            raise InvalidParameter(f"num_samples must be at least 1, got {self.num_samples}")
        if self.workers < 1:
            raise InvalidParameter(f"workers must be at least 1, got {self.workers}")
        if self.seed < 0:
            raise InvalidParameter(f"seed must be non-negative, got {self.seed}")
        if not 1 <= self.max_total_photons <= MAX_TOTAL_PHOTONS:
            raise InvalidParameter(
                f"max_total_photons must lie in [1, {MAX_TOTAL_PHOTONS}], "
                f"got {self.max_total_photons}"
            )


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator of sample ``index``; identical in serial and parallel runs."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


class ChainRuleSampler:
    """
    Draws photon patterns from one Gaussian state.

    Joint probabilities of visited prefixes are memoized, so repeated
    prefixes across samples cost nothing. The memo is shared by worker
    threads behind a lock.
    """

    def __init__(self, state: GaussianState, cfg: SamplerConfig):
        state.validate()
        self.state = state
        self.cfg = cfg
        self._reduced = [None] + [
            reduce(state, range(k)) for k in range(1, state.num_modes + 1)
        ]
        self._joint: dict = {}
        self._lock = threading.Lock()
        self.max_truncated_mass = 0.0

    def _prefix_probability(self, prefix: tuple) -> float:
        if not prefix:
            return 1.0
        return float(self._extensions(prefix[:-1])[prefix[-1]])

    def _extensions(self, prefix: tuple) -> np.ndarray:
        """Pr(prefix, j) for j = 0..cutoff, limited by the photon cap."""
        with self._lock:
            cached = self._joint.get(prefix)
        if cached is not None:
            return cached

        budget = self.cfg.max_total_photons - sum(prefix)
        reduced = self._reduced[len(prefix) + 1]
        values = np.zeros(self.cfg.cutoff + 1)
        for j in range(min(self.cfg.cutoff, budget) + 1):
            values[j] = pattern_probability(reduced, prefix + (j,))
        with self._lock:
            self._joint[prefix] = values
        return values

    def conditional(self, prefix: Sequence[int]) -> np.ndarray:
        """
        Renormalized conditional distribution of the next mode.

        Raises
        ------
        CutoffError
            If the conditional mass of the next mode below the cutoff,
            Pr(prefix, j <= cutoff) / Pr(prefix), falls under 1e-12.
        """
        prefix = tuple(int(n) for n in prefix)
        joint = self._extensions(prefix)
        normalizer = float(joint.sum())
        parent = self._prefix_probability(prefix)
        conditional_mass = normalizer / parent if parent > 0 else 0.0
        if normalizer <= 0.0 or conditional_mass < NORMALIZER_FLOOR:
            raise CutoffError(prefix, conditional_mass)

        truncated = max(0.0, 1.0 - conditional_mass)
        if truncated > self.max_truncated_mass:
            with self._lock:
                self.max_truncated_mass = max(self.max_truncated_mass, truncated)
        return joint / normalizer

    def draw(self, index: int) -> tuple:
        rng = sample_rng(self.cfg.seed, index)
        prefix: tuple = ()
        for _ in range(self.state.num_modes):
            probs = self.conditional(prefix)
            prefix = prefix + (int(rng.choice(probs.shape[0], p=probs)),)
        return prefix

    def run(self) -> list:
        n = self.cfg.num_samples
        logger.info(
            "Sampling %d patterns from %d modes (cutoff %d, %d worker(s))",
            n,
            self.state.num_modes,
            self.cfg.cutoff,
            self.cfg.workers,
        )
        if self.cfg.workers == 1:
            samples = [self.draw(i) for i in range(n)]
        else:
            with ThreadPoolExecutor(max_workers=self.cfg.workers) as executor:
                samples = list(executor.map(self.draw, range(n)))
        if self.max_truncated_mass > TRUNCATION_WARNING:
            logger.warning(
                "Conditional mass lost to truncation reached %.3e; consider a larger cutoff",
                self.max_truncated_mass,
            )
        return samples


def sample(state: GaussianState, cfg: SamplerConfig) -> list:
    """
    Draw ``cfg.num_samples`` photon patterns from ``state``.

    Returns
    -------
    list of tuple
        One pattern per sample, in sample-index order
    """
    return ChainRuleSampler(state, cfg).run()


def conditional_probabilities(
    state: GaussianState, prefix: Sequence[int], cutoff: int
) -> np.ndarray:
    """
    Exact conditionals Pr(prefix, j) / Pr(prefix) of the next mode for
    j = 0..cutoff, not renormalized over the truncation.
    """
    prefix = tuple(int(n) for n in prefix)
    if len(prefix) >= state.num_modes:
        raise InvalidParameter(
            f"prefix of length {len(prefix)} leaves no mode to condition on"
        )
    k = len(prefix) + 1
    reduced = reduce(state, range(k))
    joint = np.array([pattern_probability(reduced, prefix + (j,)) for j in range(cutoff + 1)])
    parent = pattern_probability(reduce(state, range(k - 1)), prefix) if prefix else 1.0
    if parent < NORMALIZER_FLOOR:
        raise CutoffError(prefix, parent, f"prefix {prefix} has probability {parent:.3e}")
    return joint / parent


def single_mode_marginals(state: GaussianState, cutoff: int) -> list:
    """
    Exact photon-number distribution of every mode for n = 0..cutoff.

    Parameters
    ----------
    state : GaussianState
        The state to marginalize
    cutoff : int
        Largest photon number tabulated

    Returns
    -------
    list of Distribution
        One single-mode distribution per mode; ``coverage`` holds the mass
        found below the cutoff
    """
    return [mode_marginal(state, mode, cutoff) for mode in range(state.num_modes)]


def mode_marginal(state: GaussianState, mode: int, cutoff: int) -> Distribution:
    """Exact distribution of one mode (0-based) for n = 0..cutoff."""
    if not 1 <= cutoff <= MAX_SINGLE_MODE_PHOTONS:
        raise InvalidParameter(
            f"cutoff must lie in [1, {MAX_SINGLE_MODE_PHOTONS}], got {cutoff}"
        )
    reduced = reduce(state, [mode])
    table = np.array([pattern_probability(reduced, (n,)) for n in range(cutoff + 1)])
    marginal = Distribution(modes=(mode,), cutoff=cutoff, table=table)
    if marginal.truncated_mass > TRUNCATION_WARNING:
        logger.warning(
            "Mode %d keeps only %.4f of its probability below cutoff %d",
            mode,
            marginal.coverage,
            cutoff,
        )
    return marginal


def joint_probability_table(
    state: GaussianState, modes: Sequence[int], cutoff: int
) -> Distribution:
    """
    Exact joint distribution of a mode subset for every pattern up to the cutoff.

    Patterns above the total photon cap are left at zero and count as
    truncated mass.
    """
    modes = [int(m) for m in modes]
    if cutoff < 1:
        raise InvalidParameter(f"cutoff must be at least 1, got {cutoff}")
    size = (cutoff + 1) ** len(modes)
    if size > MAX_TABLE_SIZE:
        raise InvalidParameter(
            f"joint table of {len(modes)} modes at cutoff {cutoff} has {size} entries "
            f"(limit {MAX_TABLE_SIZE})"
        )
    reduced = reduce(state, modes)
    table = np.zeros((cutoff + 1,) * len(modes))
    for pattern in itertools.product(range(cutoff + 1), repeat=len(modes)):
        if sum(pattern) <= photon_limit(pattern):
            table[pattern] = pattern_probability(reduced, pattern)
    return Distribution(modes=tuple(modes), cutoff=cutoff, table=table)


def _as_sample_array(samples) -> np.ndarray:
    array = np.asarray(samples, dtype=np.int64)
    if array.ndim != 2 or array.shape[0] == 0:
        raise InvalidParameter("samples must be a non-empty 2D collection of patterns")
    return array


def empirical_marginals(samples, cutoff: int) -> list:
    """Single-mode frequencies of a sample set; counts above the cutoff are dropped."""
    array = _as_sample_array(samples)
    marginals = []
    for mode in range(array.shape[1]):
        column = array[:, mode]
        counts = np.bincount(column[column <= cutoff], minlength=cutoff + 1)
        marginals.append(
            Distribution(modes=(mode,), cutoff=cutoff, table=counts / array.shape[0])
        )
    return marginals


def empirical_joint_table(samples, modes: Sequence[int], cutoff: int) -> Distribution:
    array = _as_sample_array(samples)
    modes = [int(m) for m in modes]
    if any(m < 0 or m >= array.shape[1] for m in modes):
        raise InvalidParameter(f"mode indices {modes} out of range for {array.shape[1]} modes")
    selected = array[:, modes]
    kept = selected[np.all(selected <= cutoff, axis=1)]
    table = np.zeros((cutoff + 1,) * len(modes))
    np.add.at(table, tuple(kept.T), 1.0)
    return Distribution(modes=tuple(modes), cutoff=cutoff, table=table / array.shape[0])


def empirical_coexcitation(samples, modes: Sequence[int], min_counts=None) -> float:
    """Fraction of samples in which every listed mode holds at least min_counts photons."""
    array = _as_sample_array(samples)
    modes = [int(m) for m in modes]
    if min_counts is None:
        min_counts = [1] * len(modes)
    thresholds = np.asarray(min_counts, dtype=np.int64)
    return float(np.mean(np.all(array[:, modes] >= thresholds, axis=1)))


def coexcitation_probability(table: Distribution, min_counts=None) -> float:
    return table.coexcitation(min_counts)


def select_contributing_modes(U_l, local_modes: Sequence[int], k: int) -> tuple:
    """
    Rank normal modes by their weight on a set of localized modes.

    The weight of normal mode j is sum over l in ``local_modes`` of
    |U_l[l, j]|^2; the ``k`` heaviest modes are returned, heaviest first.
    """
    U_l = np.asarray(U_l)
    M = U_l.shape[1]
    if not 1 <= k <= M:
        raise InvalidParameter(f"k must lie in [1, {M}], got {k}")
    local_modes = [int(m) for m in local_modes]
    if any(m < 0 or m >= U_l.shape[0] for m in local_modes):
        raise InvalidParameter(f"localized mode indices {local_modes} out of range")
    weights = np.sum(np.abs(U_l[local_modes, :]) ** 2, axis=0)
    order = np.argsort(-weights, kind="stable")
    return tuple(int(j) for j in order[:k])
