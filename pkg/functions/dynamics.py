"""
Free harmonic evolution of a post-transition state and its view in a basis
of spatially localized modes.

The Hamiltonian is diagonal in the final-state normal modes, so evolving
for a time t is the phase map a_j -> exp(-i omega_j t) a_j; the localized
modes are then a passive rotation R(U_l) of the normal modes. Zero-point
energy only adds a global phase and is dropped.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from logging import getLogger
from typing import Sequence

import numpy as np
from scipy import constants

from functions.exceptions import InvalidParameter
from functions.gaussian import (
    UNITARY_TOL,
    GaussianState,
    SymplecticMap,
    apply,
    mean_photon_numbers,
)
from functions.sampler import joint_probability_table, mode_marginal
from functions.vibronic import angular_frequency

logger = getLogger(__name__)


@dataclass(frozen=True)
class LocalizationMap:
    """
    Parameters
    ----------
    U_l : np.ndarray
        M x M unitary taking normal modes to localized modes
    freq : np.ndarray
        Final-state wavenumbers in cm^-1
    """

    U_l: np.ndarray
    freq: np.ndarray

    def __post_init__(self):
        U_l = np.asarray(self.U_l, dtype=np.complex128)
        freq = np.asarray(self.freq, dtype=np.float64).reshape(-1)
        if U_l.shape != (freq.shape[0], freq.shape[0]):
            raise InvalidParameter(
                f"U_l has shape {U_l.shape} but {freq.shape[0]} frequencies were given"
            )
        deviation = np.abs(U_l @ U_l.conj().T - np.eye(freq.shape[0])).max()
        if deviation > UNITARY_TOL:
            raise InvalidParameter(
                f"localization matrix is not unitary (max |UU^+ - I| = {deviation:.3e})"
            )
        if np.any(freq <= 0):
            raise InvalidParameter("frequencies must be strictly positive")
        object.__setattr__(self, "U_l", U_l)
        object.__setattr__(self, "freq", freq)

    @property
    def num_modes(self) -> int:
        return self.freq.shape[0]


def _check(state: GaussianState, loc: LocalizationMap, t: float) -> None:
    if state.num_modes != loc.num_modes:
        raise InvalidParameter(
            f"localization map has {loc.num_modes} modes but the state has {state.num_modes}"
        )
    if t < 0:
        raise InvalidParameter(f"time must be non-negative, got {t}")


def free_evolution(state: GaussianState, freq, t: float) -> GaussianState:
    """Phase evolution of the normal modes for ``t`` femtoseconds."""
    theta = angular_frequency(freq) * t * constants.femto
    return apply(state, SymplecticMap.phase(theta))


def evolve(state: GaussianState, loc: LocalizationMap, t: float) -> GaussianState:
    """
    State in the localized basis after ``t`` femtoseconds of free evolution.

    Parameters
    ----------
    state : GaussianState
        Post-transition state in the final normal-mode basis
    loc : LocalizationMap
        Localization and frequencies
    t : float
        Time in femtoseconds, t >= 0
    """
    _check(state, loc, t)
    evolved = free_evolution(state, loc.freq, t)
    return apply(evolved, SymplecticMap.rotation(loc.U_l))


def _map_times(func, times: Sequence[float], workers: int) -> list:
    if workers <= 1:
        return [func(t) for t in times]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, times))


def time_series(
    state: GaussianState,
    loc: LocalizationMap,
    times: Sequence[float],
    mode: int,
    cutoff: int,
    workers: int = 1,
) -> list:
    """Photon-number distribution of one localized mode at each time."""
    if not 0 <= mode < loc.num_modes:
        raise InvalidParameter(f"mode {mode} out of range for {loc.num_modes} modes")
    logger.info("Evolving %d time points for localized mode %d", len(times), mode)
    return _map_times(
        lambda t: mode_marginal(evolve(state, loc, t), mode, cutoff), times, workers
    )


def coexcitation_series(
    state: GaussianState,
    loc: LocalizationMap,
    times: Sequence[float],
    modes: Sequence[int],
    cutoff: int,
    workers: int = 1,
) -> list:
    """Joint distribution of a set of localized modes at each time."""
    return _map_times(
        lambda t: joint_probability_table(evolve(state, loc, t), modes, cutoff),
        times,
        workers,
    )


def mean_photon_series(
    state: GaussianState, loc: LocalizationMap, times: Sequence[float]
) -> np.ndarray:
    """Mean photon number of every localized mode, one row per time."""
    return np.array([mean_photon_numbers(evolve(state, loc, t)) for t in times])
