"""
Coherent pre-excitation of ground-state vibrational modes by a classical
driving field.

A field E(t) = E0 exp(-i w0 t) + c.c. coupling to the nuclear charges
displaces each mode; in the resonant limit only the driven mode k moves,
by beta_k = -(i/hbar) sum_i q_i d_ik . E0 (t1 - t0). The electronic dipole
and centre-of-mass terms are neglected, and the global phase from time
ordering is dropped.
"""

from dataclasses import dataclass
from logging import getLogger
from typing import Mapping

import numpy as np
from scipy import constants

from functions.exceptions import InvalidParameter
from functions.gaussian import GaussianState, SymplecticMap, apply
from functions.vibronic import angular_frequency

logger = getLogger(__name__)

RESONANCE_TOL = 1e-9


@dataclass(frozen=True)
class DriveSpec:
    """
    A resonant drive of one normal mode.

    Parameters
    ----------
    charges : np.ndarray
        Per-atom charges in units of the elementary charge, length N
    coeffs : np.ndarray
        N x M x 3 array; coeffs[i, k] is the displacement of atom i, in
        Angstrom, per unit of (a_k + a_k^+)
    field : np.ndarray
        Complex field amplitude E0 in V/m, length 3
    duration : float
        t1 - t0 in seconds
    target_mode : int
        Driven mode (0-based)
    start : float
        t0 in seconds
    """

    charges: np.ndarray
    coeffs: np.ndarray
    field: np.ndarray
    duration: float
    target_mode: int
    start: float = 0.0

    def __post_init__(self):
        charges = np.asarray(self.charges, dtype=np.float64).reshape(-1)
        coeffs = np.asarray(self.coeffs, dtype=np.float64)
        field = np.asarray(self.field, dtype=np.complex128).reshape(-1)
        if coeffs.ndim != 3 or coeffs.shape[0] != charges.shape[0] or coeffs.shape[2] != 3:
            raise InvalidParameter(
                f"coeffs must have shape ({charges.shape[0]}, M, 3), got {coeffs.shape}"
            )
        if field.shape[0] != 3:
            raise InvalidParameter(f"field must be a 3-vector, got {field.shape[0]} entries")
        if self.duration < 0:
            raise InvalidParameter(f"duration must be non-negative, got {self.duration}")
        if not 0 <= self.target_mode < coeffs.shape[1]:
            raise InvalidParameter(
                f"target_mode {self.target_mode} out of range for {coeffs.shape[1]} modes"
            )
        object.__setattr__(self, "charges", charges)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "field", field)

    @property
    def num_modes(self) -> int:
        return self.coeffs.shape[1]


def _couplings(spec: DriveSpec, field: np.ndarray) -> np.ndarray:
    """sum_i q_i d_ik . E for every mode k, in joules."""
    charges = spec.charges * constants.e
    coeffs = spec.coeffs * constants.angstrom
    return np.einsum("i,ikc,c->k", charges, coeffs, field)


def drive_displacement(spec: DriveSpec) -> complex:
    """
    Displacement of the target mode in the resonant limit.

    Returns
    -------
    complex
        beta_k = -(i/hbar) sum_i q_i d_ik . E0 (t1 - t0)
    """
    coupling = _couplings(spec, spec.field)[spec.target_mode]
    return complex(-1j / constants.hbar * coupling * spec.duration)


def _time_integral(detuning: np.ndarray, start: float, stop: float) -> np.ndarray:
    # integral of exp(i delta t) over [start, stop]
    result = np.full(detuning.shape, stop - start, dtype=np.complex128)
    off = np.abs(detuning) * max(abs(start), abs(stop), stop - start) > RESONANCE_TOL
    delta = detuning[off]
    result[off] = (np.exp(1j * delta * stop) - np.exp(1j * delta * start)) / (1j * delta)
    return result


def detuned_drive_displacements(
    spec: DriveSpec, freq, carrier, counter_rotating: bool = False
) -> np.ndarray:
    """
    Displacement of every mode from the full time integral of the drive.

    Parameters
    ----------
    spec : DriveSpec
        Drive description; ``target_mode`` is ignored
    freq : array_like
        Mode wavenumbers in cm^-1
    carrier : float
        Carrier wavenumber w0 in cm^-1
    counter_rotating : bool
        Include the E0* exp(+i w0 t) term

    Returns
    -------
    np.ndarray
        Complex displacements, one per mode. On resonance the target entry
        equals ``drive_displacement(spec)``.
    """
    omega = angular_frequency(freq).reshape(-1)
    if omega.shape[0] != spec.num_modes:
        raise InvalidParameter(
            f"{omega.shape[0]} frequencies given for a drive over {spec.num_modes} modes"
        )
    omega_0 = float(angular_frequency(carrier))
    stop = spec.start + spec.duration
    beta = _couplings(spec, spec.field) * _time_integral(omega - omega_0, spec.start, stop)
    if counter_rotating:
        beta = beta + _couplings(spec, spec.field.conj()) * _time_integral(
            omega + omega_0, spec.start, stop
        )
    return -1j / constants.hbar * beta


def pre_excite(state: GaussianState, mode: int, beta: complex) -> GaussianState:
    """Displace one mode (0-based) by ``beta``; the other modes are untouched."""
    if not 0 <= mode < state.num_modes:
        raise InvalidParameter(f"mode {mode} out of range for {state.num_modes} modes")
    shift = np.zeros(state.num_modes, dtype=np.complex128)
    shift[mode] = beta
    return apply(state, SymplecticMap.displace(shift))


def pre_excite_modes(state: GaussianState, betas: Mapping[int, complex]) -> GaussianState:
    for mode, beta in sorted(betas.items()):
        logger.debug("Pre-exciting mode %d with beta=%s", mode, beta)
        state = pre_excite(state, mode, beta)
    return state
