"""
Doktorov parameters of a vibronic transition from molecular normal-mode data.

The vibrational part of a transition between two electronic states maps to
the Gaussian unitary D(beta) R(U_L) S(Sigma) R(U_R), with

    U_D  = L_f^T L_i                         (Duschinsky matrix)
    d    = L_f^T m^(1/2) (x_i - x_f)          (mass-weighted displacement)
    J    = Omega' U_D Omega^-1 = U_L Sigma U_R
    beta = Omega' d / sqrt(2 hbar)

where Omega and Omega' hold the square roots of the initial and final
angular frequencies. This module is the only place where units are
converted: frequencies come in as wavenumbers (cm^-1), masses in amu and
lengths in Angstrom.
"""

from dataclasses import dataclass
from logging import getLogger

import numpy as np
from scipy import constants
from scipy.linalg import LinAlgError, svd

from functions.exceptions import InvalidParameter, NumericalError

logger = getLogger(__name__)

ORTHONORMAL_TOL = 1e-6
ORTHOGONAL_TOL = 1e-8

AMU_KG = constants.atomic_mass
ANGSTROM_M = constants.angstrom
HBAR = constants.hbar


def angular_frequency(wavenumber):
    """
    Convert wavenumbers in cm^-1 to angular frequencies in rad/s.

    Parameters:
    -----------
    wavenumber : float or array_like
        Wavenumber(s) in cm^-1

    Returns:
    --------
    float or np.ndarray
        2 pi c (100 wavenumber)
    """
    return 2.0 * np.pi * constants.c * 100.0 * np.asarray(wavenumber, dtype=np.float64)


def _as_frequencies(values, name: str) -> np.ndarray:
    freq = np.asarray(values, dtype=np.float64).reshape(-1)
    if freq.size == 0:
        raise InvalidParameter(f"{name} is empty")
    if not np.all(np.isfinite(freq)) or np.any(freq <= 0):
        raise InvalidParameter(
            f"{name} must be strictly positive; remove rigid-body modes first (got {freq})"
        )
    return freq


def _orthogonal_deviation(matrix: np.ndarray) -> float:
    return float(np.abs(matrix @ matrix.T - np.eye(matrix.shape[0])).max())


@dataclass(frozen=True)
class MoleculeData:
    """
    Cartesian description of a molecule in its initial and final electronic
    states.

    Parameters
    ----------
    masses : np.ndarray
        Atomic masses in amu, length N
    geom_initial, geom_final : np.ndarray
        Equilibrium geometries in Angstrom, length 3N (x1, y1, z1, x2, ...)
    modes_initial, modes_final : np.ndarray
        Mass-weighted normal modes as the columns of 3N x M matrices
    freq_initial, freq_final : np.ndarray
        Vibrational wavenumbers in cm^-1, length M
    """

    masses: np.ndarray
    geom_initial: np.ndarray
    geom_final: np.ndarray
    modes_initial: np.ndarray
    modes_final: np.ndarray
    freq_initial: np.ndarray
    freq_final: np.ndarray

    def __post_init__(self):
        masses = np.asarray(self.masses, dtype=np.float64).reshape(-1)
        if masses.size == 0 or np.any(masses <= 0) or not np.all(np.isfinite(masses)):
            raise InvalidParameter("masses must be positive and finite")
        n_coords = 3 * masses.size

        geometries = {}
        for name in ("geom_initial", "geom_final"):
            geom = np.asarray(getattr(self, name), dtype=np.float64).reshape(-1)
            if geom.shape[0] != n_coords:
                raise InvalidParameter(
                    f"{name} has {geom.shape[0]} coordinates, expected {n_coords}"
                )
            geometries[name] = geom

        freq_initial = _as_frequencies(self.freq_initial, "freq_initial")
        freq_final = _as_frequencies(self.freq_final, "freq_final")
        num_modes = freq_final.shape[0]
        if freq_initial.shape[0] != num_modes:
            raise InvalidParameter(
                f"freq_initial has {freq_initial.shape[0]} entries, freq_final {num_modes}"
            )
        if num_modes > n_coords:
            raise InvalidParameter(
                f"{num_modes} modes cannot be supported by {masses.size} atoms"
            )
        if num_modes > n_coords - 5:
            logger.warning(
                "%d modes for %d atoms exceeds 3N - 5; rigid-body motion may be included",
                num_modes,
                masses.size,
            )

        mode_sets = {}
        for name in ("modes_initial", "modes_final"):
            modes = np.asarray(getattr(self, name), dtype=np.float64)
            if modes.shape != (n_coords, num_modes):
                raise InvalidParameter(
                    f"{name} has shape {modes.shape}, expected {(n_coords, num_modes)}"
                )
            deviation = float(np.abs(modes.T @ modes - np.eye(num_modes)).max())
            if deviation > ORTHONORMAL_TOL:
                raise InvalidParameter(
                    f"columns of {name} are not orthonormal (max deviation {deviation:.3e})"
                )
            mode_sets[name] = modes

        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "freq_initial", freq_initial)
        object.__setattr__(self, "freq_final", freq_final)
        for name, value in {**geometries, **mode_sets}.items():
            object.__setattr__(self, name, value)

    @property
    def num_atoms(self) -> int:
        return self.masses.shape[0]

    @property
    def num_modes(self) -> int:
        return self.freq_final.shape[0]


@dataclass(frozen=True)
class DoktorovParams:
    """
    Parameters of D(beta) R(U_L) S(Sigma) R(U_R).

    ``freq_final`` and ``freq_initial`` are kept in cm^-1 for the dynamics
    and for reporting.
    """

    U_L: np.ndarray
    U_R: np.ndarray
    sigma: np.ndarray
    beta: np.ndarray
    freq_final: np.ndarray
    freq_initial: np.ndarray

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=np.float64).reshape(-1)
        M = sigma.shape[0]
        U_L = np.asarray(self.U_L, dtype=np.float64)
        U_R = np.asarray(self.U_R, dtype=np.float64)
        beta = np.asarray(self.beta, dtype=np.float64).reshape(-1)
        for name, matrix in (("U_L", U_L), ("U_R", U_R)):
            if matrix.shape != (M, M):
                raise InvalidParameter(f"{name} has shape {matrix.shape}, expected {(M, M)}")
            deviation = _orthogonal_deviation(matrix)
            if deviation > ORTHOGONAL_TOL:
                raise InvalidParameter(
                    f"{name} is not orthogonal (max deviation {deviation:.3e})"
                )
        if np.any(sigma <= 0):
            raise InvalidParameter("singular values must be positive")
        if np.any(np.diff(sigma) > 0):
            raise InvalidParameter("singular values must be sorted in descending order")
        if beta.shape[0] != M:
            raise InvalidParameter(f"beta has {beta.shape[0]} entries, expected {M}")
        freq_final = _as_frequencies(self.freq_final, "freq_final")
        freq_initial = _as_frequencies(self.freq_initial, "freq_initial")
        if freq_final.shape[0] != M or freq_initial.shape[0] != M:
            raise InvalidParameter(f"frequency vectors must have {M} entries")

        object.__setattr__(self, "U_L", U_L)
        object.__setattr__(self, "U_R", U_R)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "freq_final", freq_final)
        object.__setattr__(self, "freq_initial", freq_initial)

    @property
    def num_modes(self) -> int:
        return self.sigma.shape[0]

    @property
    def huang_rhys(self) -> np.ndarray:
        """Huang-Rhys factors beta_j^2, the mean quanta created per mode by the shift."""
        return self.beta**2

    def duschinsky_product(self) -> np.ndarray:
        """U_L diag(sigma) U_R, which reconstructs J."""
        return self.U_L @ np.diag(self.sigma) @ self.U_R

    @classmethod
    def identity(cls, freq) -> "DoktorovParams":
        """The transition that leaves every mode unchanged."""
        freq = _as_frequencies(freq, "freq")
        M = freq.shape[0]
        return cls(
            U_L=np.eye(M),
            U_R=np.eye(M),
            sigma=np.ones(M),
            beta=np.zeros(M),
            freq_final=freq,
            freq_initial=freq,
        )


def duschinsky(mol: MoleculeData) -> np.ndarray:
    """Duschinsky matrix U_D = L_f^T L_i."""
    if mol.modes_initial.shape != mol.modes_final.shape:
        raise InvalidParameter(
            f"mode matrices differ in shape: {mol.modes_initial.shape} vs "
            f"{mol.modes_final.shape}"
        )
    return mol.modes_final.T @ mol.modes_initial


def displacement_vector(mol: MoleculeData) -> np.ndarray:
    """
    Mass-weighted displacement d = L_f^T m^(1/2) (x_i - x_f) in sqrt(amu) Angstrom.
    """
    sqrt_mass = np.sqrt(np.repeat(mol.masses, 3))
    return mol.modes_final.T @ (sqrt_mass * (mol.geom_initial - mol.geom_final))


def _fix_svd_gauge(U: np.ndarray, Wt: np.ndarray) -> tuple:
    # first largest-magnitude entry of each left singular vector is positive
    U = U.copy()
    Wt = Wt.copy()
    for col in range(U.shape[1]):
        pivot = int(np.argmax(np.abs(U[:, col])))
        if U[pivot, col] < 0:
            U[:, col] *= -1.0
            Wt[col, :] *= -1.0
    return U, Wt


def doktorov_params_from_duschinsky(U_D, d, freq_initial, freq_final) -> DoktorovParams:
    """
    Doktorov parameters from a Duschinsky matrix and displacement vector.

    Parameters
    ----------
    U_D : array_like
        M x M Duschinsky matrix
    d : array_like
        Mass-weighted displacement in sqrt(amu) Angstrom, length M
    freq_initial, freq_final : array_like
        Wavenumbers in cm^-1, length M

    Returns
    -------
    DoktorovParams
        U_L, sigma, U_R from the SVD of J (sigma descending) and the
        dimensionless displacement beta

    Raises
    ------
    InvalidParameter
        On dimension mismatch or non-positive frequencies.
    NumericalError
        If the SVD does not converge.
    """
    freq_initial = _as_frequencies(freq_initial, "freq_initial")
    freq_final = _as_frequencies(freq_final, "freq_final")
    M = freq_final.shape[0]
    U_D = np.asarray(U_D, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64).reshape(-1)
    if freq_initial.shape[0] != M or U_D.shape != (M, M) or d.shape[0] != M:
        raise InvalidParameter(
            f"inconsistent dimensions: U_D {U_D.shape}, d {d.shape[0]}, "
            f"freq_initial {freq_initial.shape[0]}, freq_final {M}"
        )
    deviation = _orthogonal_deviation(U_D)
    if deviation > ORTHONORMAL_TOL:
        logger.warning("Duschinsky matrix deviates from orthogonality by %.3e", deviation)

    omega_initial = np.sqrt(angular_frequency(freq_initial))
    omega_final = np.sqrt(angular_frequency(freq_final))
    J = (omega_final[:, None] * U_D) / omega_initial[None, :]
    try:
        U, sigma, Wt = svd(J)
    except LinAlgError as exc:
        raise NumericalError(f"SVD of J failed: {exc}") from exc
    U, Wt = _fix_svd_gauge(U, Wt)

    d_si = d * np.sqrt(AMU_KG) * ANGSTROM_M
    beta = omega_final * d_si / np.sqrt(2.0 * HBAR)
    logger.debug("Doktorov parameters: sigma=%s beta=%s", sigma, beta)
    return DoktorovParams(
        U_L=U,
        U_R=Wt,
        sigma=sigma,
        beta=beta,
        freq_final=freq_final,
        freq_initial=freq_initial,
    )


def doktorov_params(mol: MoleculeData) -> DoktorovParams:
    """Doktorov parameters of a molecule given in Cartesian form."""
    logger.info(
        "Computing Doktorov parameters for %d atoms, %d modes", mol.num_atoms, mol.num_modes
    )
    return doktorov_params_from_duschinsky(
        duschinsky(mol), displacement_vector(mol), mol.freq_initial, mol.freq_final
    )
