"""
Gaussian states in the ladder-operator representation and the symplectic
maps acting on them.

A state of M modes is described by the complex mean vector alpha = <a> and
the symmetric-ordered covariance matrix V of xi = (a_1..a_M, a_1^+..a_M^+).
Units are dimensionless with hbar = 1; the vacuum has V = I/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from logging import getLogger
from typing import TYPE_CHECKING, Literal, Sequence

import numpy as np

from functions.exceptions import InvalidParameter, InvalidState

if TYPE_CHECKING:
    from functions.vibronic import DoktorovParams

logger = getLogger(__name__)

UNITARY_TOL = 1e-8
STRUCTURE_TOL = 1e-10

MapKind = Literal["rotation", "squeeze", "displace", "phase"]


def xmat(num_modes: int) -> np.ndarray:
    """The 2M x 2M exchange matrix [[0, I], [I, 0]]."""
    eye = np.eye(num_modes)
    zero = np.zeros((num_modes, num_modes))
    return np.block([[zero, eye], [eye, zero]])


@dataclass(frozen=True, eq=False)
class GaussianState:
    """
    Immutable M-mode Gaussian state.

    Parameters
    ----------
    mean : np.ndarray
        Complex amplitudes alpha_j = <a_j>, length M
    cov : np.ndarray
        Complex 2M x 2M covariance matrix in (a, a^+) ordering
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=np.complex128).reshape(-1)
        cov = np.array(self.cov, dtype=np.complex128)
        num_modes = mean.shape[0]
        if num_modes == 0:
            raise InvalidState("a Gaussian state needs at least one mode")
        if cov.shape != (2 * num_modes, 2 * num_modes):
            raise InvalidState(
                f"Invalid 'cov' matrix shape; expected={(2 * num_modes,) * 2}, "
                f"actual={cov.shape}."
            )
        mean.flags.writeable = False
        cov.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def num_modes(self) -> int:
        return self.mean.shape[0]

    @property
    def mean_vector(self) -> np.ndarray:
        """The doubled mean alpha' = (alpha, alpha*)."""
        return np.concatenate([self.mean, self.mean.conj()])

    @cached_property
    def q_matrix(self) -> np.ndarray:
        """Q = V + I/2; the identity for the vacuum."""
        return self.cov + 0.5 * np.eye(2 * self.num_modes)

    def validate(self, tol: float = STRUCTURE_TOL) -> None:
        """
        Check Hermiticity, the block-conjugate structure V = X V* X and
        positive definiteness of Q.

        Raises
        ------
        InvalidState
            If any of the checks fails.
        """
        cov = self.cov
        if not np.allclose(cov, cov.conj().T, atol=tol, rtol=0):
            raise InvalidState("The covariance matrix is not Hermitian.")
        x = xmat(self.num_modes)
        if not np.allclose(cov, x @ cov.conj() @ x, atol=tol, rtol=0):
            raise InvalidState(
                "The covariance matrix breaks the block-conjugate structure V = X V* X."
            )
        eigenvalues = np.linalg.eigvalsh(self.q_matrix)
        if eigenvalues.min() <= 0:
            raise InvalidState(
                f"Q = V + I/2 is not positive definite (smallest eigenvalue "
                f"{eigenvalues.min():.3e})."
            )


@dataclass(frozen=True, eq=False)
class SymplecticMap:
    """
    One Gaussian operation in Heisenberg form.

    Build instances with the ``rotation``, ``squeeze``, ``displace`` and
    ``phase`` constructors; they validate their parameters.
    """

    kind: MapKind
    params: np.ndarray

    @property
    def num_modes(self) -> int:
        return self.params.shape[0]

    @classmethod
    def rotation(cls, unitary) -> "SymplecticMap":
        """Passive interferometer a -> U a."""
        U = np.array(unitary, dtype=np.complex128)
        if U.ndim != 2 or U.shape[0] != U.shape[1]:
            raise InvalidParameter(f"rotation matrix must be square, got {U.shape}")
        deviation = np.abs(U @ U.conj().T - np.eye(U.shape[0])).max()
        if deviation > UNITARY_TOL:
            raise InvalidParameter(
                f"rotation matrix is not unitary (max |UU^+ - I| = {deviation:.3e})"
            )
        return cls("rotation", U)

    @classmethod
    def squeeze(cls, r) -> "SymplecticMap":
        """Single-mode squeezers a_j -> cosh(r_j) a_j - sinh(r_j) a_j^+."""
        r = np.array(r, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(r)):
            raise InvalidParameter("squeezing parameters must be finite")
        return cls("squeeze", r)

    @classmethod
    def displace(cls, beta) -> "SymplecticMap":
        beta = np.array(beta, dtype=np.complex128).reshape(-1)
        if not np.all(np.isfinite(beta)):
            raise InvalidParameter("displacement must be finite")
        return cls("displace", beta)

    @classmethod
    def phase(cls, theta) -> "SymplecticMap":
        """Free evolution a_j -> exp(-i theta_j) a_j."""
        theta = np.array(theta, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(theta)):
            raise InvalidParameter("phases must be finite")
        return cls("phase", theta)

    def matrix(self) -> np.ndarray:
        """The 2M x 2M matrix S acting on xi = (a, a^+); identity for displacements."""
        M = self.num_modes
        if self.kind == "rotation":
            U = self.params
            zero = np.zeros_like(U)
            return np.block([[U, zero], [zero, U.conj()]])
        if self.kind == "phase":
            u = np.exp(-1j * self.params)
            return np.diag(np.concatenate([u, u.conj()]))
        if self.kind == "squeeze":
            ch = np.diag(np.cosh(self.params))
            sh = np.diag(np.sinh(self.params))
            return np.block([[ch, -sh], [-sh, ch]]).astype(np.complex128)
        return np.eye(2 * M, dtype=np.complex128)


def vacuum(num_modes: int) -> GaussianState:
    """The M-mode vacuum: zero mean, V = I/2."""
    if num_modes < 1:
        raise InvalidParameter(f"number of modes must be positive, got {num_modes}")
    return GaussianState(
        mean=np.zeros(num_modes, dtype=np.complex128),
        cov=0.5 * np.eye(2 * num_modes, dtype=np.complex128),
    )


def _symmetrize(cov: np.ndarray) -> np.ndarray:
    # Hermitian and block-conjugate parts; removes roundoff drift only.
    M = cov.shape[0] // 2
    x = xmat(M)
    cov = 0.5 * (cov + cov.conj().T)
    return 0.5 * (cov + x @ cov.conj() @ x)


def apply(state: GaussianState, op: SymplecticMap) -> GaussianState:
    """
    Apply a symplectic map to a state.

    Parameters
    ----------
    state : GaussianState
        Input state
    op : SymplecticMap
        Operation with the same number of modes as the state

    Returns
    -------
    GaussianState
        New state; the input is not modified.
    """
    if op.num_modes != state.num_modes:
        raise InvalidParameter(
            f"map acts on {op.num_modes} modes but the state has {state.num_modes}"
        )
    if op.kind == "displace":
        return GaussianState(mean=state.mean + op.params, cov=state.cov)

    S = op.matrix()
    mean = (S @ state.mean_vector)[: state.num_modes]
    cov = _symmetrize(S @ state.cov @ S.conj().T)
    return GaussianState(mean=mean, cov=cov)


def apply_doktorov(state: GaussianState, params: "DoktorovParams") -> GaussianState:
    """
    Apply the Doktorov operator D(beta) R(U_L) S(Sigma) R(U_R) to a state.

    The squeezers realize the position scaling x -> Sigma x of the
    Duschinsky map, so with a -> cosh(r) a - sinh(r) a^+ the applied
    parameters are r_j = -ln(Sigma_jj). The overlap statistics of the
    undisplaced transition do not depend on this sign.
    """
    sigma = np.asarray(params.sigma, dtype=np.float64)
    if sigma.shape[0] != state.num_modes:
        raise InvalidParameter(
            f"Doktorov parameters describe {sigma.shape[0]} modes "
            f"but the state has {state.num_modes}"
        )
    state = apply(state, SymplecticMap.rotation(params.U_R))
    state = apply(state, SymplecticMap.squeeze(-np.log(sigma)))
    state = apply(state, SymplecticMap.rotation(params.U_L))
    return apply(state, SymplecticMap.displace(params.beta))


def reduce(state: GaussianState, modes: Sequence[int]) -> GaussianState:
    """
    Reduced state of an ordered subset of modes (0-based indices).

    Rows and columns i and i + M of V are kept for every selected i, in the
    given order.
    """
    modes = [int(m) for m in modes]
    M = state.num_modes
    if not modes:
        raise InvalidParameter("at least one mode must be kept")
    if len(set(modes)) != len(modes):
        raise InvalidParameter(f"duplicate mode indices in {modes}")
    if min(modes) < 0 or max(modes) >= M:
        raise InvalidParameter(f"mode indices {modes} out of range for {M} modes")
    rows = modes + [m + M for m in modes]
    return GaussianState(
        mean=state.mean[modes], cov=state.cov[np.ix_(rows, rows)]
    )


def mean_photon_numbers(state: GaussianState) -> np.ndarray:
    """<a_j^+ a_j> = V_jj - 1/2 + |alpha_j|^2 for every mode."""
    M = state.num_modes
    return np.real(np.diag(state.cov)[:M]) - 0.5 + np.abs(state.mean) ** 2


def coherent_state(betas) -> GaussianState:
    """Product coherent state with amplitudes ``betas``."""
    betas = np.atleast_1d(np.asarray(betas, dtype=np.complex128))
    return apply(vacuum(betas.shape[0]), SymplecticMap.displace(betas))


def squeezed_vacuum(r) -> GaussianState:
    r = np.atleast_1d(np.asarray(r, dtype=np.float64))
    return apply(vacuum(r.shape[0]), SymplecticMap.squeeze(r))


def two_mode_squeezed_vacuum(r: float) -> GaussianState:
    """
    Two-mode squeezed vacuum, prepared from opposite single-mode squeezers
    followed by a balanced beam splitter.
    """
    state = squeezed_vacuum([r, -r])
    splitter = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    return apply(state, SymplecticMap.rotation(splitter))
