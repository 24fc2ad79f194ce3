"""
Photon-number pattern probabilities of Gaussian states through the loop
hafnian.

For a state with Q = V + I/2 and alpha' = (alpha, alpha*):

    Pr(m) = exp(-1/2 alpha'^+ Q^-1 alpha') lhaf(A'_m) / (m_1! ... m_M! sqrt(det Q))

with A = X (I - Q^-1) and loop weights gamma = X Q^-1 alpha'.
"""

import threading
import weakref
from dataclasses import dataclass
from logging import getLogger
from typing import Sequence

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.special import factorial

from functions.exceptions import InvalidParameter, NumericalError
from functions.gaussian import GaussianState, xmat
from functions.loop_hafnian import loop_hafnian_repeated

logger = getLogger(__name__)

MAX_TOTAL_PHOTONS = 40
MAX_SINGLE_MODE_PHOTONS = 60
IMAG_TOL = 1e-10
RANGE_TOL = 1e-9

FACTORIALS = factorial(np.arange(MAX_SINGLE_MODE_PHOTONS + 1), exact=False)


@dataclass(frozen=True)
class PreparedState:
    """Quantities shared by every pattern probability of one state."""

    a_matrix: np.ndarray
    gamma: np.ndarray
    prefactor: float
    det_q: float


@dataclass(frozen=True)
class PatternMatrix:
    """
    The matrix A' of a state together with the pattern selecting its
    repeated submatrix.

    ``base`` carries A off the diagonal and gamma on it; ``self_edges`` keeps
    the diagonal of A, the weight between distinct copies of one vertex.
    """

    base: np.ndarray
    self_edges: np.ndarray
    pattern: tuple

    def expand(self) -> np.ndarray:
        M = self.base.shape[0] // 2
        counts = np.asarray(self.pattern, dtype=np.int64)
        first = np.repeat(np.arange(M), counts)
        idx = np.concatenate([first, first + M])
        expanded = self.base[np.ix_(idx, idx)].copy()
        same = idx[:, None] == idx[None, :]
        edges = np.broadcast_to(self.self_edges[idx][:, None], expanded.shape)
        expanded[same] = edges[same]
        np.fill_diagonal(expanded, self.base[idx, idx])
        return expanded


_cache: "weakref.WeakKeyDictionary[GaussianState, PreparedState]" = (
    weakref.WeakKeyDictionary()
)
_cache_lock = threading.Lock()


def prepare(state: GaussianState) -> PreparedState:
    """
    Factorize Q once per state and derive A, gamma and the prefactor.

    Results are cached per state object; concurrent readers are safe.

    Raises
    ------
    NumericalError
        If Q is singular or not positive definite.
    """
    with _cache_lock:
        cached = _cache.get(state)
    if cached is not None:
        return cached

    M = state.num_modes
    identity = np.eye(2 * M)
    try:
        factor = cho_factor(state.q_matrix)
    except LinAlgError as exc:
        raise NumericalError(
            "Q = V + I/2 is singular or not positive definite; the state is unphysical"
        ) from exc

    det_q = float(np.prod(np.real(np.diag(factor[0]))) ** 2)
    q_inv = cho_solve(factor, identity.astype(np.complex128))
    x = xmat(M)
    alpha = state.mean_vector
    a_matrix = x @ (identity - q_inv)
    a_matrix = 0.5 * (a_matrix + a_matrix.T)
    gamma = x @ q_inv @ alpha
    exponent = -0.5 * np.real(alpha.conj() @ q_inv @ alpha)
    prepared = PreparedState(
        a_matrix=a_matrix,
        gamma=gamma,
        prefactor=float(np.exp(exponent) / np.sqrt(det_q)),
        det_q=det_q,
    )
    with _cache_lock:
        _cache[state] = prepared
    return prepared


def photon_limit(pattern: Sequence[int]) -> int:
    """Largest total photon number accepted for a pattern of this shape."""
    if np.count_nonzero(pattern) <= 1:
        return MAX_SINGLE_MODE_PHOTONS
    return MAX_TOTAL_PHOTONS


def _check_pattern(state: GaussianState, pattern: Sequence[int]) -> np.ndarray:
    counts = np.asarray(pattern, dtype=np.int64).reshape(-1)
    if counts.shape[0] != state.num_modes:
        raise InvalidParameter(
            f"pattern has {counts.shape[0]} entries but the state has "
            f"{state.num_modes} modes"
        )
    if np.any(counts < 0):
        raise InvalidParameter(f"photon counts must be non-negative, got {counts}")
    limit = photon_limit(counts)
    if counts.sum() > limit:
        raise InvalidParameter(
            f"patterns with more than {limit} photons are not supported "
            f"(got {counts.sum()})"
        )
    return counts


def pattern_matrix(state: GaussianState, pattern: Sequence[int]) -> PatternMatrix:
    counts = _check_pattern(state, pattern)
    prepared = prepare(state)
    base = prepared.a_matrix.copy()
    np.fill_diagonal(base, prepared.gamma)
    return PatternMatrix(
        base=base,
        self_edges=np.diag(prepared.a_matrix).copy(),
        pattern=tuple(int(c) for c in counts),
    )


def build_pattern_matrix(state: GaussianState, pattern: Sequence[int]) -> np.ndarray:
    """
    Build the 2N x 2N matrix A'_m with N the total photon number.

    Rows and columns i and i + M are dropped for m_i = 0 and repeated m_i
    times otherwise. Entries between distinct copies of a vertex keep the
    value of A; the diagonal holds gamma at the repeated positions.
    """
    return pattern_matrix(state, pattern).expand()


def pattern_probability(state: GaussianState, pattern: Sequence[int]) -> float:
    """
    Probability of observing the photon pattern ``pattern``.

    Parameters
    ----------
    state : GaussianState
        The measured state
    pattern : sequence of int
        Photon count per mode

    Returns
    -------
    float
        Pr(pattern) in [0, 1]

    Raises
    ------
    NumericalError
        If the result carries an imaginary part above 1e-10 or falls
        outside [0, 1] by more than 1e-9.
    """
    counts = _check_pattern(state, pattern)
    prepared = prepare(state)
    lhaf = loop_hafnian_repeated(prepared.a_matrix, prepared.gamma, counts)
    value = prepared.prefactor * lhaf / np.prod(FACTORIALS[counts])

    if abs(value.imag) > IMAG_TOL:
        raise NumericalError(
            f"probability of {tuple(counts)} has imaginary part {value.imag:.3e}"
        )
    probability = float(value.real)
    if probability < -RANGE_TOL or probability > 1.0 + RANGE_TOL:
        raise NumericalError(
            f"probability of {tuple(counts)} evaluated to {probability:.6e}, "
            "outside [0, 1]"
        )
    return max(probability, 0.0)
