"""
Loop hafnian kernels.

The loop hafnian of a symmetric matrix sums, over all perfect matchings of
its vertices in which a vertex may also be matched to itself, the product of
the off-diagonal entries of matched pairs and the diagonal entries of
self-matched vertices.

Two implementations are provided:

- ``loop_hafnian_matchings``: direct enumeration, the reference for small
  matrices.
- ``loop_hafnian_repeated`` / ``loop_hafnian``: the power-trace formula
  summed over kept subsets of vertex pairs. When rows and columns come in
  repeated blocks (photon patterns), the sum runs over how many copies of
  each block are kept, weighted by binomial coefficients, so the cost is
  prod(m_i + 1) steps on the compressed matrix instead of 2^(sum m_i).
  The copy weights are evaluated at k_i - m_i/2 rather than k_i, which
  keeps the alternating sum well conditioned for large counts.

A single repeated pair (one occupied mode) is counted in closed form
instead: the matchings split into pairs inside each block, cross pairs and
loops, which leaves a sum of products of two truncated Hermite-type series.
"""

from logging import getLogger

import numba
import numpy as np

from functions.exceptions import InvalidParameter

logger = getLogger(__name__)

SYMMETRY_TOL = 1e-8
ORACLE_MAX_SIZE = 10


def _check_symmetric(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidParameter(f"loop hafnian needs a square matrix, got shape {A.shape}")
    if A.size and not np.allclose(A, A.T, atol=SYMMETRY_TOL, rtol=0):
        raise InvalidParameter("loop hafnian needs a symmetric matrix")
    return A


def loop_hafnian_matchings(A) -> complex:
    """
    Loop hafnian by enumerating every matching with loops.

    Parameters:
    -----------
    A : array_like
        Complex symmetric n x n matrix with n <= 10

    Returns:
    --------
    complex
        The loop hafnian; 1 for the empty matrix
    """
    A = _check_symmetric(A)
    n = A.shape[0]
    if n > ORACLE_MAX_SIZE:
        raise InvalidParameter(
            f"enumeration oracle is limited to n <= {ORACLE_MAX_SIZE}, got {n}"
        )

    def _expand(vertices: tuple) -> complex:
        if not vertices:
            return 1.0 + 0.0j
        first, rest = vertices[0], vertices[1:]
        total = A[first, first] * _expand(rest)
        for pos, partner in enumerate(rest):
            total += A[first, partner] * _expand(rest[:pos] + rest[pos + 1 :])
        return total

    return complex(_expand(tuple(range(n))))


@numba.njit(cache=True, nogil=True)
def _binomial(n, k):
    result = 1.0
    for i in range(k):
        result = result * (n - i) / (i + 1)
    return result


@numba.njit(cache=True, nogil=True)
def _repeated_kernel(A, D, reps):
    k = reps.shape[0]
    n = 2 * k
    pairs = 0
    steps = 1
    for i in range(k):
        pairs += reps[i]
        steps *= reps[i] + 1
    if pairs == 0:
        return 1.0 + 0.0j

    kept = np.zeros(k, dtype=np.int64)
    shifted = np.zeros(k, dtype=np.float64)
    axw = np.zeros((n, n), dtype=np.complex128)
    xdw = np.zeros(n, dtype=np.complex128)
    coeffs = np.zeros(pairs + 1, dtype=np.complex128)
    series = np.zeros(pairs + 1, dtype=np.complex128)
    total = 0.0 + 0.0j

    for step in range(steps):
        remainder = step
        kept_sum = 0
        weight = 1.0
        for i in range(k):
            kept[i] = remainder % (reps[i] + 1)
            remainder //= reps[i] + 1
            kept_sum += kept[i]
            weight *= _binomial(reps[i], kept[i])
            # the summand is homogeneous of degree `pairs` in the copy
            # weights, so centring them leaves the difference unchanged
            shifted[i] = kept[i] - 0.5 * reps[i]

        # A X W and W X D, with W the centred copy weights per pair
        for c in range(n):
            if c < k:
                partner = c + k
                w = shifted[c]
            else:
                partner = c - k
                w = shifted[c - k]
            for r in range(n):
                axw[r, c] = w * A[r, partner]
            xdw[c] = w * D[partner]

        power = axw.copy()
        vec = xdw.copy()
        for j in range(1, pairs + 1):
            coeffs[j] = np.trace(power) / (2 * j) + np.dot(vec, D) / 2
            if j < pairs:
                power = np.dot(power, axw)
                vec = np.dot(vec, axw)

        # coefficient of lambda^pairs in exp(sum_j coeffs[j] lambda^j)
        series[0] = 1.0
        for p in range(1, pairs + 1):
            acc = 0.0 + 0.0j
            for j in range(1, p + 1):
                acc += j * coeffs[j] * series[p - j]
            series[p] = acc / p

        if (pairs - kept_sum) % 2 == 1:
            total -= weight * series[pairs]
        else:
            total += weight * series[pairs]
    return total


@numba.njit(cache=True, nogil=True)
def _powers(z, n):
    out = np.ones(n + 1, dtype=np.complex128)
    for i in range(1, n + 1):
        out[i] = out[i - 1] * z
    return out


@numba.njit(cache=True, nogil=True)
def _block_series(pw_edge, pw_loop, inv_fact, m):
    # sum over i of edge^i loop^(m - 2i) / (2^i i! (m - 2i)!)
    acc = 0.0 + 0.0j
    for i in range(m // 2 + 1):
        acc += (
            pw_edge[i] * pw_loop[m - 2 * i] * inv_fact[i] * inv_fact[m - 2 * i] / 2.0**i
        )
    return acc


@numba.njit(cache=True, nogil=True)
def _single_pair_kernel(A, D, n):
    if n == 0:
        return 1.0 + 0.0j
    inv_fact = np.ones(n + 1, dtype=np.float64)
    for i in range(1, n + 1):
        inv_fact[i] = inv_fact[i - 1] / i
    pw_a = _powers(A[0, 0], n)
    pw_c = _powers(A[1, 1], n)
    pw_b = _powers(A[0, 1], n)
    pw_g1 = _powers(D[0], n)
    pw_g2 = _powers(D[1], n)

    # l cross pairs; the remaining n - l copies of each block pair up or loop
    total = 0.0 + 0.0j
    for l in range(n + 1):
        rest = n - l
        total += (
            pw_b[l]
            * inv_fact[l]
            * _block_series(pw_a, pw_g1, inv_fact, rest)
            * _block_series(pw_c, pw_g2, inv_fact, rest)
        )
    fact_n = 1.0 / inv_fact[n]
    return total * fact_n * fact_n


def loop_hafnian_repeated(A, D, reps) -> complex:
    """
    Loop hafnian of the matrix obtained by repeating rows/columns of ``A``.

    Vertices i and i + k of the 2k x 2k matrix ``A`` are repeated
    ``reps[i]`` times each and the diagonal of the expanded matrix is taken
    from ``D``. Pairs with zero repetitions are removed before the kernel
    runs.

    Parameters
    ----------
    A : array_like
        Complex symmetric 2k x 2k matrix (its diagonal is used as the edge
        weight between distinct copies of a vertex)
    D : array_like
        Loop weights, length 2k
    reps : array_like of int
        Repetition count of each vertex pair, length k

    Returns
    -------
    complex
        The loop hafnian of the expanded matrix
    """
    A = _check_symmetric(A)
    D = np.asarray(D, dtype=np.complex128).reshape(-1)
    reps = np.asarray(reps, dtype=np.int64).reshape(-1)
    k = reps.shape[0]
    if A.shape[0] != 2 * k or D.shape[0] != 2 * k:
        raise InvalidParameter(
            f"expected a {2 * k}x{2 * k} matrix and {2 * k} loop weights, "
            f"got {A.shape} and {D.shape[0]}"
        )
    if np.any(reps < 0):
        raise InvalidParameter(f"repetition counts must be non-negative, got {reps}")

    active = np.flatnonzero(reps)
    if active.size == 0:
        return 1.0 + 0.0j
    rows = np.concatenate([active, active + k])
    A_active = np.ascontiguousarray(A[np.ix_(rows, rows)])
    D_active = np.ascontiguousarray(D[rows])
    if active.size == 1:
        return complex(_single_pair_kernel(A_active, D_active, int(reps[active[0]])))
    return complex(_repeated_kernel(A_active, D_active, reps[active]))


def loop_hafnian(A) -> complex:
    """
    Loop hafnian of a complex symmetric matrix.

    Odd sizes are padded with an isolated vertex of unit loop weight, which
    leaves the value unchanged.
    """
    A = _check_symmetric(A)
    n = A.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    if n % 2:
        padded = np.zeros((n + 1, n + 1), dtype=np.complex128)
        padded[:n, :n] = A
        padded[n, n] = 1.0
        A = padded
        n += 1
    k = n // 2
    return loop_hafnian_repeated(A, np.diag(A).copy(), np.ones(k, dtype=np.int64))
