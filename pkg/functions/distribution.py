"""
Truncated photon-number distributions over a set of modes.
"""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from functions.exceptions import InvalidParameter


@dataclass(frozen=True)
class Distribution:
    """
    Exact or empirical probabilities of every pattern up to a per-mode cutoff.

    Parameters
    ----------
    modes : tuple of int
        Mode indices (0-based) the table axes refer to, in axis order
    cutoff : int
        Largest photon number tabulated per mode
    table : np.ndarray
        Probabilities with shape (cutoff + 1,) * len(modes)
    """

    modes: tuple
    cutoff: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.float64)
        expected = (self.cutoff + 1,) * len(self.modes)
        if table.shape != expected:
            raise InvalidParameter(
                f"table shape {table.shape} does not match {len(self.modes)} modes "
                f"with cutoff {self.cutoff}"
            )
        object.__setattr__(self, "modes", tuple(int(m) for m in self.modes))
        object.__setattr__(self, "table", table)

    @property
    def coverage(self) -> float:
        """Probability mass captured below the cutoff."""
        return float(self.table.sum())

    @property
    def truncated_mass(self) -> float:
        return max(0.0, 1.0 - self.coverage)

    def probability(self, pattern: Sequence[int]) -> float:
        pattern = tuple(int(n) for n in pattern)
        if len(pattern) != len(self.modes):
            raise InvalidParameter(
                f"pattern {pattern} does not match the {len(self.modes)} tabulated modes"
            )
        if any(n < 0 or n > self.cutoff for n in pattern):
            return 0.0
        return float(self.table[pattern])

    def marginal(self, axis: int) -> "Distribution":
        """Single-mode distribution obtained by summing out the other axes."""
        others = tuple(i for i in range(len(self.modes)) if i != axis)
        return Distribution(
            modes=(self.modes[axis],),
            cutoff=self.cutoff,
            table=self.table.sum(axis=others),
        )

    def means(self) -> np.ndarray:
        """Mean photon number per tabulated mode (within the cutoff)."""
        counts = np.arange(self.cutoff + 1)
        return np.array(
            [float(counts @ self.marginal(axis).table) for axis in range(len(self.modes))]
        )

    def coexcitation(self, min_counts: Sequence[int] | None = None) -> float:
        """
        Pr(n_i >= c_i for every tabulated mode); c_i defaults to 1, the
        probability that all modes are excited together.
        """
        if min_counts is None:
            min_counts = [1] * len(self.modes)
        if len(min_counts) != len(self.modes):
            raise InvalidParameter(
                f"{len(min_counts)} thresholds given for {len(self.modes)} modes"
            )
        window = tuple(slice(int(c), None) for c in min_counts)
        return float(self.table[window].sum())

    def as_dict(self) -> dict:
        """Pattern -> probability for every non-zero entry."""
        return {
            tuple(int(n) for n in idx): float(p)
            for idx, p in np.ndenumerate(self.table)
            if p != 0.0
        }
