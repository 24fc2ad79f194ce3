"""
Random Gaussian states shared by the numerical tests.
"""

import numpy as np
from scipy.stats import unitary_group

from functions.gaussian import SymplecticMap, apply, squeezed_vacuum


def random_state(num_modes, rng, max_squeezing=0.6, displacement_scale=0.5):
    """Squeezed, mixed by a random interferometer and displaced."""
    state = squeezed_vacuum(rng.uniform(-max_squeezing, max_squeezing, num_modes))
    if num_modes > 1:
        unitary = unitary_group.rvs(num_modes, random_state=rng)
        state = apply(state, SymplecticMap.rotation(unitary))
    beta = rng.normal(scale=displacement_scale, size=num_modes) + 1j * rng.normal(
        scale=displacement_scale, size=num_modes
    )
    return apply(state, SymplecticMap.displace(beta))
