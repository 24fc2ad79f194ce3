"""
Numerical core: Gaussian states, loop hafnians, photon-number probabilities,
sampling, vibronic parameters, vibrational dynamics and pre-excitation.
"""
