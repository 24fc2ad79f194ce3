"""
Resolved settings for a command run: CLI flags over environment over defaults.
"""

from vibronic_gbs import VibronicConfig


def load_settings(**overrides) -> VibronicConfig:
    """
    Build the settings object, ignoring overrides that were not given.

    Parameters:
    -----------
    **overrides
        Values taken from command-line flags; None means "not given"

    Returns:
    --------
    VibronicConfig
        Settings; the cache directory is created only when the ledger is written
    """
    given = {key: value for key, value in overrides.items() if value is not None}
    return VibronicConfig(**given)
