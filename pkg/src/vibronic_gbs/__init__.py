"""
File schemas and settings of the vibronic Gaussian boson sampling tools.
"""

from .vg_config import VibronicConfig

__version__ = "0.1"

__all__ = ["VibronicConfig", "__version__"]
