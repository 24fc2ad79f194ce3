"""
Command-line interface of the vibronic simulator.
Run from the repository root as ``python -m cli <verb>``.
"""

import os
import sys

# make the schema package importable without installing it
sys.path.append(os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))
