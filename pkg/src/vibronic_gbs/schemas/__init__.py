from .common import *
from .inputs import *
from .molecule import *
from .params import *
from .results import *

__all__ = [
    "SCHEMA_VERSION",
    "VersionedFile",
    "ResultFile",
    "MoleculeFile",
    "DuschinskyFile",
    "MoleculeInput",
    "ParamsFile",
    "LocalizationFile",
    "DriveFile",
    "RunManifest",
    "MarginalsFile",
    "CoexcitationTable",
    "TimeSeriesFile",
    "SampleSummary",
    "ProbabilityFile",
]
