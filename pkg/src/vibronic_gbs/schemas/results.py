"""
Pydantic models for emitted result files and run manifests.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .common import ResultFile


class RunManifest(BaseModel):
    """Provenance of one command run; the only file with wall-clock data."""

    run_id: str
    command: str
    inputs: Dict[str, str] = Field(..., description="input path -> sha256")
    outputs: List[str]
    config: Dict[str, Any]
    seed: Optional[int] = None
    version: str
    started_at: str
    duration_s: float = Field(..., ge=0)


class MarginalsFile(ResultFile):
    """Exact single-mode distributions keyed by 1-based mode index."""

    cutoff: int = Field(..., ge=1)
    marginals: Dict[str, List[float]]
    coverage: Dict[str, float]


class CoexcitationTable(BaseModel):
    modes: List[int] = Field(..., description="1-based mode indices")
    probability: float = Field(..., ge=0)
    table: Optional[Dict[str, float]] = Field(
        None, description="pattern ('n1,n2,...') -> probability, non-zero entries"
    )


class TimeSeriesFile(ResultFile):
    """Marginals of one localized mode over time."""

    mode: int = Field(..., ge=1)
    cutoff: int = Field(..., ge=1)
    times_fs: List[float]
    distributions: List[List[float]]
    coverage: List[float]
    mean_photons: List[List[float]] = Field(
        ..., description="mean photon number of every localized mode at each time"
    )
    coexcitation: Optional[List[CoexcitationTable]] = None


class SampleSummary(ResultFile):
    """Aggregates of a sample file."""

    samples_file: str
    modes: List[int] = Field(..., description="1-based mode index of each sample column")
    localized: bool = Field(False, description="columns are localized modes")
    time_fs: Optional[float] = Field(None, description="free evolution before sampling")
    num_samples: int = Field(..., ge=1)
    seed: int
    cutoff: int = Field(..., ge=1)
    means: List[float]
    marginals: Dict[str, List[float]]
    coexcitation: Optional[CoexcitationTable] = None
    truncated_mass: float = Field(..., ge=0)


class ProbabilityFile(ResultFile):
    pattern: List[int]
    probability: float = Field(..., ge=0)
