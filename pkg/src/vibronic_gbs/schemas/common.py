"""
Shared pieces of the file schemas.
"""

from typing import Annotated, List, Literal

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1

ComplexPair = Annotated[
    List[float], Field(min_length=2, max_length=2, description="[real, imag]")
]
Matrix = List[List[float]]


class VersionedFile(BaseModel):
    """Base of every structured file: unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    schema_version: Literal[1] = SCHEMA_VERSION


class ResultFile(VersionedFile):
    """Base of emitted result files; ``manifest`` names the sidecar manifest."""

    manifest: str = Field(..., description="File name of the run manifest")
