"""
Pydantic models for auxiliary input files: localization and drive.
"""

from typing import List, Optional

from pydantic import Field, model_validator

from .common import ComplexPair, Matrix, VersionedFile


class LocalizationFile(VersionedFile):
    """Normal-to-localized basis change; the imaginary part may be omitted."""

    U_l_real: Matrix
    U_l_imag: Optional[Matrix] = None
    freq: Optional[List[float]] = Field(
        None, description="cm^-1; defaults to the final frequencies of the params file"
    )

    @model_validator(mode="after")
    def check_dimensions(self):
        M = len(self.U_l_real)
        if any(len(row) != M for row in self.U_l_real):
            raise ValueError("U_l_real must be square")
        if self.U_l_imag is not None and (
            len(self.U_l_imag) != M or any(len(row) != M for row in self.U_l_imag)
        ):
            raise ValueError("U_l_imag must match U_l_real")
        if self.freq is not None and len(self.freq) != M:
            raise ValueError(f"freq must have {M} entries")
        return self


class DriveFile(VersionedFile):
    """A classical drive of one ground-state normal mode."""

    charges: List[float] = Field(..., min_length=1, description="elementary charges")
    coeffs: List[List[List[float]]] = Field(
        ..., description="N x M x 3 atomic displacements per mode, Angstrom"
    )
    field: List[ComplexPair] = Field(..., min_length=3, max_length=3, description="V/m")
    duration: float = Field(..., ge=0, description="seconds")
    target_mode: int = Field(..., ge=1, description="1-based mode index")
    start: float = Field(0.0, description="seconds")
    carrier: Optional[float] = Field(
        None, gt=0, description="cm^-1; when set every mode is driven off resonance"
    )
    counter_rotating: bool = False
