"""
Pydantic models for molecule input files.
"""

from typing import Annotated, List, Literal, Union

from pydantic import Field, model_validator

from .common import Matrix, VersionedFile


class MoleculeFile(VersionedFile):
    """Cartesian form: geometries, masses and normal modes of both states."""

    form: Literal["cartesian"]
    masses: List[float] = Field(..., min_length=1, description="amu, one per atom")
    geom_initial: List[float] = Field(..., description="Angstrom, length 3N")
    geom_final: List[float] = Field(..., description="Angstrom, length 3N")
    modes_initial: Matrix = Field(
        ..., description="mass-weighted normal modes, one list of 3N entries per mode"
    )
    modes_final: Matrix = Field(..., description="same layout as modes_initial")
    freq_initial: List[float] = Field(..., min_length=1, description="cm^-1")
    freq_final: List[float] = Field(..., min_length=1, description="cm^-1")

    @model_validator(mode="after")
    def check_dimensions(self):
        n_coords = 3 * len(self.masses)
        for name in ("geom_initial", "geom_final"):
            if len(getattr(self, name)) != n_coords:
                raise ValueError(f"{name} must have {n_coords} entries (3 per atom)")
        for name in ("modes_initial", "modes_final"):
            columns = getattr(self, name)
            if len(columns) != len(self.freq_final):
                raise ValueError(f"{name} must list one column per frequency")
            if any(len(column) != n_coords for column in columns):
                raise ValueError(f"every column of {name} must have {n_coords} entries")
        if len(self.freq_initial) != len(self.freq_final):
            raise ValueError("freq_initial and freq_final must have the same length")
        return self


class DuschinskyFile(VersionedFile):
    """Reduced form: a precomputed Duschinsky matrix and displacement."""

    form: Literal["duschinsky"]
    U_D: Matrix = Field(..., description="M x M Duschinsky matrix, row-major")
    d: List[float] = Field(..., min_length=1, description="sqrt(amu) Angstrom")
    freq_initial: List[float] = Field(..., min_length=1, description="cm^-1")
    freq_final: List[float] = Field(..., min_length=1, description="cm^-1")

    @model_validator(mode="after")
    def check_dimensions(self):
        M = len(self.freq_final)
        if len(self.freq_initial) != M or len(self.d) != M:
            raise ValueError(f"d and freq_initial must have {M} entries")
        if len(self.U_D) != M or any(len(row) != M for row in self.U_D):
            raise ValueError(f"U_D must be {M} x {M}")
        return self


MoleculeInput = Annotated[Union[MoleculeFile, DuschinskyFile], Field(discriminator="form")]
