"""
Pydantic model for Doktorov parameter files.
"""

from typing import List, Optional

from pydantic import Field, model_validator

from .common import Matrix, ResultFile


class ParamsFile(ResultFile):
    """Doktorov parameters D(beta) R(U_L) S(Sigma) R(U_R) of a transition."""

    U_L: Matrix
    U_R: Matrix
    sigma: List[float] = Field(..., min_length=1)
    beta: List[float]
    freq_initial: List[float] = Field(..., description="cm^-1")
    freq_final: List[float] = Field(..., description="cm^-1")
    huang_rhys: Optional[List[float]] = None

    @model_validator(mode="after")
    def check_dimensions(self):
        M = len(self.sigma)
        for name in ("beta", "freq_initial", "freq_final"):
            if len(getattr(self, name)) != M:
                raise ValueError(f"{name} must have {M} entries")
        for name in ("U_L", "U_R"):
            matrix = getattr(self, name)
            if len(matrix) != M or any(len(row) != M for row in matrix):
                raise ValueError(f"{name} must be {M} x {M}")
        return self
