import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.model.grid_model import FrequencyGrid, SpacetimeGrid


class WaveField(BaseModel):
    """Amplitudes complexas Ψ(s, x, t) sobre a grade, indexadas (s, i_x, i_t)"""

    grid: SpacetimeGrid
    amplitudes: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def n_s(self) -> int:
        return int(self.amplitudes.shape[0])

    @property
    def density(self) -> np.ndarray:
        """|Ψ|² somado sobre as componentes do spinor, shape (n_x, n_t)"""
        return np.sum(np.abs(self.amplitudes) ** 2, axis=0)

    def with_amplitudes(self, amplitudes: np.ndarray) -> "WaveField":
        return WaveField(grid=self.grid, amplitudes=amplitudes)


class ReciprocalField(BaseModel):
    """Transformada espectral Ψ̃(s, r̃, t̃), indexada (s, a, b)"""

    grid: SpacetimeGrid
    frequencies: FrequencyGrid
    amplitudes: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def n_s(self) -> int:
        return int(self.amplitudes.shape[0])

    @property
    def weights(self) -> np.ndarray:
        """Peso espectral |Ψ̃|²·dr̃·dt̃ por modo, shape (n_x, n_t)"""
        return (
            np.sum(np.abs(self.amplitudes) ** 2, axis=0)
            * self.frequencies.cell_measure
        )

    def with_amplitudes(self, amplitudes: np.ndarray) -> "ReciprocalField":
        return ReciprocalField(
            grid=self.grid, frequencies=self.frequencies, amplitudes=amplitudes
        )


class BinnedAmplitudes(BaseModel):
    """Tabela de amplitudes por bin a_j = ∫ Ψ sobre o bin"""

    bin_x: int = Field(..., description="Células por bin ao longo de x")
    bin_t: int = Field(..., description="Células por bin ao longo de t")
    amplitudes: np.ndarray
    total_probability: float

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
