from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class GammaSet(BaseModel):
    """Matrizes da álgebra de Clifford com métrica η = diag(+1, −1, ...)"""

    dimension: int = Field(..., description="Número de componentes do spinor")
    gamma0: np.ndarray
    gamma_spatial: List[np.ndarray]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def matrices(self) -> List[np.ndarray]:
        """γ⁰ seguida das matrizes espaciais"""
        return [self.gamma0, *self.gamma_spatial]

    @property
    def metric(self) -> np.ndarray:
        return np.diag([1.0] + [-1.0] * len(self.gamma_spatial))


class Spinor(BaseModel):
    """Spinor de onda plana no ramo de energia positiva"""

    components: np.ndarray
    p: float = Field(..., description="Momento")
    eps: float = Field(..., description="Energia ε = +√(ε₀² + c²p²)")
    e0: float = Field(..., description="Energia de repouso ε₀")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def n_s(self) -> int:
        return int(self.components.shape[0])
