from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class ModeKind(int, Enum):
    SPACELIKE = -1
    LIGHTLIKE = 0
    TIMELIKE = 1


class RestEnergySpectrum(BaseModel):
    """ε₀ por modo (NaN fora do cone) e estatísticas sobre os modos tipo-tempo"""

    e0: np.ndarray
    kind: np.ndarray
    mean: float
    sd: float = Field(..., ge=0)
    n_timelike: int
    n_lightlike: int
    n_spacelike: int

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class CommutatorPair(str, Enum):
    """Pares de operadores (A, B) para [A, B]"""

    X_P = "x-p"
    T_E = "t-e"
    X_E = "x-e"
    T_P = "t-p"


class CommutatorResult(BaseModel):
    pair: CommutatorPair
    constant: complex
    expected: complex
    residual: float = Field(..., ge=0, description="‖[A,B]ψ − cψ‖/‖ψ‖ no suporte de ψ")

    @property
    def deviation(self) -> float:
        return abs(self.constant - self.expected)
