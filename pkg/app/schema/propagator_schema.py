from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic_core import PydanticCustomError


class PropagationMode(str, Enum):
    """Origem da constante de evolução b"""

    FIXED = "fixed"
    NATURAL = "natural"


class MassShell(BaseModel):
    """Camada de massa ε₀ com tolerância sobre ε² − c²p² − ε₀²"""

    e0: float = Field(..., gt=0, description="Energia de repouso")
    tol: float = Field(..., gt=0, description="Tolerância")

    model_config = ConfigDict(extra="forbid", frozen=True)


class PropagatorConfig(BaseModel):
    """Configuração do propagador espectral em σ"""

    b: Optional[float] = Field(None, description="Constante de evolução (b < 0)")
    mode: PropagationMode = PropagationMode.FIXED
    project_positive_energy: bool = False
    mass_shell: Optional[MassShell] = None

    model_config = ConfigDict(extra="forbid", frozen=True)

    @model_validator(mode="after")
    def check_b(self) -> "PropagatorConfig":
        if self.b is not None and self.b >= 0:
            raise PydanticCustomError("negative_b", "b must be negative")
        if self.mode == PropagationMode.FIXED and self.b is None:
            raise PydanticCustomError("missing_b", "b is required in fixed mode")
        return self

    @property
    def has_projections(self) -> bool:
        return self.project_positive_energy or self.mass_shell is not None
