from pydantic import BaseModel, Field


class Observables(BaseModel):
    """Momentos de um campo normalizado.

    (x, t) são medidos no espaço de posições; (p, ε) no espaço recíproco,
    com p = ℏr̃ e ε = ℏt̃.
    """

    mean_x: float
    mean_t: float
    sd_x: float = Field(..., ge=0)
    sd_t: float = Field(..., ge=0)
    mean_p: float
    mean_e: float
    sd_p: float = Field(..., ge=0)
    sd_e: float = Field(..., ge=0)
    mean_e0sq: float = Field(..., description="Média de ε² − c²p² sobre os modos")
    mean_esq: float = Field(..., description="Média de ε² sobre os modos")

    @property
    def product_xp(self) -> float:
        return self.sd_x * self.sd_p

    @property
    def product_te(self) -> float:
        return self.sd_t * self.sd_e
