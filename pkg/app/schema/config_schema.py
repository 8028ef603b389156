import math
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_core import PydanticCustomError


class ExperimentId(str, Enum):
    """Experimentos aceitos em `experiment`"""

    PACKET = "packet"
    DOUBLE_SLIT = "double-slit"
    DELAY_SCAN = "delay-scan"
    EHRENFEST = "ehrenfest"
    SURVIVAL = "survival"
    UNCERTAINTY = "uncertainty"
    ORDERING_DEMO = "ordering-demo"
    LORENTZ = "lorentz"
    CHECK = "check"

    @property
    def section(self) -> str:
        """Nome da seção de parâmetros no arquivo de configuração"""
        return self.value.replace("-", "_")


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridParams(StrictModel):
    """Parâmetros da grade espaço-temporal"""

    n_x: int = 128
    n_t: int = 128
    L_x: float = Field(32.0, gt=0)
    L_t: float = Field(32.0, gt=0)
    c: float = Field(1.0, gt=0)
    hbar: float = Field(1.0, gt=0)

    @field_validator("n_x", "n_t")
    @classmethod
    def power_of_two(cls, v: int) -> int:
        if v < 4:
            raise PydanticCustomError("grid_too_small", "must be at least 4")
        if v & (v - 1):
            raise PydanticCustomError("power_of_two", "not a power of two")
        return v


class PacketParams(StrictModel):
    """Pacote gaussiano com portadora e^{i(p0·x/ℏ − e0_freq·t)}"""

    grid: GridParams = Field(default_factory=GridParams)
    x0: float = 0.0
    t0: float = 0.0
    sd_x: Optional[float] = Field(1.0, gt=0)
    sd_t: float = Field(1.0, gt=0)
    p0: float = 0.0
    e0_freq: float = 1.0
    n_s: int = 1

    @field_validator("n_s")
    @classmethod
    def spinor_components(cls, v: int) -> int:
        if v not in (1, 2, 4):
            raise PydanticCustomError("n_s", "must be 1, 2 or 4")
        return v


class DoubleSlitParams(StrictModel):
    """Fenda dupla temporal: dois lóbulos gaussianos com portadora comum"""

    grid: GridParams = Field(
        default_factory=lambda: GridParams(n_x=4, n_t=1024, L_x=4.0, L_t=32.0)
    )
    t1: float = -2.0
    t2: float = 2.0
    slit_sd: float = Field(0.1, gt=0)
    carrier_e: float = 10.0

    @model_validator(mode="after")
    def ordered_slits(self) -> "DoubleSlitParams":
        if self.t2 < self.t1:
            raise PydanticCustomError("slit_order", "t2 must not precede t1")
        return self


class DelayScanParams(StrictModel):
    """Varredura do atraso Δt entre as fendas, com energia detectada fixa"""

    grid: GridParams = Field(
        default_factory=lambda: GridParams(n_x=4, n_t=1024, L_x=4.0, L_t=32.0)
    )
    carrier_e: float = 10.0
    slit_sd: float = Field(0.1, gt=0)
    detect_offset: float = 2.0
    delay_min: float = Field(1.0, gt=0)
    delay_max: float = 20.0
    delay_step: float = Field(0.05, gt=0)

    @model_validator(mode="after")
    def delay_range(self) -> "DelayScanParams":
        if self.delay_max <= self.delay_min:
            raise PydanticCustomError("delay_range", "delay_max must exceed delay_min")
        if self.detect_offset == 0:
            raise PydanticCustomError("detect_offset", "must be nonzero")
        return self

    def delays(self) -> List[float]:
        n = int(round((self.delay_max - self.delay_min) / self.delay_step)) + 1
        return [self.delay_min + i * self.delay_step for i in range(n)]


class EhrenfestParams(StrictModel):
    """Pacote na camada de massa ε₀ propagado com b natural"""

    grid: GridParams = Field(
        default_factory=lambda: GridParams(n_x=256, n_t=256, L_x=128.0, L_t=128.0)
    )
    x0: float = 0.0
    t0: float = 0.0
    sd_x: float = Field(8.0, gt=0)
    sd_t: float = Field(8.0, gt=0)
    p0: float = 0.75
    e0: float = Field(1.0, gt=0)
    shell_tol: float = Field(0.75, gt=0)
    sigma_span: float = Field(4.0, gt=0)
    n_samples: int = Field(9, ge=3)


class SurvivalParams(StrictModel):
    """Amplitude de sobrevivência de um pacote temporal"""

    grid: GridParams = Field(
        default_factory=lambda: GridParams(n_x=4, n_t=256, L_x=4.0, L_t=64.0)
    )
    sd_x: Optional[float] = Field(None, gt=0)
    sd_t: float = Field(5.0, gt=0)
    p0: float = 0.0
    carrier_e: float = 10.0
    sigma_max: float = Field(20.0, gt=0)
    n_sigma: int = Field(81, ge=2)


class UncertaintyParams(PacketParams):
    """Relações de incerteza de um pacote, com varredura aleatória opcional"""

    grid: GridParams = Field(
        default_factory=lambda: GridParams(n_x=128, n_t=128, L_x=32.0, L_t=64.0)
    )
    sd_t: float = Field(2.0, gt=0)
    e0_freq: float = 3.0
    sweep: int = Field(0, ge=0, description="Pacotes aleatórios adicionais")


class OrderingDemoParams(StrictModel):
    """Registro aleatório acíclico para a ordem universal e as distâncias"""

    n_subjects: int = Field(4, ge=1)
    n_events: int = Field(40, ge=1)
    n_messages: int = Field(30, ge=0)
    clock_subject: Optional[str] = None


class LorentzParams(StrictModel):
    """Invariância de σ̃ e da equação de Dirac sob boosts"""

    grid: GridParams = Field(
        default_factory=lambda: GridParams(
            n_x=64, n_t=64, L_x=8 * math.pi, L_t=8 * math.pi
        )
    )
    rapidities: List[float] = Field(default_factory=lambda: [-1.0, -0.5, 0.5, 1.0])
    b: float = Field(-0.5, lt=0)
    p: float = 0.75
    e0: float = Field(1.0, gt=0)


class CheckParams(StrictModel):
    quick: bool = False


class RunConfig(StrictModel):
    """Configuração de uma execução da linha de comando"""

    experiment: List[ExperimentId]
    grid: Optional[GridParams] = None
    output_dir: Optional[str] = None
    seed: Optional[int] = Field(None, ge=0, lt=2**64)

    packet: PacketParams = Field(default_factory=PacketParams)
    double_slit: DoubleSlitParams = Field(default_factory=DoubleSlitParams)
    delay_scan: DelayScanParams = Field(default_factory=DelayScanParams)
    ehrenfest: EhrenfestParams = Field(default_factory=EhrenfestParams)
    survival: SurvivalParams = Field(default_factory=SurvivalParams)
    uncertainty: UncertaintyParams = Field(default_factory=UncertaintyParams)
    ordering_demo: OrderingDemoParams = Field(default_factory=OrderingDemoParams)
    lorentz: LorentzParams = Field(default_factory=LorentzParams)
    check: CheckParams = Field(default_factory=CheckParams)

    @field_validator("experiment", mode="before")
    @classmethod
    def single_or_list(cls, v):
        if isinstance(v, str):
            return [v]
        return v

    @field_validator("experiment")
    @classmethod
    def not_empty(cls, v: List[ExperimentId]) -> List[ExperimentId]:
        if not v:
            raise PydanticCustomError("empty", "at least one experiment is required")
        return v

    def section(self, experiment: ExperimentId) -> BaseModel:
        return getattr(self, experiment.section)

    def grid_for(self, experiment: ExperimentId) -> Optional[GridParams]:
        """Grade da seção; a grade global vale quando a seção não define a sua"""
        secao = self.section(experiment)
        if "grid" not in type(secao).model_fields:
            return self.grid
        if "grid" in secao.model_fields_set or self.grid is None:
            return secao.grid
        return self.grid
