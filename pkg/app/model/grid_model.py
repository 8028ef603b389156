import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class SpacetimeGrid(BaseModel):
    """Retângulo espaço-temporal discretizado (x, t) com constantes físicas"""

    n_x: int = Field(..., description="Pontos da grade ao longo de x")
    n_t: int = Field(..., description="Pontos da grade ao longo de t")
    L_x: float = Field(..., description="Extensão espacial")
    L_t: float = Field(..., description="Extensão temporal")
    c: float = Field(1.0, description="Velocidade da luz")
    hbar: float = Field(1.0, description="Constante de Planck reduzida")

    model_config = ConfigDict(frozen=True)

    @property
    def dx(self) -> float:
        return self.L_x / self.n_x

    @property
    def dt(self) -> float:
        return self.L_t / self.n_t

    @property
    def x_min(self) -> float:
        return -self.L_x / 2.0

    @property
    def t_min(self) -> float:
        return -self.L_t / 2.0

    @property
    def x(self) -> np.ndarray:
        """Coordenadas centradas x ∈ [−L_x/2, L_x/2)"""
        return self.x_min + np.arange(self.n_x) * self.dx

    @property
    def t(self) -> np.ndarray:
        """Coordenadas centradas t ∈ [−L_t/2, L_t/2)"""
        return self.t_min + np.arange(self.n_t) * self.dt

    @property
    def cell_measure(self) -> float:
        return self.dx * self.dt

    def coordinate(self, i: int, j: int) -> tuple[float, float]:
        """Coordenada (x, t) da célula (i, j)"""
        return (self.x_min + i * self.dx, self.t_min + j * self.dt)


class FrequencyGrid(BaseModel):
    """Rede recíproca (r̃, t̃) no layout padrão da DFT, incluindo negativos"""

    r_tilde: np.ndarray
    t_tilde: np.ndarray
    dr_tilde: float
    dt_tilde: float

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def cell_measure(self) -> float:
        return self.dr_tilde * self.dt_tilde

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Malhas (r̃, t̃) com shape (n_x, n_t), indexadas por (a, b)"""
        return np.meshgrid(self.r_tilde, self.t_tilde, indexing="ij")

    def mode(self, a: int, b: int) -> tuple[float, float]:
        """Par (r̃, t̃) do modo de índice (a, b)"""
        return (float(self.r_tilde[a]), float(self.t_tilde[b]))
