import math

import numpy as np
from loguru import logger

from app.core.commons.exceptions import InvalidGrid, NonFiniteField
from app.model.field_model import ReciprocalField, WaveField
from app.model.grid_model import FrequencyGrid, SpacetimeGrid


class LatticeService:
    """Serviço responsável pela grade espaço-temporal e pelas transformadas espectrais.

    Convenção: os modos no espaço de posições são e^{i(r̃x − t̃t)}. A transformada
    direta usa FFT ao longo de x e FFT inversa ao longo de t (norm="ortho"), com
    fase referida à origem das coordenadas e escala √(dx·dt/(dr̃·dt̃)), de modo que
    Σ|Ψ̃|²·dr̃·dt̃ = Σ|Ψ|²·dx·dt.
    """

    def make_grid(
        self,
        n_x: int,
        n_t: int,
        L_x: float,
        L_t: float,
        c: float = 1.0,
        hbar: float = 1.0,
    ) -> SpacetimeGrid:
        """Cria a grade validando dimensões e constantes"""
        for nome, n in (("n_x", n_x), ("n_t", n_t)):
            if n < 4 or n & (n - 1):
                raise InvalidGrid(f"{nome} = {n} deve ser potência de dois e ≥ 4")
        for nome, valor in (("L_x", L_x), ("L_t", L_t), ("c", c), ("hbar", hbar)):
            if not (math.isfinite(valor) and valor > 0):
                raise InvalidGrid(f"{nome} = {valor} deve ser positivo")

        grid = SpacetimeGrid(n_x=n_x, n_t=n_t, L_x=L_x, L_t=L_t, c=c, hbar=hbar)
        logger.debug(f"Grade {n_x}x{n_t} criada (dx={grid.dx}, dt={grid.dt})")
        return grid

    def frequency_grid(self, grid: SpacetimeGrid) -> FrequencyGrid:
        """Rede recíproca no layout padrão da DFT"""
        return FrequencyGrid(
            r_tilde=2 * np.pi * np.fft.fftfreq(grid.n_x, grid.dx),
            t_tilde=2 * np.pi * np.fft.fftfreq(grid.n_t, grid.dt),
            dr_tilde=2 * np.pi / grid.L_x,
            dt_tilde=2 * np.pi / grid.L_t,
        )

    def forward_transform(self, field: WaveField) -> ReciprocalField:
        """Ψ(s, x, t) → Ψ̃(s, r̃, t̃)"""
        if not np.all(np.isfinite(field.amplitudes)):
            raise NonFiniteField()

        frequencies = self.frequency_grid(field.grid)
        spectrum = np.fft.ifft(
            np.fft.fft(field.amplitudes, axis=1, norm="ortho"), axis=2, norm="ortho"
        )
        spectrum = spectrum * self._origin_phase(field.grid, frequencies)
        spectrum = spectrum * self._scale(field.grid, frequencies)
        return ReciprocalField(
            grid=field.grid, frequencies=frequencies, amplitudes=spectrum
        )

    def inverse_transform(self, recip: ReciprocalField) -> WaveField:
        """Ψ̃(s, r̃, t̃) → Ψ(s, x, t)"""
        if not np.all(np.isfinite(recip.amplitudes)):
            raise NonFiniteField()

        spectrum = recip.amplitudes / self._scale(recip.grid, recip.frequencies)
        spectrum = spectrum * np.conj(self._origin_phase(recip.grid, recip.frequencies))
        amplitudes = np.fft.ifft(
            np.fft.fft(spectrum, axis=2, norm="ortho"), axis=1, norm="ortho"
        )
        return WaveField(grid=recip.grid, amplitudes=amplitudes)

    @staticmethod
    def _scale(grid: SpacetimeGrid, frequencies: FrequencyGrid) -> float:
        return math.sqrt(grid.cell_measure / frequencies.cell_measure)

    @staticmethod
    def _origin_phase(grid: SpacetimeGrid, frequencies: FrequencyGrid) -> np.ndarray:
        r_tilde, t_tilde = frequencies.mesh()
        return np.exp(-1j * (r_tilde * grid.x_min - t_tilde * grid.t_min))
