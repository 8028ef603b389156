import math
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from app.core.commons.exceptions import (
    BadBinning,
    InvalidParameter,
    NonFiniteField,
    NotNormalized,
    PacketClipped,
    UnderResolved,
    ZeroNorm,
)
from app.core.config.settings import settings
from app.model.field_model import BinnedAmplitudes, ReciprocalField, WaveField
from app.model.grid_model import SpacetimeGrid
from app.schema.observables_schema import Observables
from app.services.lattice_service import LatticeService


class FieldService:
    """Serviço responsável pelos campos de onda: pacotes, normas e momentos"""

    def __init__(self, lattice_service: LatticeService):
        self.lattice_service = lattice_service

    def gaussian_packet(
        self,
        grid: SpacetimeGrid,
        x0: float = 0.0,
        t0: float = 0.0,
        sd_x0: Optional[float] = 1.0,
        sd_t0: float = 1.0,
        p0: float = 0.0,
        e0_freq: float = 0.0,
        spinor: Optional[Sequence[complex]] = None,
    ) -> WaveField:
        """Pacote gaussiano normalizado com portadora e^{i(p0·x/ℏ − e0_freq·t)}.

        Com sd_x0 = None o perfil é uniforme em x e as regras de borda e
        resolução valem só para o eixo t.
        """
        self._check_axis("t", t0, sd_t0, grid.dt, grid.L_t)
        if sd_x0 is not None:
            self._check_axis("x", x0, sd_x0, grid.dx, grid.L_x)

        x, t = np.meshgrid(grid.x, grid.t, indexing="ij")
        envelope = -((t - t0) ** 2) / (4 * sd_t0**2)
        if sd_x0 is not None:
            envelope = envelope - (x - x0) ** 2 / (4 * sd_x0**2)
        profile = np.exp(envelope + 1j * (p0 * x / grid.hbar - e0_freq * t))

        componentes = np.ones(1, dtype=complex)
        if spinor is not None:
            componentes = np.asarray(spinor, dtype=complex)
        amplitudes = componentes[:, None, None] * profile[None, :, :]
        field, _ = self.normalize(WaveField(grid=grid, amplitudes=amplitudes))
        return field

    def plane_wave(
        self, grid: SpacetimeGrid, r_tilde: float, t_tilde: float, n_s: int = 1
    ) -> WaveField:
        """Modo puro normalizado e^{i(r̃x − t̃t)} na componente 0"""
        frequencies = self.lattice_service.frequency_grid(grid)
        for nome, valor, passo in (
            ("r̃", r_tilde, frequencies.dr_tilde),
            ("t̃", t_tilde, frequencies.dt_tilde),
        ):
            indice = valor / passo
            if abs(indice - round(indice)) > 1e-9:
                raise InvalidParameter(f"{nome} = {valor} fora da rede recíproca")
        if abs(r_tilde) > np.max(np.abs(frequencies.r_tilde)) or abs(t_tilde) > np.max(
            np.abs(frequencies.t_tilde)
        ):
            raise InvalidParameter("Frequência acima do limite de Nyquist")

        x, t = np.meshgrid(grid.x, grid.t, indexing="ij")
        amplitudes = np.zeros((n_s, grid.n_x, grid.n_t), dtype=complex)
        amplitudes[0] = np.exp(1j * (r_tilde * x - t_tilde * t))
        field, _ = self.normalize(WaveField(grid=grid, amplitudes=amplitudes))
        return field

    def inner_product(self, a: WaveField, b: WaveField) -> complex:
        """⟨a|b⟩ = Σ conj(a)·b·dx·dt"""
        return complex(np.vdot(a.amplitudes, b.amplitudes) * a.grid.cell_measure)

    def norm(self, field: WaveField) -> float:
        return math.sqrt(float(np.sum(field.density)) * field.grid.cell_measure)

    def normalize(self, field: WaveField) -> Tuple[WaveField, float]:
        """Devolve o campo com norma unitária e a norma anterior"""
        if not np.all(np.isfinite(field.amplitudes)):
            raise NonFiniteField()
        anterior = self.norm(field)
        if anterior == 0.0:
            raise ZeroNorm()
        return field.with_amplitudes(field.amplitudes / anterior), anterior

    def require_normalized(self, field: WaveField) -> None:
        desvio = abs(self.norm(field) ** 2 - 1.0)
        if desvio > settings.NORM_TOLERANCE:
            raise NotNormalized(f"Campo não normalizado (|‖Ψ‖² − 1| = {desvio:.3e})")

    def position_moments(self, field: WaveField) -> Tuple[float, float, float, float]:
        """(⟨x⟩, ⟨t⟩, sd_x, sd_t) a partir de |Ψ|²"""
        density = field.density
        total = float(np.sum(density))
        if total == 0.0:
            raise ZeroNorm()
        p_x = np.sum(density, axis=1) / total
        p_t = np.sum(density, axis=0) / total
        x, t = field.grid.x, field.grid.t
        mean_x = float(np.dot(p_x, x))
        mean_t = float(np.dot(p_t, t))
        sd_x = math.sqrt(max(float(np.dot(p_x, (x - mean_x) ** 2)), 0.0))
        sd_t = math.sqrt(max(float(np.dot(p_t, (t - mean_t) ** 2)), 0.0))
        return mean_x, mean_t, sd_x, sd_t

    def spectral_moments(self, recip: ReciprocalField) -> dict:
        """Médias e desvios de r̃ e t̃, e ⟨ε² − c²p²⟩, ⟨ε²⟩"""
        weights = recip.weights
        total = float(np.sum(weights))
        if total == 0.0:
            raise ZeroNorm()
        w = weights / total
        r_tilde, t_tilde = recip.frequencies.mesh()
        hbar, c = recip.grid.hbar, recip.grid.c

        mean_r = float(np.sum(w * r_tilde))
        mean_tt = float(np.sum(w * t_tilde))
        e_sq = (hbar * t_tilde) ** 2
        return {
            "mean_r": mean_r,
            "mean_tt": mean_tt,
            "sd_r": math.sqrt(max(float(np.sum(w * (r_tilde - mean_r) ** 2)), 0.0)),
            "sd_tt": math.sqrt(max(float(np.sum(w * (t_tilde - mean_tt) ** 2)), 0.0)),
            "mean_e0sq": float(np.sum(w * (e_sq - c**2 * (hbar * r_tilde) ** 2))),
            "mean_esq": float(np.sum(w * e_sq)),
        }

    def observables(self, field: WaveField) -> Observables:
        """Momentos de posição, momento e energia de um campo normalizado"""
        self.require_normalized(field)
        mean_x, mean_t, sd_x, sd_t = self.position_moments(field)
        m = self.spectral_moments(self.lattice_service.forward_transform(field))
        hbar = field.grid.hbar
        return Observables(
            mean_x=mean_x,
            mean_t=mean_t,
            sd_x=sd_x,
            sd_t=sd_t,
            mean_p=hbar * m["mean_r"],
            mean_e=hbar * m["mean_tt"],
            sd_p=hbar * m["sd_r"],
            sd_e=hbar * m["sd_tt"],
            mean_e0sq=m["mean_e0sq"],
            mean_esq=m["mean_esq"],
        )

    def axis_clearance(self, field: WaveField) -> Tuple[bool, bool]:
        """Indica, por eixo (x, t), se |média| + k·sd ≤ L/2"""
        mean_x, mean_t, sd_x, sd_t = self.position_moments(field)
        k = settings.CLEARANCE_SDS
        grid = field.grid
        return (
            abs(mean_x) + k * sd_x <= grid.L_x / 2,
            abs(mean_t) + k * sd_t <= grid.L_t / 2,
        )

    def coarse_grain(self, field: WaveField, bin_x: int, bin_t: int) -> BinnedAmplitudes:
        """Amplitudes por bin a_j = Σ Ψ·dx·dt sobre as células do bin"""
        grid = field.grid
        if bin_x < 1 or bin_t < 1 or grid.n_x % bin_x or grid.n_t % bin_t:
            raise BadBinning(
                f"Bins {bin_x}x{bin_t} não dividem a grade {grid.n_x}x{grid.n_t}"
            )
        blocos = field.amplitudes.reshape(
            field.n_s, grid.n_x // bin_x, bin_x, grid.n_t // bin_t, bin_t
        )
        amplitudes = blocos.sum(axis=(2, 4)) * grid.cell_measure
        return BinnedAmplitudes(
            bin_x=bin_x,
            bin_t=bin_t,
            amplitudes=amplitudes,
            total_probability=float(np.sum(np.abs(amplitudes) ** 2)),
        )

    def _check_axis(
        self, eixo: str, centro: float, sd: float, passo: float, extensao: float
    ) -> None:
        if not sd > 0:
            raise InvalidParameter(f"sd_{eixo} = {sd} deve ser positivo")
        if sd < settings.MIN_SAMPLES_PER_SD * passo:
            raise UnderResolved(
                f"sd_{eixo} = {sd} abaixo de {settings.MIN_SAMPLES_PER_SD} células"
            )
        if abs(centro) + settings.CLEARANCE_SDS * sd > extensao / 2:
            logger.debug(f"Pacote em {eixo}={centro} com sd={sd} encosta na borda")
            raise PacketClipped(
                f"Pacote em {eixo} = {centro} a menos de "
                f"{settings.CLEARANCE_SDS} desvios da borda"
            )
