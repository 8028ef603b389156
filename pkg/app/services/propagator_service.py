import math
from typing import Tuple

import numpy as np
from loguru import logger

from app.core.commons.exceptions import (
    DomainExhausted,
    EmptyProjection,
    InvalidParameter,
    NonPositiveEnergy,
    NonPositiveRestEnergy,
)
from app.model.field_model import ReciprocalField, WaveField
from app.schema.propagator_schema import PropagationMode, PropagatorConfig
from app.services.field_service import FieldService
from app.services.lattice_service import LatticeService

EMPTY_PROJECTION_FRACTION = 1e-12


class PropagatorService:
    """Serviço responsável pela evolução em σ pelo propagador espectral exato.

    Cada modo recíproco é multiplicado por e^{−iσ̃Δσ}, com σ̃ = b(t̃²/c² − r̃²)
    e b < 0. Com essa fase valem d⟨x⟩/dσ = −2b⟨r̃⟩ e d⟨t⟩/dσ = −2b⟨t̃⟩/c² > 0.
    """

    def __init__(self, lattice_service: LatticeService, field_service: FieldService):
        self.lattice_service = lattice_service
        self.field_service = field_service

    @staticmethod
    def sigma_tilde(r_tilde, t_tilde, b: float, c: float = 1.0):
        """σ̃ = b·(t̃²/c² − r̃²); aceita escalares ou arrays"""
        if not b < 0:
            raise InvalidParameter(f"b = {b} deve ser negativo")
        return b * (t_tilde**2 / c**2 - r_tilde**2)

    @staticmethod
    def rest_energy_squared(r_tilde, t_tilde, b: float, c: float = 1.0, hbar: float = 1.0):
        """ε₀² = c²ℏ²·σ̃/b por modo"""
        sigma = PropagatorService.sigma_tilde(r_tilde, t_tilde, b, c)
        return c**2 * hbar**2 * sigma / b

    def natural_b(self, recip: ReciprocalField) -> float:
        """b = −c²ℏ/(2⟨ε⟩), que fixa d⟨t⟩/dσ = 1"""
        m = self.field_service.spectral_moments(recip)
        hbar, c = recip.grid.hbar, recip.grid.c
        mean_e = hbar * m["mean_tt"]
        if mean_e <= 1e-12 * hbar * (m["sd_tt"] + recip.frequencies.dt_tilde):
            raise NonPositiveEnergy(f"⟨ε⟩ = {mean_e:.3e} não é positiva")
        return -(c**2) * hbar / (2 * mean_e)

    def prepare(self, field: WaveField, config: PropagatorConfig) -> WaveField:
        """Aplica as projeções da configuração ao campo"""
        if not config.has_projections:
            return field
        recip = self._project(self.lattice_service.forward_transform(field), config)
        return self.lattice_service.inverse_transform(recip)

    def resolve_config(
        self, field: WaveField, config: PropagatorConfig
    ) -> PropagatorConfig:
        """Congela o b natural calculado a partir do campo (já projetado)"""
        if config.mode != PropagationMode.NATURAL or config.b is not None:
            return config
        recip = self._project(self.lattice_service.forward_transform(field), config)
        b = self.natural_b(recip)
        logger.debug(f"b natural = {b}")
        return config.model_copy(update={"b": b})

    def propagate(
        self, field: WaveField, config: PropagatorConfig, delta_sigma: float
    ) -> WaveField:
        """Evolui o campo por Δσ"""
        self.field_service.require_normalized(field)
        if delta_sigma == 0 and not config.has_projections:
            return field

        recip = self.lattice_service.forward_transform(field)
        inicial = field
        if config.has_projections:
            recip = self._project(recip, config)
            inicial = self.lattice_service.inverse_transform(recip)

        b = config.b if config.b is not None else self.natural_b(recip)
        r_tilde, t_tilde = recip.frequencies.mesh()
        sigma = self.sigma_tilde(r_tilde, t_tilde, b, recip.grid.c)
        evolved = recip.with_amplitudes(
            recip.amplitudes * np.exp(-1j * sigma * delta_sigma)[None, :, :]
        )
        result = self.lattice_service.inverse_transform(evolved)
        self._guard_domain(inicial, result, delta_sigma)
        return result

    def drift_rate(self, field: WaveField, b: float) -> Tuple[float, float]:
        """(d⟨x⟩/dσ, d⟨t⟩/dσ) = (−2b⟨r̃⟩, −2b⟨t̃⟩/c²)"""
        self.field_service.require_normalized(field)
        if not b < 0:
            raise InvalidParameter(f"b = {b} deve ser negativo")
        m = self.field_service.spectral_moments(
            self.lattice_service.forward_transform(field)
        )
        c = field.grid.c
        return -2 * b * m["mean_r"], -2 * b * m["mean_tt"] / c**2

    def project_positive_energy(self, recip: ReciprocalField) -> ReciprocalField:
        """Mantém apenas os modos com t̃ > 0"""
        _, t_tilde = recip.frequencies.mesh()
        return self._keep(recip, t_tilde > 0, "energia positiva")

    def project_mass_shell(
        self, recip: ReciprocalField, e0: float, tol: float
    ) -> ReciprocalField:
        """Mantém os modos com |(ℏt̃)² − c²(ℏr̃)² − ε₀²| ≤ tol"""
        if not e0 > 0:
            raise NonPositiveRestEnergy(f"ε₀ = {e0} deve ser positiva")
        if not tol > 0:
            raise InvalidParameter(f"Tolerância {tol} deve ser positiva")
        r_tilde, t_tilde = recip.frequencies.mesh()
        hbar, c = recip.grid.hbar, recip.grid.c
        e0_sq = (hbar * t_tilde) ** 2 - c**2 * (hbar * r_tilde) ** 2
        return self._keep(recip, np.abs(e0_sq - e0**2) <= tol, "camada de massa")

    @staticmethod
    def boost_modes(r_tilde, t_tilde, rapidity: float, c: float = 1.0):
        """Boost de Lorentz de (r̃, t̃); σ̃ e ε₀² são invariantes"""
        ch, sh = math.cosh(rapidity), math.sinh(rapidity)
        return ch * r_tilde - sh * t_tilde / c, ch * t_tilde - sh * c * r_tilde

    def _project(
        self, recip: ReciprocalField, config: PropagatorConfig
    ) -> ReciprocalField:
        if config.project_positive_energy:
            recip = self.project_positive_energy(recip)
        if config.mass_shell is not None:
            recip = self.project_mass_shell(
                recip, config.mass_shell.e0, config.mass_shell.tol
            )
        return recip

    @staticmethod
    def _keep(recip: ReciprocalField, mask: np.ndarray, nome: str) -> ReciprocalField:
        amplitudes = np.where(mask[None, :, :], recip.amplitudes, 0.0)
        medida = recip.frequencies.cell_measure
        total = float(np.sum(np.abs(recip.amplitudes) ** 2) * medida)
        restante = float(np.sum(np.abs(amplitudes) ** 2) * medida)
        # resto de arredondamento da FFT não conta como modo sobrevivente
        if restante <= EMPTY_PROJECTION_FRACTION * total:
            raise EmptyProjection(f"Projeção de {nome} removeu todos os modos")
        return recip.with_amplitudes(amplitudes / math.sqrt(restante))

    def _guard_domain(
        self, inicial: WaveField, final: WaveField, delta_sigma: float
    ) -> None:
        antes = self.field_service.axis_clearance(inicial)
        depois = self.field_service.axis_clearance(final)
        for eixo, livre_antes, livre_depois in zip(("x", "t"), antes, depois):
            if livre_antes and not livre_depois:
                raise DomainExhausted(
                    f"Pacote chegou à borda em {eixo} após Δσ = {delta_sigma}"
                )
