import numpy as np
import pytest

from app.core.commons.exceptions import (
    DomainExhausted,
    EmptyProjection,
    InvalidParameter,
    NonPositiveEnergy,
    NonPositiveRestEnergy,
)
from app.schema.propagator_schema import MassShell, PropagationMode, PropagatorConfig


class TestPropagatorService:
    """Testes unitários para a evolução em σ"""

    @pytest.fixture
    def fixed(self) -> PropagatorConfig:
        return PropagatorConfig(b=-0.5)

    def test_sigma_tilde_requires_negative_b(self, propagator_service):
        """Testa a rejeição de b ≥ 0"""
        with pytest.raises(InvalidParameter):
            propagator_service.sigma_tilde(1.0, 2.0, 0.0)

    def test_lightlike_mode_does_not_evolve(self, propagator_service):
        """Testa σ̃ = 0 no cone de luz"""
        assert propagator_service.sigma_tilde(1.0, 1.0, -0.5) == 0.0

    def test_rest_energy_squared(self, propagator_service):
        """Testa ε₀² = c²ℏ²σ̃/b no modo (0.75, 1.25)"""
        assert propagator_service.rest_energy_squared(0.75, 1.25, -0.3) == pytest.approx(1.0)

    def test_natural_b(self, propagator_service, lattice_service, packet):
        """Testa b = −c²ℏ/(2⟨ε⟩) com ⟨ε⟩ = 1.5"""
        b = propagator_service.natural_b(lattice_service.forward_transform(packet))
        assert b == pytest.approx(-1 / 3, rel=1e-9)

    def test_natural_b_requires_positive_energy(
        self, propagator_service, lattice_service, field_service, grid
    ):
        """Testa NonPositiveEnergy para portadora negativa"""
        field = field_service.gaussian_packet(grid, e0_freq=-1.5)
        with pytest.raises(NonPositiveEnergy):
            propagator_service.natural_b(lattice_service.forward_transform(field))

    def test_zero_step_is_identity(self, propagator_service, packet, fixed):
        """Testa Δσ = 0 sem projeções"""
        assert propagator_service.propagate(packet, fixed, 0.0) is packet

    def test_unitarity(self, propagator_service, field_service, packet, fixed):
        """Testa a conservação da norma"""
        evolved = propagator_service.propagate(packet, fixed, 5.0)
        assert abs(field_service.norm(evolved) - 1.0) < 1e-12

    def test_group_property(self, propagator_service, packet, fixed):
        """Testa U(σ₂)U(σ₁) = U(σ₁ + σ₂)"""
        dois = propagator_service.propagate(
            propagator_service.propagate(packet, fixed, 1.2), fixed, 0.8
        )
        direto = propagator_service.propagate(packet, fixed, 2.0)
        assert np.max(np.abs(dois.amplitudes - direto.amplitudes)) < 1e-12

    def test_drift(self, propagator_service, field_service, packet, fixed):
        """Testa d⟨x⟩/dσ = −2b⟨r̃⟩ e d⟨t⟩/dσ = −2b⟨t̃⟩/c²"""
        assert propagator_service.drift_rate(packet, -0.5) == pytest.approx((0.5, 1.5))
        evolved = propagator_service.propagate(packet, fixed, 2.0)
        mean_x, mean_t, _, _ = field_service.position_moments(evolved)
        assert mean_x == pytest.approx(2.0, abs=1e-6)
        assert mean_t == pytest.approx(2.0, abs=1e-6)

    def test_natural_parametrization(self, propagator_service, field_service, packet):
        """Testa d⟨t⟩/dσ = 1 com b natural"""
        config = PropagatorConfig(mode=PropagationMode.NATURAL)
        evolved = propagator_service.propagate(packet, config, 2.0)
        _, mean_t, _, _ = field_service.position_moments(evolved)
        assert mean_t == pytest.approx(1.0, abs=1e-6)

    def test_domain_exhausted(self, propagator_service, packet, fixed):
        """Testa o pacote que chega à borda temporal"""
        with pytest.raises(DomainExhausted):
            propagator_service.propagate(packet, fixed, 11.0)

    def test_positive_energy_projection(
        self, propagator_service, lattice_service, field_service, shell_grid
    ):
        """Testa que a projeção remove modos t̃ < 0 e falha se nada resta"""
        negativo = field_service.plane_wave(shell_grid, 0.0, -1.0)
        with pytest.raises(EmptyProjection):
            propagator_service.project_positive_energy(
                lattice_service.forward_transform(negativo)
            )

    def test_projection_without_surviving_modes(
        self, propagator_service, lattice_service, field_service, shell_grid
    ):
        """Testa que o resto de arredondamento não passa como modo sobrevivente"""
        fora_da_camada = lattice_service.forward_transform(
            field_service.plane_wave(shell_grid, 0.0, 2.0)
        )
        with pytest.raises(EmptyProjection):
            propagator_service.project_mass_shell(fora_da_camada, 1.0, 0.1)

    def test_positive_energy_projection_is_idempotent(
        self, propagator_service, lattice_service, field_service, shell_grid, packet
    ):
        """Testa campos já com t̃ > 0 inalterados e P(P(ψ̃)) = P(ψ̃)"""
        a = field_service.plane_wave(shell_grid, 0.0, 1.0)
        b = field_service.plane_wave(shell_grid, 0.75, 1.25)
        positivo = lattice_service.forward_transform(
            a.with_amplitudes((a.amplitudes + b.amplitudes) / np.sqrt(2))
        )
        projetado = propagator_service.project_positive_energy(positivo)
        assert np.allclose(projetado.amplitudes, positivo.amplitudes, rtol=0, atol=1e-12)

        uma_vez = propagator_service.project_positive_energy(
            lattice_service.forward_transform(packet)
        )
        duas_vezes = propagator_service.project_positive_energy(uma_vez)
        assert np.allclose(duas_vezes.amplitudes, uma_vez.amplitudes, rtol=0, atol=1e-12)

    def test_mass_shell_projection(
        self, propagator_service, lattice_service, field_service, shell_grid
    ):
        """Testa que só restam os modos exatos da camada ε₀ = 1"""
        field = field_service.gaussian_packet(shell_grid, sd_x0=3.0, sd_t0=3.0, e0_freq=1.0)
        config = PropagatorConfig(
            b=-0.5, project_positive_energy=True, mass_shell=MassShell(e0=1.0, tol=1e-6)
        )
        projetado = propagator_service.prepare(field, config)

        recip = lattice_service.forward_transform(projetado)
        a, b = np.nonzero(recip.weights > 1e-20)
        modos = {recip.frequencies.mode(i, j) for i, j in zip(a, b)}
        esperados = {(0.0, 1.0), (0.75, 1.25), (-0.75, 1.25)}
        assert {(round(r, 9), round(t, 9)) for r, t in modos} == esperados
        assert field_service.observables(projetado).mean_e0sq == pytest.approx(1.0)

    def test_mass_shell_requires_positive_rest_energy(
        self, propagator_service, lattice_service, packet
    ):
        """Testa ε₀ ≤ 0"""
        with pytest.raises(NonPositiveRestEnergy):
            propagator_service.project_mass_shell(
                lattice_service.forward_transform(packet), 0.0, 0.1
            )

    def test_boost_keeps_sigma_tilde(self, propagator_service):
        """Testa a invariância de σ̃ sob boost"""
        r_b, t_b = propagator_service.boost_modes(0.75, 1.25, 0.7)
        antes = propagator_service.sigma_tilde(0.75, 1.25, -0.5)
        depois = propagator_service.sigma_tilde(r_b, t_b, -0.5)
        assert depois == pytest.approx(antes, rel=1e-12)

    def test_config_rejects_positive_b(self):
        """Testa a validação do PropagatorConfig"""
        with pytest.raises(ValueError):
            PropagatorConfig(b=0.5)
        with pytest.raises(ValueError):
            PropagatorConfig(mode=PropagationMode.FIXED)
