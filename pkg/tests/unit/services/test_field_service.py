import numpy as np
import pytest

from app.core.commons.exceptions import (
    BadBinning,
    InvalidParameter,
    NonFiniteField,
    NotNormalized,
    PacketClipped,
    UnderResolved,
    ZeroNorm,
)
from app.model.field_model import WaveField


class TestFieldService:
    """Testes unitários para pacotes, normas e momentos"""

    def test_gaussian_packet_is_normalized(self, field_service, packet):
        """Testa que o pacote sai com norma unitária"""
        assert field_service.norm(packet) == pytest.approx(1.0, abs=1e-12)
        assert field_service.inner_product(packet, packet) == pytest.approx(1.0)

    def test_position_moments(self, field_service, packet):
        """Testa ⟨x⟩, ⟨t⟩ e os desvios do pacote"""
        mean_x, mean_t, sd_x, sd_t = field_service.position_moments(packet)
        assert mean_x == pytest.approx(1.0, abs=1e-9)
        assert mean_t == pytest.approx(-1.0, abs=1e-9)
        assert sd_x == pytest.approx(2.0, rel=1e-9)
        assert sd_t == pytest.approx(2.0, rel=1e-9)

    def test_observables_minimum_uncertainty(self, field_service, packet):
        """Testa momento, energia e a saturação ℏ/2 do pacote gaussiano"""
        obs = field_service.observables(packet)
        assert obs.mean_p == pytest.approx(0.5, rel=1e-6)
        assert obs.mean_e == pytest.approx(1.5, rel=1e-6)
        assert obs.sd_p == pytest.approx(0.25, rel=1e-6)
        assert obs.sd_e == pytest.approx(0.25, rel=1e-6)
        assert obs.product_xp == pytest.approx(0.5, abs=1e-3)
        assert obs.product_te == pytest.approx(0.5, abs=1e-3)

    def test_uniform_profile_in_x(self, field_service, grid):
        """Testa sd_x0 = None: densidade constante em x e momento nulo"""
        field = field_service.gaussian_packet(grid, sd_x0=None, sd_t0=1.0, e0_freq=2.0)
        marginal = np.sum(field.density, axis=1)
        assert np.allclose(marginal, marginal[0], rtol=1e-12)
        obs = field_service.observables(field)
        assert obs.sd_p == pytest.approx(0.0, abs=1e-12)

    def test_under_resolved_packet(self, field_service, grid):
        """Testa sd abaixo de duas células"""
        with pytest.raises(UnderResolved):
            field_service.gaussian_packet(grid, sd_t0=0.3)

    def test_clipped_packet(self, field_service, grid):
        """Testa pacote a menos de 4 desvios da borda"""
        with pytest.raises(PacketClipped):
            field_service.gaussian_packet(grid, t0=14.0, sd_t0=1.0)

    def test_invalid_width(self, field_service, grid):
        """Testa largura negativa"""
        with pytest.raises(InvalidParameter):
            field_service.gaussian_packet(grid, sd_x0=-1.0)

    def test_normalize_errors(self, field_service, grid):
        """Testa normalização de campo nulo e de campo não finito"""
        zeros = WaveField(grid=grid, amplitudes=np.zeros((1, 128, 128), dtype=complex))
        with pytest.raises(ZeroNorm):
            field_service.normalize(zeros)
        with pytest.raises(NonFiniteField):
            field_service.normalize(zeros.with_amplitudes(zeros.amplitudes + np.inf))

    def test_normalize_returns_previous_norm(self, field_service, packet):
        """Testa que a norma anterior é devolvida"""
        dobrado = packet.with_amplitudes(2 * packet.amplitudes)
        field, anterior = field_service.normalize(dobrado)
        assert anterior == pytest.approx(2.0)
        assert field_service.norm(field) == pytest.approx(1.0)

    def test_require_normalized(self, field_service, packet):
        """Testa a rejeição de campos não normalizados"""
        with pytest.raises(NotNormalized):
            field_service.require_normalized(packet.with_amplitudes(2 * packet.amplitudes))

    def test_plane_wave_off_lattice(self, field_service, shell_grid):
        """Testa frequência fora da rede recíproca"""
        with pytest.raises(InvalidParameter):
            field_service.plane_wave(shell_grid, 0.3, 1.0)

    def test_axis_clearance(self, field_service, packet, grid):
        """Testa a folga por eixo para um pacote interior e uma onda plana"""
        assert field_service.axis_clearance(packet) == (True, True)
        onda = field_service.plane_wave(grid, 0.0, 0.0)
        assert field_service.axis_clearance(onda) == (False, False)

    def test_coarse_grain(self, field_service, packet, grid):
        """Testa os bins de amplitude e a rejeição de bins incompatíveis"""
        binned = field_service.coarse_grain(packet, 4, 8)
        assert binned.amplitudes.shape == (1, 32, 16)
        total = np.sum(packet.amplitudes) * grid.cell_measure
        assert np.sum(binned.amplitudes) == pytest.approx(total)
        with pytest.raises(BadBinning):
            field_service.coarse_grain(packet, 3, 4)

    def test_coarse_grain_two_lobes(self, field_service, grid):
        """Testa dois lóbulos em bins disjuntos: dois bins dominantes e os demais ≈ 0"""
        antes = field_service.gaussian_packet(grid, t0=-4.0, sd_x0=2.0, sd_t0=0.5)
        depois = field_service.gaussian_packet(grid, t0=4.0, sd_x0=2.0, sd_t0=0.5)
        dois_lobos = antes.with_amplitudes(
            (antes.amplitudes + depois.amplitudes) / np.sqrt(2)
        )

        binned = field_service.coarse_grain(dois_lobos, grid.n_x, grid.n_t // 4)

        a = np.abs(binned.amplitudes[0, 0])
        assert a.shape == (4,)
        assert a[1] == pytest.approx(a[2], rel=1e-9)
        assert max(a[0], a[3]) < 1e-6 * a[1]
