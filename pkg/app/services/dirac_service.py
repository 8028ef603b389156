import math
from typing import List, Tuple

import numpy as np

from app.core.commons.exceptions import (
    NonPositiveRestEnergy,
    PacketClipped,
    UnsupportedDimension,
    ZeroSpinor,
)
from app.model.dirac_model import GammaSet, Spinor
from app.model.field_model import ReciprocalField, WaveField
from app.schema.dirac_schema import (
    CommutatorPair,
    CommutatorResult,
    ModeKind,
    RestEnergySpectrum,
)
from app.services.field_service import FieldService
from app.services.lattice_service import LatticeService

SUPPORT_FRACTION = 1e-4

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class DiracService:
    """Serviço responsável pela álgebra de Clifford, spinores e resíduos das
    equações de Dirac e Klein-Gordon.

    O operador de energia de repouso age em ondas planas como
    c·(γ⁰ε/c − γ¹p) = γ⁰ε − cγ¹p, com assinatura (+, −).
    """

    def __init__(self, lattice_service: LatticeService, field_service: FieldService):
        self.lattice_service = lattice_service
        self.field_service = field_service

    def gamma_set(self, n_s: int) -> GammaSet:
        if n_s == 2:
            return GammaSet(
                dimension=2,
                gamma0=np.array([[1, 0], [0, -1]], dtype=complex),
                gamma_spatial=[np.array([[0, 1], [-1, 0]], dtype=complex)],
            )
        if n_s == 4:
            zero = np.zeros((2, 2), dtype=complex)
            identidade = np.eye(2, dtype=complex)
            return GammaSet(
                dimension=4,
                gamma0=np.block([[identidade, zero], [zero, -identidade]]),
                gamma_spatial=[np.block([[zero, s], [-s, zero]]) for s in _PAULI],
            )
        raise UnsupportedDimension(f"n_s = {n_s} não suportado (use 2 ou 4)")

    def slash(self, p: float, eps: float, gammas: GammaSet, c: float = 1.0) -> np.ndarray:
        """c·(γ⁰ε/c − γ¹p)"""
        return gammas.gamma0 * eps - c * gammas.gamma_spatial[0] * p

    def plane_wave_spinor(
        self, p: float, e0: float, gammas: GammaSet, c: float = 1.0
    ) -> Spinor:
        """Spinor unitário do ramo de energia positiva, autovetor de c·slash com ε₀"""
        if not e0 > 0:
            raise NonPositiveRestEnergy(f"ε₀ = {e0} deve ser positiva")
        eps = math.sqrt(e0**2 + (c * p) ** 2)
        projetor = self.slash(p, eps, gammas, c) + e0 * np.eye(gammas.dimension)
        u = projetor[:, 0]
        return Spinor(components=u / np.linalg.norm(u), p=p, eps=eps, e0=e0)

    def spinor_basis(
        self, p: float, e0: float, gammas: GammaSet, c: float = 1.0
    ) -> Tuple[List[np.ndarray], List[np.ndarray]]:
        """Bases ortonormais dos autoespaços de c·slash com autovalores +ε₀ e −ε₀"""
        if not e0 > 0:
            raise NonPositiveRestEnergy(f"ε₀ = {e0} deve ser positiva")
        eps = math.sqrt(e0**2 + (c * p) ** 2)
        m = self.slash(p, eps, gammas, c)
        identidade = np.eye(gammas.dimension)
        metade = gammas.dimension // 2

        def autoespaco(matriz: np.ndarray) -> List[np.ndarray]:
            u, _, _ = np.linalg.svd(matriz)
            return [u[:, k] for k in range(metade)]

        return autoespaco(m + e0 * identidade), autoespaco(m - e0 * identidade)

    def dirac_residual(
        self,
        u: np.ndarray,
        p: float,
        eps: float,
        e0: float,
        gammas: GammaSet,
        c: float = 1.0,
    ) -> float:
        """‖c·slash·u − ε₀u‖ / ‖u‖"""
        norma = float(np.linalg.norm(u))
        if norma == 0.0:
            raise ZeroSpinor()
        residuo = self.slash(p, eps, gammas, c) @ u - e0 * u
        return float(np.linalg.norm(residuo)) / norma

    def kg_residual(self, field: WaveField, e0: float) -> float:
        """‖(Ê₀² − ε₀²)Ψ‖ com Ê₀² aplicado espectralmente como (ℏt̃)² − c²(ℏr̃)²"""
        self.field_service.require_normalized(field)
        recip = self.lattice_service.forward_transform(field)
        r_tilde, t_tilde = recip.frequencies.mesh()
        hbar, c = field.grid.hbar, field.grid.c
        operador = (hbar * t_tilde) ** 2 - c**2 * (hbar * r_tilde) ** 2 - e0**2
        residuo = recip.amplitudes * operador[None, :, :]
        return math.sqrt(
            float(np.sum(np.abs(residuo) ** 2)) * recip.frequencies.cell_measure
        )

    def rest_energy_spectrum(self, recip: ReciprocalField) -> RestEnergySpectrum:
        """ε₀ = √((ℏt̃)² − c²(ℏr̃)²) por modo tipo-tempo; os demais são sinalizados"""
        r_tilde, t_tilde = recip.frequencies.mesh()
        hbar, c = recip.grid.hbar, recip.grid.c
        e_sq = (hbar * t_tilde) ** 2
        p_sq = c**2 * (hbar * r_tilde) ** 2
        e0_sq = e_sq - p_sq

        escala = 1e-12 * (e_sq + p_sq)
        kind = np.full(e0_sq.shape, ModeKind.LIGHTLIKE.value, dtype=int)
        kind[e0_sq > escala] = ModeKind.TIMELIKE.value
        kind[e0_sq < -escala] = ModeKind.SPACELIKE.value

        e0 = np.full(e0_sq.shape, np.nan)
        e0[kind == ModeKind.TIMELIKE.value] = np.sqrt(e0_sq[kind == ModeKind.TIMELIKE.value])
        e0[kind == ModeKind.LIGHTLIKE.value] = 0.0

        timelike = kind == ModeKind.TIMELIKE.value
        weights = recip.weights[timelike]
        mean, sd = math.nan, 0.0
        if weights.size and float(np.sum(weights)) > 0:
            w = weights / np.sum(weights)
            mean = float(np.sum(w * e0[timelike]))
            sd = math.sqrt(max(float(np.sum(w * (e0[timelike] - mean) ** 2)), 0.0))

        return RestEnergySpectrum(
            e0=e0,
            kind=kind,
            mean=mean,
            sd=sd,
            n_timelike=int(np.sum(timelike)),
            n_lightlike=int(np.sum(kind == ModeKind.LIGHTLIKE.value)),
            n_spacelike=int(np.sum(kind == ModeKind.SPACELIKE.value)),
        )

    def commutator_residual(
        self, pair: CommutatorPair, field: WaveField
    ) -> CommutatorResult:
        """Estima a constante c de [A, B]ψ = cψ e o desvio relativo no suporte de ψ.

        As coordenadas são tomadas em relação ao centro do pacote, de modo que a
        costura periódica fica onde ψ é desprezível.
        """
        livre_x, livre_t = self.field_service.axis_clearance(field)
        if not (livre_x and livre_t):
            raise PacketClipped("Campo de teste encosta na borda do domínio")

        mean_x, mean_t, _, _ = self.field_service.position_moments(field)
        centro = {"x": mean_x, "t": mean_t}
        a, b = pair.value.split("-")
        aplicado = (
            self._apply(a, self._apply(b, field, centro), centro).amplitudes
            - self._apply(b, self._apply(a, field, centro), centro).amplitudes
        )

        suporte = (field.density >= SUPPORT_FRACTION * float(np.max(field.density)))[None]
        psi = np.where(suporte, field.amplitudes, 0.0)
        norma_sq = float(np.sum(np.abs(psi) ** 2))
        constante = complex(np.vdot(psi, aplicado) / norma_sq)
        desvio = np.where(suporte, aplicado - constante * field.amplitudes, 0.0)
        residual = math.sqrt(float(np.sum(np.abs(desvio) ** 2)) / norma_sq)

        hbar = field.grid.hbar
        esperado = {
            CommutatorPair.X_P: 1j * hbar,
            CommutatorPair.T_E: -1j * hbar,
        }.get(pair, 0j)
        return CommutatorResult(
            pair=pair, constant=constante, expected=esperado, residual=residual
        )

    def _apply(self, operador: str, field: WaveField, centro: dict) -> WaveField:
        """x e t centrados no pacote; p̂ = −iℏ∂x e Ê = iℏ∂t espectrais"""
        grid = field.grid
        if operador == "x":
            x = _wrap(grid.x - centro["x"], grid.L_x)
            return field.with_amplitudes(field.amplitudes * x[None, :, None])
        if operador == "t":
            t = _wrap(grid.t - centro["t"], grid.L_t)
            return field.with_amplitudes(field.amplitudes * t[None, None, :])

        recip = self.lattice_service.forward_transform(field)
        r_tilde, t_tilde = recip.frequencies.mesh()
        fator = grid.hbar * (r_tilde if operador == "p" else t_tilde)
        return self.lattice_service.inverse_transform(
            recip.with_amplitudes(recip.amplitudes * fator[None, :, :])
        )


def _wrap(coordenada: np.ndarray, periodo: float) -> np.ndarray:
    return (coordenada + periodo / 2) % periodo - periodo / 2
