import math
from typing import Dict, List, Tuple

import numpy as np
from loguru import logger

from app.core.commons.exceptions import InconsistentLog
from app.model.field_model import WaveField
from app.model.ordering_model import EventId, EventLog
from app.schema.dirac_schema import CommutatorPair
from app.schema.propagator_schema import MassShell, PropagationMode, PropagatorConfig
from app.schema.report_schema import ExperimentReport
from app.services.dirac_service import DiracService
from app.services.experiment_service import ExperimentService
from app.services.field_service import FieldService
from app.services.lattice_service import LatticeService
from app.services.ordering_service import OrderingService
from app.services.propagator_service import PropagatorService

UNITARITY_SIGMAS = (0.1, 1.0, 10.0)
FINITE_DIFFERENCE_STEP = 0.05


class InvariantService:
    """Suíte de propriedades executada pelo comando `check`.

    Cada bloco acrescenta verificações ao mesmo relatório; o modo rápido
    troca as grades 512×512 por 64×64 e reduz as amostras aleatórias.
    """

    def __init__(
        self,
        lattice_service: LatticeService,
        field_service: FieldService,
        propagator_service: PropagatorService,
        dirac_service: DiracService,
        ordering_service: OrderingService,
        experiment_service: ExperimentService,
    ):
        self.lattice_service = lattice_service
        self.field_service = field_service
        self.propagator_service = propagator_service
        self.dirac_service = dirac_service
        self.ordering_service = ordering_service
        self.experiment_service = experiment_service

    def run_suite(self, quick: bool = False, seed: int = 0) -> ExperimentReport:
        logger.info(f"Suíte de invariantes iniciada (quick={quick}, seed={seed})")
        rng = np.random.default_rng(seed)
        report = ExperimentReport(experiment="check", params={"quick": quick, "seed": seed})

        self.check_transforms(report, rng)
        self.check_unitarity(report, 64 if quick else 512)
        self.check_evolution_laws(report)
        self.check_einstein_relation(report)
        self.check_dirac(report, rng, 20 if quick else 100)
        self.check_klein_gordon(report)
        self.check_commutators(report)
        self.check_lorentz(report)
        self.check_uncertainty_sweep(report, rng, 20 if quick else 100)
        self.check_ordering(report, rng, 20 if quick else 200)

        falhas = [a.name for a in report.assertions if not a.passed]
        logger.info(
            f"Suíte concluída: {len(report.assertions)} verificações, {len(falhas)} falhas"
        )
        return report

    # Transformadas e propagador

    def check_transforms(self, report: ExperimentReport, rng: np.random.Generator) -> None:
        """Parseval e ida-e-volta num campo aleatório"""
        grid = self.lattice_service.make_grid(n_x=64, n_t=32, L_x=20.0, L_t=10.0)
        amplitudes = rng.normal(size=(2, 64, 32)) + 1j * rng.normal(size=(2, 64, 32))
        field = WaveField(grid=grid, amplitudes=amplitudes)
        recip = self.lattice_service.forward_transform(field)

        norma_posicao = float(np.sum(field.density)) * grid.cell_measure
        norma_espectral = float(np.sum(recip.weights))
        report.assert_at_most(
            "parseval", abs(norma_espectral - norma_posicao) / norma_posicao, 1e-12
        )
        volta = self.lattice_service.inverse_transform(recip)
        report.assert_at_most(
            "ida_e_volta", float(np.max(np.abs(volta.amplitudes - amplitudes))), 1e-12
        )

    def check_unitarity(self, report: ExperimentReport, n: int) -> None:
        """|‖Ψ(σ)‖ − 1| ≤ 1e−12 com b natural"""
        field, config = self._drift_packet(n)
        desvios = []
        for sigma in UNITARITY_SIGMAS:
            evoluido = self.propagator_service.propagate(field, config, sigma)
            desvio = abs(self.field_service.norm(evoluido) - 1.0)
            desvios.append(desvio)
            report.assert_at_most(f"unitaridade_sigma_{sigma:g}", desvio, 1e-12)
        report.add_series(
            "unitaridade", sigma=list(UNITARITY_SIGMAS), desvio_norma=desvios
        )

    def check_evolution_laws(self, report: ExperimentReport) -> None:
        """Propriedade de grupo, lei de deriva e parametrização natural"""
        field, config = self._drift_packet(64)
        propagate = self.propagator_service.propagate

        em_dois_passos = propagate(propagate(field, config, 0.7), config, 1.9)
        direto = propagate(field, config, 2.6)
        report.assert_at_most(
            "propriedade_de_grupo",
            float(np.max(np.abs(em_dois_passos.amplitudes - direto.amplitudes))),
            1e-12,
        )

        h = FINITE_DIFFERENCE_STEP
        antes = self.field_service.position_moments(propagate(field, config, 1.0 - h))
        depois = self.field_service.position_moments(propagate(field, config, 1.0 + h))
        deriva_x, deriva_t = self.propagator_service.drift_rate(field, config.b)
        report.assert_close("lei_de_deriva_x", (depois[0] - antes[0]) / (2 * h), deriva_x, 1e-6)
        report.assert_close("lei_de_deriva_t", (depois[1] - antes[1]) / (2 * h), deriva_t, 1e-6)
        report.assert_close("parametrizacao_natural", (depois[1] - antes[1]) / (2 * h), 1.0, 1e-6)

    def check_einstein_relation(self, report: ExperimentReport) -> None:
        """ε₀² = ε² − c²p² por modo e |σ̃| = ε₀²/(2ℏ⟨ε⟩) sob b natural"""
        field, config = self._drift_packet(64)
        recip = self.lattice_service.forward_transform(field)
        grid = field.grid
        r_tilde, t_tilde = recip.frequencies.mesh()

        e0_sq = self.propagator_service.rest_energy_squared(
            r_tilde, t_tilde, config.b, grid.c, grid.hbar
        )
        direto = (grid.hbar * t_tilde) ** 2 - grid.c**2 * (grid.hbar * r_tilde) ** 2
        report.assert_at_most(
            "relacao_de_einstein", float(np.max(np.abs(e0_sq - direto))), 1e-10
        )

        mean_e = self.field_service.observables(field).mean_e
        sigma = np.abs(self.propagator_service.sigma_tilde(r_tilde, t_tilde, config.b, grid.c))
        previsto = np.abs(direto) / (2 * grid.hbar * mean_e)
        report.assert_at_most(
            "sigma_tilde_energia_repouso",
            float(np.max(np.abs(sigma - previsto)) / np.max(sigma)),
            1e-12,
        )

    # Dirac e Klein-Gordon

    def check_dirac(
        self, report: ExperimentReport, rng: np.random.Generator, n_pares: int
    ) -> None:
        """Identidades de Clifford, resíduos de spinores, slash² e completude"""
        service = self.dirac_service
        for n_s in (2, 4):
            gammas = service.gamma_set(n_s)
            identidade = np.eye(n_s)
            exato = all(
                np.array_equal(
                    a @ b + b @ a, 2 * gammas.metric[mu, nu] * identidade
                )
                for mu, a in enumerate(gammas.matrices)
                for nu, b in enumerate(gammas.matrices)
            )
            report.assert_true(f"clifford_{n_s}", exato)

            pior_residuo, pior_quadrado, completos = 0.0, 0.0, True
            for _ in range(n_pares):
                p, e0 = float(rng.uniform(-3, 3)), float(rng.uniform(0.1, 3))
                spinor = service.plane_wave_spinor(p, e0, gammas)
                escala = max(1.0, spinor.eps**2)
                residuo = service.dirac_residual(
                    spinor.components, p, spinor.eps, e0, gammas
                )
                pior_residuo = max(pior_residuo, residuo / escala)

                m = service.slash(p, spinor.eps, gammas)
                quadrado = float(np.max(np.abs(m @ m - e0**2 * identidade)))
                pior_quadrado = max(pior_quadrado, quadrado / escala)

                positivos, negativos = service.spinor_basis(p, e0, gammas)
                base = np.column_stack(positivos + negativos)
                completos &= bool(np.linalg.matrix_rank(base) == n_s)

            report.assert_at_most(f"residuo_spinor_{n_s}", pior_residuo, 1e-12)
            report.assert_at_most(f"slash_quadrado_{n_s}", pior_quadrado, 1e-12)
            report.assert_true(f"completude_{n_s}", completos)

    def check_klein_gordon(self, report: ExperimentReport) -> None:
        """Pacote projetado na camada de massa (tol 1e−6) satisfaz Klein-Gordon"""
        grid = self.lattice_service.make_grid(
            n_x=64, n_t=64, L_x=8 * math.pi, L_t=8 * math.pi
        )
        field = self.field_service.gaussian_packet(grid, sd_x0=3.0, sd_t0=3.0, e0_freq=1.0)
        config = PropagatorConfig(
            b=-0.5,
            project_positive_energy=True,
            mass_shell=MassShell(e0=1.0, tol=1e-6),
        )
        projetado = self.propagator_service.prepare(field, config)
        report.assert_at_most(
            "klein_gordon", self.dirac_service.kg_residual(projetado, 1.0), 1e-6
        )

    def check_commutators(self, report: ExperimentReport) -> None:
        grid = self.lattice_service.make_grid(n_x=128, n_t=128, L_x=32.0, L_t=32.0)
        field = self.field_service.gaussian_packet(
            grid, sd_x0=1.0, sd_t0=1.0, p0=0.5, e0_freq=1.0
        )
        for pair in CommutatorPair:
            resultado = self.dirac_service.commutator_residual(pair, field)
            report.assert_at_most(
                f"comutador_{pair.value}", resultado.deviation, 1e-6
            )

    def check_lorentz(self, report: ExperimentReport) -> None:
        grid = self.lattice_service.make_grid(
            n_x=64, n_t=64, L_x=8 * math.pi, L_t=8 * math.pi
        )
        lorentz = self.experiment_service.lorentz_report(grid, [-1.0, -0.5, 0.5, 1.0])
        report.assertions.extend(lorentz.assertions)

    def check_uncertainty_sweep(
        self, report: ExperimentReport, rng: np.random.Generator, n_pacotes: int
    ) -> None:
        """Pacotes aleatórios nunca violam ℏ/2·(1 − 1e−3)"""
        grid = self.lattice_service.make_grid(n_x=128, n_t=128, L_x=48.0, L_t=48.0)
        self.experiment_service.uncertainty_sweep(report, grid, n_pacotes, rng)

    # Ordenação

    def check_ordering(
        self, report: ExperimentReport, rng: np.random.Generator, n_registros: int
    ) -> None:
        """Ordem universal contra oráculo, somas de ciclo e registros cíclicos"""
        service = self.ordering_service
        divergencias, violacoes, ciclos, testemunhas_invalidas = 0, 0, 0, 0
        for _ in range(n_registros):
            log = service.random_log(
                rng,
                n_subjects=int(rng.integers(2, 11)),
                n_events=int(rng.integers(2, 101)),
                n_messages=int(rng.integers(1, 151)),
            )
            order = service.universal_order(log)
            niveis = self.longest_path_levels(log)
            divergencias += sum(
                order.class_of[e] != niveis[log.group_of(e)] for e in log.event_ids()
            )
            violacoes += len(service.order_violations(log, order))

            relogios = [s for s, eventos in log.subjects.items() if eventos]
            relogio = relogios[int(rng.integers(len(relogios)))]
            distancias = service.relational_distances(log, order, relogio)
            ciclos += self.experiment_service.nonzero_cycle_sums(
                rng, distancias.matrix, amostras=20
            )

            if log.messages:
                origem, destino = log.messages[int(rng.integers(len(log.messages)))]
                service.add_message(log, destino, origem)
                testemunhas_invalidas += not self._yields_valid_witness(log)

        report.assert_at_most("ordem_contra_oraculo", float(divergencias), 0.0)
        report.assert_at_most("ordem_sem_violacoes", float(violacoes), 0.0)
        report.assert_at_most("somas_de_ciclo", float(ciclos), 0.0)
        report.assert_at_most("registros_ciclicos", float(testemunhas_invalidas), 0.0)

    def longest_path_levels(self, log: EventLog) -> Dict[EventId, int]:
        """Nível de cada conjunto por relaxação exaustiva das arestas"""
        arestas = self.ordering_service.constraint_edges(log)
        niveis = {rep: 0 for rep in set(log.representatives.values())}
        for _ in range(len(niveis)):
            mudou = False
            for origem, destino in arestas:
                if niveis[destino] < niveis[origem] + 1:
                    niveis[destino] = niveis[origem] + 1
                    mudou = True
            if not mudou:
                break
        return niveis

    def _yields_valid_witness(self, log: EventLog) -> bool:
        try:
            self.ordering_service.universal_order(log)
        except InconsistentLog as e:
            return self.is_valid_witness(e.witness, self.ordering_service.constraint_edges(log))
        return False

    @staticmethod
    def is_valid_witness(witness: List[EventId], arestas: List[Tuple[EventId, EventId]]) -> bool:
        """Caminho fechado em que cada par consecutivo é uma aresta de restrição"""
        conjunto = set(arestas)
        return (
            len(witness) >= 2
            and witness[0] == witness[-1]
            and all(par in conjunto for par in zip(witness, witness[1:]))
        )

    # Auxiliares

    def _drift_packet(self, n: int) -> Tuple[WaveField, PropagatorConfig]:
        """Pacote gaussiano com portadora (p, ε) = (0.5, 1.5) e b natural congelado"""
        grid = self.lattice_service.make_grid(n_x=n, n_t=n, L_x=64.0, L_t=64.0)
        field = self.field_service.gaussian_packet(
            grid, sd_x0=4.0, sd_t0=4.0, p0=0.5, e0_freq=1.5
        )
        config = self.propagator_service.resolve_config(
            field, PropagatorConfig(mode=PropagationMode.NATURAL)
        )
        return field, config
