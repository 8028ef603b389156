import math
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.signal import find_peaks

from app.core.commons.exceptions import (
    InvalidParameter,
    NonPositiveRestEnergy,
    PacketClipped,
    UnderResolved,
)
from app.core.config.settings import settings
from app.model.field_model import ReciprocalField, WaveField
from app.model.grid_model import SpacetimeGrid
from app.schema.config_schema import GridParams
from app.schema.propagator_schema import MassShell, PropagationMode, PropagatorConfig
from app.schema.report_schema import ExperimentReport
from app.services.dirac_service import DiracService
from app.services.field_service import FieldService
from app.services.lattice_service import LatticeService
from app.services.ordering_service import OrderingService
from app.services.propagator_service import PropagatorService

UNCERTAINTY_SLACK = 1e-3
FRINGE_TOLERANCE = 0.02
SURVIVAL_TOLERANCE = 0.01
SURVIVAL_FLOOR = 0.1


def refined_peaks(x: np.ndarray, y: np.ndarray, prominence: float) -> np.ndarray:
    """Máximos com proeminência ≥ fração do máximo, refinados por parábola"""
    if y.size < 3 or float(np.max(y)) <= 0:
        return np.array([])
    indices, _ = find_peaks(y, prominence=prominence * float(np.max(y)))
    passo = float(x[1] - x[0])
    posicoes = []
    for i in indices:
        y0, y1, y2 = y[i - 1], y[i], y[i + 1]
        curvatura = y0 - 2 * y1 + y2
        delta = 0.5 * (y0 - y2) / curvatura if curvatura != 0 else 0.0
        posicoes.append(float(x[i]) + delta * passo)
    return np.array(posicoes)


def mean_spacing(posicoes: np.ndarray) -> float:
    if posicoes.size < 2:
        return math.nan
    return float((posicoes[-1] - posicoes[0]) / (posicoes.size - 1))


class ExperimentService:
    """Serviço responsável pelos experimentos configuráveis e seus relatórios"""

    def __init__(
        self,
        lattice_service: LatticeService,
        field_service: FieldService,
        propagator_service: PropagatorService,
        dirac_service: DiracService,
        ordering_service: OrderingService,
    ):
        self.lattice_service = lattice_service
        self.field_service = field_service
        self.propagator_service = propagator_service
        self.dirac_service = dirac_service
        self.ordering_service = ordering_service

    def grid_from(self, params: GridParams) -> SpacetimeGrid:
        return self.lattice_service.make_grid(**params.model_dump())

    # Pacote

    def packet_report(
        self,
        grid: SpacetimeGrid,
        x0: float = 0.0,
        t0: float = 0.0,
        sd_x: Optional[float] = 1.0,
        sd_t: float = 1.0,
        p0: float = 0.0,
        e0_freq: float = 1.0,
        n_s: int = 1,
    ) -> ExperimentReport:
        """Constrói o pacote e confere momentos e produtos de incerteza"""
        logger.info("Experimento packet iniciado")
        report = ExperimentReport(
            experiment="packet",
            params={
                "grid": grid.model_dump(),
                "x0": x0,
                "t0": t0,
                "sd_x": sd_x,
                "sd_t": sd_t,
                "p0": p0,
                "e0_freq": e0_freq,
                "n_s": n_s,
            },
        )

        spinor = None
        if n_s > 1:
            c, hbar = grid.c, grid.hbar
            e0_sq = (hbar * e0_freq) ** 2 - (c * p0) ** 2
            if e0_sq <= 0:
                raise NonPositiveRestEnergy(
                    "Portadora fora do cone de luz: não há spinor de energia positiva"
                )
            gammas = self.dirac_service.gamma_set(n_s)
            spinor = self.dirac_service.plane_wave_spinor(p0, math.sqrt(e0_sq), gammas, c)
            residuo = self.dirac_service.dirac_residual(
                spinor.components, spinor.p, spinor.eps, spinor.e0, gammas, c
            )
            report.scalars["dirac_residual"] = residuo
            report.assert_at_most("residuo_dirac", residuo, 1e-12 * max(1.0, spinor.eps))

        field = self.field_service.gaussian_packet(
            grid,
            x0=x0,
            t0=t0,
            sd_x0=sd_x,
            sd_t0=sd_t,
            p0=p0,
            e0_freq=e0_freq,
            spinor=None if spinor is None else spinor.components,
        )
        obs = self.field_service.observables(field)
        norma = self.field_service.norm(field)
        limite = grid.hbar / 2 * (1 - UNCERTAINTY_SLACK)

        report.scalars.update(obs.model_dump())
        report.scalars["norm"] = norma
        report.scalars["product_xp"] = obs.product_xp
        report.scalars["product_te"] = obs.product_te

        report.assert_close("norma", norma, 1.0, 1e-12)
        report.assert_close("media_t", obs.mean_t, t0, grid.dt)
        report.assert_close("desvio_t", obs.sd_t, sd_t, 1e-3, relative=True)
        report.assert_at_least("incerteza_t_e", obs.product_te, limite)
        if sd_x is not None:
            report.assert_close("media_x", obs.mean_x, x0, grid.dx)
            report.assert_close("desvio_x", obs.sd_x, sd_x, 1e-3, relative=True)
            report.assert_at_least("incerteza_x_p", obs.product_xp, limite)

        densidade = field.density * grid.cell_measure
        report.add_series(
            "marginal_x",
            x=grid.x.tolist(),
            densidade=(np.sum(densidade, axis=1) / grid.dx).tolist(),
        )
        report.add_series(
            "marginal_t",
            t=grid.t.tolist(),
            densidade=(np.sum(densidade, axis=0) / grid.dt).tolist(),
        )
        report.artifacts["field"] = field
        logger.info(f"Experimento packet concluído (aprovado={report.passed})")
        return report

    # Fenda dupla temporal

    def temporal_double_slit(
        self,
        grid: SpacetimeGrid,
        t1: float,
        t2: float,
        slit_sd: float,
        carrier_e: float,
    ) -> ExperimentReport:
        """Franjas no espectro de energia de dois lóbulos temporais"""
        logger.info("Experimento double-slit iniciado")
        if t2 < t1:
            raise InvalidParameter(f"t2 = {t2} precede t1 = {t1}")
        hbar = grid.hbar
        separacao = t2 - t1
        frequencies = self.lattice_service.frequency_grid(grid)
        if separacao > 0 and 2 * math.pi / separacao < 4 * frequencies.dt_tilde:
            raise UnderResolved(
                f"Período das franjas 2π/{separacao} abaixo de 4 bins espectrais"
            )

        energia, intensidade = self._energy_spectrum(
            self._two_slit_field(grid, t1, t2, slit_sd, carrier_e)
        )
        _, envelope = self._energy_spectrum(
            self._two_slit_field(grid, t1, t1, slit_sd, carrier_e)
        )
        picos = refined_peaks(energia, intensidade, settings.PEAK_PROMINENCE)
        espacamento = mean_spacing(picos)
        esperado = 2 * math.pi * hbar / separacao if separacao > 0 else None
        largura = self._weighted_sd(energia, envelope)
        largura_esperada = hbar / (2 * slit_sd)

        report = ExperimentReport(
            experiment="double-slit",
            params={
                "grid": grid.model_dump(),
                "t1": t1,
                "t2": t2,
                "slit_sd": slit_sd,
                "carrier_e": carrier_e,
            },
            scalars={
                "fringe_count": float(picos.size),
                "fringe_spacing": espacamento,
                "expected_spacing": esperado,
                "envelope_sd": largura,
                "expected_envelope_sd": largura_esperada,
            },
        )
        if esperado is not None:
            report.assert_close(
                "espacamento_franjas",
                espacamento,
                esperado,
                FRINGE_TOLERANCE,
                relative=True,
            )
        else:
            report.assert_at_most("sem_franjas", float(picos.size), 1.0)
        report.assert_close(
            "largura_envelope", largura, largura_esperada, FRINGE_TOLERANCE, relative=True
        )

        report.add_series(
            "espectro",
            energia=energia.tolist(),
            intensidade=intensidade.tolist(),
            intensidade_fenda_unica=envelope.tolist(),
        )
        report.add_series("picos", energia=picos.tolist())
        logger.info(
            f"Experimento double-slit concluído: espaçamento={espacamento} "
            f"(esperado {esperado})"
        )
        return report

    def delay_scan(
        self,
        grid: SpacetimeGrid,
        carrier_e: float,
        slit_sd: float,
        detect_offset: float,
        delays: Sequence[float],
    ) -> ExperimentReport:
        """Probabilidade numa energia fixa em função da separação Δt das fendas"""
        logger.info("Experimento delay-scan iniciado")
        atrasos = np.asarray(delays, dtype=float)
        if atrasos.size < 3:
            raise InvalidParameter("São necessários ao menos 3 atrasos")
        passos = np.diff(atrasos)
        if np.any(passos <= 0) or not np.allclose(passos, passos[0]):
            raise InvalidParameter("Atrasos devem ser crescentes e uniformes")

        frequencies = self.lattice_service.frequency_grid(grid)
        alvo = (carrier_e + detect_offset / grid.hbar)
        indice = int(np.argmin(np.abs(frequencies.t_tilde - alvo)))
        omega = float(frequencies.t_tilde[indice]) - carrier_e
        if omega == 0:
            raise InvalidParameter("Energia detectada coincide com a portadora")

        probabilidade = []
        for atraso in atrasos:
            field = self._two_slit_field(
                grid, -atraso / 2, atraso / 2, slit_sd, carrier_e
            )
            recip = self.lattice_service.forward_transform(field)
            probabilidade.append(float(np.sum(recip.weights[:, indice])))
        probabilidade = np.array(probabilidade)

        picos = refined_peaks(atrasos, probabilidade, settings.PEAK_PROMINENCE)
        periodo = mean_spacing(picos)
        esperado = 2 * math.pi / abs(omega)

        report = ExperimentReport(
            experiment="delay-scan",
            params={
                "grid": grid.model_dump(),
                "carrier_e": carrier_e,
                "slit_sd": slit_sd,
                "detect_offset": detect_offset,
                "delay_min": float(atrasos[0]),
                "delay_max": float(atrasos[-1]),
                "n_delays": int(atrasos.size),
            },
            scalars={
                "detected_energy": grid.hbar * float(frequencies.t_tilde[indice]),
                "effective_offset": grid.hbar * omega,
                "period": periodo,
                "expected_period": esperado,
                "n_peaks": float(picos.size),
            },
        )
        report.assert_close(
            "periodo_atraso", periodo, esperado, FRINGE_TOLERANCE, relative=True
        )
        report.add_series(
            "varredura", atraso=atrasos.tolist(), probabilidade=probabilidade.tolist()
        )
        logger.info(f"Experimento delay-scan concluído: período={periodo}")
        return report

    # Ehrenfest

    def ehrenfest_run(
        self,
        grid: SpacetimeGrid,
        packet: dict,
        sigma_span: float,
        n_samples: int,
    ) -> ExperimentReport:
        """Trajetória (⟨x⟩, ⟨t⟩) em σ de um pacote na camada de massa, com b natural.

        `packet` traz x0, t0, sd_x, sd_t, p0, e0 (energia de repouso) e shell_tol.
        """
        logger.info("Experimento ehrenfest iniciado")
        if not sigma_span > 0 or n_samples < 3:
            raise InvalidParameter("sigma_span > 0 e n_samples ≥ 3 são obrigatórios")
        c, hbar = grid.c, grid.hbar
        p0, e0 = packet["p0"], packet["e0"]
        eps = math.sqrt(e0**2 + (c * p0) ** 2)

        field = self.field_service.gaussian_packet(
            grid,
            x0=packet.get("x0", 0.0),
            t0=packet.get("t0", 0.0),
            sd_x0=packet["sd_x"],
            sd_t0=packet["sd_t"],
            p0=p0,
            e0_freq=eps / hbar,
        )
        config = PropagatorConfig(
            mode=PropagationMode.NATURAL,
            project_positive_energy=True,
            mass_shell=MassShell(e0=e0, tol=packet["shell_tol"]),
        )
        preparado = self.propagator_service.prepare(field, config)
        livre_x, livre_t = self.field_service.axis_clearance(preparado)
        if not (livre_x and livre_t):
            raise PacketClipped(
                f"Pacote projetado na camada (tol = {packet['shell_tol']}) não cabe no domínio"
            )
        config = self.propagator_service.resolve_config(preparado, config)
        obs = self.field_service.observables(preparado)

        sigmas = np.linspace(0.0, sigma_span, n_samples)
        medias_x, medias_t = [], []
        for sigma in sigmas:
            evoluido = self.propagator_service.propagate(preparado, config, float(sigma))
            mean_x, mean_t, _, _ = self.field_service.position_moments(evoluido)
            medias_x.append(mean_x)
            medias_t.append(mean_t)
            logger.debug(f"σ={sigma}: ⟨x⟩={mean_x}, ⟨t⟩={mean_t}")

        dt_dsigma = float(np.polyfit(sigmas, medias_t, 1)[0])
        dx_dsigma = float(np.polyfit(sigmas, medias_x, 1)[0])
        dx_dt = float(np.polyfit(medias_t, medias_x, 1)[0])
        deriva_x, deriva_t = self.propagator_service.drift_rate(preparado, config.b)
        massa = obs.mean_e / c**2
        velocidade = obs.mean_p / massa
        velocidade_camada = c**2 * p0 / eps

        report = ExperimentReport(
            experiment="ehrenfest",
            params={
                "grid": grid.model_dump(),
                **packet,
                "sigma_span": sigma_span,
                "n_samples": n_samples,
            },
            scalars={
                "b": config.b,
                "mean_p": obs.mean_p,
                "mean_e": obs.mean_e,
                "mean_m": massa,
                "mean_e0sq": obs.mean_e0sq,
                "dt_dsigma": dt_dsigma,
                "dx_dsigma": dx_dsigma,
                "dx_dt": dx_dt,
                "drift_x": deriva_x,
                "drift_t": deriva_t,
                "group_velocity": velocidade,
                "shell_velocity": velocidade_camada,
            },
        )
        report.assert_close("dt_dsigma", dt_dsigma, 1.0, 1e-3)
        report.assert_true("direcao_do_tempo", dt_dsigma > 0, dt_dsigma)
        report.assert_close("deriva_x", dx_dsigma, deriva_x, 1e-3)
        report.assert_close("dx_dt", dx_dt, velocidade, 1e-3)
        report.assert_close("dx_dt_camada", dx_dt, velocidade_camada, 1e-3)
        report.add_series(
            "trajetoria",
            sigma=sigmas.tolist(),
            mean_x=[float(v) for v in medias_x],
            mean_t=[float(v) for v in medias_t],
        )
        logger.info(f"Experimento ehrenfest concluído: d⟨x⟩/d⟨t⟩={dx_dt}")
        return report

    # Amplitude de sobrevivência e incertezas

    def survival_amplitude(
        self,
        field: WaveField,
        sigma_grid: Sequence[float],
        b: Optional[float] = None,
    ) -> ExperimentReport:
        """A(σ) = |⟨Ψ(0)|Ψ(σ)⟩| contra o modelo gaussiano exp(−Δσ̃²σ²/2)"""
        logger.info("Experimento survival iniciado")
        self.field_service.require_normalized(field)
        sigmas = np.asarray(sigma_grid, dtype=float)
        if sigmas.size < 1 or sigmas[0] != 0 or np.any(np.diff(sigmas) <= 0):
            raise InvalidParameter("sigma_grid deve começar em 0 e ser crescente")

        recip = self.lattice_service.forward_transform(field)
        if b is None:
            b = self.propagator_service.natural_b(recip)
        pesos, sigma_tilde = self._sigma_spectrum(recip, b)
        media = float(np.sum(pesos * sigma_tilde))
        desvio = math.sqrt(max(float(np.sum(pesos * (sigma_tilde - media) ** 2)), 0.0))

        amplitude = np.array(
            [self._survival(pesos, sigma_tilde - media, s) for s in sigmas]
        )
        modelo = np.exp(-(desvio**2) * sigmas**2 / 2)
        validos = modelo >= SURVIVAL_FLOOR
        desvio_modelo = float(
            np.max(np.abs(amplitude[validos] - modelo[validos]) / modelo[validos])
        )
        decaimento = self._decay_point(pesos, sigma_tilde - media, desvio)

        report = ExperimentReport(
            experiment="survival",
            params={
                "grid": field.grid.model_dump(),
                "b": b,
                "sigma_max": float(sigmas[-1]),
                "n_sigma": int(sigmas.size),
            },
            scalars={
                "b": b,
                "delta_sigma_tilde": desvio,
                "decay_sigma": decaimento if math.isfinite(decaimento) else None,
                "model_deviation": desvio_modelo,
            },
        )
        report.assert_close("amplitude_inicial", float(amplitude[0]), 1.0, 1e-12)
        report.assert_at_most("desvio_modelo_gaussiano", desvio_modelo, SURVIVAL_TOLERANCE)
        self._third_relation(report, recip, b, desvio, decaimento)
        report.add_series(
            "sobrevivencia",
            sigma=sigmas.tolist(),
            amplitude=amplitude.tolist(),
            modelo=modelo.tolist(),
        )
        logger.info(f"Experimento survival concluído: Δσ̃={desvio}")
        return report

    def uncertainty_report(self, field: WaveField) -> ExperimentReport:
        """sd_x·sd_p e sd_t·sd_e contra ℏ/2, e Δσ·Δε₀² contra c²ℏ²/(2|b|)"""
        logger.info("Experimento uncertainty iniciado")
        obs = self.field_service.observables(field)
        hbar = field.grid.hbar
        report = ExperimentReport(
            experiment="uncertainty",
            params={"grid": field.grid.model_dump()},
            scalars={
                "sd_x": obs.sd_x,
                "sd_p": obs.sd_p,
                "product_xp": obs.product_xp,
                "sd_t": obs.sd_t,
                "sd_e": obs.sd_e,
                "product_te": obs.product_te,
                "bound": hbar / 2,
            },
        )
        self.check_uncertainty(report, obs.product_xp, obs.product_te, hbar)

        if obs.mean_e > 0:
            recip = self.lattice_service.forward_transform(field)
            b = self.propagator_service.natural_b(recip)
            pesos, sigma_tilde = self._sigma_spectrum(recip, b)
            media = float(np.sum(pesos * sigma_tilde))
            desvio = math.sqrt(float(np.sum(pesos * (sigma_tilde - media) ** 2)))
            decaimento = self._decay_point(pesos, sigma_tilde - media, desvio)
            self._third_relation(report, recip, b, desvio, decaimento)
        else:
            logger.warning("⟨ε⟩ ≤ 0: relação σ-ε₀² não verificada")
        logger.info(f"Experimento uncertainty concluído (aprovado={report.passed})")
        return report

    def check_uncertainty(
        self,
        report: ExperimentReport,
        product_xp: float,
        product_te: float,
        hbar: float,
        prefixo: str = "",
    ) -> None:
        limite = hbar / 2 * (1 - UNCERTAINTY_SLACK)
        report.assert_at_least(f"{prefixo}incerteza_x_p", product_xp, limite)
        report.assert_at_least(f"{prefixo}incerteza_t_e", product_te, limite)

    def uncertainty_sweep(
        self,
        report: ExperimentReport,
        grid: SpacetimeGrid,
        n_packets: int,
        rng: np.random.Generator,
    ) -> None:
        """Menores produtos de incerteza sobre pacotes aleatórios"""
        menor_xp, menor_te = math.inf, math.inf
        for _ in range(n_packets):
            obs = self.field_service.observables(self.random_packet(rng, grid))
            menor_xp = min(menor_xp, obs.product_xp)
            menor_te = min(menor_te, obs.product_te)
        logger.debug(f"Varredura de {n_packets} pacotes: {menor_xp}, {menor_te}")
        report.scalars["sweep_min_xp"] = menor_xp
        report.scalars["sweep_min_te"] = menor_te
        self.check_uncertainty(report, menor_xp, menor_te, grid.hbar, prefixo="varredura_")

    def random_packet(self, rng: np.random.Generator, grid: SpacetimeGrid) -> WaveField:
        """Pacote gaussiano aleatório com folga de borda e resolução garantidas"""
        sd_x = rng.uniform(2.5 * grid.dx, grid.L_x / 20)
        sd_t = rng.uniform(2.5 * grid.dt, grid.L_t / 20)
        x0 = rng.uniform(-0.5, 0.5) * (grid.L_x / 2 - settings.CLEARANCE_SDS * sd_x)
        t0 = rng.uniform(-0.5, 0.5) * (grid.L_t / 2 - settings.CLEARANCE_SDS * sd_t)
        p0 = grid.hbar * rng.uniform(-1, 1) * math.pi / (4 * grid.dx)
        e0_freq = rng.uniform(-1, 1) * math.pi / (4 * grid.dt)
        return self.field_service.gaussian_packet(
            grid,
            x0=float(x0),
            t0=float(t0),
            sd_x0=float(sd_x),
            sd_t0=float(sd_t),
            p0=float(p0),
            e0_freq=float(e0_freq),
        )

    # Lorentz

    def lorentz_report(
        self,
        grid: SpacetimeGrid,
        rapidities: Sequence[float],
        b: float = -0.5,
        p: float = 0.75,
        e0: float = 1.0,
    ) -> ExperimentReport:
        """Invariância de σ̃ e ε₀² sob boosts e resíduo de Dirac dos spinores boostados"""
        logger.info("Experimento lorentz iniciado")
        c, hbar = grid.c, grid.hbar
        r_tilde, t_tilde = self.lattice_service.frequency_grid(grid).mesh()
        sigma = self.propagator_service.sigma_tilde(r_tilde, t_tilde, b, c)
        e0_sq = hbar**2 * (t_tilde**2 - c**2 * r_tilde**2)
        gammas = self.dirac_service.gamma_set(2)
        eps = math.sqrt(e0**2 + (c * p) ** 2)

        linhas = {k: [] for k in ("rapidez", "desvio_sigma", "desvio_e0sq", "p", "eps", "residuo_dirac")}
        for eta in rapidities:
            r_b, t_b = self.propagator_service.boost_modes(r_tilde, t_tilde, eta, c)
            sigma_b = self.propagator_service.sigma_tilde(r_b, t_b, b, c)
            escala = abs(b) * (t_tilde**2 / c**2 + r_tilde**2 + t_b**2 / c**2 + r_b**2)
            escala = np.maximum(escala, np.finfo(float).tiny)
            desvio_sigma = float(np.max(np.abs(sigma_b - sigma) / escala))
            e0_sq_b = hbar**2 * (t_b**2 - c**2 * r_b**2)
            desvio_e0sq = float(np.max(np.abs(e0_sq_b - e0_sq) * abs(b) / (hbar**2 * escala)))

            p_b, eps_b = self.propagator_service.boost_modes(p, eps, eta, c)
            spinor = self.dirac_service.plane_wave_spinor(p_b, e0, gammas, c)
            residuo = self.dirac_service.dirac_residual(
                spinor.components, p_b, eps_b, e0, gammas, c
            ) / max(1.0, abs(eps_b))

            for chave, valor in zip(
                linhas, (eta, desvio_sigma, desvio_e0sq, p_b, eps_b, residuo)
            ):
                linhas[chave].append(float(valor))

        report = ExperimentReport(
            experiment="lorentz",
            params={
                "grid": grid.model_dump(),
                "rapidities": [float(eta) for eta in rapidities],
                "b": b,
                "p": p,
                "e0": e0,
            },
            scalars={
                "max_sigma_deviation": max(linhas["desvio_sigma"], default=0.0),
                "max_e0sq_deviation": max(linhas["desvio_e0sq"], default=0.0),
                "max_dirac_residual": max(linhas["residuo_dirac"], default=0.0),
            },
        )
        report.assert_at_most(
            "invariancia_sigma", report.scalars["max_sigma_deviation"], 1e-12
        )
        report.assert_at_most(
            "invariancia_e0sq", report.scalars["max_e0sq_deviation"], 1e-12
        )
        report.assert_at_most(
            "residuo_dirac_boost", report.scalars["max_dirac_residual"], 1e-12
        )
        report.add_series("boost", **linhas)
        logger.info("Experimento lorentz concluído")
        return report

    # Ordenação de eventos

    def ordering_demo(
        self,
        n_subjects: int,
        n_events: int,
        n_messages: int,
        clock_subject: Optional[str],
        seed: int,
    ) -> ExperimentReport:
        """Registro aleatório, ordem universal e distâncias relacionais"""
        logger.info("Experimento ordering-demo iniciado")
        rng = np.random.default_rng(seed)
        service = self.ordering_service
        log = service.random_log(rng, n_subjects, n_events, n_messages)
        order = service.universal_order(log)
        if clock_subject is None:
            clock_subject = max(log.subjects, key=lambda s: len(log.subjects[s]))
        distances = service.relational_distances(log, order, clock_subject)

        violacoes = service.order_violations(log, order)
        matriz = distances.matrix
        antissimetria = bool(np.array_equal(matriz, -matriz.T))
        tique_ok = self._minimum_tick(log, distances, clock_subject)
        ciclos_nao_nulos = self.nonzero_cycle_sums(rng, matriz)
        copresenca_ok = all(distances.distance(a, b) == 0 for a, b in distances.copresent)

        report = ExperimentReport(
            experiment="ordering-demo",
            params={
                "n_subjects": n_subjects,
                "n_events": n_events,
                "n_messages": n_messages,
                "clock_subject": clock_subject,
                "seed": seed,
            },
            scalars={
                "n_classes": float(len(order)),
                "n_events": float(len(distances.events)),
                "n_messages": float(len(log.messages)),
                "n_copresent": float(len(distances.copresent)),
            },
        )
        report.assert_at_most("violacoes_de_ordem", float(len(violacoes)), 0.0)
        report.assert_true("antissimetria", antissimetria)
        report.assert_true("tique_minimo", tique_ok)
        report.assert_at_most("somas_de_ciclo_nao_nulas", float(ciclos_nao_nulos), 0.0)
        report.assert_true("copresenca_zero", copresenca_ok)

        report.add_series(
            "ordem",
            classe=[order.class_of[e] for e in distances.events],
            evento=[str(e) for e in distances.events],
        )
        report.add_series(
            "relogio",
            evento=[str(e) for e in distances.events],
            tau=[int(v) for v in distances.tau],
        )
        report.artifacts.update(log=log, order=order, distances=distances)
        logger.info(f"Experimento ordering-demo concluído: {len(order)} classes")
        return report

    @staticmethod
    def nonzero_cycle_sums(
        rng: np.random.Generator, matriz: np.ndarray, amostras: int = 200
    ) -> int:
        """Conta ciclos aleatórios de comprimento 3 a 6 com soma não nula"""
        n = matriz.shape[0]
        if n < 3:
            return 0
        nao_nulos = 0
        for comprimento in range(3, 7):
            for _ in range(amostras):
                ciclo = rng.integers(n, size=comprimento)
                soma = sum(
                    int(matriz[ciclo[k], ciclo[(k + 1) % comprimento]])
                    for k in range(comprimento)
                )
                nao_nulos += soma != 0
        return nao_nulos

    @staticmethod
    def _minimum_tick(log, distances, clock_subject: str) -> bool:
        eventos = log.subjects[clock_subject]
        for anterior, atual in zip(eventos, eventos[1:]):
            esperado = 0 if log.group_of(anterior.id) == log.group_of(atual.id) else 1
            if distances.distance(anterior.id, atual.id) != esperado:
                return False
        return True

    # Auxiliares

    def _two_slit_field(
        self, grid: SpacetimeGrid, t1: float, t2: float, slit_sd: float, carrier: float
    ) -> WaveField:
        """Ψ = g(t − t1) + g(t − t2) com a portadora e^{−i·carrier·t} comum"""
        centros = [t1] if t1 == t2 else [t1, t2]
        total = None
        for centro in centros:
            lobo = self.field_service.gaussian_packet(
                grid, t0=centro, sd_x0=None, sd_t0=slit_sd, e0_freq=carrier
            )
            total = lobo.amplitudes if total is None else total + lobo.amplitudes
        field, _ = self.field_service.normalize(WaveField(grid=grid, amplitudes=total))
        return field

    def _energy_spectrum(self, field: WaveField) -> Tuple[np.ndarray, np.ndarray]:
        """Densidade espectral em ε = ℏt̃, somada sobre r̃ e ordenada"""
        recip = self.lattice_service.forward_transform(field)
        densidade = (
            np.sum(np.abs(recip.amplitudes) ** 2, axis=(0, 1))
            * recip.frequencies.dr_tilde
        )
        energia = field.grid.hbar * np.fft.fftshift(recip.frequencies.t_tilde)
        return energia, np.fft.fftshift(densidade)

    @staticmethod
    def _weighted_sd(x: np.ndarray, w: np.ndarray) -> float:
        total = float(np.sum(w))
        media = float(np.sum(w * x)) / total
        return math.sqrt(float(np.sum(w * (x - media) ** 2)) / total)

    def _sigma_spectrum(
        self, recip: ReciprocalField, b: float
    ) -> Tuple[np.ndarray, np.ndarray]:
        r_tilde, t_tilde = recip.frequencies.mesh()
        sigma = self.propagator_service.sigma_tilde(r_tilde, t_tilde, b, recip.grid.c)
        pesos = recip.weights
        return (pesos / np.sum(pesos)).ravel(), sigma.ravel()

    @staticmethod
    def _survival(pesos: np.ndarray, sigma_tilde: np.ndarray, sigma: float) -> float:
        return float(abs(np.sum(pesos * np.exp(-1j * sigma_tilde * sigma))))

    def _decay_point(
        self, pesos: np.ndarray, sigma_tilde: np.ndarray, desvio: float
    ) -> float:
        """Primeiro σ com A(σ) < 1/√e, por duplicação e bisseção"""
        if desvio <= 0:
            return math.inf
        alvo = math.exp(-0.5)
        baixo, alto = 0.0, 0.5 / desvio
        for _ in range(60):
            if self._survival(pesos, sigma_tilde, alto) < alvo:
                break
            baixo, alto = alto, 2 * alto
        else:
            return math.inf
        for _ in range(100):
            meio = (baixo + alto) / 2
            if self._survival(pesos, sigma_tilde, meio) < alvo:
                alto = meio
            else:
                baixo = meio
        return (baixo + alto) / 2

    def _third_relation(
        self,
        report: ExperimentReport,
        recip: ReciprocalField,
        b: float,
        desvio: float,
        decaimento: float,
    ) -> None:
        """Δσ·Δε₀² ≥ c²ℏ²/(2|b|), com Δσ no ponto 1/√e e Δε₀² = c²ℏ²Δσ̃/|b|"""
        c, hbar = recip.grid.c, recip.grid.hbar
        mean_e = hbar * float(
            np.sum(recip.weights * recip.frequencies.mesh()[1]) / np.sum(recip.weights)
        )
        if mean_e <= 0 or desvio <= 0 or not math.isfinite(decaimento):
            logger.warning("Relação σ-ε₀² não verificada: espectro estacionário")
            return
        delta_e0sq = c**2 * hbar**2 * desvio / abs(b)
        produto = decaimento * delta_e0sq
        limite = c**2 * hbar**2 / (2 * abs(b))
        report.scalars.update(
            {
                "delta_e0sq": delta_e0sq,
                "third_product": produto,
                "third_bound": limite,
                "mean_e": mean_e,
            }
        )
        report.assert_at_least("relacao_sigma_e0sq", produto, limite)
