from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
from loguru import logger

from app.core.commons.exceptions import BaseSimulationException, cli_exception_handler
from app.core.config.settings import settings
from app.model.grid_model import SpacetimeGrid
from app.repository.event_log_repository import EventLogRepository
from app.repository.field_repository import FieldRepository
from app.repository.report_repository import ReportRepository
from app.schema.config_schema import ExperimentId, RunConfig
from app.schema.report_schema import ExperimentReport
from app.services.experiment_service import ExperimentService
from app.services.field_service import FieldService
from app.services.invariant_service import InvariantService

EXIT_OK = 0
EXIT_ASSERTION_FAILED = 1


class RunnerService:
    """Executa os experimentos de uma configuração e grava os artefatos"""

    def __init__(
        self,
        experiment_service: ExperimentService,
        invariant_service: InvariantService,
        field_service: FieldService,
        report_repository: ReportRepository,
        field_repository: FieldRepository,
        event_log_repository: EventLogRepository,
    ):
        self.experiment_service = experiment_service
        self.invariant_service = invariant_service
        self.field_service = field_service
        self.report_repository = report_repository
        self.field_repository = field_repository
        self.event_log_repository = event_log_repository

    def run(self, config: RunConfig, out: Optional[Path] = None) -> int:
        """0 se todas as verificações passaram, 1 se alguma falhou, 2 em erro"""
        saida = Path(out or config.output_dir or settings.OUTPUT_DIR)
        seed = config.seed if config.seed is not None else 0
        try:
            grids = {exp: self._grid(config, exp) for exp in config.experiment}
            reports: List[ExperimentReport] = []
            for exp in config.experiment:
                report = self.execute(config, exp, grids[exp], seed)
                self.persist(report, saida / exp.value)
                reports.append(report)
        except BaseSimulationException as e:
            return cli_exception_handler(e)

        for report in reports:
            falhas = [a.name for a in report.assertions if not a.passed]
            if falhas:
                logger.warning(f"{report.experiment}: falhas em {', '.join(falhas)}")
            else:
                logger.info(f"{report.experiment}: {len(report.assertions)} verificações ok")
        return EXIT_OK if all(r.passed for r in reports) else EXIT_ASSERTION_FAILED

    def execute(
        self,
        config: RunConfig,
        experiment: ExperimentId,
        grid: Optional[SpacetimeGrid],
        seed: int,
    ) -> ExperimentReport:
        service = self.experiment_service
        p = config.section(experiment)

        if experiment == ExperimentId.PACKET:
            return service.packet_report(grid, **p.model_dump(exclude={"grid"}))
        if experiment == ExperimentId.DOUBLE_SLIT:
            return service.temporal_double_slit(
                grid, p.t1, p.t2, p.slit_sd, p.carrier_e
            )
        if experiment == ExperimentId.DELAY_SCAN:
            return service.delay_scan(
                grid, p.carrier_e, p.slit_sd, p.detect_offset, p.delays()
            )
        if experiment == ExperimentId.EHRENFEST:
            packet = p.model_dump(exclude={"grid", "sigma_span", "n_samples"})
            return service.ehrenfest_run(grid, packet, p.sigma_span, p.n_samples)
        if experiment == ExperimentId.SURVIVAL:
            field = self.field_service.gaussian_packet(
                grid, sd_x0=p.sd_x, sd_t0=p.sd_t, p0=p.p0, e0_freq=p.carrier_e
            )
            sigmas = np.linspace(0.0, p.sigma_max, p.n_sigma).tolist()
            return service.survival_amplitude(field, sigmas)
        if experiment == ExperimentId.UNCERTAINTY:
            field = self.field_service.gaussian_packet(
                grid,
                x0=p.x0,
                t0=p.t0,
                sd_x0=p.sd_x,
                sd_t0=p.sd_t,
                p0=p.p0,
                e0_freq=p.e0_freq,
            )
            report = service.uncertainty_report(field)
            if p.sweep:
                service.uncertainty_sweep(
                    report, grid, p.sweep, np.random.default_rng(seed)
                )
            return report
        if experiment == ExperimentId.ORDERING_DEMO:
            return service.ordering_demo(
                p.n_subjects, p.n_events, p.n_messages, p.clock_subject, seed
            )
        if experiment == ExperimentId.LORENTZ:
            return service.lorentz_report(grid, p.rapidities, p.b, p.p, p.e0)
        return self.invariant_service.run_suite(quick=p.quick, seed=seed)

    def persist(self, report: ExperimentReport, directory: Path) -> None:
        """Séries, resumo e artefatos brutos no diretório do experimento"""
        self.report_repository.save(report, directory)
        artefatos: Dict = report.artifacts
        if "field" in artefatos:
            self.field_repository.save(artefatos["field"], directory)
        if "log" in artefatos:
            self.event_log_repository.save_log(artefatos["log"], directory / "events.jsonl")
        if "order" in artefatos:
            self.event_log_repository.save_order(artefatos["order"], directory / "order.csv")
        if "distances" in artefatos:
            self.event_log_repository.save_distances(
                artefatos["distances"], directory / "distances.csv"
            )
        logger.info(f"Artefatos de {report.experiment} gravados em {directory}")

    def _grid(self, config: RunConfig, experiment: ExperimentId) -> Optional[SpacetimeGrid]:
        params = config.grid_for(experiment)
        if params is None:
            return None
        return self.experiment_service.grid_from(params)
