from pathlib import Path
from typing import Optional

import typer
from dependency_injector.wiring import Provide, inject
from loguru import logger

from app.core.di.container import Container
from app.schema.config_schema import CheckParams, ExperimentId, RunConfig
from app.services.runner_service import RunnerService

EXIT_ERROR = 2


def check(
    quick: bool = typer.Option(
        False, "--quick", help="Grades 64×64 e menos amostras aleatórias"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Diretório de saída"),
    seed: int = typer.Option(0, "--seed", min=0, max=2**64 - 1),
) -> None:
    """Roda a suíte completa de invariantes"""
    raise typer.Exit(execute_check(quick, out, seed))


@inject
def execute_check(
    quick: bool,
    out: Optional[Path],
    seed: int,
    runner_service: RunnerService = Provide[Container.runner_service],
) -> int:
    config = RunConfig(
        experiment=[ExperimentId.CHECK], check=CheckParams(quick=quick), seed=seed
    )
    try:
        return runner_service.run(config, out)
    except Exception as e:
        logger.exception(f"Erro inesperado: {e}")
        return EXIT_ERROR
