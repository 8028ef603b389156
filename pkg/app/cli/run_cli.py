from pathlib import Path
from typing import Optional

import typer
from dependency_injector.wiring import Provide, inject
from loguru import logger

from app.core.commons.exceptions import BaseSimulationException, cli_exception_handler
from app.core.di.container import Container
from app.services.config_service import ConfigService
from app.services.runner_service import RunnerService

EXIT_ERROR = 2


def run(
    config: Path = typer.Option(
        ..., "--config", "-c", help="Arquivo YAML com a configuração da execução"
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Diretório de saída (sobrepõe output_dir)"
    ),
    seed: Optional[int] = typer.Option(
        None, "--seed", min=0, max=2**64 - 1, help="Semente das varreduras aleatórias"
    ),
) -> None:
    """Executa os experimentos da configuração e grava CSV + JSON"""
    raise typer.Exit(execute_run(config, out, seed))


@inject
def execute_run(
    config_path: Path,
    out: Optional[Path],
    seed: Optional[int],
    config_service: ConfigService = Provide[Container.config_service],
    runner_service: RunnerService = Provide[Container.runner_service],
) -> int:
    try:
        config = config_service.parse_config(config_path)
        if seed is not None:
            config = config.model_copy(update={"seed": seed})
        return runner_service.run(config, out)
    except BaseSimulationException as e:
        return cli_exception_handler(e)
    except Exception as e:
        logger.exception(f"Erro inesperado: {e}")
        return EXIT_ERROR
