import typer

from app.cli import check_cli, run_cli
from app.core.config.logging import setup_logging
from app.core.config.settings import settings
from app.core.di.container import Container


def create_app() -> typer.Typer:
    # Create container
    container = Container()

    # Wire the container to the command modules
    container.wire(packages=["app.cli"])

    app = typer.Typer(
        name="sigma-dinamica",
        help=f"{settings.PROJECT_NAME}: evolução em σ de pacotes de onda e ordenação de eventos",
        add_completion=False,
        no_args_is_help=True,
    )

    # Setup logging
    setup_logging()

    # Include commands
    app.command("run")(run_cli.run)
    app.command("check")(check_cli.check)

    return app


app = create_app()
