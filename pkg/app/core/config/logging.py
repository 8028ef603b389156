import sys

from loguru import logger

from app.core.config.settings import settings

# Formato
LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} - {name} - {level} - {message}"


def setup_logging(level: str | None = None) -> None:
    """Configura o logger para uso no simulador"""
    logger.remove()

    # Handler para console (stderr, para não misturar com a saída dos comandos)
    logger.add(sys.stderr, level=level or settings.LOG_LEVEL, format=LOG_FORMAT)

    # Handler para arquivo
    if settings.LOG_FILE:
        logger.add(
            settings.LOG_FILE,
            level=level or settings.LOG_LEVEL,
            format=LOG_FORMAT,
            rotation="10 MB",
            retention=5,
            encoding="utf-8",
        )
