from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configurações do simulador usando Pydantic"""

    # Environment
    ENV: str = "dev"
    PROJECT_NAME: str = "Sigma Dinâmica"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE: str = "sigma-dinamica.log"

    # Artefatos
    OUTPUT_DIR: str = "resultados"
    SCHEMA_VERSION: int = 1

    # Tolerâncias numéricas
    NORM_TOLERANCE: float = 1e-9
    CLEARANCE_SDS: float = 4.0
    MIN_SAMPLES_PER_SD: float = 2.0
    PEAK_PROMINENCE: float = 0.1

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


# Instância global das configurações
settings = Settings()
