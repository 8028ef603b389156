from pathlib import Path
from typing import List

from loguru import logger

from app.core.config.settings import settings
from app.repository.base_repository import BaseRepository
from app.schema.report_schema import ExperimentReport

SUMMARY_FILE = "summary.json"


class ReportRepository(BaseRepository):
    """Um CSV por série e o resumo JSON versionado"""

    def save(self, report: ExperimentReport, directory: Path) -> List[Path]:
        self.ensure_dir(directory)
        gravados = []
        for serie in report.series:
            colunas = list(serie.columns)
            linhas = [
                [self._cell(serie.columns[c], i) for c in colunas]
                for i in range(serie.n_rows)
            ]
            gravados.append(
                self.write_csv(directory / f"{serie.name}.csv", colunas, linhas)
            )
        gravados.append(
            self.write_json(
                directory / SUMMARY_FILE, report.summary(settings.SCHEMA_VERSION)
            )
        )
        logger.debug(f"{len(gravados)} arquivos gravados em {directory}")
        return gravados

    def load_summary(self, directory: Path) -> dict:
        return self.read_json(directory / SUMMARY_FILE)

    @staticmethod
    def _cell(coluna: list, i: int):
        valor = coluna[i] if i < len(coluna) else None
        return "" if valor is None else valor
