import csv
import json
from pathlib import Path
from typing import Any, Iterable, List, Sequence

from loguru import logger

from app.core.commons.exceptions import OutputUnwritable
from app.util.json_utils import serialize_to_json


class BaseRepository:
    """Persistência em arquivos: CSV (RFC-4180, cabeçalho obrigatório) e JSON"""

    def ensure_dir(self, directory: Path) -> Path:
        """Cria o diretório de saída, se necessário"""
        try:
            directory.mkdir(parents=True, exist_ok=True)
            return directory
        except OSError as e:
            logger.error(f"Erro ao criar diretório {directory}: {str(e)}")
            raise OutputUnwritable(f"Não foi possível criar {directory}: {e.strerror}")

    def write_csv(
        self, path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> Path:
        try:
            with path.open("w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f, lineterminator="\r\n")
                writer.writerow(header)
                writer.writerows(rows)
            return path
        except OSError as e:
            logger.error(f"Erro ao gravar {path}: {str(e)}")
            raise OutputUnwritable(f"Não foi possível gravar {path}: {e.strerror}")

    def read_csv(self, path: Path) -> List[dict]:
        try:
            with path.open(newline="", encoding="utf-8") as f:
                return list(csv.DictReader(f))
        except OSError as e:
            logger.error(f"Erro ao ler {path}: {str(e)}")
            raise

    def write_json(self, path: Path, obj: Any) -> Path:
        try:
            path.write_text(serialize_to_json(obj) + "\n", encoding="utf-8")
            return path
        except OSError as e:
            logger.error(f"Erro ao gravar {path}: {str(e)}")
            raise OutputUnwritable(f"Não foi possível gravar {path}: {e.strerror}")

    def read_json(self, path: Path) -> Any:
        with path.open(encoding="utf-8") as f:
            return json.load(f)
