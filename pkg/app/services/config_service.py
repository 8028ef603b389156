from pathlib import Path
from typing import Any, List, Union

import yaml
from loguru import logger
from pydantic import ValidationError

from app.core.commons.exceptions import ConfigInvalid, ConfigSyntax
from app.schema.config_schema import RunConfig


class ConfigService:
    """Serviço responsável pela leitura e validação da configuração de execução"""

    def parse_config(self, source: Union[Path, str]) -> RunConfig:
        """Lê um arquivo (Path) ou texto YAML (str) e valida todos os campos"""
        if isinstance(source, Path):
            try:
                texto = source.read_text(encoding="utf-8")
            except OSError as e:
                logger.error(f"Erro ao ler configuração {source}: {e}")
                raise ConfigInvalid([f"{source}: {e.strerror or e}"])
        else:
            texto = source

        documento = self._load_yaml(texto)
        try:
            config = RunConfig.model_validate(documento)
        except ValidationError as e:
            erros = self.format_errors(e)
            logger.debug(f"Configuração inválida: {erros}")
            raise ConfigInvalid(erros)
        logger.info(
            "Configuração carregada: " + ", ".join(e.value for e in config.experiment)
        )
        return config

    @staticmethod
    def format_errors(error: ValidationError) -> List[str]:
        """Um `caminho.da.chave: mensagem` por erro, na ordem do pydantic"""
        linhas = []
        for item in error.errors():
            caminho = ".".join(str(parte) for parte in item["loc"]) or "<raiz>"
            mensagem = item["msg"]
            if item["type"] == "extra_forbidden":
                mensagem = "unknown key"
            linhas.append(f"{caminho}: {mensagem}")
        return linhas

    @staticmethod
    def _load_yaml(texto: str) -> Any:
        try:
            documento = yaml.safe_load(texto)
        except yaml.MarkedYAMLError as e:
            marca = e.problem_mark
            linha = marca.line + 1 if marca is not None else None
            coluna = marca.column + 1 if marca is not None else None
            raise ConfigSyntax(
                f"Erro de sintaxe na linha {linha}, coluna {coluna}: {e.problem}",
                line=linha,
                column=coluna,
            )
        except yaml.YAMLError as e:
            raise ConfigSyntax(f"Erro de sintaxe: {e}")

        if documento is None:
            return {}
        if not isinstance(documento, dict):
            raise ConfigInvalid(["<raiz>: expected a mapping of sections"])
        return documento
