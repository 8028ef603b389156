from datetime import datetime
from typing import Any, Dict, List, Optional

from loguru import logger


class BaseSimulationException(Exception):
    """Exceção base para todas as exceções do simulador"""

    exit_code: int = 2

    def __init__(self, mensagem: str) -> None:
        self.mensagem = mensagem
        self.detail: Dict[str, Any] = {
            "status": "erro",
            "mensagem": mensagem,
            "data_hora": datetime.now().isoformat(),
            "codigo": type(self).__name__,
        }
        super().__init__(mensagem)

    def __str__(self) -> str:
        """Retorna a mensagem de erro formatada"""
        return self.mensagem


def cli_exception_handler(exc: BaseSimulationException) -> int:
    """Handler para exceções do simulador, devolve o código de saída"""
    logger.error(f"{exc.detail['codigo']}: {exc.detail['mensagem']}")
    return exc.exit_code


# Rede espaço-temporal e campos


class InvalidGrid(BaseSimulationException):
    """Exceção para grades com dimensões inválidas"""

    def __init__(self, mensagem: str = "Grade inválida") -> None:
        super().__init__(mensagem)


class NonFiniteField(BaseSimulationException):
    """Exceção para campos com amplitudes não finitas"""

    def __init__(self, mensagem: str = "Campo com amplitudes não finitas") -> None:
        super().__init__(mensagem)


class PacketClipped(BaseSimulationException):
    """Exceção para pacotes que tocam a borda do domínio"""

    def __init__(self, mensagem: str = "Pacote encosta na borda do domínio") -> None:
        super().__init__(mensagem)


class UnderResolved(BaseSimulationException):
    """Exceção para estruturas menores que a resolução da grade"""

    def __init__(self, mensagem: str = "Resolução insuficiente") -> None:
        super().__init__(mensagem)


class ZeroNorm(BaseSimulationException):
    """Exceção para campos de norma nula"""

    def __init__(self, mensagem: str = "Campo com norma nula") -> None:
        super().__init__(mensagem)


class NotNormalized(BaseSimulationException):
    """Exceção para campos não normalizados"""

    def __init__(self, mensagem: str = "Campo não normalizado") -> None:
        super().__init__(mensagem)


class BadBinning(BaseSimulationException):
    """Exceção para agrupamentos que não dividem a grade"""

    def __init__(self, mensagem: str = "Agrupamento incompatível com a grade") -> None:
        super().__init__(mensagem)


# Propagador


class NonPositiveEnergy(BaseSimulationException):
    """Exceção para campos sem energia média positiva"""

    def __init__(self, mensagem: str = "Energia média não positiva") -> None:
        super().__init__(mensagem)


class DomainExhausted(BaseSimulationException):
    """Exceção para pacotes que derivam para fora do domínio"""

    def __init__(self, mensagem: str = "Pacote saiu do domínio") -> None:
        super().__init__(mensagem)


class EmptyProjection(BaseSimulationException):
    """Exceção para projeções que removem todos os modos"""

    def __init__(self, mensagem: str = "Projeção removeu todos os modos") -> None:
        super().__init__(mensagem)


# Dirac


class UnsupportedDimension(BaseSimulationException):
    """Exceção para dimensões de spinor não suportadas"""

    def __init__(self, mensagem: str = "Dimensão de spinor não suportada") -> None:
        super().__init__(mensagem)


class NonPositiveRestEnergy(BaseSimulationException):
    """Exceção para energia de repouso não positiva"""

    def __init__(self, mensagem: str = "Energia de repouso deve ser positiva") -> None:
        super().__init__(mensagem)


class ZeroSpinor(BaseSimulationException):
    """Exceção para spinor nulo"""

    def __init__(self, mensagem: str = "Spinor nulo") -> None:
        super().__init__(mensagem)


# Ordenação de eventos


class UnknownEvent(BaseSimulationException):
    """Exceção para eventos inexistentes no registro"""

    def __init__(self, mensagem: str = "Evento não encontrado") -> None:
        super().__init__(mensagem)


class CrossSubjectSimultaneity(BaseSimulationException):
    """Exceção para simultaneidade declarada entre sujeitos diferentes"""

    def __init__(
        self, mensagem: str = "Simultaneidade só pode ser declarada no mesmo sujeito"
    ) -> None:
        super().__init__(mensagem)


class AdjacencyViolation(BaseSimulationException):
    """Exceção para eventos simultâneos não adjacentes"""

    def __init__(self, mensagem: str = "Eventos não são adjacentes") -> None:
        super().__init__(mensagem)


class SameSubjectMessage(BaseSimulationException):
    """Exceção para mensagens dentro do mesmo sujeito"""

    def __init__(
        self, mensagem: str = "Mensagem no mesmo sujeito, use a ordem local"
    ) -> None:
        super().__init__(mensagem)


class InconsistentLog(BaseSimulationException):
    """Exceção para registros com restrições cíclicas"""

    def __init__(
        self, mensagem: str = "Registro inconsistente", witness: Optional[List[Any]] = None
    ) -> None:
        self.witness = witness or []
        super().__init__(mensagem)


class NoClock(BaseSimulationException):
    """Exceção para relógio ausente"""

    def __init__(self, mensagem: str = "Sujeito relógio sem eventos") -> None:
        super().__init__(mensagem)


# Configuração e artefatos


class ConfigSyntax(BaseSimulationException):
    """Exceção para erros de sintaxe no arquivo de configuração"""

    def __init__(
        self, mensagem: str, line: Optional[int] = None, column: Optional[int] = None
    ) -> None:
        self.line = line
        self.column = column
        super().__init__(mensagem)


class ConfigInvalid(BaseSimulationException):
    """Exceção para configurações semanticamente inválidas"""

    def __init__(self, errors: List[str]) -> None:
        self.errors = errors
        super().__init__("Configuração inválida: " + "; ".join(errors))


class InvalidParameter(BaseSimulationException):
    """Exceção para parâmetros fora do domínio permitido"""

    def __init__(self, mensagem: str = "Parâmetro inválido") -> None:
        super().__init__(mensagem)


class OutputUnwritable(BaseSimulationException):
    """Exceção para diretórios de saída sem permissão de escrita"""

    def __init__(self, mensagem: str = "Não foi possível gravar os artefatos") -> None:
        super().__init__(mensagem)
