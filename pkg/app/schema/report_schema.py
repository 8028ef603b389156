import math
from typing import Any, Dict, List, Optional, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

Cell = Union[int, float, str, None]


class Assertion(BaseModel):
    """Verificação de um escalar derivado contra um limite"""

    name: str
    value: Optional[float] = None
    bound: Optional[float] = None
    tolerance: Optional[float] = None
    passed: bool = Field(..., alias="pass")

    model_config = ConfigDict(populate_by_name=True)


class Series(BaseModel):
    """Série tabular com colunas nomeadas, gravada como um CSV"""

    name: str
    columns: Dict[str, List[Cell]]

    @property
    def n_rows(self) -> int:
        return max((len(v) for v in self.columns.values()), default=0)


class ExperimentReport(BaseModel):
    """Resultado de um experimento: parâmetros, séries, escalares e verificações"""

    experiment: str
    params: Dict[str, Any] = Field(default_factory=dict)
    series: List[Series] = Field(default_factory=list)
    scalars: Dict[str, Optional[float]] = Field(default_factory=dict)
    assertions: List[Assertion] = Field(default_factory=list)
    artifacts: Dict[str, Any] = Field(default_factory=dict, exclude=True)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def add_series(self, name: str, **columns: List[Cell]) -> None:
        self.series.append(Series(name=name, columns=dict(columns)))

    def get_series(self, name: str) -> Series:
        return next(s for s in self.series if s.name == name)

    def get_assertion(self, name: str) -> Assertion:
        return next(a for a in self.assertions if a.name == name)

    def _add(self, name, value, bound, tolerance, passed) -> Assertion:
        assertion = Assertion(
            name=name,
            value=None if value is None else float(value),
            bound=None if bound is None else float(bound),
            tolerance=None if tolerance is None else float(tolerance),
            passed=bool(passed),
        )
        if not assertion.passed:
            logger.warning(
                f"{self.experiment}: verificação '{name}' falhou "
                f"(valor={value}, limite={bound}, tolerância={tolerance})"
            )
        self.assertions.append(assertion)
        return assertion

    def assert_close(
        self,
        name: str,
        value: float,
        expected: float,
        tolerance: float,
        relative: bool = False,
    ) -> Assertion:
        """|value − expected| ≤ tolerance (relativa a |expected| se pedido)"""
        limite = tolerance * abs(expected) if relative else tolerance
        ok = math.isfinite(value) and abs(value - expected) <= limite
        return self._add(name, value, expected, tolerance, ok)

    def assert_at_least(
        self, name: str, value: float, bound: float, tolerance: float = 0.0
    ) -> Assertion:
        ok = not math.isnan(value) and value >= bound - tolerance
        return self._add(name, value, bound, tolerance, ok)

    def assert_at_most(
        self, name: str, value: float, bound: float, tolerance: float = 0.0
    ) -> Assertion:
        ok = not math.isnan(value) and value <= bound + tolerance
        return self._add(name, value, bound, tolerance, ok)

    def assert_true(self, name: str, condition: bool, value: Optional[float] = None):
        return self._add(name, value, None, None, condition)

    def summary(self, schema_version: int) -> Dict[str, Any]:
        """Resumo JSON com chaves estáveis"""
        return {
            "schema_version": schema_version,
            "experiment": self.experiment,
            "params": self.params,
            "scalars": self.scalars,
            "assertions": [a.model_dump(by_alias=True) for a in self.assertions],
        }
