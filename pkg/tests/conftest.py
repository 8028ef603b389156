import math
import os

import numpy as np
import pytest

# Set test environment before any imports
os.environ["ENV"] = "test"
os.environ["LOG_FILE"] = ""
os.environ["LOG_LEVEL"] = "WARNING"

from app.core.config.settings import settings  # noqa: E402
from app.core.di.container import Container  # noqa: E402
from app.model.grid_model import SpacetimeGrid  # noqa: E402
from app.repository.event_log_repository import EventLogRepository  # noqa: E402
from app.repository.field_repository import FieldRepository  # noqa: E402
from app.repository.report_repository import ReportRepository  # noqa: E402
from app.services.config_service import ConfigService  # noqa: E402
from app.services.dirac_service import DiracService  # noqa: E402
from app.services.experiment_service import ExperimentService  # noqa: E402
from app.services.field_service import FieldService  # noqa: E402
from app.services.invariant_service import InvariantService  # noqa: E402
from app.services.lattice_service import LatticeService  # noqa: E402
from app.services.ordering_service import OrderingService  # noqa: E402
from app.services.propagator_service import PropagatorService  # noqa: E402
from app.services.runner_service import RunnerService  # noqa: E402

assert settings.ENV == "test"


@pytest.fixture(scope="session")
def container() -> Container:
    return Container()


@pytest.fixture
def lattice_service() -> LatticeService:
    return LatticeService()


@pytest.fixture
def field_service(lattice_service) -> FieldService:
    return FieldService(lattice_service=lattice_service)


@pytest.fixture
def propagator_service(lattice_service, field_service) -> PropagatorService:
    return PropagatorService(lattice_service=lattice_service, field_service=field_service)


@pytest.fixture
def dirac_service(lattice_service, field_service) -> DiracService:
    return DiracService(lattice_service=lattice_service, field_service=field_service)


@pytest.fixture
def ordering_service() -> OrderingService:
    return OrderingService()


@pytest.fixture
def config_service() -> ConfigService:
    return ConfigService()


@pytest.fixture
def experiment_service(
    lattice_service, field_service, propagator_service, dirac_service, ordering_service
) -> ExperimentService:
    return ExperimentService(
        lattice_service=lattice_service,
        field_service=field_service,
        propagator_service=propagator_service,
        dirac_service=dirac_service,
        ordering_service=ordering_service,
    )


@pytest.fixture
def invariant_service(
    lattice_service,
    field_service,
    propagator_service,
    dirac_service,
    ordering_service,
    experiment_service,
) -> InvariantService:
    return InvariantService(
        lattice_service=lattice_service,
        field_service=field_service,
        propagator_service=propagator_service,
        dirac_service=dirac_service,
        ordering_service=ordering_service,
        experiment_service=experiment_service,
    )


@pytest.fixture
def report_repository() -> ReportRepository:
    return ReportRepository()


@pytest.fixture
def field_repository() -> FieldRepository:
    return FieldRepository()


@pytest.fixture
def event_log_repository() -> EventLogRepository:
    return EventLogRepository()


@pytest.fixture
def runner_service(
    experiment_service,
    invariant_service,
    field_service,
    report_repository,
    field_repository,
    event_log_repository,
) -> RunnerService:
    return RunnerService(
        experiment_service=experiment_service,
        invariant_service=invariant_service,
        field_service=field_service,
        report_repository=report_repository,
        field_repository=field_repository,
        event_log_repository=event_log_repository,
    )


@pytest.fixture
def grid(lattice_service) -> SpacetimeGrid:
    """Grade quadrada 128×128 com L = 32"""
    return lattice_service.make_grid(n_x=128, n_t=128, L_x=32.0, L_t=32.0)


@pytest.fixture
def shell_grid(lattice_service) -> SpacetimeGrid:
    """L = 8π e n = 64: dr̃ = dt̃ = 0.25, com modos exatos na camada ε₀ = 1"""
    return lattice_service.make_grid(n_x=64, n_t=64, L_x=8 * math.pi, L_t=8 * math.pi)


@pytest.fixture
def packet(field_service, grid):
    """Pacote gaussiano interior com portadora (p, ε) = (0.5, 1.5)"""
    return field_service.gaussian_packet(
        grid, x0=1.0, t0=-1.0, sd_x0=2.0, sd_t0=2.0, p0=0.5, e0_freq=1.5
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)
