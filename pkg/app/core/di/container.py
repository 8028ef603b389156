from dependency_injector import containers, providers

from app.repository.event_log_repository import EventLogRepository
from app.repository.field_repository import FieldRepository
from app.repository.report_repository import ReportRepository
from app.services.config_service import ConfigService
from app.services.dirac_service import DiracService
from app.services.experiment_service import ExperimentService
from app.services.field_service import FieldService
from app.services.invariant_service import InvariantService
from app.services.lattice_service import LatticeService
from app.services.ordering_service import OrderingService
from app.services.propagator_service import PropagatorService
from app.services.runner_service import RunnerService


class Container(containers.DeclarativeContainer):
    """Container de injeção de dependência"""

    wiring_config = containers.WiringConfiguration(
        modules=[
            "app.cli.run_cli",
            "app.cli.check_cli",
        ],
        packages=["app.cli"],
    )

    # Repositories
    report_repository = providers.Factory(ReportRepository)
    field_repository = providers.Factory(FieldRepository)
    event_log_repository = providers.Factory(EventLogRepository)

    # Services
    lattice_service = providers.Singleton(LatticeService)
    field_service = providers.Factory(FieldService, lattice_service=lattice_service)
    propagator_service = providers.Factory(
        PropagatorService, lattice_service=lattice_service, field_service=field_service
    )
    dirac_service = providers.Factory(
        DiracService, lattice_service=lattice_service, field_service=field_service
    )
    ordering_service = providers.Factory(OrderingService)
    config_service = providers.Factory(ConfigService)

    experiment_service = providers.Factory(
        ExperimentService,
        lattice_service=lattice_service,
        field_service=field_service,
        propagator_service=propagator_service,
        dirac_service=dirac_service,
        ordering_service=ordering_service,
    )

    invariant_service = providers.Factory(
        InvariantService,
        lattice_service=lattice_service,
        field_service=field_service,
        propagator_service=propagator_service,
        dirac_service=dirac_service,
        ordering_service=ordering_service,
        experiment_service=experiment_service,
    )

    runner_service = providers.Factory(
        RunnerService,
        experiment_service=experiment_service,
        invariant_service=invariant_service,
        field_service=field_service,
        report_repository=report_repository,
        field_repository=field_repository,
        event_log_repository=event_log_repository,
    )
