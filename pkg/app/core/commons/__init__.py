from app.core.commons.exceptions import (
    BaseSimulationException,
    cli_exception_handler,
    InvalidGrid,
    NonFiniteField,
    PacketClipped,
    UnderResolved,
    ZeroNorm,
    NotNormalized,
    BadBinning,
    NonPositiveEnergy,
    DomainExhausted,
    EmptyProjection,
    UnsupportedDimension,
    NonPositiveRestEnergy,
    ZeroSpinor,
    UnknownEvent,
    CrossSubjectSimultaneity,
    AdjacencyViolation,
    SameSubjectMessage,
    InconsistentLog,
    NoClock,
    ConfigSyntax,
    ConfigInvalid,
    InvalidParameter,
    OutputUnwritable,
)

__all__ = [
    "BaseSimulationException",
    "cli_exception_handler",
    "InvalidGrid",
    "NonFiniteField",
    "PacketClipped",
    "UnderResolved",
    "ZeroNorm",
    "NotNormalized",
    "BadBinning",
    "NonPositiveEnergy",
    "DomainExhausted",
    "EmptyProjection",
    "UnsupportedDimension",
    "NonPositiveRestEnergy",
    "ZeroSpinor",
    "UnknownEvent",
    "CrossSubjectSimultaneity",
    "AdjacencyViolation",
    "SameSubjectMessage",
    "InconsistentLog",
    "NoClock",
    "ConfigSyntax",
    "ConfigInvalid",
    "InvalidParameter",
    "OutputUnwritable",
]
