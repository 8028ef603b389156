from app.model.grid_model import SpacetimeGrid, FrequencyGrid
from app.model.field_model import WaveField, ReciprocalField, BinnedAmplitudes
from app.model.dirac_model import GammaSet, Spinor
from app.model.ordering_model import (
    EventId,
    Event,
    EventLog,
    UniversalOrder,
    DistanceMatrix,
)

__all__ = [
    "SpacetimeGrid",
    "FrequencyGrid",
    "WaveField",
    "ReciprocalField",
    "BinnedAmplitudes",
    "GammaSet",
    "Spinor",
    "EventId",
    "Event",
    "EventLog",
    "UniversalOrder",
    "DistanceMatrix",
]
