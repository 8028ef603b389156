from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np


@dataclass(frozen=True, order=True)
class EventId:
    """Identificador de evento: sujeito e índice local de sequência"""

    subject: str
    index: int

    def __str__(self) -> str:
        return f"{self.subject}.{self.index}"

    @classmethod
    def parse(cls, text: str) -> EventId:
        subject, _, index = text.rpartition(".")
        return cls(subject, int(index))


@dataclass(frozen=True)
class Event:
    """Mudança de estado de um objeto percebida por um sujeito"""

    id: EventId
    payload: Optional[Any] = None
    present: bool = False


@dataclass
class EventLog:
    """Registro de sujeitos, eventos, conjuntos simultâneos e mensagens.

    Cada evento pertence a exatamente um conjunto de simultaneidade,
    identificado pelo seu menor evento (representante).
    """

    subjects: Dict[str, List[Event]] = field(default_factory=dict)
    representatives: Dict[EventId, EventId] = field(default_factory=dict)
    messages: List[Tuple[EventId, EventId]] = field(default_factory=list)

    def events(self) -> Iterator[Event]:
        for eventos in self.subjects.values():
            yield from eventos

    def event_ids(self) -> List[EventId]:
        return [evento.id for evento in self.events()]

    def get(self, event_id: EventId) -> Optional[Event]:
        eventos = self.subjects.get(event_id.subject)
        if eventos is None or not 0 <= event_id.index < len(eventos):
            return None
        return eventos[event_id.index]

    def group_of(self, event_id: EventId) -> EventId:
        return self.representatives[event_id]


@dataclass(frozen=True)
class UniversalOrder:
    """Sequência de classes de simultaneidade; o índice da classe é o tempo sequencial n"""

    classes: Tuple[Tuple[EventId, ...], ...]
    class_of: Dict[EventId, int]

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class DistanceMatrix:
    """Distâncias relacionais t_ij = τ_j − τ_i medidas em tiques de um relógio"""

    clock_subject: str
    events: Tuple[EventId, ...]
    tau: np.ndarray
    matrix: np.ndarray
    copresent: Tuple[Tuple[EventId, EventId], ...] = ()

    def distance(self, a: EventId, b: EventId) -> int:
        indice = {evento: i for i, evento in enumerate(self.events)}
        return int(self.matrix[indice[a], indice[b]])
