from bisect import bisect_right
from graphlib import CycleError, TopologicalSorter
from typing import Any, Dict, List, Optional, Set, Tuple

import numpy as np
from loguru import logger

from app.core.commons.exceptions import (
    AdjacencyViolation,
    CrossSubjectSimultaneity,
    InconsistentLog,
    InvalidParameter,
    NoClock,
    SameSubjectMessage,
    UnknownEvent,
)
from app.model.ordering_model import (
    DistanceMatrix,
    Event,
    EventId,
    EventLog,
    UniversalOrder,
)

Edge = Tuple[EventId, EventId]


class OrderingService:
    """Serviço responsável pelo tempo sequencial e pelo tempo relacional.

    As restrições são montadas sobre os conjuntos de simultaneidade
    (representados pelo menor evento): ordem local entre conjuntos
    consecutivos do mesmo sujeito e precedência das mensagens.
    """

    def add_event(
        self,
        log: EventLog,
        subject: str,
        payload: Optional[Any] = None,
        present: bool = False,
    ) -> EventId:
        eventos = log.subjects.setdefault(subject, [])
        event_id = EventId(subject, len(eventos))
        eventos.append(Event(id=event_id, payload=payload, present=present))
        log.representatives[event_id] = event_id
        return event_id

    def add_subject(self, log: EventLog, subject: str) -> None:
        log.subjects.setdefault(subject, [])

    def mark_simultaneous(self, log: EventLog, a: EventId, b: EventId) -> None:
        """Une os conjuntos de simultaneidade de dois eventos adjacentes"""
        self._require(log, a)
        self._require(log, b)
        if a.subject != b.subject:
            raise CrossSubjectSimultaneity(
                f"{a} e {b} pertencem a sujeitos diferentes"
            )
        if abs(a.index - b.index) != 1:
            raise AdjacencyViolation(f"{a} e {b} não são adjacentes")

        rep_a, rep_b = log.group_of(a), log.group_of(b)
        novo = min(rep_a, rep_b)
        for evento in log.subjects[a.subject]:
            if log.representatives[evento.id] in (rep_a, rep_b):
                log.representatives[evento.id] = novo

    def add_message(self, log: EventLog, from_event: EventId, to_event: EventId) -> None:
        """O evento do remetente precede estritamente o do destinatário"""
        self._require(log, from_event)
        self._require(log, to_event)
        if from_event.subject == to_event.subject:
            raise SameSubjectMessage(
                f"{from_event} → {to_event}: use a ordem local do sujeito"
            )
        log.messages.append((from_event, to_event))

    def constraint_edges(self, log: EventLog) -> List[Edge]:
        """Arestas entre representantes de conjuntos de simultaneidade"""
        arestas: Set[Edge] = set()
        for eventos in log.subjects.values():
            grupos: List[EventId] = []
            for evento in eventos:
                rep = log.group_of(evento.id)
                if not grupos or grupos[-1] != rep:
                    grupos.append(rep)
            arestas.update(zip(grupos, grupos[1:]))
        for origem, destino in log.messages:
            arestas.add((log.group_of(origem), log.group_of(destino)))
        return sorted(arestas)

    def universal_order(self, log: EventLog) -> UniversalOrder:
        """Classes de simultaneidade pelo nível do caminho mais longo"""
        arestas = self.constraint_edges(log)
        predecessores: Dict[EventId, List[EventId]] = {
            rep: [] for rep in sorted(set(log.representatives.values()))
        }
        for origem, destino in arestas:
            predecessores[destino].append(origem)

        sorter = TopologicalSorter(predecessores)
        try:
            ordem_topologica = list(sorter.static_order())
        except CycleError as e:
            witness = self._orient_cycle(list(e.args[1]), set(arestas))
            logger.debug(f"Ciclo de restrições: {[str(w) for w in witness]}")
            raise InconsistentLog(
                "Restrições cíclicas: " + " → ".join(str(w) for w in witness),
                witness=witness,
            )

        nivel: Dict[EventId, int] = {}
        for rep in ordem_topologica:
            nivel[rep] = max((nivel[p] + 1 for p in predecessores[rep]), default=0)

        n_classes = max(nivel.values(), default=-1) + 1
        classes: List[List[EventId]] = [[] for _ in range(n_classes)]
        class_of: Dict[EventId, int] = {}
        for event_id in log.event_ids():
            k = nivel[log.group_of(event_id)]
            classes[k].append(event_id)
            class_of[event_id] = k

        return UniversalOrder(
            classes=tuple(tuple(sorted(c)) for c in classes), class_of=class_of
        )

    def relational_distances(
        self, log: EventLog, order: UniversalOrder, clock_subject: str
    ) -> DistanceMatrix:
        """t_ij = τ_j − τ_i, com τ = número de tiques do relógio até a classe do evento"""
        relogio = log.subjects.get(clock_subject)
        if not relogio:
            raise NoClock(f"Sujeito relógio '{clock_subject}' sem eventos")

        classes_relogio = sorted({order.class_of[e.id] for e in relogio})
        eventos = tuple(log.event_ids())
        tau = np.array(
            [bisect_right(classes_relogio, order.class_of[e]) for e in eventos],
            dtype=np.int64,
        )
        matrix = tau[None, :] - tau[:, None]

        copresentes = []
        for classe in order.classes:
            presentes = [e for e in classe if log.get(e).present]
            copresentes.extend(
                (a, b) for i, a in enumerate(presentes) for b in presentes[i + 1 :]
            )
        return DistanceMatrix(
            clock_subject=clock_subject,
            events=eventos,
            tau=tau,
            matrix=matrix,
            copresent=tuple(copresentes),
        )

    def order_violations(self, log: EventLog, order: UniversalOrder) -> List[str]:
        """Restrições locais ou de mensagens desrespeitadas pela ordem"""
        violacoes = []
        for eventos in log.subjects.values():
            for anterior, atual in zip(eventos, eventos[1:]):
                mesmo_grupo = log.group_of(anterior.id) == log.group_of(atual.id)
                ca, cb = order.class_of[anterior.id], order.class_of[atual.id]
                if (mesmo_grupo and ca != cb) or (not mesmo_grupo and ca >= cb):
                    violacoes.append(f"local {anterior.id} → {atual.id}")
        for origem, destino in log.messages:
            if order.class_of[origem] >= order.class_of[destino]:
                violacoes.append(f"mensagem {origem} → {destino}")
        return violacoes

    def random_log(
        self,
        rng: np.random.Generator,
        n_subjects: int,
        n_events: int,
        n_messages: int,
        p_simultaneous: float = 0.1,
    ) -> EventLog:
        """Registro acíclico gerado a partir de tempos globais ocultos"""
        if n_subjects < 1 or n_events < 0 or n_messages < 0:
            raise InvalidParameter("Tamanhos do registro devem ser não negativos")

        log = EventLog()
        for k in range(n_subjects):
            self.add_subject(log, f"s{k}")

        tempo: Dict[EventId, int] = {}
        passo = 0
        for _ in range(n_events):
            subject = f"s{int(rng.integers(n_subjects))}"
            anterior = log.subjects[subject][-1].id if log.subjects[subject] else None
            event_id = self.add_event(
                log, subject, present=bool(rng.random() < 0.5)
            )
            if anterior is not None and rng.random() < p_simultaneous:
                self.mark_simultaneous(log, anterior, event_id)
                tempo[event_id] = tempo[anterior]
            else:
                passo += 1
                tempo[event_id] = passo

        todos = log.event_ids()
        if n_subjects < 2 or not todos:
            return log
        for _ in range(n_messages):
            for _tentativa in range(20):
                i, j = rng.integers(len(todos), size=2)
                a, b = todos[int(i)], todos[int(j)]
                if a.subject != b.subject and tempo[a] != tempo[b]:
                    if tempo[a] > tempo[b]:
                        a, b = b, a
                    self.add_message(log, a, b)
                    break
        return log

    @staticmethod
    def _orient_cycle(ciclo: List[EventId], arestas: Set[Edge]) -> List[EventId]:
        """Ciclo fechado no sentido das arestas de restrição"""
        if all(par in arestas for par in zip(ciclo, ciclo[1:])):
            return ciclo
        return list(reversed(ciclo))

    @staticmethod
    def _require(log: EventLog, event_id: EventId) -> None:
        if log.get(event_id) is None:
            raise UnknownEvent(f"Evento {event_id} não existe no registro")
