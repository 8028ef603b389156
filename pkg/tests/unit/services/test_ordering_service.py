import itertools

import numpy as np
import pytest

from app.core.commons.exceptions import (
    AdjacencyViolation,
    CrossSubjectSimultaneity,
    InconsistentLog,
    NoClock,
    SameSubjectMessage,
    UnknownEvent,
)
from app.model.ordering_model import EventId, EventLog


class TestOrderingService:
    """Testes unitários para a ordem universal e as distâncias relacionais"""

    @pytest.fixture
    def log(self, ordering_service) -> EventLog:
        """s0: a0 a1 a2, s1: b0 b1, com a0 → b1 e a1 ~ a2 simultâneos"""
        log = EventLog()
        for _ in range(3):
            ordering_service.add_event(log, "s0", present=True)
        for _ in range(2):
            ordering_service.add_event(log, "s1", present=True)
        ordering_service.mark_simultaneous(log, EventId("s0", 1), EventId("s0", 2))
        ordering_service.add_message(log, EventId("s0", 0), EventId("s1", 1))
        return log

    def test_add_event_assigns_local_index(self, ordering_service):
        """Testa ids sequenciais por sujeito"""
        log = EventLog()
        assert ordering_service.add_event(log, "s0") == EventId("s0", 0)
        assert ordering_service.add_event(log, "s0") == EventId("s0", 1)
        assert ordering_service.add_event(log, "s1") == EventId("s1", 0)
        assert str(EventId("s1", 0)) == "s1.0"
        assert EventId.parse("s1.0") == EventId("s1", 0)

    def test_simultaneity_rules(self, ordering_service, log):
        """Testa simultaneidade entre sujeitos, não adjacente e evento inexistente"""
        with pytest.raises(CrossSubjectSimultaneity):
            ordering_service.mark_simultaneous(log, EventId("s0", 0), EventId("s1", 0))
        with pytest.raises(AdjacencyViolation):
            ordering_service.mark_simultaneous(log, EventId("s0", 0), EventId("s0", 2))
        with pytest.raises(UnknownEvent):
            ordering_service.mark_simultaneous(log, EventId("s0", 0), EventId("s0", 9))

    def test_same_subject_message(self, ordering_service, log):
        """Testa mensagem dentro do mesmo sujeito"""
        with pytest.raises(SameSubjectMessage):
            ordering_service.add_message(log, EventId("s0", 0), EventId("s0", 1))

    def test_universal_order(self, ordering_service, log):
        """Testa as classes pelo caminho mais longo"""
        order = ordering_service.universal_order(log)

        assert order.classes == (
            (EventId("s0", 0), EventId("s1", 0)),
            (EventId("s0", 1), EventId("s0", 2), EventId("s1", 1)),
        )
        assert order.class_of[EventId("s0", 2)] == 1
        assert ordering_service.order_violations(log, order) == []

    def test_cycle_yields_witness(self, ordering_service, invariant_service):
        """Testa InconsistentLog com um ciclo fechado de arestas de restrição"""
        log = EventLog()
        for subject in ("s0", "s0", "s1", "s1"):
            ordering_service.add_event(log, subject)
        ordering_service.add_message(log, EventId("s0", 1), EventId("s1", 0))
        ordering_service.add_message(log, EventId("s1", 1), EventId("s0", 0))

        with pytest.raises(InconsistentLog) as e:
            ordering_service.universal_order(log)

        witness = e.value.witness
        assert set(witness) == {
            EventId("s0", 0),
            EventId("s0", 1),
            EventId("s1", 0),
            EventId("s1", 1),
        }
        assert invariant_service.is_valid_witness(
            witness, ordering_service.constraint_edges(log)
        )

    def test_relational_distances(self, ordering_service, log):
        """Testa τ, antissimetria e zeros de co-presença"""
        order = ordering_service.universal_order(log)

        distances = ordering_service.relational_distances(log, order, "s0")

        assert distances.tau.tolist() == [1, 2, 2, 1, 2]
        assert np.array_equal(distances.matrix, -distances.matrix.T)
        assert distances.distance(EventId("s0", 0), EventId("s1", 1)) == 1
        assert len(distances.copresent) == 4
        assert all(distances.distance(a, b) == 0 for a, b in distances.copresent)

    def test_missing_clock(self, ordering_service, log):
        """Testa relógio sem eventos"""
        order = ordering_service.universal_order(log)
        ordering_service.add_subject(log, "vazio")
        with pytest.raises(NoClock):
            ordering_service.relational_distances(log, order, "vazio")
        with pytest.raises(NoClock):
            ordering_service.relational_distances(log, order, "inexistente")

    def test_random_logs_match_longest_path(self, ordering_service, invariant_service, rng):
        """Testa a ordem universal contra o oráculo de relaxação exaustiva"""
        for _ in range(20):
            log = ordering_service.random_log(rng, 5, 60, 80)
            order = ordering_service.universal_order(log)
            niveis = invariant_service.longest_path_levels(log)
            for event_id in log.event_ids():
                assert order.class_of[event_id] == niveis[log.group_of(event_id)]
            assert ordering_service.order_violations(log, order) == []

    def test_cycle_sums_vanish(self, ordering_service, rng):
        """Testa Σ t = 0 em todo triângulo de eventos"""
        log = ordering_service.random_log(rng, 3, 15, 10)
        order = ordering_service.universal_order(log)
        relogio = next(s for s, eventos in log.subjects.items() if eventos)
        m = ordering_service.relational_distances(log, order, relogio).matrix
        for i, j, k in itertools.permutations(range(m.shape[0]), 3):
            assert m[i, j] + m[j, k] + m[k, i] == 0

    def test_random_log_is_deterministic(self, ordering_service):
        """Testa que a mesma semente gera o mesmo registro"""
        a = ordering_service.random_log(np.random.default_rng(5), 4, 30, 20)
        b = ordering_service.random_log(np.random.default_rng(5), 4, 30, 20)
        assert a == b
