import json
from pathlib import Path

from loguru import logger

from app.core.commons.exceptions import OutputUnwritable
from app.model.ordering_model import DistanceMatrix, Event, EventId, EventLog, UniversalOrder
from app.repository.base_repository import BaseRepository


class EventLogRepository(BaseRepository):
    """Registro de eventos em JSON lines; ordem e distâncias em CSV"""

    def save_log(self, log: EventLog, path: Path) -> Path:
        self.ensure_dir(path.parent)
        registros = [{"type": "subject", "name": s} for s in log.subjects]
        for evento in log.events():
            registros.append(
                {
                    "type": "event",
                    "id": str(evento.id),
                    "group": str(log.group_of(evento.id)),
                    "present": evento.present,
                    "payload": evento.payload,
                }
            )
        registros.extend(
            {"type": "message", "from": str(a), "to": str(b)} for a, b in log.messages
        )
        try:
            with path.open("w", encoding="utf-8") as f:
                for registro in registros:
                    f.write(json.dumps(registro, sort_keys=True) + "\n")
            return path
        except OSError as e:
            logger.error(f"Erro ao gravar registro {path}: {str(e)}")
            raise OutputUnwritable(f"Não foi possível gravar {path}: {e.strerror}")

    def load_log(self, path: Path) -> EventLog:
        log = EventLog()
        with path.open(encoding="utf-8") as f:
            for linha in f:
                if not linha.strip():
                    continue
                registro = json.loads(linha)
                tipo = registro["type"]
                if tipo == "subject":
                    log.subjects.setdefault(registro["name"], [])
                elif tipo == "event":
                    event_id = EventId.parse(registro["id"])
                    log.subjects.setdefault(event_id.subject, []).append(
                        Event(
                            id=event_id,
                            payload=registro.get("payload"),
                            present=registro.get("present", False),
                        )
                    )
                    log.representatives[event_id] = EventId.parse(registro["group"])
                elif tipo == "message":
                    log.messages.append(
                        (EventId.parse(registro["from"]), EventId.parse(registro["to"]))
                    )
        return log

    def save_order(self, order: UniversalOrder, path: Path) -> Path:
        linhas = [
            (str(evento), k) for k, classe in enumerate(order.classes) for evento in classe
        ]
        return self.write_csv(path, ("event", "class"), linhas)

    def save_distances(self, distances: DistanceMatrix, path: Path) -> Path:
        nomes = [str(e) for e in distances.events]
        linhas = (
            [nome, *distances.matrix[i].tolist()] for i, nome in enumerate(nomes)
        )
        return self.write_csv(path, ["event", *nomes], linhas)
