"""Session history persisted as an append-only JSON-lines event log.

Each write is one flushed line, so a crash can lose at most the event
being written and never corrupts earlier history. The in-memory index is
rebuilt by replaying the log at startup; unreadable trailing lines (a torn
final write) are skipped with a warning. A single lock serializes writers;
readers see immutable snapshots.
"""

from __future__ import annotations

import json
import logging
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Union

from .assessment import SkinAssessment
from .catalog import Category
from .errors import UnknownSession
from .routine import Routine, ScoredProduct
from .serialize import (
    assessment_from_json,
    assessment_to_json,
    routine_from_json,
    routine_to_json,
    scored_product_to_json,
    timestamp,
)

log = logging.getLogger(__name__)


@dataclass
class Session:
    session_id: str
    created_at: datetime
    assessments: list[SkinAssessment] = field(default_factory=list)
    routines: list[Routine] = field(default_factory=list)


class SessionStore:
    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        if self.path.exists():
            self._replay()

    def _replay(self) -> None:
        for lineno, line in enumerate(
            self.path.read_text(encoding="utf-8").splitlines(), 1
        ):
            if not line.strip():
                continue
            try:
                event = json.loads(line)
                self._apply(event)
            except (ValueError, KeyError) as e:
                log.warning("skipping unreadable session event at line %d: %s", lineno, e)

    def _apply(self, event: dict) -> None:
        kind = event["event"]
        if kind == "session_created":
            sid = event["session_id"]
            self._sessions[sid] = Session(
                session_id=sid, created_at=datetime.fromisoformat(event["at"])
            )
        elif kind == "recommendation":
            session = self._sessions.get(event["session_id"])
            if session is not None:
                session.assessments.append(assessment_from_json(event["assessment"]))
                session.routines.append(routine_from_json(event["routine"]))
        # 'alternatives' events are audit-only; they do not change state

    def _append(self, event: dict) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, separators=(",", ":")) + "\n")
            fh.flush()

    def create(self) -> Session:
        with self._lock:
            session = Session(session_id=uuid.uuid4().hex, created_at=datetime.now(timezone.utc))
            self._sessions[session.session_id] = session
            self._append(
                {
                    "event": "session_created",
                    "session_id": session.session_id,
                    "at": timestamp(session.created_at),
                }
            )
            return session

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id!r}")
        return session

    def record_recommendation(
        self, session_id: str, assessment: SkinAssessment, routine: Routine
    ) -> None:
        with self._lock:
            session = self.get(session_id)
            session.assessments.append(assessment)
            session.routines.append(routine)
            self._append(
                {
                    "event": "recommendation",
                    "session_id": session_id,
                    "at": timestamp(routine.created_at),
                    "assessment": assessment_to_json(assessment),
                    "routine": routine_to_json(routine),
                }
            )

    def record_alternatives(
        self, session_id: str, category: Category, brand: str, results: list[ScoredProduct]
    ) -> None:
        with self._lock:
            self.get(session_id)
            self._append(
                {
                    "event": "alternatives",
                    "session_id": session_id,
                    "at": timestamp(datetime.now(timezone.utc)),
                    "category": category.value,
                    "brand": brand,
                    "products": [scored_product_to_json(s) for s in results],
                }
            )

    def history(self, session_id: str) -> list[Routine]:
        return list(self.get(session_id).routines)
