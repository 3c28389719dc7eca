"""HTTP session service: one engine worker per session, event-sourced logs.

Request handlers never touch engine state directly; feedback is posted to
the session worker through a rendezvous queue and all progress is written
to an append-only JSON-lines event log, which doubles as the replay input.
"""

from __future__ import annotations

import json
import queue
import threading
import time
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .engine import Engine, EngineConfig
from .interaction import (FeedbackBundle, InteractionProtocolError,
                          ReplayPolicy, validate_bundle)
from .model import ModelError, parse_model, serialize_model

STATS_EVERY = 50


class ReplayError(Exception):
    pass


class Session:
    """One engine run driven by a background worker thread."""

    def __init__(self, session_id: str, model, config: EngineConfig,
                 data_dir: Path):
        self.id = session_id
        self.model = model
        self.config = config
        self.state = "running"
        self.stop_index = -1
        self.candidate_set = None
        self.events: list[dict] = []
        self.events_path = data_dir / f"{session_id}.events.jsonl"
        self.meta_path = data_dir / f"{session_id}.session.json"
        self._feedback: queue.Queue = queue.Queue(maxsize=1)
        self._lock = threading.Lock()
        self.engine = Engine(model, config)
        self.meta_path.write_text(json.dumps({
            "id": session_id,
            "model": json.loads(serialize_model(model)),
            "config": config.to_dict(),
        }, indent=2))
        self._thread = threading.Thread(target=self._run, daemon=True)
        self._thread.start()

    def _log(self, kind: str, payload: dict) -> None:
        event = {"ts": time.time(), "kind": kind, "payload": payload}
        with self._lock:
            self.events.append(event)
            with open(self.events_path, "a") as fh:
                fh.write(json.dumps(event) + "\n")

    def _provider(self, candidate_set):
        self.candidate_set = candidate_set
        self.stop_index = candidate_set.stop_index
        self.state = "awaiting_feedback"
        self._log("interaction_start", candidate_set.to_dict())
        bundle = self._feedback.get()
        self.state = "running"
        self.candidate_set = None
        if bundle is None:  # stop requested while awaiting
            bundle = FeedbackBundle(candidate_set.stop_index, [])
            self.engine.stopped = True
        for entry in bundle.entries:
            if entry.preference is not None:
                self._log("preference", {"candidate": entry.candidate,
                                         "preference": entry.preference})
            actions = entry.to_dict()["actions"]
            if any(v for v in actions.values() if v):
                self._log("action", {"candidate": entry.candidate,
                                     "actions": actions})
        self._log("interaction_end", {"bundle": bundle.to_dict()})
        return bundle

    def _run(self):
        try:
            self.engine.run(feedback_provider=self._provider,
                            stats_writer=lambda s: self._log("gen_stats", s),
                            stats_every=STATS_EVERY)
            self.state = "finished"
            self._log("finished", {"archive_size": len(self.engine.archive)})
        except Exception as exc:  # worker must not die silently
            self.state = "aborted"
            self._log("finished", {"error": str(exc)})

    def status(self) -> dict:
        engine = self.engine
        return {
            "id": self.id,
            "state": self.state,
            "generation": engine.generation,
            "total_generations": engine.total_generations,
            "evaluations_used": engine.evaluations_used,
            "stop_index": self.stop_index,
            "archive_size": len(engine.archive),
        }

    def submit_feedback(self, bundle: FeedbackBundle) -> None:
        if self.state != "awaiting_feedback":
            raise HTTPException(status_code=409, detail="session is not awaiting feedback")
        try:
            validate_bundle(self.candidate_set, bundle)
        except InteractionProtocolError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        self._feedback.put(bundle)
        # wait for the worker to pick it up so a double submission 409s
        deadline = time.monotonic() + 30.0
        while self.state == "awaiting_feedback" and time.monotonic() < deadline:
            time.sleep(0.005)

    def stop(self) -> None:
        self.engine.stopped = True
        if self.state == "awaiting_feedback":
            self._feedback.put(None)
        self._thread.join(timeout=60.0)

    def join(self, timeout: float | None = None) -> None:
        self._thread.join(timeout=timeout)


def replay_session(meta_path, events_path, expected_seed: int | None = None) -> list[dict]:
    """Re-run a recorded session from its log; returns the archive snapshot.

    The event log must contain one interaction_end bundle per stop; a
    truncated log or a seed mismatch raises ReplayError.
    """
    meta = json.loads(Path(meta_path).read_text())
    config = EngineConfig.from_dict(meta["config"])
    if expected_seed is not None and expected_seed != config.rng_seed:
        raise ReplayError(
            f"seed mismatch: recorded {config.rng_seed}, requested {expected_seed}")
    model = parse_model(json.dumps(meta["model"]))
    bundles = []
    with open(events_path) as fh:
        for line in fh:
            event = json.loads(line)
            if event["kind"] == "interaction_end":
                bundles.append(event["payload"]["bundle"])
    policy = ReplayPolicy(bundles)
    engine = Engine(model, config)
    try:
        engine.run(feedback_provider=policy)
    except InteractionProtocolError as exc:
        raise ReplayError(f"incomplete event log: {exc}")
    return engine.archive_snapshot()


def create_app(data_dir: str | Path = "data", max_sessions: int = 4,
               static_dir: str | Path | None = None) -> FastAPI:
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    app = FastAPI(title="archevolve")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    sessions: dict[str, Session] = {}
    app.state.sessions = sessions

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    @app.post("/api/sessions")
    async def create_session(request: Request):
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(status_code=400, detail="malformed JSON body")
        if not isinstance(body, dict) or "model" not in body:
            raise HTTPException(status_code=400, detail="body needs a 'model' field")
        active = sum(1 for s in sessions.values()
                     if s.state in ("running", "awaiting_feedback"))
        if active >= max_sessions:
            raise HTTPException(status_code=409, detail="session capacity reached")
        try:
            model = parse_model(json.dumps(body["model"]))
            config = EngineConfig.from_dict(body.get("config", {}))
        except (ModelError, TypeError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        session_id = uuid.uuid4().hex[:12]
        sessions[session_id] = Session(session_id, model, config, data_dir)
        return {"id": session_id}

    @app.get("/api/sessions/{session_id}")
    def session_status(session_id: str):
        return get_session(session_id).status()

    @app.get("/api/sessions/{session_id}/candidates")
    def candidates(session_id: str):
        session = get_session(session_id)
        if session.state != "awaiting_feedback" or session.candidate_set is None:
            return JSONResponse(status_code=409,
                                content={"detail": "session is not awaiting feedback"})
        return session.candidate_set.to_dict()

    @app.post("/api/sessions/{session_id}/feedback")
    async def feedback(session_id: str, request: Request):
        session = get_session(session_id)
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(status_code=400, detail="malformed JSON body")
        try:
            bundle = FeedbackBundle.from_dict(body)
        except (KeyError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=f"bad bundle shape: {exc}")
        session.submit_feedback(bundle)
        return {"status": "accepted"}

    @app.post("/api/sessions/{session_id}/stop")
    def stop(session_id: str):
        session = get_session(session_id)
        session.stop()
        return session.status()

    @app.get("/api/sessions/{session_id}/archive")
    def archive(session_id: str):
        session = get_session(session_id)
        return {"archive": session.engine.archive_snapshot()}

    @app.get("/api/sessions/{session_id}/events")
    def events(session_id: str, since: int = 0):
        session = get_session(session_id)
        return {"events": session.events[since:],
                "next": len(session.events)}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
