"""HTTP session server: create seeds, mutate, undo, inspect history.

All state lives server-side; clients only post vertex clicks.  Responses
are JSON with sorted keys, so replaying a session's history always
reproduces byte-identical session bodies.
"""

from __future__ import annotations

import json
import os
import re
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .cartanweyl import cartan_from_json, word_from_json
from .cli import parse_cartan
from .errors import BadInput, FrozenVertex, MwbError
from .lieseeds import build_gamma_quiver
from .presets import Preset, get_preset, preset_names, minor_alias
from .seeds import Seed, mutate_seed

DEFAULT_PORT = 7373


class Conflict(MwbError):
    """Request conflicts with the session state (HTTP 409)."""


class Session:
    __slots__ = ("sid", "origin", "history", "seed", "preset", "rows", "lock")

    def __init__(self, sid: str, origin: dict):
        self.sid = sid
        self.origin = origin
        self.history: list[int] = []
        self.seed, self.preset, self.rows = build_origin(origin)
        self.lock = threading.Lock()


def build_origin(origin: dict) -> tuple[Seed, Preset | None, tuple[int, ...] | None]:
    """Seed described by a creation request: preset, word + cartan, or raw seed."""
    if not isinstance(origin, dict):
        raise BadInput("request body must be a JSON object")
    if "preset" in origin:
        preset = get_preset(origin["preset"])
        return preset.seed, preset, preset.rows
    if "word" in origin:
        word = word_from_json(origin["word"])
        spec = origin.get("cartan")
        if spec is None:
            raise BadInput("word seeds need a cartan (name or matrix)")
        cartan = parse_cartan(spec) if isinstance(spec, str) else cartan_from_json(spec)
        quiver = build_gamma_quiver(cartan, word)
        return Seed.initial(quiver), None, word.letters
    if "seed" in origin:
        return Seed.from_json(origin["seed"]), None, None
    raise BadInput("request must contain 'preset', 'word' or 'seed'")


def session_state(sess: Session) -> dict:
    variables = []
    for idx, v in enumerate(sess.seed.vars, start=1):
        entry = {
            "vertex": idx,
            "text": v.to_text(),
            "frozen": idx in sess.seed.quiver.frozen,
            "alias": minor_alias(sess.preset, v) if sess.preset else None,
        }
        variables.append(entry)
    return {
        "id": sess.sid,
        "preset": sess.preset.name if sess.preset else None,
        "rows": list(sess.rows) if sess.rows else None,
        "history": list(sess.history),
        "quiver": sess.seed.quiver.to_json(),
        "seed": sess.seed.to_json(),
        "variables": variables,
    }


class SessionStore:
    def __init__(self, state_dir: str | Path | None = None):
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()
        self.state_dir = Path(state_dir) if state_dir else None
        if self.state_dir:
            self.state_dir.mkdir(parents=True, exist_ok=True)
            self._load_all()

    def _load_all(self) -> None:
        for path in sorted(self.state_dir.glob("*.json")):
            data = json.loads(path.read_text())
            sess = Session(path.stem, data["origin"])
            for k in data["history"]:
                sess.seed = mutate_seed(sess.seed, k)
                sess.history.append(k)
            self.sessions[sess.sid] = sess

    def _persist(self, sess: Session) -> None:
        if self.state_dir:
            snapshot = {"origin": sess.origin, "history": sess.history}
            (self.state_dir / f"{sess.sid}.json").write_text(
                json.dumps(snapshot, sort_keys=True)
            )

    def create(self, origin: dict) -> Session:
        sess = Session(uuid.uuid4().hex[:12], origin)
        with self.lock:
            self.sessions[sess.sid] = sess
        self._persist(sess)
        return sess

    def get(self, sid: str) -> Session:
        with self.lock:
            sess = self.sessions.get(sid)
        if sess is None:
            raise KeyError(sid)
        return sess

    def mutate(self, sess: Session, vertex) -> None:
        if not isinstance(vertex, int) or isinstance(vertex, bool):
            raise BadInput("vertex must be an integer")
        with sess.lock:
            sess.seed = mutate_seed(sess.seed, vertex)
            sess.history.append(vertex)
            self._persist(sess)

    def undo(self, sess: Session) -> None:
        with sess.lock:
            if not sess.history:
                raise Conflict("nothing to undo")
            history = sess.history[:-1]
            seed, _, _ = build_origin(sess.origin)
            for k in history:
                seed = mutate_seed(seed, k)
            sess.seed = seed
            sess.history = history
            self._persist(sess)


_SESSION_RE = re.compile(r"^/session/([0-9a-f]+)(/(mutate|undo|history))?$")


def make_handler(store: SessionStore):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # keep test output quiet
            pass

        def _reply(self, code: int, obj: dict) -> None:
            body = json.dumps(obj, sort_keys=True).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _error(self, code: int, message: str) -> None:
            self._reply(code, {"error": message})

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b"{}"
            try:
                data = json.loads(raw or b"{}")
            except json.JSONDecodeError as exc:
                raise BadInput(f"bad JSON body: {exc}") from exc
            if not isinstance(data, dict):
                raise BadInput("request body must be a JSON object")
            return data

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()

        def do_GET(self):
            if self.path == "/presets":
                self._reply(200, {"presets": [
                    get_preset(nm).to_json() for nm in preset_names()
                ]})
                return
            m = _SESSION_RE.match(self.path)
            if not m:
                self._error(404, f"no such route {self.path}")
                return
            try:
                sess = store.get(m.group(1))
            except KeyError:
                self._error(404, f"no session {m.group(1)}")
                return
            if m.group(3) == "history":
                self._reply(200, {"id": sess.sid, "origin": sess.origin,
                                  "history": list(sess.history)})
            elif m.group(3) is None:
                self._reply(200, session_state(sess))
            else:
                self._error(404, f"no such route {self.path}")

        def do_POST(self):
            try:
                self._route_post()
            except (FrozenVertex, Conflict) as exc:
                self._error(409, str(exc))
            except MwbError as exc:
                self._error(400, str(exc))

        def _route_post(self):
            if self.path == "/session":
                sess = store.create(self._body())
                self._reply(201, session_state(sess))
                return
            m = _SESSION_RE.match(self.path)
            if not m or m.group(3) not in ("mutate", "undo"):
                self._error(404, f"no such route {self.path}")
                return
            try:
                sess = store.get(m.group(1))
            except KeyError:
                self._error(404, f"no session {m.group(1)}")
                return
            if m.group(3) == "mutate":
                body = self._body()
                if "vertex" not in body:
                    raise BadInput("body must contain 'vertex'")
                store.mutate(sess, body["vertex"])
            else:
                store.undo(sess)
            self._reply(200, session_state(sess))

    return Handler


def create_server(port: int | None = None, state_dir=None,
                  host: str = "127.0.0.1") -> ThreadingHTTPServer:
    if port is None:
        port = int(os.environ.get("MWB_PORT", DEFAULT_PORT))
    store = SessionStore(state_dir)
    return ThreadingHTTPServer((host, port), make_handler(store))


def run_server(port: int | None = None, state_dir=None) -> None:
    server = create_server(port, state_dir)
    host, bound = server.server_address[:2]
    print(f"mwb server listening on http://{host}:{bound}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
