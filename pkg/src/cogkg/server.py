"""Localhost HTTP service for the companion UI.

Endpoints (JSON):
    POST /say            {"text": ...} -> turn result with signals
    GET  /activation     working set as [{id, label, level}]
    GET  /graph/taxonomy nodes + valid is-a/instance-of edges
    GET  /signals        last emitted signals
    POST /reset          fresh session (ontology re-seeded)

All requests are serialized through one lock, so reads always see a
consistent snapshot between ingests. Bodies over 64 KiB get 413. Responses
carry permissive CORS headers: this is a single-user localhost tool.
"""

from __future__ import annotations

import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .cognition import Session, Signals
from .graph import NodeKind, Polarity

logger = logging.getLogger(__name__)

__all__ = ["CogService", "serve"]

MAX_BODY = 64 * 1024


def _signals_json(s: Signals) -> dict:
    return {
        "surprise": s.surprise,
        "certainty": s.certainty,
        "confusion": s.confusion,
        "boredom": s.boredom,
    }


class CogService:
    """Session + the state needed to rebuild it on /reset."""

    def __init__(self, session_factory):
        self._factory = session_factory
        self.session: Session = session_factory()
        self.lock = threading.Lock()

    def say(self, text: str) -> dict:
        turn = self.session.say(text)
        out = {
            "kind": turn.kind,
            "text": turn.text,
            "signals": _signals_json(turn.signals),
        }
        if turn.verdict is not None:
            out["verdict"] = turn.verdict
        return out

    def activation(self) -> list[dict]:
        graph = self.session.graph
        return [
            {"id": nid, "label": graph.node(nid).label, "level": level}
            for nid, level in self.session.activation.working_set()
        ]

    def taxonomy(self) -> dict:
        graph = self.session.graph
        edges = [
            {"id": e.id, "src": e.src, "dst": e.dst, "rel": e.rel}
            for e in graph.edges()
            if e.valid and e.polarity == Polarity.AFFIRM and e.rel in ("is-a", "instance-of")
        ]
        node_ids = {e["src"] for e in edges} | {e["dst"] for e in edges}
        node_ids.update(
            n.id for n in graph.nodes() if n.kind in (NodeKind.CONCEPT, NodeKind.ABSTRACT)
        )
        nodes = [
            {"id": nid, "label": graph.node(nid).label, "kind": graph.node(nid).kind.value}
            for nid in sorted(node_ids)
        ]
        return {"nodes": nodes, "edges": edges}

    def signals(self) -> dict:
        return _signals_json(self.session.last_signals)

    def reset(self) -> dict:
        self.session = self._factory()
        return {"kind": "ack", "text": "session reset"}


class _Handler(BaseHTTPRequestHandler):
    service: CogService  # assigned by serve()

    def log_message(self, fmt, *args):
        logger.debug("http: " + fmt, *args)

    def _send(self, code: int, payload) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def _error(self, code: int, message: str) -> None:
        self._send(code, {"kind": "error", "text": message})

    def do_OPTIONS(self):
        self._send(204, {})

    def do_GET(self):
        service = self.service
        with service.lock:
            if self.path == "/activation":
                self._send(200, service.activation())
            elif self.path == "/graph/taxonomy":
                self._send(200, service.taxonomy())
            elif self.path == "/signals":
                self._send(200, service.signals())
            else:
                self._error(404, f"unknown path {self.path}")

    def do_POST(self):
        length = int(self.headers.get("Content-Length") or 0)
        if length > MAX_BODY:
            self._error(413, f"body over {MAX_BODY} bytes")
            return
        raw = self.rfile.read(length) if length else b""
        service = self.service
        with service.lock:
            if self.path == "/say":
                try:
                    payload = json.loads(raw.decode("utf-8")) if raw else {}
                except (json.JSONDecodeError, UnicodeDecodeError) as exc:
                    self._error(400, f"malformed JSON: {exc}")
                    return
                text = payload.get("text") if isinstance(payload, dict) else None
                if not isinstance(text, str) or not text.strip():
                    self._error(400, "body must be {\"text\": \"...\"} with nonempty text")
                    return
                self._send(200, service.say(text.strip()))
            elif self.path == "/reset":
                self._send(200, service.reset())
            else:
                self._error(404, f"unknown path {self.path}")


def serve(session_factory, port: int, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Start the service (non-blocking). Call .shutdown() to stop."""
    service = CogService(session_factory)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    server = ThreadingHTTPServer((host, port), handler)
    server.service = service  # handy for tests
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    logger.info("serving on http://%s:%d", host, port)
    return server
