"""Read-only HTTP service exposing one path document to the explorer UI.

Endpoints:
    GET /api/path                  the document exactly as stored on disk
    GET /api/fsr?lambda_index=i    one penalty's slice (coefficients, active
                                   set, FSR mean and per-replicate spread)
    GET /…                         static explorer bundle

The document is loaded once; handlers share it immutably, so concurrent
reads need no locking.
"""

from __future__ import annotations

import json
import posixpath
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .document import PathDocument

STATIC_DIR = Path(__file__).parent / "webui"

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "application/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
}


def make_handler(document, raw_bytes, static_dir=None):
    static_root = Path(static_dir) if static_dir else STATIC_DIR

    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            pass

        def _send(self, status, body, content_type="application/json"):
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _json_error(self, status, message):
            self._send(status, json.dumps({"error": message}).encode())

        def do_GET(self):
            url = urlparse(self.path)
            if url.path == "/api/path":
                self._send(200, raw_bytes)
                return
            if url.path == "/api/fsr":
                self._fsr_slice(url)
                return
            self._static(url.path)

        def _fsr_slice(self, url):
            query = parse_qs(url.query)
            raw = query.get("lambda_index")
            if raw is None or len(raw) != 1:
                self._json_error(400, "query must carry one lambda_index")
                return
            try:
                index = int(raw[0])
            except ValueError:
                self._json_error(400, f"lambda_index {raw[0]!r} is not an integer")
                return
            try:
                payload = document.slice_at(index)
            except IndexError as exc:
                self._json_error(404, str(exc))
                return
            self._send(200, json.dumps(payload).encode())

        def _static(self, path):
            rel = posixpath.normpath(path.lstrip("/")) or "index.html"
            if rel in (".", ""):
                rel = "index.html"
            target = (static_root / rel).resolve()
            try:
                target.relative_to(static_root.resolve())
            except ValueError:
                self._json_error(404, "not found")
                return
            if target.is_dir():
                target = target / "index.html"
            if not target.is_file():
                self._json_error(404, "not found")
                return
            ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
            self._send(200, target.read_bytes(), ctype)

    return Handler


def build_server(document_path, port=0, static_dir=None):
    """Construct (without starting) the HTTP server for one document file."""
    raw_bytes = Path(document_path).read_bytes()
    document = PathDocument.load(document_path)
    handler = make_handler(document, raw_bytes, static_dir)
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve_document(document_path, port, static_dir=None):
    """Serve until interrupted."""
    server = build_server(document_path, port, static_dir)
    host, actual_port = server.server_address
    print(f"serving on http://{host}:{actual_port}/ "
          f"(document: {document_path})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
