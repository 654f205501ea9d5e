"""Reading and writing gain graph files.

Two formats are supported.  The structured one is JSON::

    {"n": 3, "name": "triangle",
     "edges": [{"u": 0, "v": 1, "theta_pi": 0.5}, ...]}

The plain one has one ``u v theta_pi`` edge per line, ``#`` comments and an
optional ``n=<k>`` header; without the header ``n`` is one more than the
largest vertex index.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .core import GainGraph, build_graph
from .errors import GraphFileError

FORMATS = ("auto", "json", "plain")


@dataclass(frozen=True)
class GraphDocument:
    n: int
    edges: tuple[tuple[int, int, float], ...]
    name: str | None = None

    def to_graph(self) -> GainGraph:
        return build_graph(self.n, self.edges)

    @classmethod
    def from_graph(cls, graph: GainGraph, name: str | None = None) -> "GraphDocument":
        return cls(graph.n, tuple((u, v, g.theta_pi) for u, v, g in graph.edges), name)

    def to_dict(self) -> dict:
        out: dict = {"n": self.n}
        if self.name is not None:
            out["name"] = self.name
        out["edges"] = [{"u": u, "v": v, "theta_pi": t} for u, v, t in self.edges]
        return out


def _int_field(value, location: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphFileError(f"expected an integer, got {value!r}", location)
    return value


def _float_field(value, location: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise GraphFileError(f"expected a number, got {value!r}", location)
    return float(value)


def parse_json(text: str, degrees: bool = False) -> GraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFileError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict):
        raise GraphFileError("top level must be an object", "$")
    if "n" not in data:
        raise GraphFileError("missing field", "n")
    n = _int_field(data["n"], "n")
    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphFileError("expected an array", "edges")
    edges = []
    for i, rec in enumerate(raw_edges):
        where = f"edges[{i}]"
        if not isinstance(rec, dict):
            raise GraphFileError("expected an object", where)
        for key in ("u", "v", "theta_pi"):
            if key not in rec:
                raise GraphFileError("missing field", f"{where}.{key}")
        u = _int_field(rec["u"], f"{where}.u")
        v = _int_field(rec["v"], f"{where}.v")
        t = _float_field(rec["theta_pi"], f"{where}.theta_pi")
        edges.append((u, v, t / 180.0 if degrees else t))
    name = data.get("name")
    return GraphDocument(n, tuple(edges), name if isinstance(name, str) else None)


def parse_plain(text: str, degrees: bool = False) -> GraphDocument:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if line.replace(" ", "").startswith("n="):
            try:
                n = int(line.replace(" ", "")[2:])
            except ValueError:
                raise GraphFileError(f"bad vertex count header {raw.strip()!r}", where) from None
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphFileError(f"expected 'u v theta_pi', got {raw.strip()!r}", where)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFileError(f"vertex indices must be integers, got {raw.strip()!r}", where) from None
        try:
            t = float(parts[2])
        except ValueError:
            raise GraphFileError(f"gain must be a number, got {parts[2]!r}", where) from None
        edges.append((u, v, t / 180.0 if degrees else t))
    if n is None:
        n = 1 + max((max(u, v) for u, v, _ in edges), default=-1)
    return GraphDocument(n, tuple(edges))


def _detect(path: Path, text: str) -> str:
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return "json"
    return "plain"


def load_document(path, format: str = "auto", degrees: bool = False) -> GraphDocument:
    path = Path(path)
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphFileError(exc.strerror or str(exc), str(path)) from None
    if format == "auto":
        format = _detect(path, text)
    return parse_json(text, degrees) if format == "json" else parse_plain(text, degrees)


def load_graph(path, format: str = "auto", degrees: bool = False) -> GainGraph:
    """Read and validate a graph file.

    Gains are read in units of pi (or degrees with ``degrees=True``) and
    reduced into (-1, 1]; edges written as ``u > v`` are flipped with their
    gain inverted.  Raises :class:`GraphFileError` on syntax problems and
    :class:`GainGraphError` on invalid graphs.
    """
    return load_document(path, format, degrees).to_graph()


def dumps(graph: GainGraph, format: str = "json", name: str | None = None) -> str:
    doc = GraphDocument.from_graph(graph, name)
    if format == "json":
        return json.dumps(doc.to_dict(), indent=1) + "\n"
    if format == "plain":
        lines = [f"n={doc.n}"] + [f"{u} {v} {t!r}" for u, v, t in doc.edges]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r}")


def save_graph(graph: GainGraph, path, format: str = "json", name: str | None = None) -> None:
    Path(path).write_text(dumps(graph, format, name), encoding="utf-8")


def digest(graph: GainGraph) -> str:
    """SHA-256 of the canonical JSON form; identical graphs give identical digests."""
    canon = json.dumps(GraphDocument.from_graph(graph).to_dict(), sort_keys=True)
    return hashlib.sha256(canon.encode()).hexdigest()

