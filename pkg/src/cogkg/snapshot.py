"""Versioned, line-delimited snapshot format for whole graphs.

Layout (UTF-8, LF line endings, records sorted by id within each section):

    KGSNAP 1
    S <schema-id> <name> <dim-name>:<min>:<max> [...]
    N <id> <kind> <label-quoted> [<schema-id> <v1> <v2> ...] <created_seq>
    E <id> <src> <rel-quoted> <dst> <valid 0|1> <polarity A|N> <certainty 6dp> <provenance>

Labels and relations are double-quoted with backslash escapes for quote,
backslash and newline. Reals are written with 6 decimal places, so two saves
of the same graph are byte-identical and save(load(save(g))) == save(g).
"""

from __future__ import annotations

import os

from .errors import SnapshotError
from .graph import Edge, Graph, Node, NodeKind, Polarity
from .vectors import AttributeSchema, Dim

__all__ = ["save_snapshot", "load_snapshot", "dumps", "loads"]

HEADER = "KGSNAP 1"

_KINDS = {k.value: k for k in NodeKind}
_POLARITIES = {p.value: p for p in Polarity}


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _real(x: float) -> str:
    return f"{x:.6f}"


def dumps(graph: Graph) -> str:
    lines = [HEADER]
    for s in graph.schemas():
        dims = " ".join(f"{d.name}:{_real(d.min)}:{_real(d.max)}" for d in s.dims)
        lines.append(f"S {s.id} {s.name} {dims}")
    for n in graph.nodes():
        parts = ["N", str(n.id), n.kind.value, _quote(n.label)]
        if n.vector is not None:
            parts.append(str(n.vector.schema.id))
            parts.extend(_real(v) for v in n.vector.values)
        parts.append(str(n.created_seq))
        lines.append(" ".join(parts))
    for e in graph.edges():
        lines.append(
            f"E {e.id} {e.src} {_quote(e.rel)} {e.dst} {int(e.valid)} "
            f"{e.polarity.value} {_real(e.certainty)} {e.provenance}"
        )
    return "\n".join(lines) + "\n"


def save_snapshot(graph: Graph, destination) -> None:
    """Write ``graph`` to a path (or binary file object) deterministically."""
    data = dumps(graph).encode("utf-8")
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        with open(os.fspath(destination), "wb") as f:
            f.write(data)


# ----------------------------------------------------------------------
# loading

def _split_fields(line: str, line_no: int) -> list[tuple[str, str]]:
    """Split a record line into ('t', token) / ('q', unquoted-string) fields."""
    fields: list[tuple[str, str]] = []
    i, n = 0, len(line)
    while i < n:
        c = line[i]
        if c == " ":
            i += 1
            continue
        if c == '"':
            i += 1
            buf: list[str] = []
            while True:
                if i >= n:
                    raise SnapshotError("unterminated quoted field", line_no)
                c = line[i]
                if c == "\\":
                    if i + 1 >= n:
                        raise SnapshotError("dangling escape", line_no)
                    nxt = line[i + 1]
                    if nxt == "n":
                        buf.append("\n")
                    elif nxt in ('"', "\\"):
                        buf.append(nxt)
                    else:
                        raise SnapshotError(f"bad escape sequence \\{nxt}", line_no)
                    i += 2
                elif c == '"':
                    i += 1
                    break
                else:
                    buf.append(c)
                    i += 1
            fields.append(("q", "".join(buf)))
        else:
            j = i
            while j < n and line[j] != " ":
                j += 1
            fields.append(("t", line[i:j]))
            i = j
    return fields


def _token(fields, idx, line_no, what) -> str:
    if idx >= len(fields) or fields[idx][0] != "t":
        raise SnapshotError(f"expected {what}", line_no)
    return fields[idx][1]


def _quoted(fields, idx, line_no, what) -> str:
    if idx >= len(fields) or fields[idx][0] != "q":
        raise SnapshotError(f"expected quoted {what}", line_no)
    return fields[idx][1]


def _int(text: str, line_no: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SnapshotError(f"bad {what} {text!r}", line_no) from None


def _float(text: str, line_no: int, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise SnapshotError(f"bad {what} {text!r}", line_no) from None


def loads(text: str) -> Graph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SnapshotError("empty snapshot", 1)
    head = lines[0].split(" ")
    if len(head) != 2 or head[0] != "KGSNAP":
        raise SnapshotError("not a KGSNAP file", 1)
    if head[1] != "1":
        raise SnapshotError(f"unsupported snapshot version {head[1]!r}", 1)

    graph = Graph()
    section = "S"  # sections must appear in S, N, E order
    max_seq = 0
    for line_no, line in enumerate(lines[1:], start=2):
        if not line:
            raise SnapshotError("blank record line", line_no)
        kind = line[0]
        if kind not in ("S", "N", "E") or (len(line) > 1 and line[1] != " "):
            raise SnapshotError(f"unknown record type {line.split(' ')[0]!r}", line_no)
        if "SNE".index(kind) < "SNE".index(section):
            raise SnapshotError(f"{kind} record after {section} section", line_no)
        section = kind
        fields = _split_fields(line[2:], line_no)

        if kind == "S":
            sid = _int(_token(fields, 0, line_no, "schema id"), line_no, "schema id")
            name = _token(fields, 1, line_no, "schema name")
            if len(fields) < 3:
                raise SnapshotError("schema has no dims", line_no)
            dims = []
            for ftype, fval in fields[2:]:
                if ftype != "t" or fval.count(":") != 2:
                    raise SnapshotError(f"bad dim spec {fval!r}", line_no)
                dname, dmin, dmax = fval.split(":")
                dims.append(Dim(dname, _float(dmin, line_no, "dim min"), _float(dmax, line_no, "dim max")))
            if sid in graph._schemas_by_id or name in graph._schemas_by_name:
                raise SnapshotError(f"duplicate schema {sid}", line_no)
            schema = AttributeSchema(sid, name, tuple(dims))
            graph._schemas_by_id[sid] = schema
            graph._schemas_by_name[name] = schema
            graph._schema_nodes[sid] = set()
            graph._next_schema_id = max(graph._next_schema_id, sid + 1)

        elif kind == "N":
            nid = _int(_token(fields, 0, line_no, "node id"), line_no, "node id")
            kname = _token(fields, 1, line_no, "node kind")
            if kname not in _KINDS:
                raise SnapshotError(f"unknown node kind {kname!r}", line_no)
            label = _quoted(fields, 2, line_no, "label")
            rest = fields[3:]
            vector = None
            if len(rest) == 1:
                seq = _int(_token(rest, 0, line_no, "created_seq"), line_no, "created_seq")
            else:
                sid = _int(_token(rest, 0, line_no, "schema id"), line_no, "schema id")
                schema = graph._schemas_by_id.get(sid)
                if schema is None:
                    raise SnapshotError(f"node references unknown schema {sid}", line_no)
                want = len(schema.dims)
                if len(rest) != want + 2:
                    raise SnapshotError(
                        f"expected {want} values for schema {schema.name!r}", line_no
                    )
                values = [_float(_token(rest, i + 1, line_no, "value"), line_no, "value") for i in range(want)]
                vector = schema.vector(values)
                seq = _int(_token(rest, want + 1, line_no, "created_seq"), line_no, "created_seq")
            if nid in graph._nodes:
                raise SnapshotError(f"duplicate node id {nid}", line_no)
            node = Node(nid, _KINDS[kname], label, vector, seq)
            graph._nodes[nid] = node
            if label:
                graph._label_index.setdefault(label, set()).add(nid)
            if vector is not None:
                graph._schema_nodes[vector.schema.id].add(nid)
            graph._next_node_id = max(graph._next_node_id, nid + 1)
            max_seq = max(max_seq, seq)

        else:  # E
            eid = _int(_token(fields, 0, line_no, "edge id"), line_no, "edge id")
            src = _int(_token(fields, 1, line_no, "src"), line_no, "src")
            rel = _quoted(fields, 2, line_no, "relation")
            dst = _int(_token(fields, 3, line_no, "dst"), line_no, "dst")
            valid = _token(fields, 4, line_no, "valid flag")
            pol = _token(fields, 5, line_no, "polarity")
            cert = _float(_token(fields, 6, line_no, "certainty"), line_no, "certainty")
            prov = _int(_token(fields, 7, line_no, "provenance"), line_no, "provenance")
            if len(fields) != 8:
                raise SnapshotError("trailing fields on edge record", line_no)
            if valid not in ("0", "1"):
                raise SnapshotError(f"bad valid flag {valid!r}", line_no)
            if pol not in _POLARITIES:
                raise SnapshotError(f"bad polarity {pol!r}", line_no)
            if not (0.0 <= cert <= 1.0):
                raise SnapshotError(f"certainty {cert} out of range", line_no)
            if src not in graph._nodes:
                raise SnapshotError(f"edge references missing node {src}", line_no)
            if dst not in graph._nodes:
                raise SnapshotError(f"edge references missing node {dst}", line_no)
            if eid in graph._edges:
                raise SnapshotError(f"duplicate edge id {eid}", line_no)
            graph._edges[eid] = Edge(eid, src, rel, dst, valid == "1", _POLARITIES[pol], cert, prov)
            graph._out.setdefault(src, {}).setdefault(rel, []).append(eid)
            graph._in.setdefault(dst, {}).setdefault(rel, []).append(eid)
            graph._next_edge_id = max(graph._next_edge_id, eid + 1)
            max_seq = max(max_seq, prov)

    graph.current_seq = max_seq
    return graph


def load_snapshot(source) -> Graph:
    """Load a graph from a path (or binary file object)."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        with open(os.fspath(source), "rb") as f:
            data = f.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SnapshotError(f"snapshot is not valid UTF-8: {exc}") from None
    return loads(text)
