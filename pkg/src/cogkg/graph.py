"""In-memory typed property graph with an exact-match label index.

One Graph is both the long-term store (nodes, edges, schemas) and the
substrate the activation layer runs over. Design constraints that shape the
code:

- ``find_by_label`` is the hot path: a single dict probe, no locking, no
  copying. Callers must treat the returned set as read-only.
- Edges are never deleted. Invalidation flips ``valid`` to False exactly
  once; the record stays for audit/replay.
- Single-writer, multi-reader: concurrent reads are safe whenever no
  mutation is running; mutations require exclusive access.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    DuplicateSchemaError,
    EdgeAlreadyInvalidWarning,
    UnknownEdgeError,
    UnknownNodeError,
    UnknownSchemaError,
)
from .vectors import AttributeSchema, Dim, FeatureVector

__all__ = ["NodeKind", "Polarity", "Node", "Edge", "Graph", "RESERVED_RELS"]

RESERVED_RELS = ("is-a", "instance-of", "has-attribute")

_EMPTY_IDS: frozenset[int] = frozenset()


class NodeKind(Enum):
    PERCEPT = "Percept"
    ENTITY = "Entity"
    CONCEPT = "Concept"
    ABSTRACT = "Abstract"
    SCHEMA_DEF = "SchemaDef"


class Polarity(Enum):
    AFFIRM = "A"
    NEGATE = "N"


@dataclass(slots=True)
class Node:
    """kind and id are immutable after creation; label may be empty."""

    id: int
    kind: NodeKind
    label: str
    vector: FeatureVector | None
    created_seq: int


@dataclass(slots=True)
class Edge:
    id: int
    src: int
    rel: str
    dst: int
    valid: bool
    polarity: Polarity
    certainty: float
    provenance: int
    # Transient audit info; not part of the snapshot format.
    invalidated_by: int | None = field(default=None)


class Graph:
    """Nodes, edges, schemas, and the indexes that keep lookups O(1)."""

    def __init__(self):
        self._nodes: dict[int, Node] = {}
        self._edges: dict[int, Edge] = {}
        self._label_index: dict[str, set[int]] = {}
        # node id -> rel -> list of edge ids, in insertion order
        self._out: dict[int, dict[str, list[int]]] = {}
        self._in: dict[int, dict[str, list[int]]] = {}
        self._schemas_by_id: dict[int, AttributeSchema] = {}
        self._schemas_by_name: dict[str, AttributeSchema] = {}
        # schema id -> node ids carrying a vector on that schema
        self._schema_nodes: dict[int, set[int]] = {}
        self._next_node_id = 0
        self._next_edge_id = 0
        self._next_schema_id = 0
        self.current_seq = 0

    # ------------------------------------------------------------------
    # schemas

    def define_schema(self, name: str, dims) -> AttributeSchema:
        """Register an immutable schema. ``dims`` is a sequence of Dim or
        (name, min, max) triples."""
        if name in self._schemas_by_name:
            raise DuplicateSchemaError(name)
        norm = tuple(d if isinstance(d, Dim) else Dim(d[0], float(d[1]), float(d[2])) for d in dims)
        schema = AttributeSchema(self._next_schema_id, name, norm)
        self._next_schema_id += 1
        self._schemas_by_id[schema.id] = schema
        self._schemas_by_name[name] = schema
        self._schema_nodes[schema.id] = set()
        return schema

    def schema(self, ref: int | str) -> AttributeSchema:
        table = self._schemas_by_name if isinstance(ref, str) else self._schemas_by_id
        try:
            return table[ref]
        except KeyError:
            raise UnknownSchemaError(ref) from None

    def schemas(self) -> list[AttributeSchema]:
        return [self._schemas_by_id[i] for i in sorted(self._schemas_by_id)]

    def find_or_define_schema(self, dims: tuple[Dim, ...]) -> AttributeSchema:
        """Reuse a registered schema with exactly these dims (same order and
        ranges), else register one under a generated name."""
        for s in self.schemas():
            if s.dims == dims:
                return s
        return self.define_schema(f"schema{self._next_schema_id}", dims)

    # ------------------------------------------------------------------
    # nodes

    def add_node(self, kind: NodeKind, label: str = "", vector: FeatureVector | None = None) -> int:
        if vector is not None:
            registered = self._schemas_by_id.get(vector.schema.id)
            if registered is None or registered is not vector.schema:
                raise UnknownSchemaError(vector.schema.name)
        nid = self._next_node_id
        self._next_node_id = nid + 1
        self._nodes[nid] = Node(nid, kind, label, vector, self.current_seq)
        if label:
            bucket = self._label_index.get(label)
            if bucket is None:
                self._label_index[label] = {nid}
            else:
                bucket.add(nid)
        if vector is not None:
            self._schema_nodes[vector.schema.id].add(nid)
        return nid

    def node(self, node_id: int) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise UnknownNodeError(node_id) from None

    def has_node(self, node_id: int) -> bool:
        return node_id in self._nodes

    def node_count(self) -> int:
        return len(self._nodes)

    def nodes(self):
        """All nodes, ascending id."""
        for nid in sorted(self._nodes):
            yield self._nodes[nid]

    def set_vector(self, node_id: int, vector: FeatureVector) -> None:
        node = self.node(node_id)
        registered = self._schemas_by_id.get(vector.schema.id)
        if registered is None or registered is not vector.schema:
            raise UnknownSchemaError(vector.schema.name)
        if node.vector is not None:
            self._schema_nodes[node.vector.schema.id].discard(node_id)
        node.vector = vector
        self._schema_nodes[vector.schema.id].add(node_id)

    def nodes_with_schema(self, schema_id: int) -> frozenset[int]:
        ids = self._schema_nodes.get(schema_id)
        return frozenset(ids) if ids else _EMPTY_IDS

    def find_by_label(self, label: str):
        """Exact-match label lookup; O(1), returns a read-only live view."""
        return self._label_index.get(label, _EMPTY_IDS)

    # ------------------------------------------------------------------
    # edges

    def add_edge(
        self,
        src: int,
        rel: str,
        dst: int,
        polarity: Polarity = Polarity.AFFIRM,
        certainty: float = 1.0,
        provenance: int = 0,
    ) -> int:
        if src not in self._nodes:
            raise UnknownNodeError(src)
        if dst not in self._nodes:
            raise UnknownNodeError(dst)
        if not (0.0 <= certainty <= 1.0):
            raise ValueError(f"certainty must be in [0, 1], got {certainty}")
        eid = self._next_edge_id
        self._next_edge_id = eid + 1
        self._edges[eid] = Edge(eid, src, rel, dst, True, polarity, certainty, provenance)
        self._out.setdefault(src, {}).setdefault(rel, []).append(eid)
        self._in.setdefault(dst, {}).setdefault(rel, []).append(eid)
        return eid

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise UnknownEdgeError(edge_id) from None

    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self):
        """All edge records (valid and invalidated), ascending id."""
        for eid in sorted(self._edges):
            yield self._edges[eid]

    def invalidate_edge(self, edge_id: int, provenance: int) -> bool:
        """Flip an edge to invalid, keeping the record. Returns False (after
        warning) when the edge was already invalid; re-validation does not
        exist, a new edge must be asserted instead."""
        edge = self.edge(edge_id)
        if not edge.valid:
            warnings.warn(
                f"edge {edge_id} is already invalid; invalidate is a no-op",
                EdgeAlreadyInvalidWarning,
                stacklevel=2,
            )
            return False
        edge.valid = False
        edge.invalidated_by = provenance
        return True

    def _bucket(self, index, node_id: int, rel: str | None):
        rels = index.get(node_id)
        if not rels:
            return ()
        if rel is not None:
            return rels.get(rel, ())
        out = []
        for ids in rels.values():
            out.extend(ids)
        return out

    def neighbors(
        self,
        node_id: int,
        rel: str | None = None,
        direction: str = "out",
        include_invalid: bool = False,
    ) -> list[tuple[Edge, int]]:
        """Edges incident to a node with the far endpoint, ordered by
        (provenance, edge id). Invalid edges excluded unless requested."""
        if node_id not in self._nodes:
            raise UnknownNodeError(node_id)
        if direction == "out":
            ids = self._bucket(self._out, node_id, rel)
            other = lambda e: e.dst
        elif direction == "in":
            ids = self._bucket(self._in, node_id, rel)
            other = lambda e: e.src
        else:
            raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
        edges = [self._edges[i] for i in ids]
        if not include_invalid:
            edges = [e for e in edges if e.valid]
        edges.sort(key=lambda e: (e.provenance, e.id))
        return [(e, other(e)) for e in edges]

    def iter_valid_out(self, node_id: int):
        """Valid out-edges of a node, insertion order. No existence check:
        internal fast path for the activation tick."""
        rels = self._out.get(node_id)
        if not rels:
            return
        for ids in rels.values():
            for eid in ids:
                e = self._edges[eid]
                if e.valid:
                    yield e

    def find_valid_edges(
        self,
        src: int,
        rel: str,
        dst: int | None = None,
        polarity: Polarity | None = None,
    ) -> list[Edge]:
        """Valid edges out of ``src`` with relation ``rel``, optionally
        filtered by endpoint and polarity; (provenance, id) order."""
        ids = self._bucket(self._out, src, rel)
        out = [
            e
            for e in (self._edges[i] for i in ids)
            if e.valid
            and (dst is None or e.dst == dst)
            and (polarity is None or e.polarity == polarity)
        ]
        out.sort(key=lambda e: (e.provenance, e.id))
        return out

    # ------------------------------------------------------------------
    # sequence counter (statement provenance)

    def advance_seq(self) -> int:
        self.current_seq += 1
        return self.current_seq
