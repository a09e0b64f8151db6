"""Percept -> entity -> concept -> abstraction pipeline.

Recognition matches an incoming feature vector against stored Entity and
Concept vectors, falling back to one-shot creation of a new entity.
Concept formation is single-pass leader clustering (online, no k), and
abstraction generalizes concepts over the intersection of their schemas.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ConceptFormationError, RangeMismatchError, UnknownSchemaError
from .graph import Graph, NodeKind, Polarity
from .vectors import AttributeSchema, Dim, FeatureVector, project, prototype_update, similarity

__all__ = [
    "ConceptParams",
    "RecognitionOutcome",
    "RecognitionResult",
    "recognize",
    "form_concepts",
    "abstract",
]


@dataclass(frozen=True)
class ConceptParams:
    # tau_cluster must exceed the similarity of the closest pair of intended
    # category centers; the bundled motion fixtures' closest pair sits at
    # 0.82, and 0.86 separates all three kinds across noise seeds and
    # presentation orders.
    tau_match: float = 0.85
    tau_cluster: float = 0.86

    def __post_init__(self):
        for name in ("tau_match", "tau_cluster"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ValueError(f"{name} must be in (0, 1), got {v}")


class RecognitionOutcome(Enum):
    MATCHED = "matched"
    CREATED_NEW = "created-new"


@dataclass(frozen=True)
class RecognitionResult:
    outcome: RecognitionOutcome
    node_id: int
    similarity: float | None
    candidates_considered: int


def _intersect_dims(dims: tuple[Dim, ...], schema: AttributeSchema) -> tuple[Dim, ...]:
    """Dims also present in ``schema`` by name, preserving the given order.
    Raises RangeMismatchError when a shared name disagrees on range."""
    idx = schema.dim_index()
    out = []
    for d in dims:
        j = idx.get(d.name)
        if j is None:
            continue
        other = schema.dims[j]
        if other.min != d.min or other.max != d.max:
            raise RangeMismatchError(d.name)
        out.append(d)
    return tuple(out)


def _shared_dims(a: AttributeSchema, b: AttributeSchema) -> tuple[Dim, ...]:
    return _intersect_dims(a.dims, b)


def recognize(graph: Graph, v: FeatureVector, params: ConceptParams | None = None) -> RecognitionResult:
    """Match ``v`` against stored vectors or create a new Entity (one-shot).

    Only Entity/Concept nodes whose schema shares at least one dim with
    ``v``'s are scanned; candidates whose shared dims have conflicting
    ranges are skipped as incomparable. Ties break toward the lower node id.
    """
    params = params or ConceptParams()
    graph.schema(v.schema.id)  # must be registered here
    v_dims = {d.name for d in v.schema.dims}

    best_id = -1
    best_sim = -1.0
    considered = 0
    for schema in graph.schemas():
        if not v_dims.intersection(d.name for d in schema.dims):
            continue
        for node_id in sorted(graph.nodes_with_schema(schema.id)):
            node = graph.node(node_id)
            if node.kind not in (NodeKind.ENTITY, NodeKind.CONCEPT):
                continue
            considered += 1
            try:
                sim = similarity(v, node.vector)
            except RangeMismatchError:
                continue
            if sim > best_sim or (sim == best_sim and node_id < best_id):
                best_id, best_sim = node_id, sim

    if best_id >= 0 and best_sim >= params.tau_match:
        return RecognitionResult(RecognitionOutcome.MATCHED, best_id, best_sim, considered)
    new_id = graph.add_node(NodeKind.ENTITY, "", v)
    return RecognitionResult(RecognitionOutcome.CREATED_NEW, new_id, None, considered)


class _Cluster:
    __slots__ = ("members", "proto")

    def __init__(self, first_id: int, first_vec: FeatureVector):
        self.members: list[tuple[int, FeatureVector]] = [(first_id, first_vec)]
        self.proto = first_vec

    def join(self, graph: Graph, node_id: int, vec: FeatureVector) -> None:
        self.members.append((node_id, vec))
        inter = _shared_dims(self.proto.schema, vec.schema)
        if inter == self.proto.schema.dims:
            sample = vec if vec.schema.id == self.proto.schema.id else project(vec, self.proto.schema)
            self.proto = prototype_update(self.proto, sample, len(self.members))
        else:
            # Intersection shrank: refold every member on the new schema.
            schema = graph.find_or_define_schema(inter)
            proto = project(self.members[0][1], schema)
            for n, (_, member_vec) in enumerate(self.members[1:], start=2):
                proto = prototype_update(proto, project(member_vec, schema), n)
            self.proto = proto


def form_concepts(
    graph: Graph, instance_ids, params: ConceptParams | None = None
) -> list[int]:
    """Leader-cluster instances (ascending id order) and materialize every
    cluster of size >= 2 as a Concept node with the members linked
    instance-of. Singletons stay bare entities. Returns concept node ids.
    """
    params = params or ConceptParams()
    ids = sorted(instance_ids)
    if not ids:
        raise ConceptFormationError("form_concepts needs at least one instance")
    vecs = {}
    for node_id in ids:
        node = graph.node(node_id)
        if node.vector is None:
            raise ConceptFormationError(f"instance {node_id} has no vector")
        vecs[node_id] = node.vector
    schemas = {v.schema.id: v.schema for v in vecs.values()}
    schema_list = [schemas[k] for k in sorted(schemas)]
    for i, a in enumerate(schema_list):
        for b in schema_list[i + 1:]:
            if not _shared_dims(a, b):  # raises on range conflicts
                raise ConceptFormationError(
                    f"schemas {a.name!r} and {b.name!r} share no dims"
                )

    clusters: list[_Cluster] = []
    for node_id in ids:
        vec = vecs[node_id]
        best = -1
        best_sim = -1.0
        for ci, cluster in enumerate(clusters):
            sim = similarity(vec, cluster.proto)
            if sim > best_sim:  # strict: earliest cluster wins ties
                best, best_sim = ci, sim
        if best >= 0 and best_sim >= params.tau_cluster:
            clusters[best].join(graph, node_id, vec)
        else:
            clusters.append(_Cluster(node_id, vec))

    concept_ids = []
    for cluster in clusters:
        if len(cluster.members) < 2:
            continue
        # Cluster proto schemas are always registered: the seed vector came
        # off a graph node and refolds use find_or_define_schema.
        concept_id = graph.add_node(NodeKind.CONCEPT, "", cluster.proto)
        for member_id, _ in cluster.members:
            graph.add_edge(
                member_id, "instance-of", concept_id,
                Polarity.AFFIRM, 1.0, graph.current_seq,
            )
        concept_ids.append(concept_id)
    return concept_ids


def abstract(graph: Graph, concept_ids, label: str) -> int:
    """Create an Abstract node generalizing >= 2 concepts.

    Schema is the dim intersection in the first child's order; the vector is
    the per-dim mean of the children's projected prototypes. Each distinct
    child gets an is-a edge to the new node.
    """
    ids = list(concept_ids)
    if len(ids) < 2:
        raise ConceptFormationError("abstract needs at least two concepts")
    vecs = []
    for node_id in ids:
        node = graph.node(node_id)
        if node.vector is None:
            raise ConceptFormationError(f"concept {node_id} has no vector")
        vecs.append(node.vector)

    inter = vecs[0].schema.dims
    for v in vecs[1:]:
        inter = _intersect_dims(inter, v.schema)
        if not inter:
            raise ConceptFormationError("children share no dims; nothing to abstract over")
    schema = graph.find_or_define_schema(inter)

    proto = project(vecs[0], schema)
    for n, v in enumerate(vecs[1:], start=2):
        proto = prototype_update(proto, project(v, schema), n)

    abstract_id = graph.add_node(NodeKind.ABSTRACT, label, proto)
    for node_id in dict.fromkeys(ids):
        graph.add_edge(node_id, "is-a", abstract_id, Polarity.AFFIRM, 1.0, graph.current_seq)
    return abstract_id
