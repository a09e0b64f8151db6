#!/usr/bin/env python3
"""The percept -> entity -> concept -> abstraction pipeline on synthetic
motion data: one-shot recognition, online clustering, and abstraction over
the schema intersection.

Run:  python3 demos/03_percepts_to_concepts.py
"""

from cogkg import Graph, NodeKind, recognize, form_concepts, abstract
from cogkg.concepts import RecognitionOutcome
from cogkg.corpus import PERCEPT_CENTERS, gen_percepts, motion_schema

g = Graph()
schema = motion_schema(g)
print("schema:", schema.name, [d.name for d in schema.dims])

print("\n=== one-shot learning, then recognition ===")
first = schema.vector(PERCEPT_CENTERS["bouncing"])
r1 = recognize(g, first)
print("never seen anything:", r1.outcome.value, "-> new entity", r1.node_id)
r2 = recognize(g, schema.vector([6.1, 3.05, 4.2]))
print("similar percept:    ", r2.outcome.value,
      f"-> node {r2.node_id} at similarity {r2.similarity:.3f}")

print("\n=== 90 noisy percepts cluster into 3 concepts ===")
g = Graph()
schema = motion_schema(g)
instances = []
for kind in ("bouncing", "rolling", "floating"):
    for v in gen_percepts(schema, kind, 30, noise_sigma=0.05, seed=7):
        instances.append(g.add_node(NodeKind.ENTITY, "", v))
concepts = form_concepts(g, instances)
print(f"{len(instances)} instances -> {len(concepts)} concepts")
for cid in concepts:
    members = g.neighbors(cid, "instance-of", "in")
    proto = g.node(cid).vector
    pretty = ", ".join(f"{d.name}={v:.2f}" for d, v in zip(proto.schema.dims, proto.values))
    print(f"  concept {cid}: {len(members)} members, prototype ({pretty})")

print("\n=== abstracting over two concepts ===")
moving = abstract(g, concepts[:2], "moving-thing")
node = g.node(moving)
print(f"'{node.label}' ({node.kind.value}) with prototype",
      tuple(round(v, 2) for v in node.vector.values))
for cid in concepts[:2]:
    parents = [g.node(p).label for _, p in g.neighbors(cid, "is-a", "out")]
    print(f"  concept {cid} is-a {parents}")
