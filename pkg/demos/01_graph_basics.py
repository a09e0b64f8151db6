#!/usr/bin/env python3
"""Build a small knowledge graph by hand: nodes, edges, invalidation,
and a deterministic snapshot round-trip.

Run:  python3 demos/01_graph_basics.py
"""

import io

from cogkg import Graph, NodeKind, Polarity
from cogkg.snapshot import dumps, loads

print("=== a tiny world ===")
g = Graph()
tina = g.add_node(NodeKind.ENTITY, "Tina")
rover = g.add_node(NodeKind.ENTITY, "Rover")
dog = g.add_node(NodeKind.CONCEPT, "dog")
cat = g.add_node(NodeKind.CONCEPT, "cat")
animal = g.add_node(NodeKind.CONCEPT, "animal")

g.add_edge(rover, "instance-of", dog, Polarity.AFFIRM, 1.0, provenance=1)
g.add_edge(dog, "is-a", animal, Polarity.AFFIRM, 1.0, provenance=1)
e_dog = g.add_edge(tina, "want", dog, Polarity.AFFIRM, 0.9, provenance=2)
g.add_edge(tina, "want", cat, Polarity.AFFIRM, 0.9, provenance=2)

print(f"{g.node_count()} nodes, {g.edge_count()} edges")
print("find_by_label('dog') ->", sorted(g.find_by_label("dog")))

print("\n=== Tina's wants, before and after a change of mind ===")
before = [g.node(dst).label for _, dst in g.neighbors(tina, "want", "out")]
print("before revision:", before)

# Knowledge is never deleted: the dog edge is invalidated, not removed.
g.invalidate_edge(e_dog, provenance=3)
after = [g.node(dst).label for _, dst in g.neighbors(tina, "want", "out")]
audit = [
    (g.node(dst).label, e.valid)
    for e, dst in g.neighbors(tina, "want", "out", include_invalid=True)
]
print("after revision: ", after)
print("audit trail:    ", audit)

print("\n=== snapshots are byte-deterministic ===")
text = dumps(g)
print(text[: text.index("\n", text.index("E ")) + 1], "...", sep="")
restored = loads(text)
print("double save identical:", dumps(g) == text)
print("save(load(save)) identical:", dumps(restored) == text)
