#!/usr/bin/env python3
"""Watch spreading activation behave like working memory: mentions decay,
context flows toward categories, and revised edges stop conducting.

Run:  python3 demos/02_working_memory.py
"""

from cogkg import ActivationState, Graph, NodeKind, Polarity

g = Graph()
rover = g.add_node(NodeKind.ENTITY, "Rover")
dog = g.add_node(NodeKind.CONCEPT, "dog")
animal = g.add_node(NodeKind.CONCEPT, "animal")
g.add_edge(rover, "instance-of", dog)
g.add_edge(dog, "is-a", animal)

state = ActivationState()
label = {rover: "Rover", dog: "dog", animal: "animal"}

print("=== one mention of Rover, then time passes ===")
state.stimulate(g, rover, 1.0)
print(f"{'tick':>4}  {'Rover':>7}  {'dog':>7}  {'animal':>7}")
for t in range(12):
    print(f"{t:>4}  {state.level(rover):7.3f}  {state.level(dog):7.3f}  {state.level(animal):7.3f}")
    state.tick(g)

print("\nactivation climbed the taxonomy (dog, then animal) and everything")
print("decays back out of working memory in about ten ticks.")

print("\n=== the working set is the current context ===")
state.reset()
state.stimulate(g, rover, 1.0)
state.tick(g)
state.stimulate(g, dog, 1.0)  # more recent mention outranks
for node_id, level in state.working_set():
    print(f"  {level:5.3f}  {label[node_id]}")

print("\n=== invalidated edges stop conducting ===")
state.reset()
edge = next(g.iter_valid_out(rover))
g.invalidate_edge(edge.id, provenance=9)
state.stimulate(g, rover, 1.0)
state.tick(g)
print("after revoking Rover->dog, a Rover mention no longer wakes 'dog':",
      state.level(dog))
