#!/usr/bin/env python3
"""Teach the agent in controlled English and watch belief revision,
inheritance answers, pronoun resolution, and the four metacognitive
signals respond turn by turn.

Run:  python3 demos/04_teaching_and_revision.py
"""

from cogkg import Session
from cogkg.corpus import default_ontology_lines

session = Session()
session.load_ontology(default_ontology_lines())
print(f"seeded ontology: {session.graph.node_count()} nodes, "
      f"{session.graph.edge_count()} taxonomy edges\n")

script = [
    "Tina wants a dog and a cat.",
    "Actually, Tina only wants a cat.",   # belief revision -> surprise
    "What does Tina want?",
    "Rover is a dog.",
    "Is Rover an animal?",                # two is-a hops, zero-shot
    "She wants a bone.",                  # pronoun via working memory
    "What does Rover want?",
    "Does Tina want a dog?",
    "Tina wants a cat.",                  # repetition -> higher certainty
    "Tina wants a cat.",                  # and growing boredom
]

for line in script:
    turn = session.say(line)
    s = turn.signals
    print(f"> {line}")
    print(f"  {turn.text}")
    print(f"  signals: surprise={s.surprise:.2f} certainty={s.certainty:.2f} "
          f"confusion={s.confusion:.2f} boredom={s.boredom:.2f}\n")

print("working memory at the end of the conversation:")
for node_id, level in session.activation.working_set(k=6):
    node = session.graph.node(node_id)
    print(f"  {level:5.3f}  {node.label or '#' + str(node_id)} ({node.kind.value})")
