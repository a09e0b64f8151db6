"""Synthetic percepts and QA corpora with oracle-computed ground truth.

Percepts sample three motion categories (fixture centers on a shared
"motion" schema) with Gaussian noise. Corpora are drawn from the controlled
grammar and replayed through the ReplayOracle as they are generated, so the
expected answer for every question comes from the oracle, never from the
cognition module under test.

Generated corpora keep to the referent model the oracle can predict:
relation objects are always indefinite concept nouns (never names), "the N"
nouns have exactly one instance each, and a pronoun appears only right
after a statement with an entity subject, so the antecedent is the uniquely
most-activated entity when the cognition module resolves it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph, Polarity
from .language import (
    ConceptIsA,
    HasAttribute,
    InstanceIsA,
    Lexicon,
    NounObject,
    Pronoun,
    ProperName,
    Question,
    RelationStmt,
    Statement,
    TheNoun,
    WhObject,
    WhSubject,
    YesNoAttr,
    YesNoIsA,
    YesNoRel,
    render_question,
    render_statement,
)
from .oracle import ReplayOracle
from .vectors import AttributeSchema, FeatureVector

__all__ = [
    "MOTION_DIMS",
    "PERCEPT_CENTERS",
    "motion_schema",
    "gen_percepts",
    "QaCorpus",
    "CorpusRates",
    "gen_corpus",
    "default_ontology_lines",
    "write_corpus",
    "read_lines",
]

# ----------------------------------------------------------------------
# synthetic percepts

MOTION_DIMS = (("frequency", 0.0, 10.0), ("amplitude", 0.0, 5.0), ("speed", 0.0, 20.0))

PERCEPT_CENTERS = {
    "bouncing": (6.0, 3.0, 4.0),
    "rolling": (1.0, 0.5, 8.0),
    "floating": (0.2, 1.0, 1.0),
}


def motion_schema(graph: Graph) -> AttributeSchema:
    """The shared 3-dim motion schema, registered on ``graph`` on demand."""
    try:
        return graph.schema("motion")
    except Exception:
        return graph.define_schema("motion", MOTION_DIMS)


def gen_percepts(
    schema: AttributeSchema, kind: str, n: int, noise_sigma: float, seed: int
) -> list[FeatureVector]:
    """``n`` noisy samples around a category center; deterministic per seed.

    ``noise_sigma`` is a fraction of each dim's range; samples clamp to the
    range silently (clamping is expected here, not an anomaly).
    """
    if kind not in PERCEPT_CENTERS:
        raise ValueError(f"unknown percept kind {kind!r}; expected one of {sorted(PERCEPT_CENTERS)}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be >= 0")
    center = PERCEPT_CENTERS[kind]
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        values = []
        for c, dim in zip(center, schema.dims):
            v = c + rng.gauss(0.0, noise_sigma * dim.span)
            values.append(min(dim.max, max(dim.min, v)))
        out.append(FeatureVector(schema, tuple(values)))
    return out


# ----------------------------------------------------------------------
# QA corpora

PERSON_NAMES = [
    "Tina", "Bob", "Sara", "Liam", "Maya", "Noah", "Emma", "Omar", "Ivy", "Hugo",
    "Nina", "Eli", "Ruth", "Jack", "Lola", "Finn", "Grace", "Paul", "Dana", "Kai",
]
LEAF_NOUNS = [
    "dog", "cat", "horse", "rabbit", "mouse", "sparrow", "eagle", "crow",
    "trout", "salmon", "frog", "snake", "lizard",
]
EXTRA_NOUNS = [
    "poodle", "beagle", "terrier", "robin", "owl", "shark", "gecko",
    "pony", "kitten", "puppy",
]
THING_NOUNS = ["ball", "cup", "book", "lamp", "chair", "door", "table", "box", "kite", "drum"]
OBJECT_NOUNS = LEAF_NOUNS + THING_NOUNS + ["bone", "treat", "nest", "basket", "blanket", "ribbon"]
VERBS = ["want", "like", "have", "own", "see", "hear", "chase", "fear", "love", "need"]
# "male"/"female" stay out: the oracle does not model gender filtering.
ADJECTIVES = [
    "red", "blue", "green", "yellow", "small", "big", "old", "new",
    "happy", "sad", "fast", "slow", "round", "soft", "loud", "quiet",
]
PRONOUN_WORDS = ["she", "he", "it", "they"]


@dataclass
class QaCorpus:
    statements: list[str]
    questions: list[str]
    expected: list[str]  # normalized answers, one per question
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CorpusRates:
    """Statement mix (the four fractions must sum to 1) and extras."""

    relation: float = 0.50
    revision: float = 0.15
    taxonomy: float = 0.20
    attribute: float = 0.15
    pronoun: float = 0.10  # chance to pronoun-swap an eligible subject
    multi_object: float = 0.30
    repeat: float = 0.05

    def __post_init__(self):
        total = self.relation + self.revision + self.taxonomy + self.attribute
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"statement mix must sum to 1, got {total}")


def default_ontology_lines() -> list[str]:
    from . import data

    return data.read_text("ontology.txt").splitlines()


def _parse_ontology(lines, lexicon: Lexicon) -> list[Statement]:
    from .language import parse_line

    statements = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parsed = parse_line(line, lexicon)
        if not isinstance(parsed, Statement):
            raise ValueError(f"ontology line is not a statement: {line!r}")
        statements.append(parsed)
    return statements


class _Generator:
    def __init__(self, num_entities: int, rates: CorpusRates, rng: random.Random,
                 lexicon: Lexicon, ontology_lines):
        self.rates = rates
        self.rng = rng
        self.lexicon = lexicon
        self.oracle = ReplayOracle()
        for st in _parse_ontology(ontology_lines, lexicon):
            self.oracle.apply(st)
        self.ontology_nouns = sorted(self.oracle.isa) + ["animal", "thing"]
        self.names = [
            PERSON_NAMES[i % len(PERSON_NAMES)] + ("" if i < len(PERSON_NAMES) else str(i))
            for i in range(num_entities)
        ]
        self.defined_nouns = list(LEAF_NOUNS)  # instance-of candidates
        self.used_things: list[str] = []
        self.rel_keys: list[tuple[tuple[str, str], str]] = []  # (skey, verb) ever asserted
        self.vo_keys: list[tuple[str, tuple[str, str]]] = []  # (verb, okey) ever asserted
        self.attr_keys: list[tuple[tuple[str, str], str]] = []
        self.isa_subjects: list[tuple[str, str]] = []
        self.pronoun_ok = False
        self.n_pronoun = 0
        self.n_revision = 0

    # -- helpers -------------------------------------------------------

    def _subject_ast(self, skey: tuple[str, str]):
        kind, value = skey
        return ProperName(value) if kind == "name" else TheNoun(value)

    def _maybe_pronoun(self, subject):
        if (
            isinstance(subject, (ProperName, TheNoun))
            and self.pronoun_ok
            and self.rng.random() < self.rates.pronoun
        ):
            self.n_pronoun += 1
            return Pronoun(self.rng.choice(PRONOUN_WORDS))
        return subject

    def _record_relation(self, skey, verb, okeys):
        if (skey, verb) not in self.rel_keys:
            self.rel_keys.append((skey, verb))
        for okey in okeys:
            if (verb, okey) not in self.vo_keys:
                self.vo_keys.append((verb, okey))

    def _emit(self, form, revision_marker=False) -> Statement:
        st = Statement(form, revision_marker)
        st = Statement(form, revision_marker, render_statement(st, self.lexicon))
        # Resolve through the oracle first: its anchor defines what a
        # pronoun means; bookkeeping below uses the resolved subject.
        self.oracle.apply(st)
        if not isinstance(form, ConceptIsA):
            skey = self.oracle.anchor
            if isinstance(form, RelationStmt):
                okeys = [self.oracle._object_key(o) for o in form.objects]
                self._record_relation(skey, form.verb, okeys)
            elif isinstance(form, HasAttribute):
                if (skey, form.adjective) not in self.attr_keys:
                    self.attr_keys.append((skey, form.adjective))
            elif isinstance(form, InstanceIsA):
                if skey not in self.isa_subjects:
                    self.isa_subjects.append(skey)
        self.pronoun_ok = not isinstance(form, ConceptIsA)
        return st

    # -- statement kinds -------------------------------------------------

    def gen_relation(self) -> Statement:
        rng = self.rng
        if self.oracle.facts and rng.random() < self.rates.repeat:
            skey, verb, okey = rng.choice(self.oracle.facts)
            form = RelationStmt(
                self._subject_ast(skey), verb,
                (NounObject(okey[1]),), Polarity.AFFIRM,
            )
            return self._emit(form)
        subject = self._maybe_pronoun(ProperName(rng.choice(self.names)))
        n_obj = 2 if rng.random() < self.rates.multi_object else 1
        nouns = rng.sample(OBJECT_NOUNS, n_obj)
        form = RelationStmt(
            subject, rng.choice(VERBS),
            tuple(NounObject(n) for n in nouns), Polarity.AFFIRM,
        )
        return self._emit(form)

    def gen_revision(self) -> Statement:
        rng = self.rng
        if not self.oracle.facts:
            return self.gen_relation()
        self.n_revision += 1
        skey, verb, okey = rng.choice(self.oracle.facts)
        subject = self._subject_ast(skey)
        if rng.random() < 0.5:
            # "only" revision: keep or replace the live object set
            current = {f[2][1] for f in self.oracle.facts if f[0] == skey and f[1] == verb}
            fresh = [n for n in OBJECT_NOUNS if n not in current]
            count = 2 if rng.random() < 0.3 else 1
            nouns = [okey[1]] if rng.random() < 0.5 else []
            nouns += rng.sample(fresh, min(count, len(fresh)))
            nouns = nouns[:count] or [okey[1]]
            form = RelationStmt(
                subject, verb, tuple(NounObject(n) for n in nouns),
                Polarity.AFFIRM, only=True,
            )
            return self._emit(form, revision_marker=True)
        if rng.random() < 0.7:
            target = okey[1]  # negate a live fact
        else:
            target = rng.choice(OBJECT_NOUNS)  # explicit no for an absent one
        form = RelationStmt(subject, verb, (NounObject(target),), Polarity.NEGATE)
        return self._emit(form, revision_marker=rng.random() < 0.3)

    def gen_taxonomy(self) -> Statement:
        rng = self.rng
        unused_extras = [n for n in EXTRA_NOUNS if n not in self.defined_nouns]
        if rng.random() < 0.4 and unused_extras:
            child = rng.choice(unused_extras)
            parent = rng.choice(self.defined_nouns)
            self.defined_nouns.append(child)
            return self._emit(ConceptIsA(child, parent))
        subject = self._maybe_pronoun(ProperName(rng.choice(self.names)))
        return self._emit(InstanceIsA(subject, rng.choice(self.defined_nouns)))

    def gen_attribute(self) -> Statement:
        rng = self.rng
        if rng.random() < 0.4:
            noun = rng.choice(THING_NOUNS)
            if noun not in self.used_things:
                self.used_things.append(noun)
            subject = TheNoun(noun)
        else:
            subject = self._maybe_pronoun(ProperName(rng.choice(self.names)))
        polarity = Polarity.NEGATE if rng.random() < 0.2 else Polarity.AFFIRM
        return self._emit(HasAttribute(subject, rng.choice(ADJECTIVES), polarity))

    def gen_statement(self) -> Statement:
        roll = self.rng.random()
        r = self.rates
        if roll < r.relation:
            return self.gen_relation()
        if roll < r.relation + r.revision:
            return self.gen_revision()
        if roll < r.relation + r.revision + r.taxonomy:
            return self.gen_taxonomy()
        return self.gen_attribute()

    # -- questions ------------------------------------------------------

    def gen_question(self, force_two_hop: bool = False) -> tuple[Question, str, bool]:
        """Returns (question, expected, is_two_hop_inheritance_yes)."""
        rng = self.rng
        oracle = self.oracle

        def finish(form):
            q = Question(form)
            q = Question(form, render_question(q, self.lexicon))
            return q

        if force_two_hop or not self.rel_keys:
            deep = []
            for skey in self.isa_subjects:
                for noun in sorted(oracle._reachable_nouns(skey)):
                    hops = oracle.isa_hops(skey, noun)
                    if hops is not None and hops >= 2:
                        deep.append((skey, noun))
            if deep:
                skey, noun = rng.choice(deep)
                q = finish(YesNoIsA(self._subject_ast(skey), noun))
                return q, oracle.answer(q), True

        roll = rng.random()
        if roll < 0.25 and self.rel_keys:
            skey, verb = rng.choice(self.rel_keys)
            q = finish(WhObject(self._subject_ast(skey), verb))
        elif roll < 0.40 and self.vo_keys:
            verb, okey = rng.choice(self.vo_keys)
            q = finish(WhSubject(verb, NounObject(okey[1])))
        elif roll < 0.60 and self.isa_subjects:
            skey = rng.choice(self.isa_subjects)
            if rng.random() < 0.75:
                reachable = sorted(oracle._reachable_nouns(skey))
                noun = rng.choice(reachable) if reachable else rng.choice(self.ontology_nouns)
            else:
                noun = rng.choice(self.ontology_nouns + OBJECT_NOUNS)
            q = finish(YesNoIsA(self._subject_ast(skey), noun))
        elif roll < 0.78 and self.attr_keys:
            skey, adjective = rng.choice(self.attr_keys)
            if rng.random() < 0.25:
                adjective = rng.choice(ADJECTIVES)  # often unknown
            q = finish(YesNoAttr(self._subject_ast(skey), adjective))
        elif self.rel_keys:
            skey, verb = rng.choice(self.rel_keys)
            if rng.random() < 0.6:
                live = [f[2] for f in oracle.facts if f[0] == skey and f[1] == verb]
                noun = live[0][1] if live else rng.choice(OBJECT_NOUNS)
            else:
                noun = rng.choice(OBJECT_NOUNS)
            q = finish(YesNoRel(self._subject_ast(skey), verb, NounObject(noun)))
        else:
            skey = rng.choice(self.isa_subjects or [("name", self.names[0])])
            q = finish(YesNoIsA(self._subject_ast(skey), rng.choice(self.ontology_nouns)))

        expected = oracle.answer(q)
        two_hop = False
        if isinstance(q.form, YesNoIsA) and expected == "yes":
            skey = ("name", q.form.subject.name) if isinstance(q.form.subject, ProperName) \
                else ("the", q.form.subject.noun)
            hops = oracle.isa_hops(skey, q.form.noun)
            two_hop = hops is not None and hops >= 2
        return q, expected, two_hop


def gen_corpus(
    num_entities: int,
    num_statements: int,
    num_questions: int,
    seed: int,
    rates: CorpusRates | None = None,
    lexicon: Lexicon | None = None,
    ontology_lines=None,
    min_two_hop_questions: int = 0,
) -> QaCorpus:
    """Generate a corpus; expected answers come from the replay oracle."""
    if min(num_entities, num_statements, num_questions) < 1:
        raise ValueError("counts must be >= 1")
    rates = rates or CorpusRates()
    lexicon = lexicon or Lexicon.default()
    if ontology_lines is None:
        ontology_lines = default_ontology_lines()
    gen = _Generator(num_entities, rates, random.Random(seed), lexicon, ontology_lines)

    statements = [gen.gen_statement() for _ in range(num_statements)]

    questions: list[Question] = []
    expected: list[str] = []
    two_hop_count = 0
    for i in range(num_questions):
        remaining = num_questions - i
        force = (min_two_hop_questions - two_hop_count) >= remaining
        q, answer_text, two_hop = gen.gen_question(force_two_hop=force)
        questions.append(q)
        expected.append(answer_text)
        two_hop_count += int(two_hop)

    return QaCorpus(
        statements=[s.source_text for s in statements],
        questions=[q.source_text for q in questions],
        expected=expected,
        stats={
            "pronoun_statements": gen.n_pronoun,
            "revision_statements": gen.n_revision,
            "two_hop_questions": two_hop_count,
            "entities": num_entities,
            "seed": seed,
        },
    )


# ----------------------------------------------------------------------
# corpus files: one entry per line, '#' comments ignored


def write_corpus(corpus: QaCorpus, directory) -> None:
    import os

    os.makedirs(directory, exist_ok=True)
    for name, lines in (
        ("statements.txt", corpus.statements),
        ("questions.txt", corpus.questions),
        ("expected.txt", corpus.expected),
    ):
        with open(os.path.join(directory, name), "w", encoding="utf-8") as f:
            f.write("\n".join(lines) + "\n")


def read_lines(path) -> list[str]:
    out = []
    with open(path, encoding="utf-8") as f:
        for raw in f:
            line = raw.strip()
            if line and not line.startswith("#"):
                out.append(line)
    return out
