"""Contextual ingestion, belief revision, question answering, and the
metacognitive signals emitted on every turn.

A Session ties one graph to one activation state and a statement sequence
counter. Referents resolve through working memory: proper names by label
(activation breaks homonym ties), "the N" to the most-activated instance of
N, pronouns to the most-activated entity in the working set. Every accepted
turn stimulates the mentioned nodes and runs one activation tick, so recent
mentions stay resolvable for the next few turns.

Revision semantics: a negation invalidates matching affirmative edges and
records a Negate edge (and vice versa: re-affirming invalidates a standing
negation); "only" invalidates every live edge for (subject, verb) whose
object is not listed, then asserts the listed objects. Re-asserting a live
edge never duplicates it; its certainty rises by the noisy-OR rule
c' = 1 - (1-c)(1-0.9).

Signals per event: surprise is the highest prior certainty among edges this
event invalidated; certainty is that of the assertion or answer produced
(0 when rejected/unknown); confusion is 1 for an unresolvable referent and
1/k when k candidates tied; boredom is the fraction of the last 20
normalized inputs equal to the current one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .activation import ActivationParams, ActivationState
from .errors import NoParseError
from .graph import Graph, NodeKind, Polarity
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
    indefinite_article,
    parse_line,
    render_statement,
)

__all__ = [
    "BASE_CERTAINTY",
    "SEED_CONCEPTS",
    "Verdict",
    "Signals",
    "Answer",
    "TurnResult",
    "Session",
    "normalize_text",
]

BASE_CERTAINTY = 0.9
SEED_CONCEPTS = ("person", "animal", "red", "small")
TAXONOMY_RELS = ("instance-of", "is-a")

_GENDER_FOR_PRONOUN = {"she": "female", "he": "male"}


class Verdict(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Signals:
    surprise: float
    certainty: float
    confusion: float
    boredom: float


@dataclass(frozen=True)
class Answer:
    """verdict is set for yes/no questions (and for empty wh- answers,
    which report UNKNOWN); wh- answers carry the rendered phrases."""

    verdict: Verdict | None
    phrases: tuple[str, ...]
    text: str
    certainty: float
    support: tuple[int, ...]  # edge ids, all valid at answer time


@dataclass(frozen=True)
class TurnResult:
    kind: str  # "ack" | "answer" | "error"
    text: str
    verdict: str | None
    signals: Signals


def normalize_text(text: str) -> str:
    """Normalization used for boredom tracking and answer scoring:
    case-fold, collapse whitespace, strip terminal punctuation."""
    folded = " ".join(text.casefold().split())
    return folded.rstrip(".?!").rstrip()


_UNKNOWN_TEXT = "I don't know."


def _unknown_answer() -> Answer:
    return Answer(Verdict.UNKNOWN, (), _UNKNOWN_TEXT, 0.0, ())


class _Rejection(Exception):
    """Internal: referent resolution failed; the statement is rejected."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class Session:
    """One conversational context over one graph. Single-owner: run one
    ingest/answer at a time; independent sessions may run in parallel."""

    def __init__(
        self,
        graph: Graph | None = None,
        lexicon: Lexicon | None = None,
        activation_params: ActivationParams | None = None,
        seed_concepts: tuple[str, ...] = SEED_CONCEPTS,
    ):
        self.graph = graph if graph is not None else Graph()
        self.lexicon = lexicon if lexicon is not None else Lexicon.default()
        self.activation = ActivationState(activation_params)
        self.recent_inputs: deque[str] = deque(maxlen=20)
        self.last_signals = Signals(0.0, 0.0, 0.0, 0.0)
        self.last_rejection: str | None = None
        for label in seed_concepts:
            self._resolve_noun(label, create=True)

    # ------------------------------------------------------------------
    # referent resolution

    def _rank_key(self, node_id: int):
        # Highest activation first, then most recently stimulated, then most
        # recently created, then lowest id. Used for every entity choice.
        return (
            -self.activation.level(node_id),
            -self.activation.last_stimulated.get(node_id, -1),
            -self.graph.node(node_id).created_seq,
            node_id,
        )

    @staticmethod
    def _tied_leaders(candidates: list[int], key) -> int:
        """How many candidates tie with the ranked winner on the activation
        part of the key (level and last-stimulated tick)."""
        top = key(candidates[0])[:2]
        return sum(1 for c in candidates if key(c)[:2] == top)

    def _pick(self, candidates: list[int]) -> tuple[int, int]:
        candidates = sorted(candidates, key=self._rank_key)
        return candidates[0], self._tied_leaders(candidates, self._rank_key)

    def _entities_labeled(self, name: str) -> list[int]:
        return [
            nid for nid in self.graph.find_by_label(name)
            if self.graph.node(nid).kind == NodeKind.ENTITY
        ]

    def _resolve_noun(self, noun: str, create: bool) -> int | None:
        ids = [
            nid for nid in self.graph.find_by_label(noun)
            if self.graph.node(nid).kind in (NodeKind.CONCEPT, NodeKind.ABSTRACT)
        ]
        if ids:
            return min(ids)
        if not create:
            return None
        return self.graph.add_node(NodeKind.CONCEPT, noun)

    def _instances_of(self, concept_id: int) -> list[int]:
        return [
            src for edge, src in self.graph.neighbors(concept_id, "instance-of", "in")
            if edge.polarity == Polarity.AFFIRM
            and self.graph.node(src).kind == NodeKind.ENTITY
        ]

    def _gender_of(self, node_id: int) -> str | None:
        for rel_edge, dst in self.graph.neighbors(node_id, "has-attribute", "out"):
            if rel_edge.polarity != Polarity.AFFIRM:
                continue
            label = self.graph.node(dst).label
            if label in ("male", "female"):
                return label
        return None

    def _resolve_subject(self, subject, create: bool) -> tuple[int | None, int]:
        """Returns (node id or None, tie count). Raises _Rejection for an
        unresolvable pronoun when creating (ingest path)."""
        if isinstance(subject, ProperName):
            candidates = self._entities_labeled(subject.name)
            if not candidates:
                if not create:
                    return None, 1
                return self.graph.add_node(NodeKind.ENTITY, subject.name), 1
            return self._pick(candidates)

        if isinstance(subject, TheNoun):
            concept = self._resolve_noun(subject.noun, create)
            if concept is None:
                return None, 1
            candidates = self._instances_of(concept)
            if candidates:
                return self._pick(candidates)
            if not create:
                return None, 1
            entity = self.graph.add_node(NodeKind.ENTITY, "")
            self.graph.add_edge(
                entity, "instance-of", concept,
                Polarity.AFFIRM, BASE_CERTAINTY, self.graph.current_seq,
            )
            return entity, 1

        # pronoun: highest-activation entity in the working set
        candidates = [
            nid for nid, _ in self.activation.working_set()
            if self.graph.node(nid).kind == NodeKind.ENTITY
        ]
        wanted = _GENDER_FOR_PRONOUN.get(subject.word)
        if wanted and any(self._gender_of(c) for c in candidates):
            candidates = [
                c for c in candidates if self._gender_of(c) in (None, wanted)
            ]
        if not candidates:
            if create:
                raise _Rejection(f"cannot resolve pronoun {subject.word!r}: working memory is empty")
            return None, 1
        # working_set is already ranked; count leaders tied on (level, tick)
        return candidates[0], self._tied_leaders(candidates, self._rank_key)

    def _resolve_object(self, obj, create: bool) -> tuple[int | None, int]:
        if isinstance(obj, ProperName):
            return self._resolve_subject(obj, create)
        if obj.definite:
            return self._resolve_subject(TheNoun(obj.noun), create)
        return self._resolve_noun(obj.noun, create), 1

    # ------------------------------------------------------------------
    # ingestion

    def _assert_edge(self, src: int, rel: str, dst: int, polarity: Polarity,
                     seq: int, base: float) -> tuple[float, list[float]]:
        """Invalidate opposite-polarity duplicates, then assert (or bump)
        the edge. Returns (resulting certainty, invalidated certainties)."""
        opposite = Polarity.NEGATE if polarity == Polarity.AFFIRM else Polarity.AFFIRM
        invalidated = []
        for edge in self.graph.find_valid_edges(src, rel, dst, opposite):
            self.graph.invalidate_edge(edge.id, seq)
            invalidated.append(edge.certainty)
        existing = self.graph.find_valid_edges(src, rel, dst, polarity)
        if existing:
            edge = existing[0]
            edge.certainty = 1.0 - (1.0 - edge.certainty) * (1.0 - base)
            return edge.certainty, invalidated
        self.graph.add_edge(src, rel, dst, polarity, base, seq)
        return base, invalidated

    def _boredom(self, normalized: str) -> float:
        count = sum(1 for past in self.recent_inputs if past == normalized)
        return count / 20.0

    def ingest(self, statement: Statement, certainty_base: float = BASE_CERTAINTY) -> Signals:
        """Apply one parsed statement; returns the four signals.

        A rejected statement (unresolvable referent) changes no knowledge,
        consumes no sequence number, and reports confusion 1.
        """
        self.last_rejection = None
        text = statement.source_text or render_statement(statement, self.lexicon)
        normalized = normalize_text(text)
        boredom = self._boredom(normalized)
        self.recent_inputs.append(normalized)

        try:
            signals = self._apply_statement(statement, certainty_base, boredom)
        except _Rejection as rej:
            self.last_rejection = rej.reason
            signals = Signals(0.0, 0.0, 1.0, boredom)
        self.last_signals = signals
        return signals

    def _apply_statement(self, statement: Statement, base: float, boredom: float) -> Signals:
        form = statement.form
        graph = self.graph

        # Pronouns are the only rejection source; resolve them before the
        # statement consumes a sequence number or creates any node.
        if not isinstance(form, ConceptIsA) and isinstance(form.subject, Pronoun):
            subject_id, ties = self._resolve_subject(form.subject, create=True)
        else:
            subject_id, ties = None, 1

        seq = graph.advance_seq()
        confusions = [1.0 / ties] if ties > 1 else []
        mentioned: list[int] = []
        asserted: list[float] = []
        invalidated: list[float] = []

        def note(node_id: int | None, tie_count: int = 1):
            if node_id is not None:
                mentioned.append(node_id)
            if tie_count > 1:
                confusions.append(1.0 / tie_count)

        if isinstance(form, ConceptIsA):
            child = self._resolve_noun(form.noun, create=True)
            parent = self._resolve_noun(form.parent, create=True)
            note(child)
            note(parent)
            cert, inv = self._assert_edge(child, "is-a", parent, Polarity.AFFIRM, seq, base)
            asserted.append(cert)
            invalidated.extend(inv)
        else:
            if subject_id is None:
                subject_id, ties = self._resolve_subject(form.subject, create=True)
                if ties > 1:
                    confusions.append(1.0 / ties)
            mentioned.append(subject_id)

            if isinstance(form, InstanceIsA):
                concept = self._resolve_noun(form.noun, create=True)
                note(concept)
                cert, inv = self._assert_edge(
                    subject_id, "instance-of", concept, Polarity.AFFIRM, seq, base
                )
                asserted.append(cert)
                invalidated.extend(inv)
            elif isinstance(form, HasAttribute):
                adjective = self._resolve_noun(form.adjective, create=True)
                note(adjective)
                cert, inv = self._assert_edge(
                    subject_id, "has-attribute", adjective, form.polarity, seq, base
                )
                asserted.append(cert)
                invalidated.extend(inv)
            elif isinstance(form, RelationStmt):
                object_ids = []
                for obj in form.objects:
                    oid, oties = self._resolve_object(obj, create=True)
                    note(oid, oties)
                    object_ids.append(oid)
                if form.only:
                    keep = set(object_ids)
                    for edge, other in graph.neighbors(subject_id, form.verb, "out"):
                        if other not in keep:
                            graph.invalidate_edge(edge.id, seq)
                            invalidated.append(edge.certainty)
                for oid in object_ids:
                    cert, inv = self._assert_edge(
                        subject_id, form.verb, oid, form.polarity, seq, base
                    )
                    asserted.append(cert)
                    invalidated.extend(inv)
            else:
                raise TypeError(f"not a statement form: {form!r}")

        for node_id in dict.fromkeys(mentioned):
            self.activation.stimulate(graph, node_id, 1.0)
        self.activation.tick(graph)

        return Signals(
            surprise=max(invalidated, default=0.0),
            certainty=min(asserted, default=0.0),
            confusion=max(confusions, default=0.0),
            boredom=boredom,
        )

    # ------------------------------------------------------------------
    # answering

    def _render_node(self, node_id: int) -> str:
        node = self.graph.node(node_id)
        if node.kind in (NodeKind.CONCEPT, NodeKind.ABSTRACT):
            return f"{indefinite_article(node.label)} {node.label}" if node.label else "something"
        if node.label:
            return node.label
        for edge, dst in self.graph.neighbors(node_id, "instance-of", "out"):
            if edge.polarity == Polarity.AFFIRM:
                label = self.graph.node(dst).label
                if label:
                    return f"the {label}"
        return "something"

    def _phrase_answer(self, edges) -> Answer:
        if not edges:
            return _unknown_answer()
        phrases = tuple(self._render_node(other) for _, other in edges)
        certainty = min(edge.certainty for edge, _ in edges)
        support = tuple(edge.id for edge, _ in edges)
        return Answer(None, phrases, " and ".join(phrases), certainty, support)

    def _yes(self, support_edges) -> Answer:
        certainty = min((e.certainty for e in support_edges), default=1.0)
        return Answer(Verdict.YES, (), "Yes.", certainty, tuple(e.id for e in support_edges))

    def _no(self, support_edges) -> Answer:
        certainty = min((e.certainty for e in support_edges), default=1.0)
        return Answer(Verdict.NO, (), "No.", certainty, tuple(e.id for e in support_edges))

    def _taxonomy_closure(self, start: int):
        """BFS over valid affirmative instance-of/is-a edges. Returns
        (visited set, parent-edge map) for path reconstruction."""
        graph = self.graph
        visited = {start}
        parent_edge = {}
        frontier = [start]
        while frontier:
            next_frontier = []
            for node_id in frontier:
                for rel in TAXONOMY_RELS:
                    for edge, dst in graph.neighbors(node_id, rel, "out"):
                        if edge.polarity != Polarity.AFFIRM or dst in visited:
                            continue
                        visited.add(dst)
                        parent_edge[dst] = edge
                        next_frontier.append(dst)
            frontier = next_frontier
        return visited, parent_edge

    def _answer_isa(self, subject_id: int, target_id: int) -> Answer:
        visited, parent_edge = self._taxonomy_closure(subject_id)
        if target_id in visited:
            path = []
            at = target_id
            while at != subject_id:
                edge = parent_edge[at]
                path.append(edge)
                at = edge.src
            return self._yes(list(reversed(path)))
        # A standing negation blocks: direct, or from any reachable concept.
        for rel in TAXONOMY_RELS:
            blockers = [
                e
                for node_id in visited
                for e in self.graph.find_valid_edges(node_id, rel, target_id, Polarity.NEGATE)
            ]
            if blockers:
                return self._no(blockers[:1])
        return _unknown_answer()

    def answer(self, question: Question) -> Answer:
        """Answer one parsed question; never mutates knowledge, but it does
        stimulate the mentioned nodes and tick (context for follow-ups)."""
        normalized = normalize_text(question.source_text or "")
        boredom = self._boredom(normalized) if normalized else 0.0
        if normalized:
            self.recent_inputs.append(normalized)

        form = question.form
        mentioned: list[int] = []
        confusions: list[float] = []

        def resolve_subject(subject):
            node_id, ties = self._resolve_subject(subject, create=False)
            if node_id is not None:
                mentioned.append(node_id)
            if ties > 1:
                confusions.append(1.0 / ties)
            return node_id

        def resolve_object(obj):
            node_id, ties = self._resolve_object(obj, create=False)
            if node_id is not None:
                mentioned.append(node_id)
            if ties > 1:
                confusions.append(1.0 / ties)
            return node_id

        answer: Answer
        failed = False
        if isinstance(form, WhObject):
            subject_id = resolve_subject(form.subject)
            if subject_id is None:
                failed = True
                answer = _unknown_answer()
            else:
                edges = [
                    (e, other)
                    for e, other in self.graph.neighbors(subject_id, form.verb, "out")
                    if e.polarity == Polarity.AFFIRM
                ]
                answer = self._phrase_answer(edges)
        elif isinstance(form, WhSubject):
            object_id = resolve_object(form.obj)
            if object_id is None:
                failed = True
                answer = _unknown_answer()
            else:
                edges = [
                    (e, other)
                    for e, other in self.graph.neighbors(object_id, form.verb, "in")
                    if e.polarity == Polarity.AFFIRM
                ]
                answer = self._phrase_answer(edges)
        elif isinstance(form, YesNoIsA):
            subject_id = resolve_subject(form.subject)
            target_id = self._resolve_noun(form.noun, create=False)
            if target_id is not None:
                mentioned.append(target_id)
            if subject_id is None or target_id is None:
                failed = True
                answer = _unknown_answer()
            else:
                answer = self._answer_isa(subject_id, target_id)
        elif isinstance(form, YesNoAttr):
            subject_id = resolve_subject(form.subject)
            adjective_id = self._resolve_noun(form.adjective, create=False)
            if adjective_id is not None:
                mentioned.append(adjective_id)
            if subject_id is None or adjective_id is None:
                failed = True
                answer = _unknown_answer()
            else:
                answer = self._direct_yesno(subject_id, "has-attribute", adjective_id)
        elif isinstance(form, YesNoRel):
            subject_id = resolve_subject(form.subject)
            object_id = resolve_object(form.obj)
            if subject_id is None or object_id is None:
                failed = True
                answer = _unknown_answer()
            else:
                answer = self._direct_yesno(subject_id, form.verb, object_id)
        else:
            raise TypeError(f"not a question form: {form!r}")

        for node_id in dict.fromkeys(mentioned):
            self.activation.stimulate(self.graph, node_id, 1.0)
        self.activation.tick(self.graph)

        self.last_signals = Signals(
            surprise=0.0,
            certainty=answer.certainty,
            confusion=1.0 if failed else max(confusions, default=0.0),
            boredom=boredom,
        )
        return answer

    def _direct_yesno(self, src: int, rel: str, dst: int) -> Answer:
        affirm = self.graph.find_valid_edges(src, rel, dst, Polarity.AFFIRM)
        if affirm:
            return self._yes(affirm[:1])
        negate = self.graph.find_valid_edges(src, rel, dst, Polarity.NEGATE)
        if negate:
            return self._no(negate[:1])
        return _unknown_answer()

    # ------------------------------------------------------------------
    # conversational surface

    def say(self, text: str) -> TurnResult:
        """Route one input line: '.' ingests, '?' answers. Parse failures
        and rejections come back as error turns; the session continues."""
        try:
            parsed = parse_line(text, self.lexicon)
        except NoParseError as exc:
            normalized = normalize_text(text)
            boredom = self._boredom(normalized)
            if normalized:
                self.recent_inputs.append(normalized)
            self.last_signals = Signals(0.0, 0.0, 1.0, boredom)
            return TurnResult("error", str(exc), None, self.last_signals)

        if isinstance(parsed, Statement):
            signals = self.ingest(parsed)
            if self.last_rejection is not None:
                return TurnResult("error", self.last_rejection, None, signals)
            return TurnResult("ack", "OK.", None, signals)

        answer = self.answer(parsed)
        verdict = answer.verdict.value if answer.verdict is not None else None
        return TurnResult("answer", answer.text, verdict, self.last_signals)

    def load_ontology(self, lines) -> int:
        """Ingest trusted taxonomy statements at certainty 1, then clear
        working memory and the boredom buffer. Returns statements applied."""
        count = 0
        for raw in lines:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parsed = parse_line(line, self.lexicon)
            if not isinstance(parsed, Statement):
                raise ValueError(f"ontology line is not a statement: {line!r}")
            self.ingest(parsed, certainty_base=1.0)
            if self.last_rejection is not None:
                raise ValueError(f"ontology statement rejected: {line!r} ({self.last_rejection})")
            count += 1
        self.activation.reset()
        self.recent_inputs.clear()
        self.last_signals = Signals(0.0, 0.0, 0.0, 0.0)
        return count
