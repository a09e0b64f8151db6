"""Session behavior: revision, repetition, referents, signals, inheritance."""

import random

import pytest

from cogkg.cognition import BASE_CERTAINTY, Session, Verdict, normalize_text
from cogkg.corpus import default_ontology_lines
from cogkg.graph import Graph, NodeKind, Polarity
from cogkg.language import parse_line
from cogkg.snapshot import dumps, loads


@pytest.fixture
def session(lexicon):
    return Session(lexicon=lexicon)


@pytest.fixture
def taught(lexicon):
    s = Session(lexicon=lexicon)
    s.load_ontology(default_ontology_lines())
    return s


def say(session: Session, *lines: str):
    results = [session.say(line) for line in lines]
    return results[-1]


class TestTinaScenario:
    def test_revision_end_to_end(self, session):
        say(session, "Tina wants a dog and a cat.")
        signals = session.ingest(parse_line("Actually, Tina only wants a cat.", session.lexicon))
        assert signals.surprise == pytest.approx(BASE_CERTAINTY)
        answer = session.answer(parse_line("What does Tina want?", session.lexicon))
        assert answer.text == "a cat"
        # the dog edge still exists, invalidated
        tina = next(iter(session.graph.find_by_label("Tina")))
        edges = session.graph.neighbors(tina, "want", "out", include_invalid=True)
        by_target = {session.graph.node(other).label: e for e, other in edges}
        assert by_target["dog"].valid is False
        assert by_target["cat"].valid is True

    def test_valid_neighbors_only_cat(self, session):
        say(session, "Tina wants a dog and a cat.", "Actually, Tina only wants a cat.")
        tina = next(iter(session.graph.find_by_label("Tina")))
        valid = [session.graph.node(o).label for _, o in session.graph.neighbors(tina, "want", "out")]
        assert valid == ["cat"]


class TestRevisionSemantics:
    def test_negation_invalidates_and_records(self, session):
        say(session, "Tina wants a dog.", "Tina does not want a dog.")
        answer = session.answer(parse_line("Does Tina want a dog?", session.lexicon))
        assert answer.verdict == Verdict.NO

    def test_affirm_after_negation_flips_back(self, session):
        say(session, "Tina does not want a dog.", "Tina wants a dog.")
        answer = session.answer(parse_line("Does Tina want a dog?", session.lexicon))
        assert answer.verdict == Verdict.YES

    def test_only_scopes_to_subject_and_verb(self, session):
        say(
            session,
            "Tina wants a dog.",
            "Tina likes a fish.",
            "Bob wants a dog.",
            "Actually, Tina only wants a cat.",
        )
        assert session.answer(parse_line("What does Tina want?", session.lexicon)).text == "a cat"
        # other verb and other subject untouched
        assert session.answer(parse_line("What does Tina like?", session.lexicon)).text == "a fish"
        assert session.answer(parse_line("What does Bob want?", session.lexicon)).text == "a dog"

    def test_only_after_negation_clears_the_negation(self, session):
        say(session, "Tina does not want a dog.", "Actually, Tina only wants a cat.")
        # the explicit "no" for dog was superseded; nothing is known about it
        answer = session.answer(parse_line("Does Tina want a dog?", session.lexicon))
        assert answer.verdict == Verdict.UNKNOWN

    def test_repetition_bumps_certainty_without_duplicating(self, session):
        line = "Tina wants a cat."
        say(session, line)
        before = session.graph.edge_count()
        signals = session.ingest(parse_line(line, session.lexicon))
        assert session.graph.edge_count() == before
        assert signals.certainty == pytest.approx(1 - (1 - 0.9) * (1 - 0.9))  # 0.99

    def test_certainty_monotone_and_bounded(self, session):
        line = "Tina wants a cat."
        previous = 0.0
        for _ in range(10):
            signals = session.ingest(parse_line(line, session.lexicon))
            assert previous < signals.certainty <= 1.0
            previous = signals.certainty


class TestReferents:
    def test_pronoun_resolves_to_working_set_argmax(self, session):
        say(session, "Bob wants a fish.", "Tina wants a dog.")
        # independent oracle: the activation argmax among entities
        entities = {
            nid: session.activation.level(nid)
            for nid in range(session.graph.node_count())
            if session.graph.has_node(nid) and session.graph.node(nid).kind == NodeKind.ENTITY
        }
        expected = max(entities, key=entities.get)
        assert session.graph.node(expected).label == "Tina"
        say(session, "She wants a bone.")
        answer = session.answer(parse_line("What does Tina want?", session.lexicon))
        assert answer.text == "a dog and a bone"

    def test_unresolvable_pronoun_rejected_with_confusion(self, session):
        signals = session.ingest(parse_line("She wants a dog.", session.lexicon))
        assert session.last_rejection is not None
        assert signals.confusion == 1.0 and signals.certainty == 0.0
        assert session.graph.edge_count() == 0

    def test_rejected_statement_consumes_no_sequence(self, session):
        seq_before = session.graph.current_seq
        session.ingest(parse_line("She wants a dog.", session.lexicon))
        assert session.graph.current_seq == seq_before

    def test_the_noun_reuses_most_recent_instance(self, session):
        say(session, "The ball is red.")
        ball_concept = next(iter(session.graph.find_by_label("ball")))
        instances = [
            src for _, src in session.graph.neighbors(ball_concept, "instance-of", "in")
        ]
        assert len(instances) == 1
        say(session, "The ball is big.")
        instances_after = [
            src for _, src in session.graph.neighbors(ball_concept, "instance-of", "in")
        ]
        assert instances_after == instances  # same entity, no duplicate

    def test_gender_attribute_filters_pronoun(self, session):
        say(session, "Tina is female.", "Bob is male.")
        # Bob is more recent (higher activation), but "she" filters him out
        say(session, "She is happy.")
        tina = [n for n in session.graph.find_by_label("Tina")][0]
        happy = next(iter(session.graph.find_by_label("happy")))
        assert session.graph.find_valid_edges(tina, "has-attribute", happy, Polarity.AFFIRM)

    def test_homonym_disambiguated_by_activation(self, lexicon):
        session = Session(lexicon=lexicon)
        graph = session.graph
        bat_a = graph.add_node(NodeKind.ENTITY, "Batty")
        graph.add_node(NodeKind.ENTITY, "Batty")
        session.activation.stimulate(graph, bat_a, 1.0)
        say(session, "Batty wants a cave.")
        cave = next(iter(graph.find_by_label("cave")))
        assert graph.find_valid_edges(bat_a, "want", cave, Polarity.AFFIRM)


class TestAnswers:
    def test_inheritance_two_hops(self, taught):
        say(taught, "Rover is a dog.")
        answer = taught.answer(parse_line("Is Rover an animal?", taught.lexicon))
        assert answer.verdict == Verdict.YES
        # support: instance-of at 0.9, then ontology is-a hops at 1.0
        assert answer.certainty == pytest.approx(BASE_CERTAINTY)
        rels = [taught.graph.edge(eid).rel for eid in answer.support]
        assert rels[0] == "instance-of" and set(rels[1:]) == {"is-a"}

    def test_absent_knowledge_is_unknown(self, taught):
        say(taught, "Tina wants a cat.")
        answer = taught.answer(parse_line("Does Tina want a horse?", taught.lexicon))
        assert answer.verdict == Verdict.UNKNOWN and answer.text == "I don't know."

    def test_unknown_subject_is_unknown_with_confusion(self, taught):
        answer = taught.answer(parse_line("What does Zed want?", taught.lexicon))
        assert answer.verdict == Verdict.UNKNOWN
        assert taught.last_signals.confusion == 1.0

    def test_wh_subject_exact_node(self, taught):
        say(taught, "Tina wants a cat.", "Bob wants a kitten.")
        answer = taught.answer(parse_line("Who wants a cat?", taught.lexicon))
        assert answer.text == "Tina"  # kitten is not the cat node

    def test_wh_subject_order_by_provenance(self, taught):
        say(taught, "Bob wants a cat.", "Tina wants a cat.")
        answer = taught.answer(parse_line("Who wants a cat?", taught.lexicon))
        assert answer.text == "Bob and Tina"

    def test_answer_stability(self, taught):
        say(taught, "Rover is a dog.", "Tina wants a cat.")
        for line in ("Is Rover an animal?", "What does Tina want?"):
            q = parse_line(line, taught.lexicon)
            first = taught.answer(q)
            second = taught.answer(q)
            assert (first.verdict, first.text) == (second.verdict, second.text)

    def test_support_edges_always_valid(self, taught):
        rng = random.Random(5)
        lines = [
            "Tina wants a dog and a cat.",
            "Actually, Tina only wants a cat.",
            "Bob likes a fish.",
            "Rover is a dog.",
            "Bob does not like a fish.",
        ]
        for line in lines:
            say(taught, line)
        questions = [
            "What does Tina want?", "Is Rover an animal?",
            "Does Bob like a fish?", "Who wants a cat?",
        ]
        for line in rng.sample(questions, len(questions)):
            answer = taught.answer(parse_line(line, taught.lexicon))
            for eid in answer.support:
                assert taught.graph.edge(eid).valid

    def test_questions_do_not_create_nodes(self, taught):
        before = taught.graph.node_count()
        taught.answer(parse_line("Does Zed want a unicorn?", taught.lexicon))
        assert taught.graph.node_count() == before


class TestInheritanceEqualsBfs:
    def test_random_dags_match_reachability_oracle(self, lexicon):
        rng = random.Random(2024)
        for trial in range(8):
            n = rng.choice([50, 200, 1000])
            session = Session(lexicon=lexicon, seed_concepts=())
            graph = session.graph
            concepts = [graph.add_node(NodeKind.CONCEPT, f"c{i}") for i in range(n)]
            adjacency = {c: set() for c in concepts}
            for _ in range(2 * n):
                a, b = rng.randrange(n), rng.randrange(n)
                if a == b:
                    continue
                a, b = min(a, b), max(a, b)  # upward edges only: a DAG
                graph.add_edge(concepts[a], "is-a", concepts[b], Polarity.AFFIRM, 1.0, 0)
                adjacency[concepts[a]].add(concepts[b])
            entity = graph.add_node(NodeKind.ENTITY, "E")
            roots = rng.sample(concepts, 3)
            for r in roots:
                graph.add_edge(entity, "instance-of", r, Polarity.AFFIRM, 1.0, 0)

            # independent BFS oracle over the adjacency dict
            reachable = set(roots)
            frontier = list(roots)
            while frontier:
                node = frontier.pop()
                for nxt in adjacency[node]:
                    if nxt not in reachable:
                        reachable.add(nxt)
                        frontier.append(nxt)

            for target in rng.sample(concepts, 40):
                q = parse_line(f"Is E a c{concepts.index(target)}?", lexicon)
                got = session.answer(q).verdict
                want = Verdict.YES if target in reachable else Verdict.UNKNOWN
                assert got == want, f"trial {trial}, target {target}"


class TestSignals:
    def test_fresh_fact_defaults(self, session):
        signals = session.ingest(parse_line("Tina wants a cat.", session.lexicon))
        assert (signals.surprise, signals.certainty, signals.confusion, signals.boredom) == (
            0.0, pytest.approx(0.9), 0.0, 0.0,
        )

    def test_boredom_ramp(self, session):
        line = "Tina wants a cat."
        values = [session.ingest(parse_line(line, session.lexicon)).boredom for _ in range(21)]
        assert values[0] == 0.0
        assert values[19] == pytest.approx(0.95)  # 20th ingest: 19 of last 20
        assert values[20] == pytest.approx(1.0)

    def test_answer_signals_carry_certainty(self, taught):
        say(taught, "Tina wants a cat.")
        taught.answer(parse_line("What does Tina want?", taught.lexicon))
        assert taught.last_signals.certainty == pytest.approx(0.9)
        assert taught.last_signals.surprise == 0.0


class TestSnapshotPreservesAnswers:
    def test_qa_equal_before_and_after_roundtrip(self, taught):
        for line in (
            "Tina wants a dog and a cat.",
            "Actually, Tina only wants a cat.",
            "Rover is a dog.",
            "The ball is red.",
        ):
            say(taught, line)
        questions = [
            "What does Tina want?", "Is Rover an animal?",
            "Is the ball red?", "Who wants a cat?", "Does Tina want a dog?",
        ]
        before = [
            (a.verdict, a.text)
            for a in (taught.answer(parse_line(q, taught.lexicon)) for q in questions)
        ]
        restored = Session(graph=loads(dumps(taught.graph)), lexicon=taught.lexicon)
        after = [
            (a.verdict, a.text)
            for a in (restored.answer(parse_line(q, restored.lexicon)) for q in questions)
        ]
        assert before == after


class TestNormalization:
    def test_normalize_text(self):
        assert normalize_text("  A   Cat. ") == "a cat"
        assert normalize_text("I don't know.") == "i don't know"
        assert normalize_text("Yes.") == "yes"
