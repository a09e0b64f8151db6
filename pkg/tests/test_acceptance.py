"""Acceptance suite: one test per shipping criterion.

Each criterion prints one PASS line (through the capture bypass, so the
lines are visible in normal pytest runs) with the measured numbers next to
the budget they must meet. Latency budgets assume laptop-class hardware.
"""

import math
import random
import time

import conftest
import pytest

from cogkg import data
from cogkg.activation import ActivationState
from cogkg.bench import bench_kg, bench_qa
from cogkg.cognition import BASE_CERTAINTY, Session, Verdict, normalize_text
from cogkg.concepts import abstract, form_concepts
from cogkg.corpus import default_ontology_lines, gen_corpus, gen_percepts, motion_schema
from cogkg.errors import NoParseError
from cogkg.graph import Graph, NodeKind, Polarity
from cogkg.language import HasAttribute, Pronoun, RelationStmt, YesNoIsA, parse_line
from cogkg.oracle import ReplayOracle
from cogkg.snapshot import dumps, loads
from cogkg.vectors import prototype_update, similarity


def report(line: str) -> None:
    print(line)
    conftest.acceptance_lines.append(line)


@pytest.fixture(scope="module")
def table_rows():
    """One integrated bench over the Table-style call counts; criteria 1
    and 2 read different rows of the same run."""
    start = time.perf_counter()
    rows = bench_kg(1_000_000, [1, 10, 100, 1000, 100000, 1000000])
    wall = time.perf_counter() - start
    return rows, wall


def test_criterion_1_lookup_latency(table_rows):
    rows, wall = table_rows
    row = next(r for r in rows if r.calls == 1_000_000)
    assert row.mean_us_per_call <= 2.0, f"mean {row.mean_us_per_call:.3f} us/call over budget"
    assert row.total_ms <= 2000.0, f"total {row.total_ms:.0f} ms over budget"
    assert wall <= 120.0, f"bench wall time {wall:.0f}s over budget"
    report(
        f"PASS criterion 1: 1M lookups on 1M nodes in {row.total_ms:.0f} ms "
        f"({row.mean_us_per_call:.3f} us/call <= 2; bench wall {wall:.0f}s <= 120s)"
    )


def test_criterion_2_scaling_shape(table_rows):
    rows, _ = table_rows
    by_calls = {r.calls: r.total_ms for r in rows}
    ratio = by_calls[1_000_000] / by_calls[100_000]
    assert 5.0 <= ratio <= 20.0, f"total(1M)/total(100k) = {ratio:.2f} outside [5, 20]"
    report(f"PASS criterion 2: total(1M)/total(100k) = {ratio:.2f} in [5, 20]")


def test_criterion_3_baseline_ratio():
    integrated = bench_kg(100_000, [100_000], backend="integrated")[0]
    naive = bench_kg(100_000, [100_000], backend="naive")[0]
    speedup = naive.total_ms / integrated.total_ms
    assert speedup >= 100.0, f"speedup {speedup:.0f}x below 100x"
    report(
        f"PASS criterion 3: integrated {integrated.total_ms:.0f} ms vs naive "
        f"{naive.total_ms:.0f} ms at 100k nodes/calls = {speedup:.0f}x >= 100x"
    )


def test_criterion_4_tina_scenario(lexicon):
    start = time.perf_counter()
    session = Session(lexicon=lexicon)
    session.ingest(parse_line("Tina wants a dog and a cat.", lexicon))
    signals = session.ingest(parse_line("Actually, Tina only wants a cat.", lexicon))
    answer = session.answer(parse_line("What does Tina want?", lexicon))
    wall = time.perf_counter() - start

    assert answer.text == "a cat"
    tina = next(iter(session.graph.find_by_label("Tina")))
    dog = next(iter(session.graph.find_by_label("dog")))
    dog_edges = [
        e for e, other in session.graph.neighbors(tina, "want", "out", include_invalid=True)
        if other == dog
    ]
    assert dog_edges and all(e.valid is False for e in dog_edges)
    assert signals.surprise >= 0.9
    assert wall < 1.0
    report(
        f"PASS criterion 4: Tina revision -> 'a cat', dog edge invalid, "
        f"surprise {signals.surprise:.2f} >= 0.9, in {wall * 1000:.0f} ms"
    )


def test_criterion_5_oracle_equivalence(lexicon):
    start = time.perf_counter()
    ontology = default_ontology_lines()
    total = matched = 0
    for seed in range(50):
        corpus = gen_corpus(8, 100, 100, seed=seed)
        session = Session(lexicon=lexicon)
        session.load_ontology(ontology)
        for line in corpus.statements:
            session.ingest(parse_line(line, lexicon))
            assert session.last_rejection is None, (seed, line)
        for q_text, want in zip(corpus.questions, corpus.expected):
            got = session.answer(parse_line(q_text, lexicon)).text
            total += 1
            matched += normalize_text(got) == normalize_text(want)
    wall = time.perf_counter() - start
    assert matched == total == 5000, f"{matched}/{total} matched"
    assert wall < 60.0, f"{wall:.1f}s over the 1-minute budget"
    report(
        f"PASS criterion 5: 50 corpora, {matched}/{total} answers equal the "
        f"replay oracle, in {wall:.1f}s < 60s"
    )


def _two_hop_count(statements, questions, expected, lexicon) -> int:
    """Independent recount: questions whose yes-answer needs >= 2 is-a hops."""
    oracle = ReplayOracle()
    for raw in default_ontology_lines():
        raw = raw.strip()
        if raw and not raw.startswith("#"):
            oracle.apply(parse_line(raw, lexicon))
    for line in statements:
        oracle.apply(parse_line(line, lexicon))
    count = 0
    for q_text, want in zip(questions, expected):
        q = parse_line(q_text, lexicon)
        if isinstance(q.form, YesNoIsA) and want == "yes":
            subject = q.form.subject
            skey = ("name", subject.name) if hasattr(subject, "name") else ("the", subject.noun)
            hops = oracle.isa_hops(skey, q.form.noun)
            if hops is not None and hops >= 2:
                count += 1
    return count


def test_criterion_6_bundled_corpus(lexicon):
    statements = [l for l in data.read_text("corpus_statements.txt").splitlines() if l]
    questions = [l for l in data.read_text("corpus_questions.txt").splitlines() if l]
    expected = [l for l in data.read_text("corpus_expected.txt").splitlines() if l]
    assert len(statements) == 120 and len(questions) == 150

    revisions = pronouns = 0
    for line in statements:
        form = parse_line(line, lexicon).form
        if getattr(form, "only", False) or getattr(form, "polarity", None) == Polarity.NEGATE:
            revisions += 1
        if isinstance(form, (RelationStmt, HasAttribute)) or hasattr(form, "subject"):
            if hasattr(form, "subject") and isinstance(form.subject, Pronoun):
                pronouns += 1
    two_hop = _two_hop_count(statements, questions, expected, lexicon)
    assert revisions >= 20, f"only {revisions} revision/negation statements"
    assert pronouns >= 10, f"only {pronouns} pronoun statements"
    assert two_hop >= 20, f"only {two_hop} two-hop inheritance questions"

    rep = bench_qa(
        data.file_path("corpus_statements.txt"),
        data.file_path("corpus_questions.txt"),
        data.file_path("corpus_expected.txt"),
    )
    assert rep.accuracy == 1.0, rep.format()
    report(
        f"PASS criterion 6: bundled 120/150 corpus at 100% "
        f"({revisions} revisions, {pronouns} pronoun statements, {two_hop} two-hop questions)"
    )


def test_criterion_7_concept_formation():
    exact = 0
    for seed in range(100):
        graph = Graph()
        schema = motion_schema(graph)
        ids = []
        for kind in ("bouncing", "rolling", "floating"):
            for v in gen_percepts(schema, kind, 30, 0.05, seed=seed):
                ids.append(graph.add_node(NodeKind.ENTITY, "", v))
        if len(form_concepts(graph, ids)) == 3:
            exact += 1
    assert exact >= 95, f"exactly-3-concepts in only {exact}/100 seeds"

    # abstraction over two formed concepts: intersected schema, batch-mean vector
    graph = Graph()
    full = graph.define_schema("fas", [("f", 0, 10), ("a", 0, 5), ("s", 0, 20)])
    lite = graph.define_schema("fa", [("f", 0, 10), ("a", 0, 5)])
    c1 = graph.add_node(NodeKind.CONCEPT, "c1", full.vector([2.0, 4.0, 9.0]))
    c2 = graph.add_node(NodeKind.CONCEPT, "c2", lite.vector([6.0, 2.0]))
    out = graph.node(abstract(graph, [c1, c2], "both")).vector
    assert [d.name for d in out.schema.dims] == ["f", "a"]
    for i, name in enumerate(("f", "a")):
        batch = math.fsum([graph.node(c1).vector[name], graph.node(c2).vector[name]]) / 2
        assert abs(out.values[i] - batch) <= 1e-9 * max(1.0, abs(batch))
    report(f"PASS criterion 7: 3 concepts in {exact}/100 seeds (>= 95); abstraction checks out")


# ---------------------------------------------------------------------------
# criterion 8: the property suites


def test_criterion_8a_activation_boundedness_fuzz():
    rng = random.Random(123)
    graph = Graph()
    ids = [graph.add_node(NodeKind.CONCEPT, f"n{i}") for i in range(50)]
    for _ in range(150):
        graph.add_edge(rng.choice(ids), "r", rng.choice(ids))
    state = ActivationState()
    for _ in range(10_000):
        op = rng.random()
        if op < 0.55:
            state.stimulate(graph, rng.choice(ids), rng.uniform(0.01, 1.0))
        elif op < 0.97:
            state.tick(graph)
        else:
            state.reset()
        assert all(0.0 < v <= 1.0 for v in state.levels.values())
    # dissipation, as the dynamics guarantee it: pure decay strictly shrinks,
    # and acyclic graphs drain to empty with no stimulation
    lonely = Graph()
    node = lonely.add_node(NodeKind.CONCEPT, "x")
    s2 = ActivationState()
    s2.stimulate(lonely, node, 1.0)
    while s2.levels:
        before = s2.total()
        s2.tick(lonely)
        assert s2.total() < before
    # Chains have long transients (the wave amplifies before decay wins),
    # so the drain budget is generous; what matters is that it empties.
    dag = Graph()
    chain = [dag.add_node(NodeKind.CONCEPT, f"c{i}") for i in range(20)]
    for a, b in zip(chain, chain[1:]):
        dag.add_edge(a, "r", b)
    s3 = ActivationState()
    for nid in chain[:5]:
        s3.stimulate(dag, nid, 1.0)
    for _ in range(1000):
        if not s3.levels:
            break
        s3.tick(dag)
    assert s3.levels == {}
    report("PASS criterion 8a: activation bounded under 10k-op fuzz; decay dissipates")


def test_criterion_8b_similarity_axioms():
    graph = Graph()
    schema = motion_schema(graph)
    rng = random.Random(7)
    for _ in range(2000):
        a = schema.vector([rng.uniform(0, 10), rng.uniform(0, 5), rng.uniform(0, 20)])
        b = schema.vector([rng.uniform(0, 10), rng.uniform(0, 5), rng.uniform(0, 20)])
        s = similarity(a, b)
        assert 0.0 <= s <= 1.0
        assert abs(s - similarity(b, a)) < 1e-12
        assert similarity(a, a) == 1.0
    base = schema.vector([5, 2.5, 10])
    gaps = [similarity(base, schema.vector([5 + g, 2.5, 10])) for g in (0, 1, 2, 3, 4, 5)]
    assert all(x > y for x, y in zip(gaps, gaps[1:]))
    report("PASS criterion 8b: similarity identity/symmetry/range/monotonicity hold")


def test_criterion_8c_prototype_incremental_equals_batch():
    graph = Graph()
    schema = motion_schema(graph)
    rng = random.Random(11)
    for _ in range(50):
        samples = [
            schema.vector([rng.uniform(0, 10), rng.uniform(0, 5), rng.uniform(0, 20)])
            for _ in range(rng.randrange(1, 60))
        ]
        proto = samples[0]
        for n, s in enumerate(samples[1:], start=2):
            proto = prototype_update(proto, s, n)
        for d in range(3):
            batch = math.fsum(s.values[d] for s in samples) / len(samples)
            assert abs(proto.values[d] - batch) <= 1e-9 * max(1.0, abs(batch))
    report("PASS criterion 8c: incremental prototype equals batch mean (<= 1e-9 relative)")


def test_criterion_8d_parser_totality_fuzz(lexicon):
    rng = random.Random(99)
    words = ["Tina", "wants", "a", "an", "the", "dog", "cat", "is", "not", "red",
             "does", "only", "and", "actually", "what", "who", "Ωmega", "x0", ","]
    marks = [".", "?", "", "!"]
    for _ in range(100_000):
        if rng.random() < 0.5:
            text = "".join(rng.choice("abcZQ .,?!'\"\\\t\n0:é") for _ in range(rng.randrange(25)))
        else:
            text = " ".join(rng.choice(words) for _ in range(rng.randrange(8))) + rng.choice(marks)
        try:
            parse_line(text, lexicon)
        except NoParseError:
            pass  # the only permitted failure mode
    report("PASS criterion 8d: parser total over 100,000 fuzz inputs")


def test_criterion_8e_snapshot_determinism_and_answers(lexicon):
    session = Session(lexicon=lexicon)
    session.load_ontology(default_ontology_lines())
    for line in (
        "Tina wants a dog and a cat.",
        "Actually, Tina only wants a cat.",
        "Rover is a dog.",
        "The ball is red.",
    ):
        session.ingest(parse_line(line, lexicon))
    first = dumps(session.graph)
    assert dumps(session.graph) == first, "double save not byte-identical"
    assert dumps(loads(first)) == first, "save(load(save)) not byte-identical"
    questions = ["What does Tina want?", "Is Rover an animal?", "Is the ball red?"]
    before = [session.answer(parse_line(q, lexicon)).text for q in questions]
    restored = Session(graph=loads(first), lexicon=lexicon)
    after = [restored.answer(parse_line(q, lexicon)).text for q in questions]
    assert before == after == ["a cat", "Yes.", "Yes."]
    report("PASS criterion 8e: snapshot double-save byte-identical; answers preserved")


def test_criterion_8f_inheritance_equals_bfs(lexicon):
    rng = random.Random(31337)
    checked = 0
    for n in (100, 500, 1000):
        session = Session(lexicon=lexicon, seed_concepts=())
        graph = session.graph
        concepts = [graph.add_node(NodeKind.CONCEPT, f"c{i}") for i in range(n)]
        adjacency: dict[int, set[int]] = {c: set() for c in concepts}
        for _ in range(2 * n):
            a, b = rng.randrange(n), rng.randrange(n)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            graph.add_edge(concepts[a], "is-a", concepts[b], Polarity.AFFIRM, 1.0, 0)
            adjacency[concepts[a]].add(concepts[b])
        entity = graph.add_node(NodeKind.ENTITY, "E")
        roots = rng.sample(concepts, 4)
        for r in roots:
            graph.add_edge(entity, "instance-of", r, Polarity.AFFIRM, 1.0, 0)
        reachable = set(roots)
        frontier = list(roots)
        while frontier:
            node = frontier.pop()
            for nxt in adjacency[node]:
                if nxt not in reachable:
                    reachable.add(nxt)
                    frontier.append(nxt)
        for target in rng.sample(concepts, 60):
            question = parse_line(f"Is E a c{concepts.index(target)}?", lexicon)
            got = session.answer(question).verdict
            want = Verdict.YES if target in reachable else Verdict.UNKNOWN
            assert got == want
            checked += 1
    report(f"PASS criterion 8f: inheritance equals BFS reachability on {checked} random-DAG queries")
