"""Percept generator determinism and corpus/oracle agreement."""

import pytest

from cogkg.cognition import Session, normalize_text
from cogkg.corpus import (
    CorpusRates,
    PERCEPT_CENTERS,
    default_ontology_lines,
    gen_corpus,
    gen_percepts,
    motion_schema,
    read_lines,
    write_corpus,
)
from cogkg.graph import Graph
from cogkg.language import Question, Statement, parse_line


class TestGenPercepts:
    def test_zero_noise_hits_center(self):
        schema = motion_schema(Graph())
        for kind, center in PERCEPT_CENTERS.items():
            for v in gen_percepts(schema, kind, 5, 0.0, seed=1):
                assert v.values == center

    def test_deterministic_per_seed(self):
        schema = motion_schema(Graph())
        a = gen_percepts(schema, "bouncing", 20, 0.05, seed=42)
        b = gen_percepts(schema, "bouncing", 20, 0.05, seed=42)
        assert [v.values for v in a] == [v.values for v in b]
        c = gen_percepts(schema, "bouncing", 20, 0.05, seed=43)
        assert [v.values for v in a] != [v.values for v in c]

    def test_values_stay_in_range(self):
        schema = motion_schema(Graph())
        for v in gen_percepts(schema, "floating", 200, 0.5, seed=0):
            for value, dim in zip(v.values, schema.dims):
                assert dim.min <= value <= dim.max

    def test_unknown_kind_rejected(self):
        schema = motion_schema(Graph())
        with pytest.raises(ValueError, match="unknown percept kind"):
            gen_percepts(schema, "teleporting", 1, 0.0, seed=0)


class TestGenCorpus:
    def test_deterministic(self):
        a = gen_corpus(5, 40, 30, seed=9)
        b = gen_corpus(5, 40, 30, seed=9)
        assert (a.statements, a.questions, a.expected) == (b.statements, b.questions, b.expected)

    def test_everything_parses(self, lexicon):
        corpus = gen_corpus(6, 80, 60, seed=3)
        for line in corpus.statements:
            assert isinstance(parse_line(line, lexicon), Statement), line
        for line in corpus.questions:
            assert isinstance(parse_line(line, lexicon), Question), line

    def test_expected_count_matches(self):
        corpus = gen_corpus(4, 30, 25, seed=1)
        assert len(corpus.expected) == len(corpus.questions) == 25
        assert len(corpus.statements) == 30

    def test_two_hop_quota_enforced(self):
        corpus = gen_corpus(8, 100, 60, seed=5, min_two_hop_questions=15)
        assert corpus.stats["two_hop_questions"] >= 15

    def test_cognition_matches_oracle_on_sample_seeds(self, lexicon):
        # The full 50-seed equivalence run lives in the acceptance suite.
        for seed in (0, 1, 2):
            corpus = gen_corpus(6, 60, 60, seed=seed)
            session = Session(lexicon=lexicon)
            session.load_ontology(default_ontology_lines())
            for line in corpus.statements:
                session.ingest(parse_line(line, lexicon))
                assert session.last_rejection is None
            for q_text, want in zip(corpus.questions, corpus.expected):
                got = session.answer(parse_line(q_text, lexicon)).text
                assert normalize_text(got) == normalize_text(want), q_text

    def test_mix_rates_validated(self):
        with pytest.raises(ValueError):
            CorpusRates(relation=0.9, revision=0.5, taxonomy=0.1, attribute=0.1)


class TestCorpusFiles:
    def test_write_read_roundtrip(self, tmp_path):
        corpus = gen_corpus(4, 20, 15, seed=2)
        write_corpus(corpus, tmp_path)
        assert read_lines(tmp_path / "statements.txt") == corpus.statements
        assert read_lines(tmp_path / "questions.txt") == corpus.questions
        assert read_lines(tmp_path / "expected.txt") == corpus.expected

    def test_comments_and_blanks_ignored(self, tmp_path):
        path = tmp_path / "lines.txt"
        path.write_text("# comment\n\nTina wants a cat.\n  \n# more\nBob wants a dog.\n")
        assert read_lines(path) == ["Tina wants a cat.", "Bob wants a dog."]
