"""Snapshot determinism, round-trips, and corruption reporting."""

import io

import pytest

from cogkg.errors import SnapshotError
from cogkg.graph import Graph, NodeKind, Polarity
from cogkg.snapshot import dumps, load_snapshot, loads, save_snapshot


def tina_graph() -> Graph:
    g = Graph()
    schema = g.define_schema("motion", [("frequency", 0, 10), ("amplitude", 0, 5)])
    tina = g.add_node(NodeKind.ENTITY, "Tina")
    dog = g.add_node(NodeKind.CONCEPT, "dog")
    cat = g.add_node(NodeKind.CONCEPT, "cat")
    g.add_node(NodeKind.PERCEPT, "", schema.vector([1.25, 3.0]))
    e = g.add_edge(tina, "wants", dog, Polarity.AFFIRM, 0.9, 1)
    g.add_edge(tina, "wants", cat, Polarity.AFFIRM, 0.99, 1)
    g.invalidate_edge(e, 2)
    g.add_edge(dog, "is-a", cat, Polarity.NEGATE, 0.5, 3)  # nonsense but exercises polarity
    return g


class TestSave:
    def test_empty_graph_is_header_only(self):
        assert dumps(Graph()) == "KGSNAP 1\n"

    def test_double_save_byte_identical(self):
        g = tina_graph()
        assert dumps(g) == dumps(g)

    def test_save_load_save_byte_identical(self):
        first = dumps(tina_graph())
        assert dumps(loads(first)) == first

    def test_file_roundtrip(self, tmp_path):
        g = tina_graph()
        path = tmp_path / "snap.kg"
        save_snapshot(g, path)
        loaded = load_snapshot(path)
        assert dumps(loaded) == dumps(g)
        # file objects work too
        buf = io.BytesIO()
        save_snapshot(g, buf)
        assert buf.getvalue() == path.read_bytes()


class TestRoundTripContent:
    def test_nodes_edges_schemas_preserved(self):
        g = tina_graph()
        loaded = loads(dumps(g))
        assert [(n.id, n.kind, n.label, n.created_seq) for n in loaded.nodes()] == [
            (n.id, n.kind, n.label, n.created_seq) for n in g.nodes()
        ]
        assert [(e.id, e.src, e.rel, e.dst, e.valid, e.polarity, e.provenance) for e in loaded.edges()] == [
            (e.id, e.src, e.rel, e.dst, e.valid, e.polarity, e.provenance) for e in g.edges()
        ]
        for a, b in zip(g.schemas(), loaded.schemas()):
            assert (a.id, a.name, a.dims) == (b.id, b.name, b.dims)

    def test_certainty_quantized_at_6dp(self):
        g = Graph()
        a = g.add_node(NodeKind.ENTITY, "a")
        b = g.add_node(NodeKind.CONCEPT, "b")
        g.add_edge(a, "r", b, Polarity.AFFIRM, 0.1234567891, 1)
        loaded = loads(dumps(g))
        assert next(loaded.edges()).certainty == pytest.approx(0.123457, abs=5e-7)

    def test_awkward_labels_roundtrip(self):
        g = Graph()
        for label in ('say "hi"', "back\\slash", "new\nline", "two words", "tab\there"):
            g.add_node(NodeKind.ENTITY, label)
        loaded = loads(dumps(g))
        assert [n.label for n in loaded.nodes()] == [n.label for n in g.nodes()]

    def test_counters_continue_after_load(self):
        g = tina_graph()
        loaded = loads(dumps(g))
        nid = loaded.add_node(NodeKind.ENTITY, "new")
        assert nid == g.node_count()  # dense ids continue past the max
        # the sequence counter recovers to the highest seq seen in the file
        assert loaded.current_seq == max(e.provenance for e in g.edges())


class TestCorruption:
    def test_edge_references_missing_node(self):
        text = 'KGSNAP 1\nN 0 Entity "a" 0\nE 0 0 "r" 7 1 A 0.900000 1\n'
        with pytest.raises(SnapshotError) as exc:
            loads(text)
        assert exc.value.line_no == 3
        assert "missing node 7" in str(exc.value)

    def test_version_mismatch(self):
        with pytest.raises(SnapshotError, match="version"):
            loads("KGSNAP 2\n")

    def test_not_a_snapshot(self):
        with pytest.raises(SnapshotError):
            loads("hello world\n")

    def test_malformed_record_reports_line(self):
        text = 'KGSNAP 1\nN 0 Entity "a" 0\nN banana Entity "b" 0\n'
        with pytest.raises(SnapshotError) as exc:
            loads(text)
        assert exc.value.line_no == 3

    def test_unterminated_quote(self):
        with pytest.raises(SnapshotError, match="unterminated"):
            loads('KGSNAP 1\nN 0 Entity "a 0\n')

    def test_duplicate_node_id(self):
        text = 'KGSNAP 1\nN 0 Entity "a" 0\nN 0 Entity "b" 0\n'
        with pytest.raises(SnapshotError, match="duplicate"):
            loads(text)

    def test_section_order_enforced(self):
        text = 'KGSNAP 1\nN 0 Entity "a" 0\nS 0 motion f:0.000000:1.000000\n'
        with pytest.raises(SnapshotError, match="after"):
            loads(text)

    def test_node_with_unknown_schema(self):
        text = 'KGSNAP 1\nN 0 Entity "a" 3 0.500000 0\n'
        with pytest.raises(SnapshotError, match="unknown schema"):
            loads(text)
