"""Benchmark runners: label-lookup latency and QA accuracy.

The lookup bench compares the integrated hash-indexed graph against a
bundled NaiveScan baseline that re-examines every node on every call
(a vectorized column scan, standing in for an unindexed external store).
Timing covers only the lookup loop; query labels are pre-generated and the
index is warmed with 100 untimed calls first.
"""

from __future__ import annotations

import logging
import random
import threading
import time
from dataclasses import dataclass, field

import numpy as np

from .cognition import Session, normalize_text
from .corpus import read_lines
from .errors import NoParseError
from .graph import Graph, NodeKind
from .language import Lexicon, Question, Statement, parse_line

logger = logging.getLogger(__name__)

__all__ = [
    "BenchRow",
    "NaiveScanBackend",
    "build_label_graph",
    "bench_kg",
    "format_bench_rows",
    "QaReport",
    "bench_qa",
]

TABLE_CALL_COUNTS = (1, 10, 100, 1000, 100000, 1000000)


@dataclass(frozen=True)
class BenchRow:
    calls: int
    total_ms: float
    mean_us_per_call: float
    backend: str


class NaiveScanBackend:
    """Unindexed baseline: every lookup scans the full node list."""

    def __init__(self, labels: list[str]):
        self._labels = np.array([s.encode("utf-8") for s in labels], dtype="S24")
        self._ids = np.arange(len(labels), dtype=np.uint64)

    def find_by_label(self, label: str) -> set[int]:
        hits = self._ids[self._labels == label.encode("utf-8")]
        return set(int(i) for i in hits)


def build_label_graph(nodes: int) -> Graph:
    """A graph of ``nodes`` Concept nodes labeled node-0 .. node-(n-1)."""
    graph = Graph()
    add = graph.add_node
    kind = NodeKind.CONCEPT
    try:
        for i in range(nodes):
            add(kind, f"node-{i}")
    except MemoryError:
        raise MemoryError(
            f"building a {nodes}-node graph exceeded available memory; "
            f"retry with fewer nodes (e.g. --nodes {nodes // 10})"
        ) from None
    return graph


def _run_lookups(find, queries, threads: int) -> float:
    """Wall-clock nanoseconds for all lookups, optionally split over reader
    threads (safe: lookups never mutate)."""
    if threads <= 1:
        start = time.perf_counter_ns()
        for q in queries:
            find(q)
        return time.perf_counter_ns() - start

    chunk = (len(queries) + threads - 1) // threads
    parts = [queries[i * chunk:(i + 1) * chunk] for i in range(threads)]
    workers = [
        threading.Thread(target=lambda p=part: [find(q) for q in p])
        for part in parts if part
    ]
    start = time.perf_counter_ns()
    for w in workers:
        w.start()
    for w in workers:
        w.join()
    return time.perf_counter_ns() - start


def bench_kg(
    nodes: int,
    call_counts=TABLE_CALL_COUNTS,
    backend: str = "integrated",
    threads: int = 1,
    seed: int = 0,
) -> list[BenchRow]:
    """Time uniformly random existing-label lookups on a fresh store."""
    if backend == "integrated":
        store = build_label_graph(nodes)
    elif backend == "naive":
        store = NaiveScanBackend([f"node-{i}" for i in range(nodes)])
    else:
        raise ValueError(f"backend must be 'integrated' or 'naive', got {backend!r}")
    find = store.find_by_label

    rng = random.Random(seed)
    for _ in range(100):  # warm-up, untimed
        find(f"node-{rng.randrange(nodes)}")

    rows = []
    for calls in call_counts:
        queries = [f"node-{rng.randrange(nodes)}" for _ in range(calls)]
        elapsed_ns = _run_lookups(find, queries, threads)
        rows.append(
            BenchRow(
                calls=calls,
                total_ms=elapsed_ns / 1e6,
                mean_us_per_call=elapsed_ns / 1e3 / calls,
                backend=backend,
            )
        )
        logger.info("bench kg %s: %d calls in %.3f ms", backend, calls, elapsed_ns / 1e6)
    return rows


def format_bench_rows(rows: list[BenchRow]) -> str:
    lines = [f"{'calls':>10}  {'total ms':>12}  {'mean us/call':>12}  backend"]
    for r in rows:
        lines.append(f"{r.calls:>10}  {r.total_ms:>12.3f}  {r.mean_us_per_call:>12.3f}  {r.backend}")
    return "\n".join(lines)


# ----------------------------------------------------------------------
# QA accuracy


@dataclass
class QaReport:
    total: int
    correct: int
    mismatches: list[tuple[str, str, str]] = field(default_factory=list)  # question, got, expected
    statement_errors: list[tuple[int, str]] = field(default_factory=list)  # line no, error

    @property
    def accuracy(self) -> float | None:
        return None if self.total == 0 else self.correct / self.total

    def format(self) -> str:
        if self.total == 0:
            return "0 questions"
        lines = [f"accuracy: {100.0 * self.accuracy:.2f}% ({self.correct}/{self.total})"]
        for line_no, err in self.statement_errors:
            lines.append(f"  statement {line_no}: {err}")
        for question, got, expected in self.mismatches:
            lines.append(f"  MISMATCH {question!r}: got {got!r}, expected {expected!r}")
        return "\n".join(lines)


def bench_qa(
    statements_path,
    questions_path,
    expected_path,
    ontology_path=None,
    lexicon: Lexicon | None = None,
) -> QaReport:
    """Seed a fresh session with the ontology, teach the statements, answer
    the questions, and score by exact normalized match."""
    lexicon = lexicon or Lexicon.default()
    statements = read_lines(statements_path)
    questions = read_lines(questions_path)
    expected = read_lines(expected_path)
    if len(expected) != len(questions):
        raise ValueError(
            f"{len(questions)} questions but {len(expected)} expected answers"
        )

    session = Session(lexicon=lexicon)
    if ontology_path is not None:
        ontology_lines = read_lines(ontology_path)
    else:
        from .corpus import default_ontology_lines

        ontology_lines = default_ontology_lines()
    session.load_ontology(ontology_lines)

    report = QaReport(total=len(questions), correct=0)
    for line_no, text in enumerate(statements, start=1):
        try:
            parsed = parse_line(text, lexicon)
        except NoParseError as exc:
            report.statement_errors.append((line_no, str(exc)))
            continue
        if not isinstance(parsed, Statement):
            report.statement_errors.append((line_no, "not a statement"))
            continue
        session.ingest(parsed)
        if session.last_rejection is not None:
            report.statement_errors.append((line_no, session.last_rejection))

    for text, want in zip(questions, expected):
        try:
            parsed = parse_line(text, lexicon)
            if not isinstance(parsed, Question):
                raise NoParseError("not a question", 0)
            got = session.answer(parsed).text
        except NoParseError as exc:
            got = f"<no parse: {exc}>"
        if normalize_text(got) == normalize_text(want):
            report.correct += 1
        else:
            report.mismatches.append((text, got, want))
    return report
