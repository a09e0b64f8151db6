#!/usr/bin/env python3
"""Generate a QA corpus with oracle ground truth, run the accuracy
benchmark, and show the bundled corpus score.

Run:  python3 demos/05_qa_benchmark.py
"""

import tempfile
from pathlib import Path

from cogkg import data
from cogkg.bench import bench_qa
from cogkg.corpus import gen_corpus, write_corpus

print("=== a fresh generated corpus ===")
corpus = gen_corpus(num_entities=8, num_statements=60, num_questions=40, seed=12)
print("sample statements:")
for line in corpus.statements[:5]:
    print("   ", line)
print("sample questions with oracle answers:")
for q, a in list(zip(corpus.questions, corpus.expected))[:5]:
    print(f"    {q}  ->  {a}")

with tempfile.TemporaryDirectory() as tmp:
    write_corpus(corpus, tmp)
    report = bench_qa(
        Path(tmp) / "statements.txt", Path(tmp) / "questions.txt", Path(tmp) / "expected.txt"
    )
print("\ngenerated corpus:", report.format().splitlines()[0])

print("\n=== the bundled 120-statement / 150-question corpus ===")
report = bench_qa(
    data.file_path("corpus_statements.txt"),
    data.file_path("corpus_questions.txt"),
    data.file_path("corpus_expected.txt"),
)
print("bundled corpus:  ", report.format().splitlines()[0])
