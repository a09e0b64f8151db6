#!/usr/bin/env python3
"""Regenerate the bundled QA corpus (src/cogkg/data/corpus_*.txt).

The bundled corpus must have 120 statements / 150 questions with at least
20 revision/negation statements, 20 inheritance questions needing two or
more is-a hops, and 10 pronoun statements; it must also score 100% under
bench_qa. This script searches seeds deterministically from 0 upward and
freezes the first one that satisfies every constraint with margin.
"""

import sys
from pathlib import Path

from cogkg.bench import bench_qa
from cogkg.corpus import CorpusRates, default_ontology_lines, gen_corpus
from cogkg.graph import Polarity
from cogkg.language import (
    HasAttribute,
    Lexicon,
    Pronoun,
    RelationStmt,
    Statement,
    YesNoIsA,
    parse_line,
)
from cogkg.oracle import ReplayOracle

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "cogkg" / "data"

RATES = CorpusRates(relation=0.42, revision=0.23, taxonomy=0.20, attribute=0.15,
                    pronoun=0.30, multi_object=0.35, repeat=0.05)


def corpus_structure(corpus, lexicon):
    """Recount the criterion-6 structure from the rendered text alone."""
    revisions = pronouns = 0
    for line in corpus.statements:
        st = parse_line(line, lexicon)
        form = st.form
        if getattr(form, "only", False) or getattr(form, "polarity", None) == Polarity.NEGATE:
            revisions += 1
        if not isinstance(form, type(None)) and hasattr(form, "subject") and isinstance(form.subject, Pronoun):
            pronouns += 1

    oracle = ReplayOracle()
    for raw in default_ontology_lines():
        raw = raw.strip()
        if raw and not raw.startswith("#"):
            oracle.apply(parse_line(raw, lexicon))
    for line in corpus.statements:
        oracle.apply(parse_line(line, lexicon))
    two_hop = 0
    for q_text, expected in zip(corpus.questions, corpus.expected):
        q = parse_line(q_text, lexicon)
        if isinstance(q.form, YesNoIsA) and expected == "yes":
            subject = q.form.subject
            skey = ("name", subject.name) if hasattr(subject, "name") else ("the", subject.noun)
            hops = oracle.isa_hops(skey, q.form.noun)
            if hops is not None and hops >= 2:
                two_hop += 1
    return revisions, pronouns, two_hop


def main() -> int:
    lexicon = Lexicon.default()
    for seed in range(500):
        corpus = gen_corpus(10, 120, 150, seed=seed, rates=RATES, min_two_hop_questions=25)
        revisions, pronouns, two_hop = corpus_structure(corpus, lexicon)
        if revisions >= 22 and pronouns >= 12 and two_hop >= 22:
            break
    else:
        print("no seed satisfied the constraints", file=sys.stderr)
        return 1

    names = ("corpus_statements.txt", "corpus_questions.txt", "corpus_expected.txt")
    for name, lines in zip(names, (corpus.statements, corpus.questions, corpus.expected)):
        (DATA_DIR / name).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"seed {seed}: revisions={revisions} pronouns={pronouns} two_hop={two_hop}")

    report = bench_qa(
        DATA_DIR / "corpus_statements.txt",
        DATA_DIR / "corpus_questions.txt",
        DATA_DIR / "corpus_expected.txt",
    )
    print(report.format().splitlines()[0])
    return 0 if report.accuracy == 1.0 else 1


if __name__ == "__main__":
    sys.exit(main())
