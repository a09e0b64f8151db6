"""The ``cog`` command line.

    cog bench kg --nodes N --calls 1,10,100,1000,100000,1000000 --backend integrated|naive [--threads T]
    cog bench qa --statements F --questions F --expected F [--ontology F]
    cog gen percepts --kind K --n N --noise S --seed X [-o F]
    cog gen corpus --entities N --statements N --questions N --seed X -o DIR
    cog repl [--load SNAPSHOT]
    cog serve --port P [--load SNAPSHOT]
"""

from __future__ import annotations

import argparse
import sys

from .activation import ActivationParams
from .cognition import Session
from .concepts import ConceptParams
from .corpus import CorpusRates, gen_corpus, gen_percepts, motion_schema, write_corpus
from .graph import Graph
from .snapshot import load_snapshot


def _add_activation_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--decay", type=float, default=0.8, help="per-tick decay factor")
    parser.add_argument("--spread", type=float, default=0.5, help="spread factor along out-edges")
    parser.add_argument("--floor", type=float, default=0.01, help="levels below this are dropped")
    parser.add_argument("--theta", type=float, default=0.1, help="working-set threshold")


def _activation_params(args) -> ActivationParams:
    return ActivationParams(args.decay, args.spread, args.floor, args.theta)


def _session_factory(args):
    params = _activation_params(args)

    def factory() -> Session:
        if args.load:
            session = Session(graph=load_snapshot(args.load), activation_params=params)
        else:
            session = Session(activation_params=params)
            from .corpus import default_ontology_lines

            session.load_ontology(default_ontology_lines())
        return session

    return factory


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cog", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="benchmarks").add_subparsers(dest="bench_kind", required=True)
    kg = bench.add_parser("kg", help="label-lookup latency")
    kg.add_argument("--nodes", type=int, default=1_000_000)
    kg.add_argument("--calls", default="1,10,100,1000,100000,1000000",
                    help="comma-separated call counts")
    kg.add_argument("--backend", choices=["integrated", "naive"], default="integrated")
    kg.add_argument("--threads", type=int, default=1)
    kg.add_argument("--seed", type=int, default=0)

    qa = bench.add_parser("qa", help="QA accuracy against expected answers")
    qa.add_argument("--statements", required=True)
    qa.add_argument("--questions", required=True)
    qa.add_argument("--expected", required=True)
    qa.add_argument("--ontology", default=None)

    gen = sub.add_parser("gen", help="generators").add_subparsers(dest="gen_kind", required=True)
    percepts = gen.add_parser("percepts", help="synthetic motion percepts")
    percepts.add_argument("--kind", required=True, choices=["bouncing", "rolling", "floating"])
    percepts.add_argument("--n", type=int, required=True)
    percepts.add_argument("--noise", type=float, default=0.05)
    percepts.add_argument("--seed", type=int, default=0)
    percepts.add_argument("-o", "--output", default=None)

    corpus = gen.add_parser("corpus", help="QA corpus with oracle answers")
    corpus.add_argument("--entities", type=int, required=True)
    corpus.add_argument("--statements", type=int, required=True)
    corpus.add_argument("--questions", type=int, required=True)
    corpus.add_argument("--seed", type=int, required=True)
    corpus.add_argument("--pronoun-rate", type=float, default=CorpusRates.pronoun)
    corpus.add_argument("--revision-rate", type=float, default=CorpusRates.revision)
    corpus.add_argument("-o", "--output", required=True, help="output directory")

    repl_p = sub.add_parser("repl", help="interactive teaching session")
    repl_p.add_argument("--load", default=None, help="snapshot to start from")
    repl_p.add_argument("--tau-match", type=float, default=ConceptParams.tau_match)
    repl_p.add_argument("--tau-cluster", type=float, default=ConceptParams.tau_cluster)
    _add_activation_flags(repl_p)

    serve_p = sub.add_parser("serve", help="HTTP service for the companion UI")
    serve_p.add_argument("--port", type=int, required=True)
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--load", default=None)
    _add_activation_flags(serve_p)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "bench" and args.bench_kind == "kg":
        from .bench import bench_kg, format_bench_rows

        call_counts = [int(c) for c in args.calls.split(",") if c]
        rows = bench_kg(args.nodes, call_counts, args.backend, args.threads, args.seed)
        print(format_bench_rows(rows))
        return 0

    if args.command == "bench" and args.bench_kind == "qa":
        from .bench import bench_qa

        report = bench_qa(args.statements, args.questions, args.expected, args.ontology)
        print(report.format())
        return 0

    if args.command == "gen" and args.gen_kind == "percepts":
        schema = motion_schema(Graph())
        vectors = gen_percepts(schema, args.kind, args.n, args.noise, args.seed)
        lines = [" ".join(f"{v:.6f}" for v in vec.values) for vec in vectors]
        text = "\n".join(lines) + "\n"
        if args.output:
            with open(args.output, "w", encoding="utf-8") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
        return 0

    if args.command == "gen" and args.gen_kind == "corpus":
        rates = CorpusRates(
            relation=1.0 - args.revision_rate - CorpusRates.taxonomy - CorpusRates.attribute,
            revision=args.revision_rate,
            pronoun=args.pronoun_rate,
        )
        corpus = gen_corpus(args.entities, args.statements, args.questions, args.seed, rates)
        write_corpus(corpus, args.output)
        print(f"wrote {len(corpus.statements)} statements / {len(corpus.questions)} questions "
              f"to {args.output} (stats: {corpus.stats})")
        return 0

    if args.command == "repl":
        from .repl import repl

        factory = _session_factory(args)
        return repl(factory())

    if args.command == "serve":
        from .server import serve

        server = serve(_session_factory(args), args.port, args.host)
        print(f"serving on http://{args.host}:{args.port} (Ctrl-C to stop)")
        try:
            while True:
                import time

                time.sleep(3600)
        except KeyboardInterrupt:
            server.shutdown()
            return 0

    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
