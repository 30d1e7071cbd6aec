"""Command-line entry points.

``scikg run`` drives the staged pipeline; ``scikg evaluate`` scores a
serialized graph (or any source-combination slice of it) against a gold
standard; ``scikg export-clusters`` and ``scikg export-corpus`` expose the
curation artifacts.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .evaluate import evaluate, format_report_row
from .ingest import LoadError, load_config, load_gold_standard
from .model import PipelineError
from .pipeline import STAGES, export_corpus, run_pipeline

log = logging.getLogger(__name__)


def _add_run_parser(subparsers) -> None:
    parser = subparsers.add_parser("run", help="run the pipeline (all stages or one)")
    parser.add_argument("--config", required=True, help="key=value config file")
    parser.add_argument("--stage", choices=STAGES, help="run a single stage")
    parser.add_argument(
        "--from-checkpoint",
        help="directory holding earlier-stage checkpoints (defaults to the output dir)",
    )
    parser.add_argument("--seed", type=int, help="override the pipeline seed")
    parser.add_argument("--min-support", type=int, help="override the support floor")
    parser.add_argument(
        "--silhouette-target", type=float, help="override the clustering cut target"
    )
    parser.add_argument(
        "--gate-threshold", type=float, help="override the consistency gate threshold"
    )


def _add_evaluate_parser(subparsers) -> None:
    parser = subparsers.add_parser("evaluate", help="score a graph against gold triples")
    parser.add_argument("--graph", required=True, help="provenance.jsonl of a pipeline run")
    parser.add_argument("--gold", required=True, help="gold standard TSV")
    parser.add_argument(
        "--sources",
        help="comma-separated source tags; keeps triples carrying any of them",
    )
    parser.add_argument("--method", default="all", help="method name for the report row")


def _add_export_parsers(subparsers) -> None:
    clusters = subparsers.add_parser(
        "export-clusters", help="write the verb clusters as a curated-map TSV"
    )
    clusters.add_argument("--config", required=True)
    clusters.add_argument("--from-checkpoint")
    clusters.add_argument("--output", help="target file (stdout when omitted)")

    corpus = subparsers.add_parser(
        "export-corpus", help="write the corpus with multi-word entities underscored"
    )
    corpus.add_argument("--config", required=True)
    corpus.add_argument("--from-checkpoint")
    corpus.add_argument("--output", help="target file (stdout when omitted)")


def _run(args) -> int:
    overrides = {
        "seed": args.seed,
        "min_support": args.min_support,
        "silhouette_target": args.silhouette_target,
        "gate_threshold": args.gate_threshold,
    }
    config = load_config(args.config, overrides=overrides)
    summary = run_pipeline(config, stage=args.stage, from_checkpoint=args.from_checkpoint)
    if summary:
        print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _evaluate(args) -> int:
    gold = load_gold_standard(args.gold)
    wanted = None
    if args.sources:
        wanted = {s.strip() for s in args.sources.split(",") if s.strip()}
    predicted = []
    graph_path = Path(args.graph)
    if not graph_path.exists():
        raise LoadError(graph_path, None, "graph file does not exist")
    for line in graph_path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        if wanted is not None and not (set(record["sources"]) & wanted):
            continue
        predicted.append((record["s"], record["p"], record["o"]))
    report = evaluate(predicted, gold)
    print(format_report_row(args.method, report))
    return 0


def _export_clusters(args) -> int:
    config = load_config(args.config)
    source = Path(args.from_checkpoint or config.output_dir) / "relation_clusters.tsv"
    if not source.exists():
        raise PipelineError(f"no cluster checkpoint at {source}; run the map stage first")
    body = source.read_text(encoding="utf-8")
    if args.output:
        Path(args.output).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)
    return 0


def _export_corpus(args) -> int:
    config = load_config(args.config)
    body = export_corpus(config, from_checkpoint=args.from_checkpoint)
    if args.output:
        Path(args.output).write_bytes(body)
    else:
        sys.stdout.write(body.decode("utf-8"))
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = argparse.ArgumentParser(prog="scikg")
    subparsers = parser.add_subparsers(dest="command", required=True)
    _add_run_parser(subparsers)
    _add_evaluate_parser(subparsers)
    _add_export_parsers(subparsers)
    args = parser.parse_args(argv)
    handlers = {
        "run": _run,
        "evaluate": _evaluate,
        "export-clusters": _export_clusters,
        "export-corpus": _export_corpus,
    }
    try:
        return handlers[args.command](args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
