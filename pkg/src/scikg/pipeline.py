"""Stage orchestration: each stage reads checkpoints, computes, writes checkpoints.

Stages run in a fixed order; any stage can be re-run alone against the
checkpoint directory of a previous run and will reproduce identical artifacts.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Callable, Iterable

from . import graph as graph_mod
from . import merge as merge_mod
from . import refine as refine_mod
from . import relations as relations_mod
from . import select as select_mod
from .ingest import (
    PipelineConfig,
    load_background_counts,
    load_embeddings,
    load_label_list,
    load_lexical_taxonomy,
    load_relation_map_file,
    load_sentence_annotations,
    load_topic_ontology,
)
from .integrate import (
    CorpusAggregate,
    PairDocumentIndex,
    SentenceExtraction,
    aggregate_corpus,
    integrate_sentence,
)
from .model import CandidateTriple, PipelineError, SupportedTriple

log = logging.getLogger(__name__)

STAGES = (
    "ingest",
    "integrate",
    "refine",
    "merge",
    "collapse",
    "map",
    "select",
    "enhance",
    "serialize",
)


class StageError(PipelineError):
    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage} failed: {cause}")


# ---------------------------------------------------------------------------
# Checkpoint IO


def _write_lines(path: Path, records: Iterable[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    body = "\n".join(records)
    path.write_text(body + ("\n" if body else ""), encoding="utf-8")


def _write_jsonl(path: Path, records: Iterable[dict]) -> None:
    _write_lines(path, (json.dumps(r, sort_keys=True) for r in records))


def _read_jsonl(path: Path) -> list[dict]:
    if not path.exists():
        raise PipelineError(f"missing checkpoint file {path}; run the earlier stage first")
    out = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(json.loads(line))
    return out


def _extraction_to_record(extraction: SentenceExtraction) -> dict:
    return {
        "doc_id": extraction.doc_id,
        "sent_idx": extraction.sent_idx,
        "entities": [
            {"label": label, "types": list(types)}
            for label, types in sorted(extraction.entities.items())
        ],
        "ef": [list(t) for t in extraction.ef],
        "oie": [list(t) for t in extraction.oie],
        "pos": [list(t) for t in extraction.pos],
    }


def _extraction_from_record(record: dict) -> SentenceExtraction:
    return SentenceExtraction(
        doc_id=record["doc_id"],
        sent_idx=record["sent_idx"],
        entities={e["label"]: tuple(e["types"]) for e in record["entities"]},
        ef=tuple(tuple(t) for t in record["ef"]),
        oie=tuple(tuple(t) for t in record["oie"]),
        pos=tuple(tuple(t) for t in record["pos"]),
    )


def _write_extractions(path: Path, extractions: Iterable[SentenceExtraction]) -> None:
    ordered = sorted(extractions, key=lambda e: (e.doc_id, e.sent_idx))
    _write_jsonl(path, (_extraction_to_record(e) for e in ordered))


def _read_extractions(path: Path) -> list[SentenceExtraction]:
    return [_extraction_from_record(r) for r in _read_jsonl(path)]


def _write_aggregate(directory: Path, aggregate: CorpusAggregate) -> None:
    records = []
    for route in (aggregate.r_ef, aggregate.r_oie, aggregate.r_pos):
        for t in route:
            records.append(
                {
                    "s": t.subject,
                    "r": t.relation,
                    "o": t.object,
                    "source": t.source,
                    "doc_ids": sorted(t.doc_ids),
                }
            )
    records.sort(key=lambda r: (r["source"], r["s"], r["r"], r["o"]))
    _write_jsonl(directory / "triples.jsonl", records)
    _write_jsonl(
        directory / "pair_index.jsonl",
        (
            {"a": a, "b": b, "doc_ids": sorted(docs)}
            for (a, b), docs in aggregate.index.items()
        ),
    )


def _read_aggregate(directory: Path) -> CorpusAggregate:
    by_route: dict[str, list[CandidateTriple]] = {"EF": [], "OIE": [], "POS": []}
    for record in _read_jsonl(directory / "triples.jsonl"):
        triple = CandidateTriple(
            subject=record["s"],
            relation=record["r"],
            object=record["o"],
            source=record["source"],
            doc_ids=frozenset(record["doc_ids"]),
        )
        by_route[triple.source].append(triple)
    index = PairDocumentIndex(
        {
            (record["a"], record["b"]): frozenset(record["doc_ids"])
            for record in _read_jsonl(directory / "pair_index.jsonl")
        }
    )
    return CorpusAggregate(
        r_ef=tuple(sorted(by_route["EF"], key=lambda t: t.key)),
        r_oie=tuple(sorted(by_route["OIE"], key=lambda t: t.key)),
        r_pos=tuple(sorted(by_route["POS"], key=lambda t: t.key)),
        index=index,
    )


def _supported_to_record(t: SupportedTriple) -> dict:
    return {
        "s": t.subject,
        "r": t.relation,
        "o": t.object,
        "support": t.support,
        "sources": sorted(t.sources),
        "doc_ids": sorted(t.doc_ids),
    }


def _supported_from_record(record: dict) -> SupportedTriple:
    return SupportedTriple(
        subject=record["s"],
        relation=record["r"],
        object=record["o"],
        support=record["support"],
        sources=frozenset(record["sources"]),
        doc_ids=frozenset(record["doc_ids"]),
    )


def _write_supported(path: Path, triples: Iterable[SupportedTriple]) -> None:
    ordered = sorted(triples, key=lambda t: (t.key, sorted(t.sources)))
    _write_jsonl(path, (_supported_to_record(t) for t in ordered))


def _read_supported(path: Path) -> list[SupportedTriple]:
    return [_supported_from_record(r) for r in _read_jsonl(path)]


# ---------------------------------------------------------------------------
# Stages


def _resolve_dirs(config: PipelineConfig, from_checkpoint: str | None) -> tuple[Path, Path]:
    out_dir = Path(config.output_dir)
    in_dir = Path(from_checkpoint) if from_checkpoint else out_dir
    return in_dir, out_dir


def stage_ingest(config: PipelineConfig, in_dir: Path, out_dir: Path) -> None:
    annotations = load_sentence_annotations(config.annotations_path)
    table = load_embeddings(config.embeddings_path)
    ontology = load_topic_ontology(config.ontology_path)
    taxonomy = load_lexical_taxonomy(config.taxonomy_path)
    counts = load_background_counts(
        config.counts_in_domain_path,
        config.counts_sibling_path,
        config.counts_out_domain_path,
    )
    manifest = {
        "sentences": len(annotations),
        "documents": len({s.doc_id for s in annotations}),
        "embeddings": len(table),
        "embedding_dimension": table.dimension,
        "topics": len(ontology.topics),
        "synsets": len(taxonomy.synsets),
        "background_labels": [
            len(counts.in_domain.counts),
            len(counts.sibling.counts),
            len(counts.out_domain.counts),
        ],
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "ingest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def stage_integrate(config: PipelineConfig, in_dir: Path, out_dir: Path) -> None:
    annotations = load_sentence_annotations(config.annotations_path)
    ontology = load_topic_ontology(config.ontology_path)
    stopwords = load_label_list(config.stopwords_path)
    aux = load_label_list(config.aux_verbs_path)
    extractions = [
        integrate_sentence(sentence, ontology, stopwords, aux) for sentence in annotations
    ]
    _write_extractions(out_dir / "extractions.jsonl", extractions)


def stage_refine(config: PipelineConfig, in_dir: Path, out_dir: Path) -> None:
    extractions = _read_extractions(in_dir / "extractions.jsonl")
    annotations = load_sentence_annotations(config.annotations_path)
    ontology = load_topic_ontology(config.ontology_path)
    stopwords = load_label_list(config.stopwords_path)
    counts = load_background_counts(
        config.counts_in_domain_path,
        config.counts_sibling_path,
        config.counts_out_domain_path,
    )
    blacklist = (
        load_label_list(config.blacklist_path) if config.blacklist_path else frozenset()
    )
    whitelist = (
        load_label_list(config.whitelist_path) if config.whitelist_path else frozenset()
    )
    effective_whitelist = whitelist | ontology.topics
    overlap = blacklist & effective_whitelist
    if overlap:
        raise PipelineError(f"blacklist overlaps whitelisted labels: {sorted(overlap)[:5]}")
    refined, _ = refine_mod.refine_corpus(
        extractions,
        annotations,
        counts,
        blacklist=blacklist,
        whitelist=effective_whitelist,
        stopwords=stopwords,
        sibling_threshold=config.generic_ratio_sibling,
        out_threshold=config.generic_ratio_out,
    )
    _write_extractions(out_dir / "refined.jsonl", refined)


def stage_merge(config: PipelineConfig, in_dir: Path, out_dir: Path) -> None:
    refined = _read_extractions(in_dir / "refined.jsonl")
    annotations = load_sentence_annotations(config.annotations_path)
    ontology = load_topic_ontology(config.ontology_path)
    vocabulary = merge_mod.build_lemma_vocabulary(annotations)
    aggregate = aggregate_corpus(refined)
    merged, decisions = merge_mod.apply_merging(aggregate, vocabulary, ontology)
    _write_aggregate(out_dir, merged)
    _write_lines(
        out_dir / "merge_decisions.tsv",
        (f"{d.original}\t{d.merged}\t{d.rule}" for d in decisions),
    )


def stage_collapse(config: PipelineConfig, in_dir: Path, out_dir: Path) -> None:
    aggregate = _read_aggregate(in_dir)
    table = load_embeddings(config.embeddings_path)
    t_ef, t_oie, t_pos = relations_mod.collapse_relations(aggregate, table)
    _write_supported(out_dir / "collapsed_ef.jsonl", t_ef)
    _write_supported(out_dir / "collapsed_oie.jsonl", t_oie)
    _write_supported(out_dir / "collapsed_pos.jsonl", t_pos)


def stage_map(config: PipelineConfig, in_dir: Path, out_dir: Path) -> None:
    t_ef = _read_supported(in_dir / "collapsed_ef.jsonl")
    t_oie = _read_supported(in_dir / "collapsed_oie.jsonl")
    t_pos = _read_supported(in_dir / "collapsed_pos.jsonl")
    table = load_embeddings(config.embeddings_path)
    verb_labels = sorted({t.relation for t in t_oie} | {t.relation for t in t_pos})
    partition = relations_mod.cluster_relations(
        verb_labels, table, silhouette_target=config.silhouette_target
    )
    ef_static = load_relation_map_file(config.ef_map_path) if config.ef_map_path else {}
    curated = (
        load_relation_map_file(config.curated_map_path) if config.curated_map_path else {}
    )
    for verb in sorted(set(curated) - set(verb_labels)):
        log.warning("curated map names verb %r that no triple uses", verb)
    relation_map = relations_mod.build_relation_map(
        partition, table, curated_overrides=curated, ef_static=ef_static
    )
    _write_lines(
        out_dir / "relation_clusters.tsv",
        relations_mod.export_relation_clusters(partition, table).splitlines(),
    )
    _write_lines(
        out_dir / "relation_map.tsv",
        (
            f"{source}\t{target}\t{relation_map.provenance.get(source, '')}"
            for source, target in relation_map.items()
        ),
    )
    _write_supported(out_dir / "mapped_ef.jsonl", relations_mod.apply_relation_map(t_ef, relation_map))
    _write_supported(out_dir / "mapped_oie.jsonl", relations_mod.apply_relation_map(t_oie, relation_map))
    _write_supported(out_dir / "mapped_pos.jsonl", relations_mod.apply_relation_map(t_pos, relation_map))


def stage_select(config: PipelineConfig, in_dir: Path, out_dir: Path) -> None:
    t_ef = _read_supported(in_dir / "mapped_ef.jsonl")
    t_oie = _read_supported(in_dir / "mapped_oie.jsonl")
    t_pos = _read_supported(in_dir / "mapped_pos.jsonl")
    table = load_embeddings(config.embeddings_path)
    taxonomy = load_lexical_taxonomy(config.taxonomy_path)
    partition = select_mod.compose_valid(t_ef, t_oie, t_pos, min_support=config.min_support)
    classifier = select_mod.train_consistency_classifier(
        partition.valid,
        table,
        hidden_size=config.hidden_size,
        seed=config.seed,
        learning_rate=config.learning_rate,
        batch_size=config.batch_size,
        max_epochs=config.max_epochs,
        plateau_tolerance=config.plateau_tolerance,
        plateau_patience=config.plateau_patience,
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    classifier.save(out_dir / "classifier.npz")
    admitted, decisions = select_mod.validate_invalid(
        partition.invalid,
        classifier,
        table,
        taxonomy,
        gate_threshold=config.gate_threshold,
    )
    _write_supported(out_dir / "selected.jsonl", list(partition.valid) + admitted)
    _write_jsonl(
        out_dir / "gate_decisions.jsonl",
        (
            {
                "s": d.triple.subject,
                "r": d.triple.relation,
                "o": d.triple.object,
                "predicted": d.predicted,
                "similarity": d.similarity,
                "admitted": d.admitted,
            }
            for d in decisions
        ),
    )


def stage_enhance(config: PipelineConfig, in_dir: Path, out_dir: Path) -> None:
    selected = _read_supported(in_dir / "selected.jsonl")
    ontology = load_topic_ontology(config.ontology_path)
    enhanced = graph_mod.enhance_with_supertopics(
        selected, ontology, to_fixpoint=config.infer_to_fixpoint
    )
    _write_supported(out_dir / "enhanced.jsonl", enhanced)


def stage_serialize(config: PipelineConfig, in_dir: Path, out_dir: Path) -> None:
    enhanced = _read_supported(in_dir / "enhanced.jsonl")
    graph = graph_mod.KnowledgeGraph(namespace=config.namespace, triples=tuple(enhanced))
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "graph.nt").write_bytes(graph_mod.serialize_ntriples(graph))
    (out_dir / "provenance.jsonl").write_bytes(graph_mod.serialize_provenance(graph))
    histogram = graph_mod.support_histogram(enhanced)
    (out_dir / "histogram.json").write_text(
        json.dumps(
            {group: {str(k): v for k, v in table.items()}
             for group, table in histogram.by_group.items()},
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )


_STAGE_FUNCS: dict[str, Callable[[PipelineConfig, Path, Path], None]] = {
    "ingest": stage_ingest,
    "integrate": stage_integrate,
    "refine": stage_refine,
    "merge": stage_merge,
    "collapse": stage_collapse,
    "map": stage_map,
    "select": stage_select,
    "enhance": stage_enhance,
    "serialize": stage_serialize,
}


def run_pipeline(
    config: PipelineConfig,
    stage: str | None = None,
    from_checkpoint: str | None = None,
) -> dict:
    """Run the whole pipeline, or one stage against existing checkpoints."""
    in_dir, out_dir = _resolve_dirs(config, from_checkpoint)
    names = [stage] if stage else list(STAGES)
    if stage and stage not in _STAGE_FUNCS:
        raise PipelineError(f"unknown stage {stage!r}; expected one of {', '.join(STAGES)}")
    # a serialize-only run reads enhanced.jsonl from the checkpoint dir, so the
    # summary must come from there; full runs leave everything in out_dir
    summary_dir = in_dir if stage == "serialize" else out_dir
    for name in names:
        func = _STAGE_FUNCS[name]
        log.info("running stage %s", name)
        try:
            func(config, in_dir, out_dir)
        except PipelineError as exc:
            raise StageError(name, exc) from exc
        except (OSError, ValueError, KeyError) as exc:
            raise StageError(name, exc) from exc
        in_dir = out_dir  # later stages read what earlier stages just wrote
    return summarize(summary_dir) if (stage is None or stage == "serialize") else {}


def summarize(out_dir: Path) -> dict:
    """Entity count, triple counts per source, and the support histogram."""
    enhanced = _read_supported(out_dir / "enhanced.jsonl")
    entities: set[str] = set()
    source_counts: dict[str, int] = {}
    for t in enhanced:
        entities.add(t.subject)
        entities.add(t.object)
        for source in t.sources:
            source_counts[source] = source_counts.get(source, 0) + 1
    histogram = graph_mod.support_histogram(enhanced)
    return {
        "entities": len(entities),
        "triples": len(enhanced),
        "triples_by_source": dict(sorted(source_counts.items())),
        "support_histogram": {
            group: dict(table) for group, table in histogram.by_group.items()
        },
    }


def export_corpus(config: PipelineConfig, from_checkpoint: str | None = None) -> bytes:
    """Underscore-join multi-word entities in the corpus text (post-refinement)."""
    in_dir, _ = _resolve_dirs(config, from_checkpoint)
    refined = _read_extractions(in_dir / "refined.jsonl")
    annotations = load_sentence_annotations(config.annotations_path)
    universe: set[str] = set()
    for extraction in refined:
        universe.update(extraction.entities)
    return graph_mod.export_underscored_corpus(annotations, universe)
