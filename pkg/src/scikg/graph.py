"""Graph assembly: super-topic enrichment, serialization, corpus export.

Serialization is deliberately byte-deterministic: stable IRI minting, sorted
statements, sorted provenance records.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ingest import TopicOntology
from .model import PipelineError, SentenceAnnotation, SupportedTriple

log = logging.getLogger(__name__)

SKOS_BROADER_LABEL = "skos:broader"
SKOS_BROADER_IRI = "http://www.w3.org/2004/02/skos/core#broader"


@dataclass(frozen=True)
class KnowledgeGraph:
    """The final triple set under a namespace."""

    namespace: str
    triples: tuple[SupportedTriple, ...]

    def __post_init__(self) -> None:
        if not self.namespace:
            raise ValueError("namespace must be non-empty")
        keys = [t.key for t in self.triples]
        if len(keys) != len(set(keys)):
            raise ValueError("duplicate triples in graph")


def enhance_with_supertopics(
    triples: Sequence[SupportedTriple],
    ontology: TopicOntology,
    to_fixpoint: bool = False,
) -> list[SupportedTriple]:
    """Propagate each triple to the direct super-topics of its object.

    For a triple (a, r, b) and each direct parent p of b, (a, r, p) is added
    unless any existing triple already connects a and p in either direction.
    A single pass over direct parents runs by default; ``to_fixpoint``
    re-applies the rule until nothing new appears.
    """
    current = list(triples)
    while True:
        connected: set[frozenset[str]] = {
            frozenset((t.subject, t.object)) for t in current
        }
        inferred: dict[tuple[str, str, str], set[str]] = {}
        for t in current:
            for parent in ontology.direct_parents(t.object):
                if parent == t.subject:
                    continue
                if frozenset((t.subject, parent)) in connected:
                    continue
                inferred.setdefault((t.subject, t.relation, parent), set()).update(t.doc_ids)
        new = [
            SupportedTriple(
                subject=s,
                relation=r,
                object=o,
                support=0,
                sources=frozenset({"INFERRED"}),
                doc_ids=frozenset(docs),
            )
            for (s, r, o), docs in sorted(inferred.items())
        ]
        current = sorted(current + new, key=lambda t: t.key)
        if not new or not to_fixpoint:
            return current


def _slug(label: str) -> str:
    out = []
    for ch in label.replace(" ", "-"):
        if ("a" <= ch <= "z") or ("0" <= ch <= "9") or ch == "-":
            out.append(ch)
        else:
            out.extend(f"%{byte:02X}" for byte in ch.encode("utf-8"))
    return "".join(out)


def _predicate_iri(namespace: str, relation: str) -> str:
    if relation == SKOS_BROADER_LABEL:
        return SKOS_BROADER_IRI
    return f"{namespace}/rel/{_slug(relation)}"


def serialize_ntriples(graph: KnowledgeGraph) -> bytes:
    """Render the graph as sorted N-Triples lines."""
    namespace = graph.namespace.rstrip("/")
    if not namespace:
        raise PipelineError("namespace must be non-empty")
    lines = [
        f"<{namespace}/{_slug(t.subject)}> "
        f"<{_predicate_iri(namespace, t.relation)}> "
        f"<{namespace}/{_slug(t.object)}> ."
        for t in graph.triples
    ]
    if not lines:
        return b""
    return ("\n".join(sorted(lines)) + "\n").encode("utf-8")


def serialize_provenance(graph: KnowledgeGraph) -> bytes:
    """Line-delimited provenance records aligned with the triple set."""
    records = []
    for t in sorted(graph.triples, key=lambda t: t.key):
        records.append(
            json.dumps(
                {
                    "s": t.subject,
                    "p": t.relation,
                    "o": t.object,
                    "support": t.support,
                    "sources": sorted(t.sources),
                    "doc_ids": sorted(t.doc_ids),
                },
                sort_keys=True,
            )
        )
    if not records:
        return b""
    return ("\n".join(records) + "\n").encode("utf-8")


HISTOGRAM_GROUPS = ("EF", "OIE", "POS+CONS")


@dataclass(frozen=True)
class SupportHistogram:
    """Triple counts by support value, one table per extraction route group."""

    by_group: Mapping[str, Mapping[int, int]]

    def total(self, group: str) -> int:
        return sum(self.by_group.get(group, {}).values())


def support_histogram(triples: Iterable[SupportedTriple]) -> SupportHistogram:
    """Count triples per support value for EF, OIE, and POS+CONS groups.

    A triple counts toward every group its sources intersect; inferred triples
    belong to no group.
    """
    tables: dict[str, dict[int, int]] = {group: {} for group in HISTOGRAM_GROUPS}
    for t in triples:
        groups = []
        if "EF" in t.sources:
            groups.append("EF")
        if "OIE" in t.sources:
            groups.append("OIE")
        if t.sources & {"POS", "CONS"}:
            groups.append("POS+CONS")
        for group in groups:
            tables[group][t.support] = tables[group].get(t.support, 0) + 1
    return SupportHistogram(
        by_group={group: dict(sorted(table.items())) for group, table in tables.items()}
    )


def export_underscored_corpus(
    annotations: Sequence[SentenceAnnotation],
    entity_universe: Iterable[str],
) -> bytes:
    """Rewrite sentence texts with multi-word entities joined by underscores.

    Matching is greedy left-to-right, longest entity first, case-insensitive
    on whitespace-delimited words.
    """
    phrases: dict[tuple[str, ...], int] = {}
    for label in entity_universe:
        words = tuple(label.split())
        if len(words) >= 2:
            phrases[words] = len(words)
    max_len = max(phrases.values(), default=0)
    lines = []
    for sentence in sorted(annotations, key=lambda s: (s.doc_id, s.sent_idx)):
        words = sentence.text.split()
        lowered = [w.lower() for w in words]
        out: list[str] = []
        i = 0
        while i < len(words):
            joined = None
            for size in range(min(max_len, len(words) - i), 1, -1):
                if tuple(lowered[i: i + size]) in phrases:
                    joined = "_".join(words[i: i + size])
                    i += size
                    break
            if joined is None:
                out.append(words[i])
                i += 1
            else:
                out.append(joined)
        lines.append(" ".join(out))
    if not lines:
        return b""
    return ("\n".join(lines) + "\n").encode("utf-8")
