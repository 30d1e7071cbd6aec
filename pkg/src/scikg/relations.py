"""Relation canonicalization: per-pair collapse, verb clustering, the label map.

Per entity pair, the span-extractor route keeps its most frequent relation
label while the open-extraction and PoS routes keep the label nearest the
embedding centroid of all candidates. Across pairs, verb labels are clustered
agglomeratively (average linkage over cosine distance) and every cluster
collapses onto a representative, giving the relation map applied to all
triples.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .ingest import EmbeddingTable
from .integrate import CorpusAggregate, PairDocumentIndex
from .model import CandidateTriple, PipelineError, SupportedTriple

log = logging.getLogger(__name__)

CLUSTER_CENTROID = "CLUSTER_CENTROID"
CURATED = "CURATED"
EF_STATIC = "EF_STATIC"
SELF = "SELF"


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ValueError("cosine similarity undefined for zero vectors")
    return float(np.dot(a, b) / (norm_a * norm_b))


@dataclass(frozen=True)
class RelationCandidateSet:
    """All relation labels observed for one (subject, object) pair in one route."""

    pair: tuple[str, str]
    labels: tuple[tuple[str, int], ...]  # (label, multiplicity), multiplicity >= 1

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValueError(f"empty candidate set for pair {self.pair}")
        if any(mult < 1 for _, mult in self.labels):
            raise ValueError("multiplicities must be positive")


def candidate_sets(triples: Sequence[CandidateTriple]) -> list[RelationCandidateSet]:
    """Group a route's triples by pair; multiplicity is the witnessing-paper count."""
    grouped: dict[tuple[str, str], dict[str, int]] = {}
    for t in triples:
        grouped.setdefault((t.subject, t.object), {})[t.relation] = len(t.doc_ids)
    return [
        RelationCandidateSet(pair=pair, labels=tuple(sorted(labels.items())))
        for pair, labels in sorted(grouped.items())
    ]


def select_most_frequent_relation(candidates: RelationCandidateSet) -> str:
    """Highest multiplicity wins; ties break to the lexicographically smallest."""
    return min(candidates.labels, key=lambda kv: (-kv[1], kv[0]))[0]


def select_centroid_verb(candidates: RelationCandidateSet, table: EmbeddingTable) -> str:
    """The label whose vector is most cosine-similar to the weighted centroid.

    The centroid weights each embeddable label by its multiplicity. Ties break
    lexicographically; with no embeddable label at all (or a degenerate zero
    centroid) the most frequent label is used instead.
    """
    embedded = [
        (label, mult, table.get(label.replace(" ", "_")))
        for label, mult in candidates.labels
    ]
    embedded = [(label, mult, vec) for label, mult, vec in embedded if vec is not None]
    if not embedded:
        fallback = select_most_frequent_relation(candidates)
        log.debug("pair %s: no embeddable relation label, fell back to %r",
                  candidates.pair, fallback)
        return fallback
    total = sum(mult for _, mult, _ in embedded)
    centroid = sum((mult * vec for _, mult, vec in embedded), start=np.zeros_like(embedded[0][2]))
    centroid = centroid / total
    if float(np.linalg.norm(centroid)) == 0.0:
        fallback = select_most_frequent_relation(candidates)
        log.debug("pair %s: zero centroid, fell back to %r", candidates.pair, fallback)
        return fallback
    scored = [
        (label, cosine_similarity(vec, centroid))
        for label, _, vec in embedded
        if float(np.linalg.norm(vec)) > 0.0
    ]
    if not scored:
        return select_most_frequent_relation(candidates)
    return min(scored, key=lambda kv: (-kv[1], kv[0]))[0]


def compute_support(pair: tuple[str, str], index: PairDocumentIndex) -> int:
    """Papers witnessing the pair's co-occurrence; 0 for unseen pairs."""
    return index.support(pair)


def collapse_relations(
    aggregate: CorpusAggregate, table: EmbeddingTable
) -> tuple[list[SupportedTriple], list[SupportedTriple], list[SupportedTriple]]:
    """Collapse each route to exactly one triple per entity pair."""

    def collapse(
        triples: tuple[CandidateTriple, ...], route: str, selector
    ) -> list[SupportedTriple]:
        pair_docs: dict[tuple[str, str], set[str]] = {}
        for t in triples:
            pair_docs.setdefault((t.subject, t.object), set()).update(t.doc_ids)
        out = []
        for cand in candidate_sets(triples):
            relation = selector(cand)
            out.append(
                SupportedTriple(
                    subject=cand.pair[0],
                    relation=relation,
                    object=cand.pair[1],
                    support=compute_support(cand.pair, aggregate.index),
                    sources=frozenset({route}),
                    doc_ids=frozenset(pair_docs[cand.pair]),
                )
            )
        return sorted(out, key=lambda t: t.key)

    t_ef = collapse(aggregate.r_ef, "EF", select_most_frequent_relation)
    t_oie = collapse(aggregate.r_oie, "OIE", lambda c: select_centroid_verb(c, table))
    t_pos = collapse(aggregate.r_pos, "POS", lambda c: select_centroid_verb(c, table))
    return t_ef, t_oie, t_pos


# ---------------------------------------------------------------------------
# Verb clustering


@dataclass(frozen=True)
class ClusterPartition:
    """A partition of verb labels with its silhouette summary.

    ``average_silhouette`` is the element-level mean over all clustered labels
    (None when only a single cluster exists); ``per_cluster`` holds the mean
    silhouette of each cluster's own members.
    """

    clusters: tuple[tuple[str, ...], ...]
    average_silhouette: float | None
    per_cluster: tuple[float, ...]


def _element_silhouettes(
    dist: np.ndarray, clusters: Sequence[Sequence[int]]
) -> np.ndarray:
    """Silhouette value per element; singleton clusters score 0 by convention."""
    n = dist.shape[0]
    values = np.zeros(n, dtype=np.float64)
    for ci, members in enumerate(clusters):
        for i in members:
            if len(members) == 1:
                values[i] = 0.0
                continue
            within = np.mean([dist[i, j] for j in members if j != i])
            nearest = min(
                np.mean([dist[i, j] for j in other])
                for cj, other in enumerate(clusters)
                if cj != ci
            )
            denom = max(within, nearest)
            values[i] = 0.0 if denom == 0.0 else (nearest - within) / denom
    return values


def cluster_relations(
    labels: Iterable[str],
    table: EmbeddingTable,
    silhouette_target: float = 0.65,
) -> ClusterPartition:
    """Cluster verb labels by embedding distance (1 - cosine), average linkage.

    Walking the merge path from all-singletons to a single cluster, the finest
    partition (of at least two clusters) whose average silhouette width meets
    the target is returned. When no partition qualifies, the best-scoring one
    is used unless even that score is non-positive, in which case everything
    collapses into one cluster. Labels without embeddings are excluded.
    """
    all_labels = sorted(set(labels))
    embeddable = [lab for lab in all_labels if table.get(lab.replace(" ", "_")) is not None]
    skipped = [lab for lab in all_labels if lab not in set(embeddable)]
    for lab in skipped:
        log.debug("clustering skipped %r: no embedding", lab)
    n = len(embeddable)
    if n < 2:
        log.debug("fewer than two embeddable labels; single-cluster partition")
        members = tuple(embeddable)
        return ClusterPartition(
            clusters=(members,) if members else (),
            average_silhouette=None,
            per_cluster=(0.0,) if members else (),
        )

    vectors = [table.require(lab.replace(" ", "_")) for lab in embeddable]
    dist = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            d = 1.0 - cosine_similarity(vectors[i], vectors[j])
            dist[i, j] = dist[j, i] = d

    # Average-linkage merge path with lexicographic tie-breaking. Clusters are
    # keyed by their sorted member labels so the path never depends on input
    # order; the Lance-Williams update keeps linkage distances exact.
    clusters: dict[tuple[str, ...], list[int]] = {(lab,): [i] for i, lab in enumerate(embeddable)}
    linkage: dict[tuple[tuple[str, ...], tuple[str, ...]], float] = {}
    keys = sorted(clusters)
    for ai in range(len(keys)):
        for bi in range(ai + 1, len(keys)):
            a, b = keys[ai], keys[bi]
            linkage[(a, b)] = dist[clusters[a][0], clusters[b][0]]

    partitions: list[list[tuple[str, ...]]] = [sorted(clusters)]
    while len(clusters) > 1:
        best = min(linkage.items(), key=lambda kv: (kv[1], kv[0]))
        (key_a, key_b), _ = best
        merged_key = tuple(sorted(key_a + key_b))
        merged_members = clusters[key_a] + clusters[key_b]
        size_a, size_b = len(clusters[key_a]), len(clusters[key_b])
        del clusters[key_a], clusters[key_b]
        new_linkage: dict[tuple[tuple[str, ...], tuple[str, ...]], float] = {}
        for (a, b), value in linkage.items():
            if key_a in (a, b) or key_b in (a, b):
                continue
            new_linkage[(a, b)] = value
        for other_key in clusters:
            pair_a = (key_a, other_key) if key_a < other_key else (other_key, key_a)
            pair_b = (key_b, other_key) if key_b < other_key else (other_key, key_b)
            value = (size_a * linkage[pair_a] + size_b * linkage[pair_b]) / (size_a + size_b)
            pair = (merged_key, other_key) if merged_key < other_key else (other_key, merged_key)
            new_linkage[pair] = value
        clusters[merged_key] = merged_members
        linkage = new_linkage
        partitions.append(sorted(clusters))

    index_of = {lab: i for i, lab in enumerate(embeddable)}

    def score(partition: list[tuple[str, ...]]) -> float:
        member_indices = [[index_of[lab] for lab in key] for key in partition]
        return float(np.mean(_element_silhouettes(dist, member_indices)))

    candidates = [p for p in partitions if len(p) >= 2]
    scores = [score(p) for p in candidates]
    chosen: list[tuple[str, ...]] | None = None
    chosen_score: float | None = None
    for partition, value in zip(candidates, scores):
        if value >= silhouette_target:
            chosen, chosen_score = partition, value
            break
    if chosen is None:
        best_idx = int(np.argmax(scores))
        if scores[best_idx] > 0.0:
            chosen, chosen_score = candidates[best_idx], scores[best_idx]
            log.debug(
                "no partition met silhouette target %.3f; best available %.3f",
                silhouette_target, chosen_score,
            )
        else:
            log.debug("no separable structure; collapsing %d labels into one cluster", n)
            return ClusterPartition(
                clusters=(tuple(embeddable),),
                average_silhouette=None,
                per_cluster=(0.0,),
            )

    member_indices = [[index_of[lab] for lab in key] for key in chosen]
    element_values = _element_silhouettes(dist, member_indices)
    per_cluster = tuple(
        float(np.mean([element_values[i] for i in members])) for members in member_indices
    )
    return ClusterPartition(
        clusters=tuple(tuple(key) for key in chosen),
        average_silhouette=chosen_score,
        per_cluster=per_cluster,
    )


# ---------------------------------------------------------------------------
# The relation map


class RelationMapError(PipelineError):
    pass


class RelationMap:
    """Idempotent verb-label -> representative mapping with provenance."""

    def __init__(self, entries: Mapping[str, str], provenance: Mapping[str, str]):
        self.entries = dict(sorted(entries.items()))
        self.provenance = dict(provenance)
        for source, target in self.entries.items():
            follow = self.entries.get(target, target)
            if follow != target:
                raise RelationMapError(
                    f"relation map is not idempotent: {source!r} -> {target!r} -> {follow!r}"
                )

    def __call__(self, label: str) -> str:
        return self.entries.get(label, label)

    def __contains__(self, label: str) -> bool:
        return label in self.entries

    def items(self) -> list[tuple[str, str]]:
        return list(self.entries.items())


def cluster_representative(members: Sequence[str], table: EmbeddingTable) -> str:
    """Member nearest (cosine) to the cluster mean; ties break lexicographically."""
    vectors = {lab: table.get(lab.replace(" ", "_")) for lab in members}
    embedded = {lab: vec for lab, vec in vectors.items() if vec is not None}
    if not embedded:
        return min(members)
    mean = np.mean(list(embedded.values()), axis=0)
    if float(np.linalg.norm(mean)) == 0.0:
        return min(embedded)
    scored = [(lab, cosine_similarity(vec, mean)) for lab, vec in sorted(embedded.items())]
    return min(scored, key=lambda kv: (-kv[1], kv[0]))[0]


def build_relation_map(
    partition: ClusterPartition,
    table: EmbeddingTable,
    curated_overrides: Mapping[str, str] | None = None,
    ef_static: Mapping[str, str] | None = None,
) -> RelationMap:
    """Assemble the full relation map: clusters, then static entries, then curation."""
    entries: dict[str, str] = {}
    provenance: dict[str, str] = {}
    for members in partition.clusters:
        rep = cluster_representative(members, table)
        for label in members:
            entries[label] = rep
            provenance[label] = CLUSTER_CENTROID
    for source, target in (ef_static or {}).items():
        entries[source] = target
        provenance[source] = EF_STATIC
    for source, target in (curated_overrides or {}).items():
        entries[source] = target
        provenance[source] = CURATED
    for target in sorted(set(entries.values())):
        if target not in entries:
            entries[target] = target
            provenance[target] = provenance.get(target, SELF)
    return RelationMap(entries, provenance)


def apply_relation_map(
    triples: Sequence[SupportedTriple], relation_map: RelationMap
) -> list[SupportedTriple]:
    """Canonicalize every relation; identical triples merge, unioning provenance."""
    merged: dict[tuple[str, str, str], SupportedTriple] = {}
    for t in triples:
        if t.relation not in relation_map:
            log.debug("relation %r has no map entry; kept as-is", t.relation)
        relation = relation_map(t.relation)
        key = (t.subject, relation, t.object)
        previous = merged.get(key)
        if previous is None:
            merged[key] = SupportedTriple(
                subject=t.subject,
                relation=relation,
                object=t.object,
                support=t.support,
                sources=t.sources,
                doc_ids=t.doc_ids,
            )
        else:
            if previous.support != t.support:
                raise ValueError(
                    f"support mismatch while merging {key}: "
                    f"{previous.support} vs {t.support}"
                )
            merged[key] = SupportedTriple(
                subject=t.subject,
                relation=relation,
                object=t.object,
                support=t.support,
                sources=previous.sources | t.sources,
                doc_ids=previous.doc_ids | t.doc_ids,
            )
    return sorted(merged.values(), key=lambda t: t.key)


def export_relation_clusters(partition: ClusterPartition, table: EmbeddingTable) -> str:
    """Render clusters as the curated-map TSV format: '<verb>\\t<representative>'."""
    lines = []
    for members in sorted(partition.clusters):
        rep = cluster_representative(members, table)
        for label in members:
            lines.append(f"{label}\t{rep}")
    return "\n".join(sorted(lines)) + ("\n" if lines else "")


def import_curated_map(entries: Mapping[str, str], known_verbs: Iterable[str]) -> RelationMap:
    """Validate a hand-edited map; unknown verbs are kept with a warning."""
    known = set(known_verbs)
    for verb in sorted(set(entries) - known):
        log.warning("curated map names verb %r that no triple uses", verb)
    provenance = {source: CURATED for source in entries}
    complete = dict(entries)
    for target in sorted(set(entries.values())):
        if target not in complete:
            complete[target] = target
            provenance[target] = SELF
    return RelationMap(complete, provenance)
