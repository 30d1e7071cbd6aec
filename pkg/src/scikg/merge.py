"""Entity merging: singular/plural collapsing plus ontology-alternative merging.

Merging rewrites labels everywhere at once (triple sets and the pair index),
and every rewrite is logged as a replayable decision.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ingest import TopicOntology
from .integrate import CorpusAggregate, PairDocumentIndex
from .model import CandidateTriple, SentenceAnnotation, normalize_label

log = logging.getLogger(__name__)

LEMMA = "LEMMA"
ONTOLOGY_ALT = "ONTOLOGY_ALT"


@dataclass(frozen=True)
class MergeDecision:
    """One label rewrite: what changed and under which rule."""

    original: str
    merged: str
    rule: str


@dataclass(frozen=True)
class LemmaVocabulary:
    """Surface -> lemma mapping learned from the annotation token stream."""

    lemmas: Mapping[str, str]
    words: frozenset[str]


def build_lemma_vocabulary(annotations: Iterable[SentenceAnnotation]) -> LemmaVocabulary:
    votes: dict[str, Counter] = {}
    words: set[str] = set()
    for sentence in annotations:
        for token in sentence.tokens:
            surface = token.surface.lower()
            lemma = token.lemma.lower()
            votes.setdefault(surface, Counter())[lemma] += 1
            words.add(surface)
            words.add(lemma)
    lemmas = {
        surface: min(counter.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        for surface, counter in votes.items()
    }
    return LemmaVocabulary(lemmas=lemmas, words=frozenset(words))


def _plural_fallback(word: str, vocabulary: frozenset[str]) -> str:
    """Conservative plural stripping for words the lemmatizer never saw."""
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("xes", "ches", "shes", "sses")):
        return word[:-2]
    if word.endswith("s") and not word.endswith("ss"):
        stem = word[:-1]
        if len(stem) >= 3 and stem in vocabulary:
            return stem
    return word


def lemma_normalize(label: str, vocabulary: LemmaVocabulary) -> str:
    """Rewrite the label's head (final) token to its singular lemma."""
    words = label.split()
    head = words[-1]
    lemma = vocabulary.lemmas.get(head)
    if lemma is None:
        lemma = _plural_fallback(head, vocabulary.words)
    if lemma == head:
        return label
    return normalize_label(" ".join(words[:-1] + [lemma]))


def merge_by_ontology(label: str, ontology: TopicOntology) -> str:
    """Map a label to the longest alternative label of its synonym group."""
    group = ontology.alternatives(label)
    if len(group) <= 1:
        return label
    return min(group, key=lambda alt: (-len(alt), alt))


def merge_label(
    label: str, vocabulary: LemmaVocabulary, ontology: TopicOntology
) -> tuple[str, list[MergeDecision]]:
    decisions: list[MergeDecision] = []
    lemmatized = lemma_normalize(label, vocabulary)
    if lemmatized != label:
        decisions.append(MergeDecision(original=label, merged=lemmatized, rule=LEMMA))
    final = merge_by_ontology(lemmatized, ontology)
    if final != lemmatized:
        decisions.append(MergeDecision(original=lemmatized, merged=final, rule=ONTOLOGY_ALT))
    return final, decisions


def substitution_from_decisions(decisions: Iterable[MergeDecision]) -> dict[str, str]:
    """Replay a decision log into a label substitution map."""
    chain: dict[str, str] = {}
    for decision in decisions:
        chain[decision.original] = decision.merged
    resolved: dict[str, str] = {}
    for label in chain:
        target = label
        seen = {label}
        while target in chain and chain[target] != target:
            target = chain[target]
            if target in seen:
                raise ValueError(f"cyclic merge decisions around {label!r}")
            seen.add(target)
        resolved[label] = target
    return resolved


def rewrite_triples(
    triples: Sequence[CandidateTriple], substitution: Mapping[str, str]
) -> tuple[CandidateTriple, ...]:
    merged: dict[tuple[str, str, str, str], set[str]] = {}
    for t in triples:
        s = substitution.get(t.subject, t.subject)
        o = substitution.get(t.object, t.object)
        if s == o:
            continue  # endpoints collapsed together; the triple dissolves
        merged.setdefault((s, t.relation, o, t.source), set()).update(t.doc_ids)
    return tuple(
        CandidateTriple(subject=s, relation=r, object=o, source=src, doc_ids=frozenset(docs))
        for (s, r, o, src), docs in sorted(merged.items())
    )


def rewrite_pair_index(
    index: PairDocumentIndex, substitution: Mapping[str, str]
) -> PairDocumentIndex:
    merged: dict[tuple[str, str], set[str]] = {}
    for (a, b), docs in index.items():
        new_a = substitution.get(a, a)
        new_b = substitution.get(b, b)
        if new_a == new_b:
            continue
        merged.setdefault((new_a, new_b), set()).update(docs)
    return PairDocumentIndex({pair: frozenset(docs) for pair, docs in merged.items()})


def apply_merging(
    aggregate: CorpusAggregate,
    vocabulary: LemmaVocabulary,
    ontology: TopicOntology,
) -> tuple[CorpusAggregate, list[MergeDecision]]:
    """Merge labels across the whole aggregate; returns the decision log."""
    universe = aggregate.entity_universe() | {a for (a, _), _ in aggregate.index.items()}
    decisions: list[MergeDecision] = []
    substitution: dict[str, str] = {}
    for label in sorted(universe):
        final, label_decisions = merge_label(label, vocabulary, ontology)
        decisions.extend(label_decisions)
        if final != label:
            substitution[label] = final
    rewritten = CorpusAggregate(
        r_ef=rewrite_triples(aggregate.r_ef, substitution),
        r_oie=rewrite_triples(aggregate.r_oie, substitution),
        r_pos=rewrite_triples(aggregate.r_pos, substitution),
        index=rewrite_pair_index(aggregate.index, substitution),
    )
    for decision in decisions:
        log.debug("merge %s -> %s (%s)", decision.original, decision.merged, decision.rule)
    return rewritten, decisions
