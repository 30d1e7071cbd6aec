"""Combine per-sentence extraction routes into corpus-level triple sets.

Three routes contribute raw triples for each sentence: relations asserted by
the span extractor (EF), open-information triples whose endpoints match known
entities (OIE), and verb-bridged entity pairs read off the PoS stream (POS).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ingest import TopicOntology
from .model import (
    CandidateTriple,
    EmptyLabelError,
    EntityMention,
    SentenceAnnotation,
    normalize_label,
)

log = logging.getLogger(__name__)

CONJUNCTION_LABEL = "conjunction"


@dataclass(frozen=True)
class SentenceExtraction:
    """Everything extracted from one sentence, at the label level."""

    doc_id: str
    sent_idx: int
    entities: Mapping[str, tuple[str, ...]]  # label -> sorted entity types
    ef: tuple[tuple[str, str, str], ...]
    oie: tuple[tuple[str, str, str], ...]
    pos: tuple[tuple[str, str, str], ...]

    def __post_init__(self) -> None:
        for route in (self.ef, self.oie, self.pos):
            for s, _, o in route:
                if s not in self.entities or o not in self.entities:
                    raise ValueError(f"triple endpoint outside sentence entity set: {(s, o)}")


class PairDocumentIndex:
    """Directed (subject, object) pair -> set of documents where both co-occur."""

    def __init__(self, docs_by_pair: Mapping[tuple[str, str], frozenset[str]] | None = None):
        self._docs: dict[tuple[str, str], frozenset[str]] = dict(docs_by_pair or {})

    def docs(self, pair: tuple[str, str]) -> frozenset[str]:
        return self._docs.get(pair, frozenset())

    def support(self, pair: tuple[str, str]) -> int:
        return len(self._docs.get(pair, ()))

    def items(self) -> list[tuple[tuple[str, str], frozenset[str]]]:
        return sorted(self._docs.items())

    def __len__(self) -> int:
        return len(self._docs)

    def __eq__(self, other) -> bool:
        return isinstance(other, PairDocumentIndex) and self._docs == other._docs


@dataclass(frozen=True)
class CorpusAggregate:
    """Corpus-level triple sets per route, plus the pair co-occurrence index."""

    r_ef: tuple[CandidateTriple, ...]
    r_oie: tuple[CandidateTriple, ...]
    r_pos: tuple[CandidateTriple, ...]
    index: PairDocumentIndex

    def entity_universe(self) -> frozenset[str]:
        labels: set[str] = set()
        for route in (self.r_ef, self.r_oie, self.r_pos):
            for t in route:
                labels.add(t.subject)
                labels.add(t.object)
        return frozenset(labels)


def match_topics(
    sentence: SentenceAnnotation,
    ontology: TopicOntology,
    stopwords: frozenset[str],
    max_ngram: int = 3,
) -> list[EntityMention]:
    """Find maximal token n-grams whose normalized form is an ontology label.

    N-grams starting or ending on a stop-word are not candidates, and shorter
    matches nested inside an accepted longer match are suppressed.
    """
    tokens = sentence.tokens
    n = len(tokens)
    taken: list[tuple[int, int]] = []
    found: list[EntityMention] = []
    for size in range(min(max_ngram, n), 0, -1):
        for start in range(0, n - size + 1):
            end = start + size
            if tokens[start].surface.lower() in stopwords:
                continue
            if tokens[end - 1].surface.lower() in stopwords:
                continue
            try:
                label = normalize_label(" ".join(t.surface for t in tokens[start:end]))
            except EmptyLabelError:
                continue
            if not ontology.has_label(label):
                continue
            if any(start >= s and end <= e for s, e in taken):
                continue  # nested inside a longer accepted match
            taken.append((start, end))
            found.append(
                EntityMention(
                    start=start, end=end, label=label, entity_type="Topic", source="CSO"
                )
            )
    found.sort(key=lambda m: (m.start, m.end, m.label))
    return found


def _verb_lemma(relation_label: str, sentence: SentenceAnnotation, aux_lemmas: frozenset[str]) -> str:
    """Reduce a relation phrase to the lemma of its head verb.

    The head is the last non-auxiliary verb of the phrase as tagged in the
    sentence's token stream; if only auxiliaries match, the last of those wins,
    and with no verb match at all the phrase's final word is used unchanged.
    """
    by_surface: dict[str, list] = {}
    for token in sentence.tokens:
        by_surface.setdefault(token.surface.lower(), []).append(token)
    words = relation_label.split()
    verbs = []
    for word in words:
        for token in by_surface.get(word, ()):
            if token.is_verb or token.pos == "MD":
                verbs.append(token)
                break
    lexical = [t for t in verbs if t.pos != "MD" and t.lemma.lower() not in aux_lemmas]
    if lexical:
        return normalize_label(lexical[-1].lemma)
    if verbs:
        return normalize_label(verbs[-1].lemma)
    return normalize_label(words[-1])


def filter_openie_triples(
    sentence: SentenceAnnotation,
    entity_labels: frozenset[str],
    aux_lemmas: frozenset[str],
) -> list[tuple[str, str, str]]:
    """Keep OIE assertions whose endpoints are known entities of the sentence.

    Relation phrases are reduced to their head-verb lemma.
    """
    kept: list[tuple[str, str, str]] = []
    for rel in sentence.raw_relations:
        if rel.source != "OIE":
            continue
        subj = sentence.entities[rel.subj].label
        obj = sentence.entities[rel.obj].label
        if subj not in entity_labels or obj not in entity_labels:
            continue
        if subj == obj:
            continue
        kept.append((subj, _verb_lemma(rel.label, sentence, aux_lemmas), obj))
    return kept


def extract_pos_verb_triples(
    sentence: SentenceAnnotation,
    mentions: Sequence[EntityMention],
    aux_lemmas: frozenset[str],
) -> list[tuple[str, str, str]]:
    """One triple per verb token lying strictly between two entity mentions.

    The earlier mention is the subject. Auxiliary and modal verbs never form
    relations. A verb spanning several co-linear mention pairs contributes to
    every pair it separates.
    """
    ordered = sorted(set(mentions), key=lambda m: (m.start, m.end, m.label))
    out: set[tuple[str, str, str]] = set()
    for i, left in enumerate(ordered):
        for right in ordered[i + 1:]:
            if right.start < left.end or left.label == right.label:
                continue
            for token in sentence.tokens[left.end: right.start]:
                if not token.is_verb or token.pos == "MD":
                    continue
                if token.lemma.lower() in aux_lemmas:
                    continue
                out.add((left.label, normalize_label(token.lemma), right.label))
    return sorted(out)


def discard_conjunction_relations(
    triples: Iterable[tuple[str, str, str]],
) -> list[tuple[str, str, str]]:
    """Drop coordination assertions; they carry no predicate semantics."""
    return [t for t in triples if t[1] != CONJUNCTION_LABEL]


def integrate_sentence(
    sentence: SentenceAnnotation,
    ontology: TopicOntology,
    stopwords: frozenset[str],
    aux_lemmas: frozenset[str],
) -> SentenceExtraction:
    """Run all three extraction routes over one sentence."""
    topic_mentions = match_topics(sentence, ontology, stopwords)

    seen_spans: set[tuple[int, int, str]] = set()
    mentions: list[EntityMention] = []
    for mention in list(sentence.entities) + topic_mentions:
        if mention.source == "OIE":
            continue  # OIE spans anchor raw triples but do not join the entity set
        key = (mention.start, mention.end, mention.label)
        if key in seen_spans:
            continue
        seen_spans.add(key)
        mentions.append(mention)

    entities: dict[str, set[str]] = {}
    for mention in mentions:
        entities.setdefault(mention.label, set()).add(mention.entity_type)

    ef_triples: list[tuple[str, str, str]] = []
    for rel in sentence.raw_relations:
        if rel.source != "EF":
            continue
        subj = sentence.entities[rel.subj].label
        obj = sentence.entities[rel.obj].label
        if subj not in entities or obj not in entities or subj == obj:
            continue
        ef_triples.append((subj, rel.label, obj))
    ef_triples = discard_conjunction_relations(ef_triples)

    oie_triples = [
        t
        for t in filter_openie_triples(sentence, frozenset(entities), aux_lemmas)
        if t[0] in entities and t[2] in entities
    ]
    pos_triples = extract_pos_verb_triples(sentence, mentions, aux_lemmas)

    return SentenceExtraction(
        doc_id=sentence.doc_id,
        sent_idx=sentence.sent_idx,
        entities={label: tuple(sorted(types)) for label, types in sorted(entities.items())},
        ef=tuple(sorted(set(ef_triples))),
        oie=tuple(sorted(set(oie_triples))),
        pos=tuple(sorted(set(pos_triples))),
    )


def aggregate_corpus(extractions: Iterable[SentenceExtraction]) -> CorpusAggregate:
    """Merge sentence-level triples by (s, r, o, route), unioning witnesses.

    The pair index records, for every ordered pair of distinct entities that
    co-occur in a sentence, the set of documents witnessing the pair; its
    sizes are the support values used by triple selection.
    """
    triples: dict[str, dict[tuple[str, str, str], set[str]]] = {
        "EF": {},
        "OIE": {},
        "POS": {},
    }
    pair_docs: dict[tuple[str, str], set[str]] = {}
    for extraction in extractions:
        for route, sentence_triples in (
            ("EF", extraction.ef),
            ("OIE", extraction.oie),
            ("POS", extraction.pos),
        ):
            for triple in sentence_triples:
                triples[route].setdefault(triple, set()).add(extraction.doc_id)
        labels = sorted(extraction.entities)
        for a in labels:
            for b in labels:
                if a != b:
                    pair_docs.setdefault((a, b), set()).add(extraction.doc_id)

    def build(route: str) -> tuple[CandidateTriple, ...]:
        return tuple(
            CandidateTriple(
                subject=s, relation=r, object=o, source=route, doc_ids=frozenset(docs)
            )
            for (s, r, o), docs in sorted(triples[route].items())
        )

    index = PairDocumentIndex({pair: frozenset(docs) for pair, docs in pair_docs.items()})
    return CorpusAggregate(r_ef=build("EF"), r_oie=build("OIE"), r_pos=build("POS"), index=index)
