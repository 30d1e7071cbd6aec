"""Triple selection: validity by route and support, plus the consistency gate.

Span-extractor and open-extraction triples are valid as-is; PoS triples need
support from enough papers. The rest get one more chance: a classifier
trained on the valid triples predicts a relation for the pair, and the triple
is admitted when the prediction agrees with (or is similar enough to) the
extracted relation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .ingest import EmbeddingTable, LexicalTaxonomy
from .mlp import MLP
from .model import PipelineError, SupportedTriple

log = logging.getLogger(__name__)

DIRECT = "DIRECT"
TOKEN_AVERAGE = "TOKEN_AVERAGE"


@dataclass(frozen=True)
class ValidityPartition:
    """Triples split into valid and invalid; the two sides never overlap."""

    valid: tuple[SupportedTriple, ...]
    invalid: tuple[SupportedTriple, ...]


def compose_valid(
    t_ef: Sequence[SupportedTriple],
    t_oie: Sequence[SupportedTriple],
    t_pos: Sequence[SupportedTriple],
    min_support: int = 10,
) -> ValidityPartition:
    """Valid = EF plus OIE plus PoS triples with support >= min_support.

    Identical triples arriving from several routes merge, unioning their
    source tags and witnesses; only triples whose every occurrence is PoS with
    support below the floor land on the invalid side.
    """
    merged: dict[tuple[str, str, str], SupportedTriple] = {}
    for t in list(t_ef) + list(t_oie) + list(t_pos):
        previous = merged.get(t.key)
        if previous is None:
            merged[t.key] = t
        else:
            if previous.support != t.support:
                raise ValueError(
                    f"support mismatch for {t.key}: {previous.support} vs {t.support}"
                )
            merged[t.key] = SupportedTriple(
                subject=t.subject,
                relation=t.relation,
                object=t.object,
                support=t.support,
                sources=previous.sources | t.sources,
                doc_ids=previous.doc_ids | t.doc_ids,
            )
    valid: list[SupportedTriple] = []
    invalid: list[SupportedTriple] = []
    for t in merged.values():
        if t.sources & {"EF", "OIE"} or t.support >= min_support:
            valid.append(t)
        else:
            invalid.append(t)
    return ValidityPartition(
        valid=tuple(sorted(valid, key=lambda t: t.key)),
        invalid=tuple(sorted(invalid, key=lambda t: t.key)),
    )


class EmbeddingLookupError(PipelineError):
    pass


@dataclass(frozen=True)
class EntityVector:
    label: str
    vector: np.ndarray
    provenance: str  # DIRECT or TOKEN_AVERAGE


def embed_entity(label: str, table: EmbeddingTable) -> EntityVector:
    """Entity vector: direct underscore-joined lookup, else token average."""
    direct = table.get(label.replace(" ", "_"))
    if direct is not None:
        return EntityVector(label=label, vector=direct, provenance=DIRECT)
    token_vectors = [table.get(tok) for tok in label.split()]
    token_vectors = [v for v in token_vectors if v is not None]
    if not token_vectors:
        raise EmbeddingLookupError(f"no embedding for entity {label!r}")
    return EntityVector(
        label=label,
        vector=np.mean(token_vectors, axis=0),
        provenance=TOKEN_AVERAGE,
    )


class ConsistencyClassifier:
    """Predicts the canonical relation of an entity pair from its embeddings."""

    def __init__(self, model: MLP, classes: Sequence[str], table: EmbeddingTable):
        if len(classes) != model.n_classes:
            raise ValueError("class list does not match model output width")
        self.model = model
        self.classes = list(classes)
        self.table = table

    def pair_features(self, subject: str, object_: str) -> np.ndarray:
        subj = embed_entity(subject, self.table)
        obj = embed_entity(object_, self.table)
        return np.concatenate([subj.vector, obj.vector])

    def predict_relation(self, subject: str, object_: str) -> str:
        features = self.pair_features(subject, object_)[None, :]
        return self.classes[int(self.model.predict(features)[0])]

    def save(self, path: str | Path) -> None:
        self.model.save(path, self.classes)

    @classmethod
    def load(cls, path: str | Path, table: EmbeddingTable) -> "ConsistencyClassifier":
        model, classes = MLP.load(path)
        return cls(model=model, classes=classes, table=table)


def train_consistency_classifier(
    valid_triples: Sequence[SupportedTriple],
    table: EmbeddingTable,
    hidden_size: int = 128,
    seed: int = 13,
    learning_rate: float = 0.1,
    batch_size: int = 32,
    max_epochs: int = 200,
    plateau_tolerance: float = 1e-4,
    plateau_patience: int = 10,
) -> ConsistencyClassifier:
    """Fit the relation classifier on every embeddable valid triple."""
    features: list[np.ndarray] = []
    labels: list[str] = []
    for t in sorted(valid_triples, key=lambda t: t.key):
        try:
            subj = embed_entity(t.subject, table)
            obj = embed_entity(t.object, table)
        except EmbeddingLookupError:
            log.debug("skipping unembeddable training triple %s", t.key)
            continue
        features.append(np.concatenate([subj.vector, obj.vector]))
        labels.append(t.relation)
    if not features:
        raise PipelineError("no embeddable valid triples to train on")
    classes = sorted(set(labels))
    if len(classes) < 2:
        raise PipelineError(
            f"need at least two relation classes to train, got {classes}"
        )
    class_index = {c: i for i, c in enumerate(classes)}
    x = np.stack(features)
    y = np.array([class_index[lab] for lab in labels], dtype=np.int64)
    model = MLP(
        input_dim=x.shape[1],
        hidden_dim=hidden_size,
        n_classes=len(classes),
        seed=seed,
        learning_rate=learning_rate,
        batch_size=batch_size,
        max_epochs=max_epochs,
        plateau_tolerance=plateau_tolerance,
        plateau_patience=plateau_patience,
    )
    model.fit(x, y)
    return ConsistencyClassifier(model=model, classes=classes, table=table)


def wu_palmer(lemma_a: str, lemma_b: str, taxonomy: LexicalTaxonomy) -> float:
    """Taxonomy similarity: best 2*depth(lcs) / (depth(a) + depth(b)) over senses.

    Depths count from the root (depth 1) through the common subsumer under
    consideration, so the score lies in (0, 1] and identical lemmas score 1.
    A lemma missing from the taxonomy contributes 0.
    """
    senses_a = taxonomy.senses(lemma_a)
    senses_b = taxonomy.senses(lemma_b)
    if not senses_a or not senses_b:
        log.debug("wu-palmer: lemma missing from taxonomy (%r, %r)", lemma_a, lemma_b)
        return 0.0
    best = 0.0
    for sense_a in sorted(senses_a):
        up_a = taxonomy.subsumers(sense_a)
        for sense_b in sorted(senses_b):
            up_b = taxonomy.subsumers(sense_b)
            for common in up_a.keys() & up_b.keys():
                depth_c = taxonomy.depth(common)
                score = 2.0 * depth_c / ((depth_c + up_a[common]) + (depth_c + up_b[common]))
                best = max(best, score)
    return best


@dataclass(frozen=True)
class GateDecision:
    """Why an invalid triple was admitted or rejected."""

    triple: SupportedTriple
    predicted: str | None
    similarity: float | None
    admitted: bool


def validate_invalid(
    invalid: Sequence[SupportedTriple],
    classifier: ConsistencyClassifier,
    table: EmbeddingTable,
    taxonomy: LexicalTaxonomy,
    gate_threshold: float = 0.5,
) -> tuple[list[SupportedTriple], list[GateDecision]]:
    """Re-admit invalid triples the classifier agrees with.

    A triple is admitted when the predicted relation matches the extracted
    one, or when the mean of embedding-cosine and taxonomy similarity between
    the two relations strictly exceeds the gate threshold. Admitted triples
    keep their extracted relation and are re-tagged CONS.
    """
    admitted: list[SupportedTriple] = []
    decisions: list[GateDecision] = []
    for t in sorted(invalid, key=lambda t: t.key):
        try:
            predicted = classifier.predict_relation(t.subject, t.object)
        except EmbeddingLookupError:
            log.debug("gate skipped unembeddable pair %s", t.key)
            decisions.append(
                GateDecision(triple=t, predicted=None, similarity=None, admitted=False)
            )
            continue
        if predicted == t.relation:
            take, similarity = True, None
        else:
            vec_r = table.get(t.relation.replace(" ", "_"))
            vec_p = table.get(predicted.replace(" ", "_"))
            if vec_r is None or vec_p is None:
                cos = 0.0
                log.debug(
                    "gate: missing relation embedding for %r or %r, cosine term is 0",
                    t.relation, predicted,
                )
            else:
                from .relations import cosine_similarity

                cos = cosine_similarity(vec_r, vec_p)
            wup = wu_palmer(t.relation, predicted, taxonomy)
            similarity = (cos + wup) / 2.0
            take = similarity > gate_threshold
        if take:
            admitted.append(
                SupportedTriple(
                    subject=t.subject,
                    relation=t.relation,
                    object=t.object,
                    support=t.support,
                    sources=frozenset({"CONS"}),
                    doc_ids=t.doc_ids,
                )
            )
        decisions.append(
            GateDecision(triple=t, predicted=predicted, similarity=similarity, admitted=take)
        )
    return admitted, decisions
