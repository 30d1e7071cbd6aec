"""Shared domain types for the extraction-to-graph pipeline.

Everything downstream (integration, refinement, merging, selection,
serialization) exchanges the small immutable records defined here, so their
invariants are enforced once, at construction time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

ENTITY_TYPES = frozenset(
    {"Task", "Method", "Metric", "Material", "Other-Scientific-Term", "Generic", "Topic"}
)

# Sources of entity mentions in the incoming annotations.
MENTION_SOURCES = frozenset({"EF", "CSO", "OIE"})

# Sources of raw candidate triples.
TRIPLE_SOURCES = frozenset({"EF", "OIE", "POS"})

# Sources a triple may carry after selection and enhancement.
SUPPORTED_SOURCES = frozenset({"EF", "OIE", "POS", "CONS", "INFERRED"})

# Penn Treebank tag inventory, including the punctuation and bracket tags
# emitted by common tokenizer stacks.
PENN_TAGS = frozenset(
    {
        "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
        "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
        "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP",
        "VBZ", "WDT", "WP", "WP$", "WRB",
        "#", "$", "''", "``", "(", ")", ",", ".", ":", "-LRB-", "-RRB-",
    }
)


class PipelineError(Exception):
    """Base class for every error raised by this package."""


class EmptyLabelError(PipelineError):
    """Raised when a label normalizes to the empty string; callers drop the entity."""


_WHITESPACE = re.compile(r"\s+")


def normalize_label(raw: str) -> str:
    """Return the canonical form of a label: lowercased, single-spaced, trimmed.

    Idempotent by construction. Raises :class:`EmptyLabelError` when nothing
    remains, which callers treat as "drop this entity".
    """
    norm = _WHITESPACE.sub(" ", raw.lower()).strip()
    if not norm:
        raise EmptyLabelError(f"label normalizes to empty: {raw!r}")
    return norm


def is_normalized(label: str) -> bool:
    try:
        return normalize_label(label) == label
    except EmptyLabelError:
        return False


def _check_normalized(name: str, value: str) -> None:
    if not is_normalized(value):
        raise ValueError(f"{name} is not a normalized label: {value!r}")


@dataclass(frozen=True)
class Token:
    """One token of a sentence: surface form, lemma, PoS tag."""

    surface: str
    lemma: str
    pos: str

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if not self.lemma:
            raise ValueError("token lemma must be non-empty")
        if not self.pos:
            raise ValueError("token pos must be non-empty")

    @property
    def is_verb(self) -> bool:
        return self.pos.startswith("VB")


@dataclass(frozen=True)
class EntityMention:
    """A typed entity span over a sentence's token stream, [start, end)."""

    start: int
    end: int
    label: str
    entity_type: str
    source: str

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.end):
            raise ValueError(f"bad mention span [{self.start}, {self.end})")
        _check_normalized("mention label", self.label)
        if self.entity_type not in ENTITY_TYPES:
            raise ValueError(f"unknown entity type: {self.entity_type!r}")
        if self.source not in MENTION_SOURCES:
            raise ValueError(f"unknown mention source: {self.source!r}")


@dataclass(frozen=True)
class RawRelation:
    """A relation asserted between two entity mentions of one sentence.

    ``subj`` and ``obj`` index into the sentence's mention list.
    """

    subj: int
    obj: int
    label: str
    source: str

    def __post_init__(self) -> None:
        if self.subj < 0 or self.obj < 0:
            raise ValueError("relation mention indices must be non-negative")
        _check_normalized("relation label", self.label)
        if self.source not in {"EF", "OIE"}:
            raise ValueError(f"unknown relation source: {self.source!r}")


@dataclass(frozen=True)
class SentenceAnnotation:
    """One annotated sentence of one abstract."""

    doc_id: str
    sent_idx: int
    text: str
    tokens: tuple[Token, ...]
    entities: tuple[EntityMention, ...]
    raw_relations: tuple[RawRelation, ...]

    def __post_init__(self) -> None:
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        if self.sent_idx < 0:
            raise ValueError("sent_idx must be non-negative")
        n = len(self.tokens)
        for mention in self.entities:
            if mention.end > n:
                raise ValueError(
                    f"mention [{mention.start}, {mention.end}) exceeds {n} tokens"
                )
        m = len(self.entities)
        for rel in self.raw_relations:
            if rel.subj >= m or rel.obj >= m:
                raise ValueError("relation references a missing entity mention")


@dataclass(frozen=True)
class CandidateTriple:
    """A raw (subject, relation, object) assertion with its witnessing papers."""

    subject: str
    relation: str
    object: str
    source: str
    doc_ids: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        _check_normalized("subject", self.subject)
        _check_normalized("relation", self.relation)
        _check_normalized("object", self.object)
        if self.subject == self.object:
            raise ValueError(f"degenerate triple: {self.subject!r} related to itself")
        if self.source not in TRIPLE_SOURCES:
            raise ValueError(f"unknown triple source: {self.source!r}")
        if not self.doc_ids:
            raise ValueError("candidate triple needs at least one witnessing doc")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject, self.relation, self.object)


@dataclass(frozen=True)
class SupportedTriple:
    """A canonicalized triple carrying support and full provenance."""

    subject: str
    relation: str
    object: str
    support: int
    sources: frozenset[str]
    doc_ids: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        _check_normalized("subject", self.subject)
        _check_normalized("relation", self.relation)
        _check_normalized("object", self.object)
        if self.subject == self.object:
            raise ValueError(f"degenerate triple: {self.subject!r} related to itself")
        if not self.sources or not self.sources <= SUPPORTED_SOURCES:
            raise ValueError(f"bad source set: {set(self.sources)!r}")
        if self.support < 0:
            raise ValueError("support must be non-negative")
        if self.support < 1 and self.sources != frozenset({"INFERRED"}):
            raise ValueError("extracted triples must have support >= 1")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject, self.relation, self.object)


def _ratio(num: int, den: int) -> tuple[float, bool]:
    if den == 0:
        return 0.0, True
    return num / den, False


@dataclass(frozen=True)
class EvaluationReport:
    """Precision / recall / F-measure with the raw counts behind them.

    ``degenerate`` is set when a zero denominator forced any of the three
    scores to 0.
    """

    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    fmeasure: float
    degenerate: bool = False

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "EvaluationReport":
        if min(tp, fp, fn) < 0:
            raise ValueError("counts must be non-negative")
        precision, p_deg = _ratio(tp, tp + fp)
        recall, r_deg = _ratio(tp, tp + fn)
        if precision + recall == 0.0:
            f, f_deg = 0.0, True
        else:
            f = 2.0 * precision * recall / (precision + recall)
            f_deg = False
        return cls(
            tp=tp,
            fp=fp,
            fn=fn,
            precision=precision,
            recall=recall,
            fmeasure=f,
            degenerate=p_deg or r_deg or f_deg,
        )
