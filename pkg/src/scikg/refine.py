"""Entity refinement: cleaning, splitting, acronym expansion, genericity filtering.

The stages run in a fixed order for every entity label:
blacklist check, punctuation strip, stop-word trim, re-normalization, split on
"and", per-document acronym expansion, then the corpus-frequency genericity
filter. Whitelisted labels (the topic ontology plus the configured whitelist)
bypass cleaning and splitting and can never be dropped.
"""

from __future__ import annotations

import logging
import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ingest import BackgroundCounts
from .integrate import SentenceExtraction
from .model import EmptyLabelError, SentenceAnnotation, normalize_label

log = logging.getLogger(__name__)

_POSSESSIVE = re.compile(r"['’]s$")


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def clean_entity(
    label: str,
    blacklist: frozenset[str],
    stopwords: frozenset[str],
) -> str | None:
    """Strip punctuation and boundary stop-words; None means the entity is removed."""
    if label in blacklist:
        return None
    words = []
    for word in label.split():
        word = _POSSESSIVE.sub("", word)
        word = "".join(ch for ch in word if not _is_punct(ch))
        if word:
            words.append(word)
    while words and words[0] in stopwords:
        words.pop(0)
    while words and words[-1] in stopwords:
        words.pop()
    if not words:
        return None
    try:
        cleaned = normalize_label(" ".join(words))
    except EmptyLabelError:
        return None
    if cleaned in blacklist:
        return None
    return cleaned


def split_entity(label: str) -> list[str]:
    """Split a label on the standalone token "and"; parts are re-normalized."""
    parts: list[list[str]] = [[]]
    for word in label.split():
        if word == "and":
            parts.append([])
        else:
            parts[-1].append(word)
    out = []
    for part in parts:
        if part:
            out.append(normalize_label(" ".join(part)))
    return out


_PAREN = re.compile(r"\(\s*([^()\s]{2,10})\s*\)")


def _acronym_letters(candidate: str) -> list[str] | None:
    """Letters of an acronym-shaped token, or None when the shape is wrong."""
    letters = [ch for ch in candidate if ch.isalpha()]
    if not 2 <= len(candidate) <= 10 or len(letters) < 2:
        return None
    upper = sum(1 for ch in letters if ch.isupper())
    if upper < 2 or upper * 2 < len(candidate):
        return None
    return [ch.lower() for ch in letters]


def build_acronym_map(
    doc_sentences: Sequence[SentenceAnnotation],
    stopwords: frozenset[str],
) -> dict[str, str]:
    """Scan one document for "<expansion words> (<ACRONYM>)" definitions.

    The acronym's letters must account for the initials of the words directly
    before the parenthesis (stop-words are skippable and order is not
    enforced, so inverted word orders still resolve). On conflicting
    definitions the first occurrence wins.
    """
    mapping: dict[str, str] = {}
    for sentence in sorted(doc_sentences, key=lambda s: s.sent_idx):
        for match in _PAREN.finditer(sentence.text):
            letters = _acronym_letters(match.group(1))
            if letters is None:
                continue
            prefix = sentence.text[: match.start()].split()
            window: list[tuple[str, bool]] = []  # (bare word, is stop-word), reversed
            need = len(letters)
            for word in reversed(prefix):
                bare = "".join(ch for ch in word if ch.isalnum())
                if not bare:
                    break
                if bare.lower() in stopwords:
                    if window:  # interior stop-word, keep scanning
                        window.append((bare, True))
                        continue
                    break
                window.append((bare, False))
                need -= 1
                if need == 0:
                    break
            if need != 0:
                continue
            initials = sorted(bare.lower()[0] for bare, is_stop in window if not is_stop)
            if initials != sorted(letters):
                continue
            try:
                expansion = normalize_label(" ".join(bare for bare, _ in reversed(window)))
                acronym = normalize_label(match.group(1))
            except EmptyLabelError:
                continue
            if acronym not in mapping:
                mapping[acronym] = expansion
    return mapping


def expand_label(label: str, acronym_map: Mapping[str, str]) -> str:
    """Rewrite any standalone acronym token of the label to its expansion."""
    if not acronym_map:
        return label
    words = label.split()
    if not any(w in acronym_map for w in words):
        return label
    expanded = [acronym_map.get(w, w) for w in words]
    return normalize_label(" ".join(expanded))


def expand_acronyms(
    labels: Iterable[str], acronym_map: Mapping[str, str]
) -> dict[str, str]:
    """Expansion of every label of one document, keyed by original label."""
    return {label: expand_label(label, acronym_map) for label in labels}


@dataclass(frozen=True)
class GenericityStats:
    """Relative frequencies of a label in the three reference corpora."""

    in_domain: float
    sibling: float
    out_domain: float

    @property
    def sibling_ratio(self) -> float:
        if self.sibling == 0.0:
            return float("inf")
        return self.in_domain / self.sibling

    @property
    def out_ratio(self) -> float:
        if self.out_domain == 0.0:
            return float("inf")
        return self.in_domain / self.out_domain


def genericity_stats(label: str, counts: BackgroundCounts) -> GenericityStats:
    return GenericityStats(
        in_domain=counts.in_domain.frequency(label),
        sibling=counts.sibling.frequency(label),
        out_domain=counts.out_domain.frequency(label),
    )


def genericity_filter(
    label: str,
    counts: BackgroundCounts,
    whitelist: frozenset[str],
    sibling_threshold: float = 2.0,
    out_threshold: float = 10.0,
) -> bool:
    """True when the label is domain-specific enough to keep.

    A label survives when it is whitelisted, or when its in-domain frequency
    exceeds the sibling-corpus frequency by ``sibling_threshold`` and the
    out-domain frequency by ``out_threshold`` (ratios of zero denominators
    count as met). Labels unseen in-domain are dropped unless whitelisted.
    """
    if label in whitelist:
        return True
    stats = genericity_stats(label, counts)
    if stats.in_domain == 0.0:
        return False
    return stats.sibling_ratio >= sibling_threshold and stats.out_ratio >= out_threshold


@dataclass(frozen=True)
class RefineOutcome:
    """Per-document rewriting: original label -> surviving labels (possibly none)."""

    doc_id: str
    substitutions: Mapping[str, tuple[str, ...]]


def refine_corpus(
    extractions: Sequence[SentenceExtraction],
    annotations: Sequence[SentenceAnnotation],
    counts: BackgroundCounts,
    blacklist: frozenset[str],
    whitelist: frozenset[str],
    stopwords: frozenset[str],
    sibling_threshold: float = 2.0,
    out_threshold: float = 10.0,
) -> tuple[list[SentenceExtraction], list[RefineOutcome]]:
    """Apply the full refinement order to every sentence extraction."""
    sentences_by_doc: dict[str, list[SentenceAnnotation]] = {}
    for sentence in annotations:
        sentences_by_doc.setdefault(sentence.doc_id, []).append(sentence)
    acronyms_by_doc = {
        doc_id: build_acronym_map(sentences, stopwords)
        for doc_id, sentences in sentences_by_doc.items()
    }

    generic_cache: dict[str, bool] = {}

    def keep(label: str) -> bool:
        if label not in generic_cache:
            generic_cache[label] = genericity_filter(
                label, counts, whitelist, sibling_threshold, out_threshold
            )
        return generic_cache[label]

    doc_cache: dict[tuple[str, str], tuple[str, ...]] = {}

    def transform(doc_id: str, label: str) -> tuple[str, ...]:
        key = (doc_id, label)
        if key in doc_cache:
            return doc_cache[key]
        acronyms = acronyms_by_doc.get(doc_id, {})
        if label in whitelist:
            candidates = [expand_label(label, acronyms)]
            result = tuple(dict.fromkeys(candidates))
        else:
            cleaned = clean_entity(label, blacklist, stopwords)
            if cleaned is None:
                result = ()
            else:
                candidates = [expand_label(p, acronyms) for p in split_entity(cleaned)]
                result = tuple(
                    lab for lab in dict.fromkeys(candidates) if lab in whitelist or keep(lab)
                )
        doc_cache[key] = result
        return result

    refined: list[SentenceExtraction] = []
    outcomes: dict[str, dict[str, tuple[str, ...]]] = {}
    for extraction in extractions:
        doc_id = extraction.doc_id
        entities: dict[str, set[str]] = {}
        for label, types in extraction.entities.items():
            outputs = transform(doc_id, label)
            outcomes.setdefault(doc_id, {})[label] = outputs
            for new_label in outputs:
                entities.setdefault(new_label, set()).update(types)

        def rewrite(route: tuple[tuple[str, str, str], ...]) -> tuple[tuple[str, str, str], ...]:
            out: set[tuple[str, str, str]] = set()
            for s, r, o in route:
                for new_s in transform(doc_id, s):
                    for new_o in transform(doc_id, o):
                        if new_s != new_o:
                            out.add((new_s, r, new_o))
            return tuple(sorted(out))

        refined.append(
            SentenceExtraction(
                doc_id=doc_id,
                sent_idx=extraction.sent_idx,
                entities={lab: tuple(sorted(t)) for lab, t in sorted(entities.items())},
                ef=rewrite(extraction.ef),
                oie=rewrite(extraction.oie),
                pos=rewrite(extraction.pos),
            )
        )
    outcome_list = [
        RefineOutcome(doc_id=doc_id, substitutions=dict(sorted(subs.items())))
        for doc_id, subs in sorted(outcomes.items())
    ]
    return refined, outcome_list
