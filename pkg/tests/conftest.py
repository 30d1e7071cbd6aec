"""Shared builders for the test suite."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from scikg.model import EntityMention, RawRelation, SentenceAnnotation, Token

FIXTURES = Path(__file__).parent / "fixtures"


def make_token(surface: str, pos: str = "NN", lemma: str | None = None) -> Token:
    return Token(surface=surface, lemma=lemma if lemma is not None else surface.lower(), pos=pos)


def make_sentence(
    doc_id: str = "d1",
    sent_idx: int = 0,
    tokens=(),
    entities=(),
    relations=(),
    text: str | None = None,
) -> SentenceAnnotation:
    """Build a SentenceAnnotation from terse tuples.

    ``tokens`` entries are Token, (surface,), (surface, pos), or
    (surface, pos, lemma); ``entities`` entries are EntityMention or
    (start, end, label, type, source); ``relations`` entries are RawRelation
    or (subj, obj, label, source).
    """
    toks = tuple(
        t if isinstance(t, Token) else make_token(*((t,) if isinstance(t, str) else t))
        for t in tokens
    )
    if text is None:
        text = " ".join(t.surface for t in toks)
    ents = tuple(e if isinstance(e, EntityMention) else EntityMention(*e) for e in entities)
    rels = tuple(r if isinstance(r, RawRelation) else RawRelation(*r) for r in relations)
    return SentenceAnnotation(
        doc_id=doc_id,
        sent_idx=sent_idx,
        text=text,
        tokens=toks,
        entities=ents,
        raw_relations=rels,
    )


def write_embeddings(path: Path, vectors: dict) -> Path:
    items = sorted(vectors.items())
    dim = len(np.atleast_1d(np.asarray(items[0][1]))) if items else 1
    lines = [f"{len(items)} {dim}"]
    for token, vec in items:
        comps = " ".join(repr(float(x)) for x in np.atleast_1d(np.asarray(vec, dtype=float)))
        lines.append(f"{token} {comps}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_counts(path: Path, counts: dict[str, int], total: int) -> Path:
    lines = [f"{label}\t{count}" for label, count in sorted(counts.items())]
    lines.append(f"__TOTAL__\t{total}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_tsv(path: Path, rows) -> Path:
    path.write_text("".join("\t".join(row) + "\n" for row in rows), encoding="utf-8")
    return path


def write_lines(path: Path, lines) -> Path:
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


def write_jsonl(path: Path, records) -> Path:
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
    return path


def annotation_record(
    doc_id: str = "d1",
    sent_idx: int = 0,
    text: str = "We use graphs .",
    tokens=None,
    entities=None,
    relations=None,
) -> dict:
    """A raw JSONL annotation record with serviceable defaults."""
    if tokens is None:
        tokens = [
            {"t": "We", "lemma": "we", "pos": "PRP"},
            {"t": "use", "lemma": "use", "pos": "VBP"},
            {"t": "graphs", "lemma": "graph", "pos": "NNS"},
            {"t": ".", "lemma": ".", "pos": "."},
        ]
    if entities is None:
        entities = [
            {"start": 2, "end": 3, "label": "graphs", "type": "Method", "source": "EF"}
        ]
    if relations is None:
        relations = []
    return {
        "doc_id": doc_id,
        "sent_idx": sent_idx,
        "text": text,
        "tokens": tokens,
        "entities": entities,
        "relations": relations,
    }
