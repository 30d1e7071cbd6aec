"""Loaders for every external file format the pipeline consumes.

All loaders are strict: a malformed record raises :class:`LoadError` naming
the file, line, and offending field. Nothing is silently repaired, and loading
the same file twice yields equal in-memory structures.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Iterator

import numpy as np

from .model import (
    ENTITY_TYPES,
    MENTION_SOURCES,
    PENN_TAGS,
    EmptyLabelError,
    EntityMention,
    PipelineError,
    RawRelation,
    SentenceAnnotation,
    Token,
    normalize_label,
)

log = logging.getLogger(__name__)


class LoadError(PipelineError):
    """A file failed validation; message pins down path, line, and field."""

    def __init__(self, path: str | Path, line: int | None, message: str):
        self.path = str(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")


def _lines(path: str | Path) -> Iterator[tuple[int, str]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LoadError(path, None, f"cannot read file: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        yield lineno, line


# ---------------------------------------------------------------------------
# Sentence annotations


def _field(record: dict, name: str, path, lineno: int):
    if name not in record:
        raise LoadError(path, lineno, f"missing field {name!r}")
    return record[name]


def _norm(raw, path, lineno: int, field_name: str) -> str:
    if not isinstance(raw, str):
        raise LoadError(path, lineno, f"field {field_name!r} must be a string")
    try:
        return normalize_label(raw)
    except EmptyLabelError:
        raise LoadError(path, lineno, f"field {field_name!r} is empty after normalization")


def _parse_tokens(raw, path, lineno) -> tuple[Token, ...]:
    if not isinstance(raw, list):
        raise LoadError(path, lineno, "field 'tokens' must be a list")
    out = []
    for i, tok in enumerate(raw):
        if not isinstance(tok, dict):
            raise LoadError(path, lineno, f"tokens[{i}] must be an object")
        surface = _field(tok, "t", path, lineno)
        lemma = _field(tok, "lemma", path, lineno)
        pos = _field(tok, "pos", path, lineno)
        if pos not in PENN_TAGS:
            raise LoadError(path, lineno, f"tokens[{i}].pos {pos!r} is not a Penn tag")
        try:
            out.append(Token(surface=surface, lemma=lemma, pos=pos))
        except (ValueError, TypeError) as exc:
            raise LoadError(path, lineno, f"tokens[{i}]: {exc}") from exc
    return tuple(out)


def _parse_entities(raw, n_tokens: int, path, lineno) -> tuple[EntityMention, ...]:
    if not isinstance(raw, list):
        raise LoadError(path, lineno, "field 'entities' must be a list")
    out = []
    for i, ent in enumerate(raw):
        if not isinstance(ent, dict):
            raise LoadError(path, lineno, f"entities[{i}] must be an object")
        start = _field(ent, "start", path, lineno)
        end = _field(ent, "end", path, lineno)
        label = _norm(_field(ent, "label", path, lineno), path, lineno, f"entities[{i}].label")
        etype = _field(ent, "type", path, lineno)
        source = _field(ent, "source", path, lineno)
        if not isinstance(start, int) or not isinstance(end, int):
            raise LoadError(path, lineno, f"entities[{i}] span must be integers")
        if not (0 <= start < end <= n_tokens):
            raise LoadError(
                path, lineno, f"entities[{i}] span [{start}, {end}) out of range"
            )
        if etype not in ENTITY_TYPES:
            raise LoadError(path, lineno, f"entities[{i}].type {etype!r} unknown")
        if source not in MENTION_SOURCES:
            raise LoadError(path, lineno, f"entities[{i}].source {source!r} unknown")
        out.append(
            EntityMention(start=start, end=end, label=label, entity_type=etype, source=source)
        )
    return tuple(out)


def _parse_relations(raw, n_entities: int, path, lineno) -> tuple[RawRelation, ...]:
    if not isinstance(raw, list):
        raise LoadError(path, lineno, "field 'relations' must be a list")
    out = []
    for i, rel in enumerate(raw):
        if not isinstance(rel, dict):
            raise LoadError(path, lineno, f"relations[{i}] must be an object")
        subj = _field(rel, "subj", path, lineno)
        obj = _field(rel, "obj", path, lineno)
        label = _norm(_field(rel, "label", path, lineno), path, lineno, f"relations[{i}].label")
        source = _field(rel, "source", path, lineno)
        if not isinstance(subj, int) or not isinstance(obj, int):
            raise LoadError(path, lineno, f"relations[{i}] indices must be integers")
        if not (0 <= subj < n_entities) or not (0 <= obj < n_entities):
            raise LoadError(path, lineno, f"relations[{i}] references a missing mention")
        if source not in {"EF", "OIE"}:
            raise LoadError(path, lineno, f"relations[{i}].source {source!r} unknown")
        out.append(RawRelation(subj=subj, obj=obj, label=label, source=source))
    return tuple(out)


def load_sentence_annotations(path: str | Path) -> list[SentenceAnnotation]:
    """Load one annotation record per line, sorted by (doc_id, sent_idx)."""
    records: list[SentenceAnnotation] = []
    seen: set[tuple[str, int]] = set()
    for lineno, line in _lines(path):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LoadError(path, lineno, f"invalid JSON: {exc}") from exc
        if not isinstance(record, dict):
            raise LoadError(path, lineno, "record must be a JSON object")
        doc_id = _field(record, "doc_id", path, lineno)
        sent_idx = _field(record, "sent_idx", path, lineno)
        text = _field(record, "text", path, lineno)
        if not isinstance(doc_id, str) or not doc_id:
            raise LoadError(path, lineno, "field 'doc_id' must be a non-empty string")
        if not isinstance(sent_idx, int) or sent_idx < 0:
            raise LoadError(path, lineno, "field 'sent_idx' must be a non-negative integer")
        if not isinstance(text, str):
            raise LoadError(path, lineno, "field 'text' must be a string")
        tokens = _parse_tokens(_field(record, "tokens", path, lineno), path, lineno)
        entities = _parse_entities(
            _field(record, "entities", path, lineno), len(tokens), path, lineno
        )
        relations = _parse_relations(
            _field(record, "relations", path, lineno), len(entities), path, lineno
        )
        key = (doc_id, sent_idx)
        if key in seen:
            raise LoadError(path, lineno, f"duplicate sentence {key!r}")
        seen.add(key)
        records.append(
            SentenceAnnotation(
                doc_id=doc_id,
                sent_idx=sent_idx,
                text=text,
                tokens=tokens,
                entities=entities,
                raw_relations=relations,
            )
        )
    records.sort(key=lambda s: (s.doc_id, s.sent_idx))
    return records


# ---------------------------------------------------------------------------
# Word embeddings


@dataclass(frozen=True)
class EmbeddingTable:
    """Token -> dense vector, all of one dimension.

    Multi-word keys use underscores in place of spaces.
    """

    dimension: int
    vectors: dict[str, np.ndarray]

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def get(self, token: str) -> np.ndarray | None:
        return self.vectors.get(token)

    def require(self, token: str) -> np.ndarray:
        vec = self.vectors.get(token)
        if vec is None:
            raise KeyError(f"no embedding for token {token!r}")
        return vec

    def __len__(self) -> int:
        return len(self.vectors)


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Load a text embedding table: a count/dimension header, then one row per token."""
    it = _lines(path)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise LoadError(path, None, "empty embedding file") from None
    parts = header.split()
    if len(parts) != 2:
        raise LoadError(path, lineno, "header must be '<count> <dimension>'")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise LoadError(path, lineno, "header must contain two integers") from None
    if count < 0 or dim <= 0:
        raise LoadError(path, lineno, "count must be >= 0 and dimension positive")
    vectors: dict[str, np.ndarray] = {}
    for lineno, line in it:
        if not line.strip():
            continue
        row = line.split()
        if len(row) != dim + 1:
            raise LoadError(
                path, lineno, f"expected 1 token + {dim} components, got {len(row)} fields"
            )
        token = row[0]
        if " " in token or token != token.lower():
            raise LoadError(path, lineno, f"token {token!r} is not a normalized key")
        if token in vectors:
            raise LoadError(path, lineno, f"duplicate token {token!r}")
        try:
            vec = np.array([float(x) for x in row[1:]], dtype=np.float64)
        except ValueError:
            raise LoadError(path, lineno, "non-numeric vector component") from None
        if not np.all(np.isfinite(vec)):
            raise LoadError(path, lineno, f"non-finite component for token {token!r}")
        vec.setflags(write=False)
        vectors[token] = vec
    if len(vectors) != count:
        raise LoadError(path, None, f"header declared {count} rows, file has {len(vectors)}")
    return EmbeddingTable(dimension=dim, vectors=vectors)


# ---------------------------------------------------------------------------
# Topic ontology


def _find_cycle(nodes: set[str], parents: dict[str, set[str]]) -> list[str] | None:
    """Return one cycle as a node path, or None when the edge set is acyclic."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in nodes}
    for start in sorted(nodes):
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, Iterator[str]]] = [(start, iter(sorted(parents.get(start, ()))))]
        color[start] = GRAY
        path = [start]
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    return path[path.index(nxt):] + [nxt]
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    path.append(nxt)
                    stack.append((nxt, iter(sorted(parents.get(nxt, ())))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                path.pop()
                stack.pop()
    return None


class TopicOntology:
    """Research topics with super-topic edges and alternative-label groups."""

    def __init__(
        self,
        topics: frozenset[str],
        super_topic_edges: frozenset[tuple[str, str]],
        alt_label_groups: tuple[frozenset[str], ...],
    ):
        self.topics = topics
        self.super_topic_edges = super_topic_edges
        self.alt_label_groups = alt_label_groups
        self._parents: dict[str, tuple[str, ...]] = {}
        for child, parent in sorted(super_topic_edges):
            self._parents.setdefault(child, ())
            self._parents[child] = self._parents[child] + (parent,)
        self._group_index: dict[str, frozenset[str]] = {}
        for group in alt_label_groups:
            for label in group:
                self._group_index[label] = group

    def has_label(self, label: str) -> bool:
        return label in self.topics

    def direct_parents(self, label: str) -> tuple[str, ...]:
        return self._parents.get(label, ())

    def alternatives(self, label: str) -> frozenset[str]:
        """The full synonym group of ``label`` (including itself), or a singleton."""
        return self._group_index.get(label, frozenset({label}))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TopicOntology)
            and self.topics == other.topics
            and self.super_topic_edges == other.super_topic_edges
            and set(self.alt_label_groups) == set(other.alt_label_groups)
        )


def _tsv_rows(path: str | Path) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in _lines(path):
        if not line.strip():
            continue
        yield lineno, line.split("\t")


def load_topic_ontology(path: str | Path) -> TopicOntology:
    """Load a topic ontology from superTopicOf / altLabel rows."""
    topics: set[str] = set()
    edges: set[tuple[str, str]] = set()
    alt_parent: dict[str, str] = {}

    def find(label: str) -> str:
        root = label
        while alt_parent.get(root, root) != root:
            root = alt_parent[root]
        while alt_parent.get(label, label) != label:
            alt_parent[label], label = root, alt_parent[label]
        return root

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            # deterministic union: smaller representative wins
            lo, hi = sorted((ra, rb))
            alt_parent[hi] = lo

    saw_row = False
    for lineno, row in _tsv_rows(path):
        if len(row) != 3:
            raise LoadError(path, lineno, f"expected 3 tab-separated fields, got {len(row)}")
        left = _norm(row[0], path, lineno, "label")
        predicate = row[1]
        right = _norm(row[2], path, lineno, "label")
        saw_row = True
        if predicate == "superTopicOf":
            topics.update((left, right))
            edges.add((left, right))
        elif predicate == "altLabel":
            topics.update((left, right))
            alt_parent.setdefault(left, left)
            alt_parent.setdefault(right, right)
            union(left, right)
        else:
            raise LoadError(path, lineno, f"unknown predicate {predicate!r}")
    if not saw_row:
        raise LoadError(path, None, "ontology file contains no rows")

    parents: dict[str, set[str]] = {}
    for child, parent in edges:
        parents.setdefault(child, set()).add(parent)
    cycle = _find_cycle(topics, parents)
    if cycle is not None:
        raise LoadError(path, None, f"superTopicOf edges form a cycle: {' -> '.join(cycle)}")

    groups: dict[str, set[str]] = {}
    for label in alt_parent:
        groups.setdefault(find(label), set()).add(label)
    alt_groups = tuple(
        frozenset(members) for _, members in sorted(groups.items()) if len(members) > 1
    )
    return TopicOntology(
        topics=frozenset(topics),
        super_topic_edges=frozenset(edges),
        alt_label_groups=alt_groups,
    )


# ---------------------------------------------------------------------------
# Lexical taxonomy (verb senses and hypernym structure)


class LexicalTaxonomy:
    """A rooted hypernym DAG over synsets, plus a lemma -> synsets index."""

    def __init__(
        self,
        synsets: frozenset[str],
        hypernym_edges: frozenset[tuple[str, str]],
        lemma_index: dict[str, frozenset[str]],
        root: str,
    ):
        self.synsets = synsets
        self.hypernym_edges = hypernym_edges
        self.lemma_index = lemma_index
        self.root = root
        self._parents: dict[str, tuple[str, ...]] = {}
        for child, parent in sorted(hypernym_edges):
            self._parents[child] = self._parents.get(child, ()) + (parent,)
        # min-distance from every synset up to each of its subsumers
        self._updist: dict[str, dict[str, int]] = {}
        for synset in sorted(synsets):
            dist = {synset: 0}
            frontier = [synset]
            while frontier:
                nxt: list[str] = []
                for node in frontier:
                    for parent in self._parents.get(node, ()):
                        cand = dist[node] + 1
                        if parent not in dist or cand < dist[parent]:
                            dist[parent] = cand
                            nxt.append(parent)
                frontier = nxt
            self._updist[synset] = dist

    def senses(self, lemma: str) -> frozenset[str]:
        return self.lemma_index.get(lemma, frozenset())

    def depth(self, synset: str) -> int:
        """Depth counted from the root, which has depth 1."""
        return self._updist[synset][self.root] + 1

    def subsumers(self, synset: str) -> dict[str, int]:
        """Every ancestor (including the synset itself) with its minimum distance."""
        return self._updist[synset]


def load_lexical_taxonomy(path: str | Path) -> LexicalTaxonomy:
    """Load hypernym / sense rows into a validated, uniquely rooted taxonomy."""
    synsets: set[str] = set()
    edges: set[tuple[str, str]] = set()
    lemma_index: dict[str, set[str]] = {}
    saw_row = False
    for lineno, row in _tsv_rows(path):
        if len(row) != 3:
            raise LoadError(path, lineno, f"expected 3 tab-separated fields, got {len(row)}")
        left, predicate, right = row[0].strip(), row[1], row[2].strip()
        if not left or not right:
            raise LoadError(path, lineno, "empty field")
        saw_row = True
        if predicate == "hypernym":
            synsets.update((left, right))
            edges.add((left, right))
        elif predicate == "sense":
            lemma = _norm(left, path, lineno, "lemma")
            synsets.add(right)
            lemma_index.setdefault(lemma, set()).add(right)
        else:
            raise LoadError(path, lineno, f"unknown predicate {predicate!r}")
    if not saw_row:
        raise LoadError(path, None, "taxonomy file contains no rows")

    parents: dict[str, set[str]] = {}
    for child, parent in edges:
        parents.setdefault(child, set()).add(parent)
    cycle = _find_cycle(synsets, parents)
    if cycle is not None:
        raise LoadError(path, None, f"hypernym edges form a cycle: {' -> '.join(cycle)}")
    roots = sorted(s for s in synsets if not parents.get(s))
    if len(roots) != 1:
        raise LoadError(path, None, f"expected exactly one root synset, found {roots}")
    root = roots[0]

    taxonomy = LexicalTaxonomy(
        synsets=frozenset(synsets),
        hypernym_edges=frozenset(edges),
        lemma_index={k: frozenset(v) for k, v in lemma_index.items()},
        root=root,
    )
    unreachable = sorted(s for s in synsets if root not in taxonomy.subsumers(s))
    if unreachable:
        raise LoadError(path, None, f"synsets cannot reach root {root!r}: {unreachable[:5]}")
    return taxonomy


# ---------------------------------------------------------------------------
# Background corpus counts


TOTAL_KEY = "__TOTAL__"


@dataclass(frozen=True)
class CorpusCounts:
    """Label occurrence counts for one corpus, with its total token count."""

    counts: dict[str, int]
    total: int

    def frequency(self, label: str) -> float:
        return self.counts.get(label, 0) / self.total


@dataclass(frozen=True)
class BackgroundCounts:
    """Occurrence statistics for the in-domain, sibling, and out-domain corpora."""

    in_domain: CorpusCounts
    sibling: CorpusCounts
    out_domain: CorpusCounts


def load_corpus_counts(path: str | Path) -> CorpusCounts:
    counts: dict[str, int] = {}
    total: int | None = None
    for lineno, row in _tsv_rows(path):
        if len(row) != 2:
            raise LoadError(path, lineno, f"expected 2 tab-separated fields, got {len(row)}")
        raw_label, raw_count = row
        try:
            value = int(raw_count)
        except ValueError:
            raise LoadError(path, lineno, f"count {raw_count!r} is not an integer") from None
        if raw_label == TOTAL_KEY:
            if total is not None:
                raise LoadError(path, lineno, "duplicate __TOTAL__ row")
            if value <= 0:
                raise LoadError(path, lineno, "total word count must be positive")
            total = value
            continue
        label = _norm(raw_label, path, lineno, "label")
        if label in counts:
            raise LoadError(path, lineno, f"duplicate label {label!r}")
        if value < 0:
            raise LoadError(path, lineno, f"negative count for label {label!r}")
        counts[label] = value
    if total is None:
        raise LoadError(path, None, "missing __TOTAL__ row")
    return CorpusCounts(counts=counts, total=total)


def load_background_counts(
    in_domain_path: str | Path,
    sibling_path: str | Path,
    out_domain_path: str | Path,
) -> BackgroundCounts:
    return BackgroundCounts(
        in_domain=load_corpus_counts(in_domain_path),
        sibling=load_corpus_counts(sibling_path),
        out_domain=load_corpus_counts(out_domain_path),
    )


# ---------------------------------------------------------------------------
# Gold standard


@dataclass(frozen=True)
class GoldStandardEntry:
    subject: str
    relation: str
    object: str
    verdict: bool

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject, self.relation, self.object)


def load_gold_standard(path: str | Path) -> list[GoldStandardEntry]:
    """Load judged triples; the loaded set defines the evaluation universe."""
    entries: list[GoldStandardEntry] = []
    seen: set[tuple[str, str, str]] = set()
    for lineno, row in _tsv_rows(path):
        if len(row) != 4:
            raise LoadError(path, lineno, f"expected 4 tab-separated fields, got {len(row)}")
        s = _norm(row[0], path, lineno, "subject")
        r = _norm(row[1], path, lineno, "relation")
        o = _norm(row[2], path, lineno, "object")
        if row[3] not in {"true", "false"}:
            raise LoadError(path, lineno, f"verdict must be 'true' or 'false', got {row[3]!r}")
        key = (s, r, o)
        if key in seen:
            raise LoadError(path, lineno, f"duplicate gold triple {key!r}")
        seen.add(key)
        entries.append(GoldStandardEntry(s, r, o, verdict=row[3] == "true"))
    if not entries:
        raise LoadError(path, None, "gold standard contains no entries")
    return entries


# ---------------------------------------------------------------------------
# Plain label lists and relation-map files


def load_label_list(path: str | Path) -> frozenset[str]:
    """One normalized label per line; blank lines ignored."""
    labels: set[str] = set()
    for lineno, line in _lines(path):
        if not line.strip():
            continue
        labels.add(_norm(line, path, lineno, "label"))
    return frozenset(labels)


def load_relation_map_file(path: str | Path) -> dict[str, str]:
    """TSV of '<relation>\\t<representative>' entries."""
    mapping: dict[str, str] = {}
    for lineno, row in _tsv_rows(path):
        if len(row) != 2:
            raise LoadError(path, lineno, f"expected 2 tab-separated fields, got {len(row)}")
        source = _norm(row[0], path, lineno, "relation")
        target = _norm(row[1], path, lineno, "representative")
        if source in mapping and mapping[source] != target:
            raise LoadError(path, lineno, f"conflicting entries for {source!r}")
        mapping[source] = target
    return mapping


def packaged_data_path(name: str) -> Path:
    return Path(str(resources.files("scikg").joinpath("data", name)))


# ---------------------------------------------------------------------------
# Pipeline configuration


class ConfigError(PipelineError):
    pass


@dataclass
class PipelineConfig:
    """Every knob of the pipeline, file paths included.

    Loaded from a ``key=value`` file; CLI flags override individual fields.
    """

    annotations_path: str = ""
    embeddings_path: str = ""
    ontology_path: str = ""
    taxonomy_path: str = ""
    counts_in_domain_path: str = ""
    counts_sibling_path: str = ""
    counts_out_domain_path: str = ""
    blacklist_path: str = ""
    whitelist_path: str = ""
    ef_map_path: str = ""
    curated_map_path: str = ""
    stopwords_path: str = ""
    aux_verbs_path: str = ""
    output_dir: str = "out"
    namespace: str = "http://example.org/skg"

    generic_ratio_sibling: float = 2.0
    generic_ratio_out: float = 10.0
    min_support: int = 10
    silhouette_target: float = 0.65
    gate_threshold: float = 0.5
    hidden_size: int = 128
    learning_rate: float = 0.1
    batch_size: int = 32
    max_epochs: int = 200
    plateau_tolerance: float = 1e-4
    plateau_patience: int = 10
    seed: int = 13
    infer_to_fixpoint: bool = False

    def validate(self) -> None:
        if self.generic_ratio_sibling <= 0 or self.generic_ratio_out <= 0:
            raise ConfigError("genericity thresholds must be positive")
        if self.min_support < 1:
            raise ConfigError("min_support must be >= 1")
        if not (-1.0 < self.silhouette_target <= 1.0):
            raise ConfigError("silhouette_target must lie in (-1, 1]")
        if self.hidden_size < 1 or self.batch_size < 1 or self.max_epochs < 1:
            raise ConfigError("classifier sizes must be positive")
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")
        if not self.namespace:
            raise ConfigError("namespace must be non-empty")


_BOOL_VALUES = {"true": True, "false": False, "1": True, "0": False}


def load_config(path: str | Path, overrides: dict[str, object] | None = None) -> PipelineConfig:
    """Parse a key=value config file and apply CLI overrides on top."""
    known = {f.name: f.type for f in fields(PipelineConfig)}
    config = PipelineConfig()
    base = Path(path).parent
    for lineno, line in _lines(path):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise LoadError(path, lineno, "expected key=value")
        key, _, raw_value = stripped.partition("=")
        key, raw_value = key.strip(), raw_value.strip()
        if key not in known:
            raise LoadError(path, lineno, f"unknown config key {key!r}")
        current = getattr(config, key)
        try:
            if isinstance(current, bool):
                if raw_value.lower() not in _BOOL_VALUES:
                    raise ValueError(f"expected a boolean, got {raw_value!r}")
                value: object = _BOOL_VALUES[raw_value.lower()]
            elif isinstance(current, int):
                value = int(raw_value)
            elif isinstance(current, float):
                value = float(raw_value)
            else:
                value = raw_value
                if key.endswith("_path") or key == "output_dir":
                    if raw_value and not Path(raw_value).is_absolute():
                        value = str(base / raw_value)
        except ValueError as exc:
            raise LoadError(path, lineno, f"bad value for {key!r}: {exc}") from exc
        setattr(config, key, value)
    if overrides:
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise ConfigError(f"unknown config override {key!r}")
            setattr(config, key, value)
    if not config.stopwords_path:
        config.stopwords_path = str(packaged_data_path("stopwords.txt"))
    if not config.aux_verbs_path:
        config.aux_verbs_path = str(packaged_data_path("aux_verbs.txt"))
    if not config.ef_map_path:
        config.ef_map_path = str(packaged_data_path("ef_relation_map.tsv"))
    config.validate()
    if config.blacklist_path and config.whitelist_path:
        blacklist = load_label_list(config.blacklist_path)
        whitelist = load_label_list(config.whitelist_path)
        overlap = blacklist & whitelist
        if overlap:
            raise ConfigError(
                f"blacklist and whitelist overlap: {sorted(overlap)[:5]}"
            )
    return config
