#!/usr/bin/env python3
"""Regenerate the checked-in corpus fixtures under tests/fixtures/.

Builds a 50-abstract annotated corpus with planted structure (verb families
with known representatives, an acronym definition document, a label that
splits, generic and blacklisted labels, a high-support verb-bridged pair),
plus the embedding, ontology, taxonomy, count, and config files the pipeline
needs. The full pipeline is run twice over the generated inputs and every
planted behavior is asserted before the gold judgments are written, so a
successful run guarantees internally consistent fixtures.
"""

from __future__ import annotations

import json
import shutil
import sys
import tempfile
from pathlib import Path

import numpy as np

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "tests" / "fixtures"
SEED = 20250814

from scikg.ingest import load_config, load_embeddings  # noqa: E402
from scikg.pipeline import run_pipeline  # noqa: E402
from scikg.relations import build_relation_map, cluster_relations  # noqa: E402


# ---------------------------------------------------------------------------
# Embeddings: three verb families on orthogonal axes, entities by type region.

VERB_FAMILIES = {
    "use": ("utilize", "employ", "adopt"),
    "produce": ("build", "create", "develop", "make", "construct"),
    "support": ("improve", "enhance", "provide"),
}

DIM = 32


def build_vectors() -> dict[str, np.ndarray]:
    rng = np.random.default_rng(SEED)
    vectors: dict[str, np.ndarray] = {}

    def unit(vec: np.ndarray) -> np.ndarray:
        return vec / np.linalg.norm(vec)

    jitter_dim = 3
    for axis, (rep, members) in enumerate(VERB_FAMILIES.items()):
        base = np.zeros(DIM)
        base[axis] = 1.0
        vectors[rep] = base
        for member in members:
            vec = base.copy()
            vec[jitter_dim] = 0.25
            jitter_dim += 1
            vectors[member] = unit(vec)
    # the span-extractor label for the use family sits beside its verb
    uses = np.zeros(DIM)
    uses[0], uses[14] = 1.0, 0.05
    vectors["uses"] = unit(uses)

    type_axis = {"method": 18, "task": 19, "material": 20,
                 "metric": 21, "ost": 22, "topic": 23}
    by_type = {
        "method": ["knowledge_graph", "neural_network", "support_vector_machine",
                   "description_logic_reasoner", "graph_embedding", "random_forest"],
        "task": ["web_search", "entity_linking", "question_answering",
                 "link_prediction", "query_expansion", "text_classification"],
        "material": ["dbpedia", "wordnet", "freebase"],
        "metric": ["accuracy", "precision", "recall", "fmeasure"],
        "ost": ["rdf_triple", "sparql_query", "formal_semantics"],
        "topic": ["semantic_web", "world_wide_web", "machine_learning",
                  "data_mining", "artificial_intelligence", "knowledge_representation",
                  "information_retrieval", "natural_language_processing",
                  "web_ontology_language", "text_mining", "computer_science"],
    }
    for etype, labels in by_type.items():
        for label in labels:
            vec = np.zeros(DIM)
            vec[type_axis[etype]] = 1.0
            vec[24:] = rng.normal(0.0, 0.1, size=DIM - 24)
            vectors[label] = unit(vec)
    # a few single tokens for the token-average fallback path
    for token in ("graph", "web", "search", "knowledge", "semantic"):
        vec = np.zeros(DIM)
        vec[23] = 1.0
        vec[24:] = rng.normal(0.0, 0.1, size=DIM - 24)
        vectors[token] = unit(vec)
    return vectors


def write_embeddings(path: Path, vectors: dict[str, np.ndarray]) -> None:
    lines = [f"{len(vectors)} {DIM}"]
    for token, vec in sorted(vectors.items()):
        lines.append(token + " " + " ".join(repr(float(x)) for x in vec))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# Ontology, taxonomy, counts, label lists, config.

ONTOLOGY_ROWS = [
    ("semantic web", "superTopicOf", "world wide web"),
    ("world wide web", "superTopicOf", "computer science"),
    ("artificial intelligence", "superTopicOf", "computer science"),
    ("machine learning", "superTopicOf", "artificial intelligence"),
    ("data mining", "superTopicOf", "artificial intelligence"),
    ("knowledge representation", "superTopicOf", "artificial intelligence"),
    ("knowledge graph", "superTopicOf", "knowledge representation"),
    ("information retrieval", "superTopicOf", "computer science"),
    ("web search", "superTopicOf", "information retrieval"),
    ("natural language processing", "superTopicOf", "artificial intelligence"),
    ("question answering", "superTopicOf", "natural language processing"),
    ("text mining", "superTopicOf", "data mining"),
    ("web ontology language", "superTopicOf", "semantic web"),
    ("ontology alignment", "superTopicOf", "semantic web"),
    ("web ontology language", "altLabel", "owl"),
    ("ontology alignment", "altLabel", "ontology matching"),
]

TAXONOMY_ROWS = [
    ("act.v.01", "hypernym", "entity.n.01"),
    ("use.v.01", "hypernym", "act.v.01"),
    ("make.v.01", "hypernym", "act.v.01"),
    ("better.v.01", "hypernym", "act.v.01"),
    ("evaluate.v.01", "hypernym", "act.v.01"),
    ("include.v.01", "hypernym", "act.v.01"),
    ("compare.v.01", "hypernym", "act.v.01"),
    ("be.v.01", "hypernym", "entity.n.01"),
    ("abstraction.n.01", "hypernym", "entity.n.01"),
    ("structure.n.01", "hypernym", "abstraction.n.01"),
    ("graph.n.01", "hypernym", "structure.n.01"),
    ("network.n.01", "hypernym", "structure.n.01"),
    ("algorithm.n.01", "hypernym", "abstraction.n.01"),
    ("use", "sense", "use.v.01"),
    ("uses", "sense", "use.v.01"),
    ("utilize", "sense", "use.v.01"),
    ("employ", "sense", "use.v.01"),
    ("adopt", "sense", "use.v.01"),
    ("make", "sense", "make.v.01"),
    ("produce", "sense", "make.v.01"),
    ("create", "sense", "make.v.01"),
    ("build", "sense", "make.v.01"),
    ("develop", "sense", "make.v.01"),
    ("construct", "sense", "make.v.01"),
    ("improve", "sense", "better.v.01"),
    ("enhance", "sense", "better.v.01"),
    ("support", "sense", "better.v.01"),
    ("provide", "sense", "better.v.01"),
    ("evaluate", "sense", "evaluate.v.01"),
    ("evaluates", "sense", "evaluate.v.01"),
    ("assess", "sense", "evaluate.v.01"),
    ("include", "sense", "include.v.01"),
    ("includes", "sense", "include.v.01"),
    ("contain", "sense", "include.v.01"),
    ("compare", "sense", "compare.v.01"),
    ("compares", "sense", "compare.v.01"),
    ("be", "sense", "be.v.01"),
    ("graph", "sense", "graph.n.01"),
    ("network", "sense", "network.n.01"),
    ("algorithm", "sense", "algorithm.n.01"),
]

COUNTS_IN = {
    "knowledge graphs": 44, "knowledge graph": 31, "neural networks": 52,
    "support vector machines": 36, "description logic reasoners": 18,
    "graph embeddings": 30, "random forests": 27, "entity linking": 25,
    "link prediction": 22, "query expansion": 20, "text classification": 24,
    "dbpedia": 34, "wordnet": 29, "freebase": 21, "accuracy": 48,
    "precision": 41, "recall": 39, "fmeasure": 26, "rdf triples": 33,
    "sparql queries": 19, "formal semantics": 15, "zeitgeist widget": 2,
    "approach": 40, "system": 38, "method": 35, "framework": 16,
}
COUNTS_IN_TOTAL = 50000

COUNTS_SIBLING = {
    "approach": 70, "system": 65, "method": 58, "framework": 30,
    "graph embeddings": 4,
}
COUNTS_SIBLING_TOTAL = 80000

COUNTS_OUT = {
    "approach": 900, "system": 800, "method": 700, "framework": 400,
    "graph embeddings": 2,
}
COUNTS_OUT_TOTAL = 200000

BLACKLIST = ["et al", "figure 1", "table 2"]
WHITELIST = ["formal semantics"]

CONFIG_TEXT = """\
# corpus inputs
annotations_path = annotations.jsonl
embeddings_path = embeddings.txt
ontology_path = ontology.tsv
taxonomy_path = taxonomy.tsv
counts_in_domain_path = counts_in.tsv
counts_sibling_path = counts_sibling.tsv
counts_out_domain_path = counts_out.tsv
blacklist_path = blacklist.txt
whitelist_path = whitelist.txt

# outputs
output_dir = out
namespace = http://example.org/skg

# thresholds
min_support = 10
silhouette_target = 0.75
gate_threshold = 0.5

# classifier
hidden_size = 32
batch_size = 16
max_epochs = 80
seed = 13
"""


def write_counts(path: Path, counts: dict[str, int], total: int) -> None:
    lines = [f"{label}\t{count}" for label, count in sorted(counts.items())]
    lines.append(f"__TOTAL__\t{total}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_tsv(path: Path, rows) -> None:
    path.write_text("".join("\t".join(row) + "\n" for row in rows), encoding="utf-8")


# ---------------------------------------------------------------------------
# Corpus assembly.


class Sent:
    """Incremental sentence builder producing raw annotation records."""

    def __init__(self):
        self.tokens: list[dict] = []
        self.entities: list[dict] = []
        self.relations: list[dict] = []

    def words(self, *specs) -> "Sent":
        for spec in specs:
            surface, pos = spec[0], spec[1]
            lemma = spec[2] if len(spec) > 2 else surface.lower()
            self.tokens.append({"t": surface, "pos": pos, "lemma": lemma})
        return self

    def ent(self, specs, etype, label=None, source="EF") -> int:
        start = len(self.tokens)
        self.words(*specs)
        end = len(self.tokens)
        if label is None:
            label = " ".join(s[0] for s in specs).lower()
        self.entities.append(
            {"start": start, "end": end, "label": label, "type": etype, "source": source}
        )
        return len(self.entities) - 1

    def rel(self, subj: int, obj: int, label: str, source: str) -> "Sent":
        self.relations.append({"subj": subj, "obj": obj, "label": label, "source": source})
        return self

    def period(self) -> "Sent":
        return self.words((".", "."))

    def record(self, doc_id: str, sent_idx: int) -> dict:
        return {
            "doc_id": doc_id,
            "sent_idx": sent_idx,
            "text": " ".join(t["t"] for t in self.tokens),
            "tokens": self.tokens,
            "entities": self.entities,
            "relations": self.relations,
        }


# entity token specs: (surface, pos[, lemma])
KG = [("Knowledge", "NN"), ("graphs", "NNS", "graph")]
KG1 = [("knowledge", "NN"), ("graph", "NN")]
NN = [("Neural", "JJ"), ("networks", "NNS", "network")]
SVM = [("Support", "NN"), ("vector", "NN"), ("machines", "NNS", "machine")]
DLR = [("Description", "NN"), ("logic", "NN"), ("reasoners", "NNS", "reasoner")]
GE = [("Graph", "NN"), ("embeddings", "NNS", "embedding")]
RF = [("Random", "JJ"), ("forests", "NNS", "forest")]
EL = [("entity", "NN"), ("linking", "NN")]
LP = [("link", "NN"), ("prediction", "NN")]
QE = [("query", "NN"), ("expansion", "NN")]
TC = [("text", "NN"), ("classification", "NN")]
DBP = [("DBpedia", "NNP", "dbpedia")]
WN = [("WordNet", "NNP", "wordnet")]
ACC = [("accuracy", "NN")]
PRE = [("precision", "NN")]
REC = [("recall", "NN")]
RDF = [("RDF", "NNP", "rdf"), ("triples", "NNS", "triple")]
SPQ = [("SPARQL", "NNP", "sparql"), ("queries", "NNS", "query")]
SW = [("semantic", "JJ"), ("web", "NN")]
ML = [("machine", "NN"), ("learning", "NN")]
MLDM = ML + [("and", "CC")] + [("data", "NNS", "data"), ("mining", "NN")]
FS = [("formal", "JJ"), ("semantics", "NNS", "semantics")]
ZW = [("zeitgeist", "NN"), ("widget", "NN")]
APP = [("approach", "NN")]
SYS = [("system", "NN")]
ETAL = [("et", "FW"), ("al", "FW")]

FILLERS = (
    [("We", "PRP"), ("present", "VBP"), ("a", "DT"), ("detailed", "JJ"),
     ("analysis", "NN")],
    [("Experiments", "NNS", "experiment"), ("show", "VBP"), ("consistent", "JJ"),
     ("gains", "NNS", "gain")],
    [("Results", "NNS", "result"), ("hold", "VBP"), ("across", "IN"),
     ("domains", "NNS", "domain")],
    [("Our", "PRP$"), ("code", "NN"), ("is", "VBZ", "be"), ("public", "JJ")],
)


def filler(i: int) -> Sent:
    return Sent().words(*FILLERS[i % len(FILLERS)]).period()


def vbz(lemma: str) -> tuple[str, str, str]:
    surface = lemma + ("es" if lemma.endswith(("s", "sh", "ch")) else "s")
    return (surface, "VBZ", lemma)


def vbp(lemma: str) -> tuple[str, str, str]:
    return (lemma, "VBP", lemma)


def transit(doc: str, subj_specs, subj_type, verb, obj_specs, obj_type,
            ef_label: str | None, oie: bool, fillers_at: int) -> list[dict]:
    """A one-clause abstract: '<Subj> <verb> <Obj> .' plus a filler sentence."""
    s = Sent()
    subj = s.ent(subj_specs, subj_type)
    s.words(verb)
    obj = s.ent(obj_specs, obj_type)
    s.period()
    if ef_label:
        s.rel(subj, obj, ef_label, "EF")
    if oie:
        s.rel(subj, obj, verb[0].lower(), "OIE")
    return [s.record(doc, 0), filler(fillers_at).record(doc, 1)]


def build_corpus() -> list[dict]:
    records: list[dict] = []
    fill = 0

    def add(recs):
        nonlocal fill
        records.extend(recs)
        fill += 1

    # --- the high-support verb-bridged pair: 12 documents, no EF/OIE ---
    support_plan = (
        [("d001", "improve"), ("d002", "improve"), ("d003", "improve"),
         ("d004", "improve"), ("d005", "improve"),
         ("d006", "enhance"), ("d007", "enhance"), ("d008", "enhance"),
         ("d009", "enhance"),
         ("d012", "support"), ("d013", "support"), ("d014", "support")]
    )
    for doc, lemma in support_plan:
        s = Sent()
        s.ent(KG, "Method")
        s.words(vbp(lemma))
        s.words(("web", "NN"), ("search", "NN"))  # left to the topic matcher
        s.period()
        add([s.record(doc, 0), filler(fill).record(doc, 1)])

    # --- acronym documents ---
    s = Sent()
    s.words(("The", "DT"))
    s.ent([("Web", "NNP", "web"), ("Ontology", "NNP", "ontology"),
           ("Language", "NNP", "language")], "Other-Scientific-Term")
    s.words(("(", "-LRB-"), ("OWL", "NNP", "owl"), (")", "-RRB-"),
            ("is", "VBZ", "be"), ("a", "DT"), ("standard", "NN"))
    s.period()
    s2 = Sent()
    owl = s2.ent([("OWL", "NNP", "owl")], "Other-Scientific-Term")
    s2.words(vbz("support"))
    dlr = s2.ent(DLR, "Method")
    s2.period()
    s2.rel(owl, dlr, "supports", "OIE")
    records.extend([s.record("d010", 0), s2.record("d010", 1)])

    s = Sent()
    owl = s.ent([("OWL", "NNP", "owl")], "Other-Scientific-Term")
    s.words(vbz("provide"))
    fs = s.ent(FS, "Other-Scientific-Term")
    s.period()
    s.rel(owl, fs, "provides", "OIE")
    records.extend([s.record("d011", 0), filler(3).record("d011", 1)])

    # --- use-family docs: EF used-for + OIE + the implied verb bridge ---
    use_plan = [
        ("d015", NN, "Method", "use", EL, "Task"),
        ("d016", NN, "Method", "utilize", EL, "Task"),
        ("d017", NN, "Method", "employ", EL, "Task"),
        ("d018", SVM, "Method", "use", TC, "Task"),
        ("d019", SVM, "Method", "adopt", TC, "Task"),
        ("d020", SVM, "Method", "utilize", TC, "Task"),
        ("d021", RF, "Method", "employ", TC, "Task"),
        ("d022", RF, "Method", "use", TC, "Task"),
        ("d023", GE, "Method", "use", LP, "Task"),
        ("d024", GE, "Method", "utilize", LP, "Task"),
        ("d025", GE, "Method", "adopt", LP, "Task"),
        ("d026", GE, "Method", "employ", LP, "Task"),
    ]
    for doc, subj, st, lemma, obj, ot in use_plan:
        add(transit(doc, subj, st, vbz(lemma), obj, ot, "used-for", True, fill))

    # --- build-family docs ---
    build_plan = [
        ("d027", NN, "Method", "produce", GE, "Method"),
        ("d028", NN, "Method", "build", GE, "Method"),
        ("d029", NN, "Method", "create", GE, "Method"),
        ("d030", DLR, "Method", "construct", RDF, "Other-Scientific-Term"),
        ("d031", DLR, "Method", "develop", RDF, "Other-Scientific-Term"),
        ("d032", DLR, "Method", "create", RDF, "Other-Scientific-Term"),
    ]
    for doc, subj, st, lemma, obj, ot in build_plan:
        add(transit(doc, subj, st, vbz(lemma), obj, ot, None, True, fill))

    # --- span-extractor relation variety ---
    s = Sent()
    rdf = s.ent(RDF, "Other-Scientific-Term")
    s.words(("are", "VBP", "be"), ("part", "NN"), ("of", "IN"), ("the", "DT"))
    sw = s.ent(SW, "Other-Scientific-Term")
    s.period()
    s.rel(rdf, sw, "part-of", "EF")
    s2 = Sent().words(
        ("The", "DT"), ("semantic", "JJ"), ("web", "NN"), ("extends", "VBZ", "extend"),
        ("the", "DT"), ("world", "NN"), ("wide", "JJ"), ("web", "NN"))
    s2.period()
    records.extend([s.record("d033", 0), s2.record("d033", 1)])

    for doc, subj in (("d034", SVM), ("d036", RF)):
        s = Sent()
        a = s.ent(subj, "Method")
        s.words(("are", "VBP", "be"), ("a", "DT"), ("kind", "NN"), ("of", "IN"))
        b = s.ent(ML, "Task")
        s.period()
        s.rel(a, b, "hyponym-of", "EF")
        records.extend([s.record(doc, 0), filler(doc == "d036").record(doc, 1)])

    for doc, subj, st, obj in (("d035", NN, "Method", DBP), ("d037", RF, "Method", WN)):
        s = Sent()
        s.words(("We", "PRP"), ("evaluate", "VBP", "evaluate"))
        a = s.ent(subj, st)
        s.words(("on", "IN"))
        b = s.ent(obj, "Material")
        s.period()
        s.rel(a, b, "evaluate-for", "EF")
        records.extend([s.record(doc, 0), filler(2).record(doc, 1)])

    s = Sent()
    ge = s.ent(GE, "Method")
    s.words(("are", "VBP", "be"), ("part", "NN"), ("of", "IN"), ("the", "DT"))
    sw = s.ent(SW, "Other-Scientific-Term")
    s.period()
    s.rel(ge, sw, "part-of", "EF")
    records.extend([s.record("d038", 0), filler(1).record("d038", 1)])

    # --- a label that splits on the coordination token ---
    for doc, subj in (("d039", NN), ("d040", RF)):
        s = Sent()
        a = s.ent(subj, "Method")
        s.words(("are", "VBP", "be"), ("used", "VBN", "use"), ("for", "IN"))
        b = s.ent(MLDM, "Task")
        s.period()
        s.rel(a, b, "used-for", "EF")
        s.rel(a, b, "are used for", "OIE")
        records.extend([s.record(doc, 0), filler(doc == "d040").record(doc, 1)])

    # --- a coordination relation that must be discarded ---
    s = Sent()
    s.words(("We", "PRP"), ("compare", "VBP", "compare"))
    p = s.ent(PRE, "Metric")
    s.words(("and", "CC"))
    r = s.ent(REC, "Metric")
    s.period()
    s.rel(p, r, "conjunction", "EF")
    s2 = Sent()
    s2.ent(PRE, "Metric")
    s2.words(vbz("measure"), ("exactness", "NN"))
    s2.period()
    records.extend([s.record("d041", 0), s2.record("d041", 1)])

    # --- generic labels that the frequency filter removes ---
    s = Sent()
    s.words(("This", "DT"))
    app = s.ent(APP, "Generic")
    s.words(vbz("improve"))
    acc = s.ent(ACC, "Metric")
    s.period()
    s.rel(app, acc, "used-for", "EF")
    s2 = Sent()
    s2.words(("The", "DT"))
    s2.ent(SYS, "Generic")
    s2.words(vbz("scale"), ("to", "TO"), ("large", "JJ"),
             ("corpora", "NNS", "corpus"))
    s2.period()
    records.extend([s.record("d042", 0), s2.record("d042", 1)])

    s = Sent()
    s.words(("The", "DT"))
    sysm = s.ent(SYS, "Generic")
    s.words(vbz("improve"))
    rec = s.ent(REC, "Metric")
    s.period()
    s.rel(sysm, rec, "used-for", "EF")
    records.extend([s.record("d043", 0), filler(0).record("d043", 1)])

    # --- a blacklisted mention and a copula open-extraction assertion ---
    s = Sent()
    s.words(("Smith", "NNP", "smith"))
    s.ent(ETAL, "Generic")
    s.words(vbp("propose"), ("new", "JJ"), ("heuristics", "NNS", "heuristic"))
    s.period()
    s2 = Sent()
    dbp = s2.ent(DBP, "Material")
    s2.words(("is", "VBZ", "be"), ("a", "DT"))
    kg1 = s2.ent(KG1, "Method")
    s2.period()
    s2.rel(dbp, kg1, "is a", "OIE")
    records.extend([s.record("d044", 0), s2.record("d044", 1)])

    # --- unembeddable subject for the gate's no-prediction path; the second
    # sentence plants a third collapsed label for the produce family ---
    for doc in ("d045", "d046"):
        s = Sent()
        s.words(("The", "DT"))
        s.ent(ZW, "Other-Scientific-Term")
        s.words(vbz("filter"))
        s.ent(SPQ, "Other-Scientific-Term")
        s.period()
        s2 = Sent()
        s2.ent(NN, "Method")
        s2.words(vbz("build"))
        s2.ent(RDF, "Other-Scientific-Term")
        s2.period()
        records.extend([s.record(doc, 0), s2.record(doc, 1)])

    # --- a verb with no embedding: the gate must reject it; the second
    # sentence plants a third collapsed label for the support family ---
    for doc in ("d047", "d048"):
        s = Sent()
        s.ent(GE, "Method")
        s.words(vbp("synthesize"))
        s.ent(RDF, "Other-Scientific-Term")
        s.period()
        s2 = Sent()
        s2.ent(WN, "Material")
        s2.words(vbz("improve"))
        s2.ent(EL, "Task")
        s2.period()
        records.extend([s.record(doc, 0), s2.record(doc, 1)])

    # --- low-support verb bridge the gate should admit ---
    for doc in ("d049", "d050"):
        s = Sent()
        s.ent(SVM, "Method")
        s.words(vbp("utilize"))
        s.ent(QE, "Task")
        s.period()
        records.extend([s.record(doc, 0), filler(doc == "d050").record(doc, 1)])

    return records


# ---------------------------------------------------------------------------
# Gold synthesis.


def write_gold(fixtures: Path, provenance_path: Path) -> dict[str, int]:
    """Judge a deterministic slice of the built graph, plus absent triples."""
    rows = []
    graph_keys = []
    for line in provenance_path.read_text(encoding="utf-8").splitlines():
        record = json.loads(line)
        graph_keys.append((record["s"], record["p"], record["o"]))
    graph_keys.sort()
    judged_true = graph_keys[0::2][:18]
    judged_false = graph_keys[1::2][:6]
    absent_true = [
        ("wordnet", "uses", "entity linking"),
        ("freebase", "includes", "rdf triple"),
        ("neural network", "produce", "question answering"),
        ("description logic reasoner", "uses", "ontology alignment"),
    ]
    absent_false = [
        ("precision", "skos:broader", "recall"),
        ("dbpedia", "produce", "accuracy"),
    ]
    for s, p, o in judged_true:
        rows.append((s, p, o, "true"))
    for s, p, o in judged_false:
        rows.append((s, p, o, "false"))
    for s, p, o in absent_true:
        assert (s, p, o) not in set(graph_keys), (s, p, o)
        rows.append((s, p, o, "true"))
    for s, p, o in absent_false:
        assert (s, p, o) not in set(graph_keys), (s, p, o)
        rows.append((s, p, o, "false"))
    write_tsv(fixtures / "gold.tsv", rows)
    return {
        "tp": len(judged_true),
        "fp": len(judged_false),
        "fn": len(absent_true),
    }


def write_gold_818(fixtures: Path) -> None:
    """818 unique judged triples assembled from five overlapping method pools."""
    triples = [(f"term {i:03d}", "related-to", f"concept {i:03d}") for i in range(818)]
    pools = {
        "ef": list(range(0, 401)),
        "oie": list(range(401, 503)),
        "pos": list(range(503, 563)),
        "cons": list(range(563, 673)),
        "inferred": list(range(673, 818)) + list(range(0, 67)),
    }
    assert sum(len(ids) for ids in pools.values()) == 885
    assert len({i for ids in pools.values() for i in ids}) == 818
    write_tsv(
        fixtures / "gold818.tsv",
        [(s, r, o, "true" if i % 5 else "false") for i, (s, r, o) in enumerate(triples)],
    )
    write_tsv(
        fixtures / "gold818_sources.tsv",
        [(method, *triples[i]) for method in sorted(pools) for i in pools[method]],
    )


# ---------------------------------------------------------------------------
# Validation.


def read_jsonl(path: Path) -> list[dict]:
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]


def validate(fixtures: Path) -> Path:
    """Run the pipeline twice and assert every planted behavior; returns run dir."""
    vectors = load_embeddings(fixtures / "embeddings.txt")
    family_of = {member: rep for rep, members in VERB_FAMILIES.items()
                 for member in (rep, *members)}
    partition = cluster_relations(sorted(family_of), vectors)
    groups = {frozenset(members) for members in partition.clusters}
    expected = {frozenset((rep, *members)) for rep, members in VERB_FAMILIES.items()}
    assert groups == expected, f"verb families not recovered: {groups}"
    rmap = build_relation_map(partition, vectors)
    for member, rep in family_of.items():
        assert rmap(member) == rep, (member, rep, rmap(member))

    tmp = Path(tempfile.mkdtemp(prefix="fixture-validate-"))
    run_a, run_b = tmp / "a", tmp / "b"
    for out in (run_a, run_b):
        config = load_config(fixtures / "config.ini", overrides={"output_dir": str(out)})
        run_pipeline(config)
    for name in ("graph.nt", "provenance.jsonl", "histogram.json"):
        assert (run_a / name).read_bytes() == (run_b / name).read_bytes(), name

    refined = read_jsonl(run_a / "refined.jsonl")
    by_doc: dict[str, set[str]] = {}
    for record in refined:
        by_doc.setdefault(record["doc_id"], set()).update(
            e["label"] for e in record["entities"]
        )
    universe = set().union(*by_doc.values())
    assert "web ontology language" in by_doc["d010"], by_doc["d010"]
    assert "owl" not in by_doc["d010"], by_doc["d010"]
    assert "owl" in by_doc["d011"], by_doc["d011"]
    assert "machine learning and data mining" not in universe
    assert {"machine learning", "data mining"} <= by_doc["d039"]
    for gone in ("approach", "system", "et al"):
        assert gone not in universe, gone
    assert "zeitgeist widget" in universe

    selected = read_jsonl(run_a / "selected.jsonl")
    pos_only = [r for r in selected if r["sources"] == ["POS"]]
    assert any(
        r["s"] == "knowledge graph" and r["o"] == "web search" and r["support"] >= 10
        for r in pos_only
    ), pos_only
    cons = [r for r in selected if r["sources"] == ["CONS"]]
    assert cons, "no gate-admitted triples"
    assert any(r["s"] == "support vector machine" and r["o"] == "query expansion"
               for r in cons), cons

    decisions = read_jsonl(run_a / "gate_decisions.jsonl")
    assert any(d["admitted"] for d in decisions)
    synth = [d for d in decisions if d["r"] == "synthesize"]
    assert synth and not any(d["admitted"] for d in synth), synth
    unembeddable = [d for d in decisions if d["predicted"] is None]
    assert any(d["s"] == "zeitgeist widget" for d in unembeddable), decisions

    enhanced = read_jsonl(run_a / "enhanced.jsonl")
    inferred = [r for r in enhanced if r["sources"] == ["INFERRED"]]
    assert any(r["s"] == "knowledge graph" and r["o"] == "information retrieval"
               for r in inferred), inferred
    assert any(r["r"] == "skos:broader" and r["o"] == "artificial intelligence"
               for r in inferred), inferred

    graph_nt = (run_a / "graph.nt").read_text(encoding="utf-8")
    assert "<http://www.w3.org/2004/02/skos/core#broader>" in graph_nt
    assert "http://example.org/skg/rel/" in graph_nt

    clusters: dict[str, str] = {}
    for line in (run_a / "relation_clusters.tsv").read_text(encoding="utf-8").splitlines():
        verb, rep = line.split("\t")
        clusters[verb] = rep
    for verb, rep in clusters.items():
        if verb in family_of:
            assert family_of[verb] == family_of.get(rep, rep), (verb, rep)

    shutil.rmtree(run_b)
    return run_a


def main() -> int:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    write_embeddings(FIXTURES / "embeddings.txt", build_vectors())
    write_tsv(FIXTURES / "ontology.tsv", ONTOLOGY_ROWS)
    write_tsv(FIXTURES / "taxonomy.tsv", TAXONOMY_ROWS)
    write_counts(FIXTURES / "counts_in.tsv", COUNTS_IN, COUNTS_IN_TOTAL)
    write_counts(FIXTURES / "counts_sibling.tsv", COUNTS_SIBLING, COUNTS_SIBLING_TOTAL)
    write_counts(FIXTURES / "counts_out.tsv", COUNTS_OUT, COUNTS_OUT_TOTAL)
    (FIXTURES / "blacklist.txt").write_text("\n".join(BLACKLIST) + "\n", encoding="utf-8")
    (FIXTURES / "whitelist.txt").write_text("\n".join(WHITELIST) + "\n", encoding="utf-8")
    (FIXTURES / "config.ini").write_text(CONFIG_TEXT, encoding="utf-8")

    records = build_corpus()
    docs = {r["doc_id"] for r in records}
    assert len(docs) == 50, f"expected 50 documents, built {len(docs)}"
    (FIXTURES / "annotations.jsonl").write_text(
        "".join(json.dumps(r, sort_keys=True) + "\n" for r in records), encoding="utf-8"
    )

    run_dir = validate(FIXTURES)
    tally = write_gold(FIXTURES, run_dir / "provenance.jsonl")
    write_gold_818(FIXTURES)
    shutil.rmtree(run_dir.parent)
    print(f"fixtures written to {FIXTURES}")
    print(f"gold tally: {tally}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
