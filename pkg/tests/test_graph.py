"""Unit tests for super-topic enhancement, serialization, and corpus export."""

import json

import numpy as np
import pytest

from scikg.graph import (
    HISTOGRAM_GROUPS,
    KnowledgeGraph,
    enhance_with_supertopics,
    export_underscored_corpus,
    serialize_ntriples,
    serialize_provenance,
    support_histogram,
)
from scikg.ingest import TopicOntology
from scikg.model import PipelineError, SupportedTriple
from conftest import make_sentence


def triple(subject, relation, object_, support=1, sources=("EF",), docs=("d1",)):
    return SupportedTriple(
        subject=subject, relation=relation, object=object_,
        support=support, sources=frozenset(sources), doc_ids=frozenset(docs),
    )


def ontology(*edges):
    labels = {label for edge in edges for label in edge}
    return TopicOntology(
        topics=frozenset(labels),
        super_topic_edges=frozenset(edges),
        alt_label_groups=(),
    )


class TestKnowledgeGraph:
    def test_rejects_empty_namespace(self):
        with pytest.raises(ValueError, match="namespace"):
            KnowledgeGraph(namespace="", triples=())

    def test_rejects_duplicate_triples(self):
        t = triple("a", "uses", "b")
        dup = triple("a", "uses", "b", support=2)
        with pytest.raises(ValueError, match="duplicate"):
            KnowledgeGraph(namespace="http://x", triples=(t, dup))


class TestEnhanceWithSupertopics:
    def test_direct_parent_inherits_the_relation(self):
        onto = ontology(("semantic web", "world wide web"))
        original = triple("reasoners", "used-for", "semantic web", docs=("d1", "d2"))
        result = enhance_with_supertopics([original], onto)
        assert original in result
        (inferred,) = [t for t in result if t.sources == {"INFERRED"}]
        assert inferred.key == ("reasoners", "used-for", "world wide web")
        assert inferred.support == 0
        assert inferred.doc_ids == {"d1", "d2"}

    def test_existing_connection_blocks_in_both_directions(self):
        onto = ontology(("semantic web", "world wide web"))
        base = triple("reasoners", "used-for", "semantic web")
        forward = triple("reasoners", "part-of", "world wide web")
        backward = triple("world wide web", "uses", "reasoners")
        assert enhance_with_supertopics([base, forward], onto) == sorted(
            [base, forward], key=lambda t: t.key
        )
        assert enhance_with_supertopics([base, backward], onto) == sorted(
            [base, backward], key=lambda t: t.key
        )

    def test_parent_equal_to_subject_is_skipped(self):
        onto = ontology(("semantic web", "reasoners"))
        base = triple("reasoners", "includes", "semantic web")
        assert enhance_with_supertopics([base], onto) == [base]

    def test_witnesses_union_across_generators(self):
        onto = ontology(("owl", "ontologies"), ("rdf", "ontologies"))
        triples = [
            triple("tools", "use", "owl", docs=("d1",)),
            triple("tools", "use", "rdf", docs=("d2",)),
        ]
        result = enhance_with_supertopics(triples, onto)
        (inferred,) = [t for t in result if t.sources == {"INFERRED"}]
        assert inferred.key == ("tools", "use", "ontologies")
        assert inferred.doc_ids == {"d1", "d2"}

    def test_single_pass_stops_at_direct_parents(self):
        onto = ontology(("owl", "ontologies"), ("ontologies", "knowledge representation"))
        base = triple("tools", "use", "owl")
        result = enhance_with_supertopics([base], onto)
        objects = {t.object for t in result}
        assert "ontologies" in objects
        assert "knowledge representation" not in objects

    def test_fixpoint_reaches_all_ancestors(self):
        onto = ontology(("owl", "ontologies"), ("ontologies", "knowledge representation"))
        base = triple("tools", "use", "owl")
        result = enhance_with_supertopics([base], onto, to_fixpoint=True)
        objects = {t.object for t in result}
        assert {"owl", "ontologies", "knowledge representation"} <= objects

    def test_matches_an_independent_restatement(self):
        rng = np.random.default_rng(71)
        relations = ("uses", "part-of", "improves")
        for _ in range(30):
            n_topics = int(rng.integers(4, 9))
            topics = [f"t{i}" for i in range(n_topics)]
            edges = tuple(
                (topics[i], topics[j])
                for i in range(n_topics)
                for j in range(i + 1, n_topics)
                if rng.random() < 0.3
            )
            onto = TopicOntology(
                topics=frozenset(topics),
                super_topic_edges=frozenset(edges),
                alt_label_groups=(),
            )
            parents: dict[str, set[str]] = {}
            for child, parent in edges:
                parents.setdefault(child, set()).add(parent)

            originals = []
            seen = set()
            for _ in range(int(rng.integers(3, 10))):
                s, o = rng.choice(topics + ["m1", "m2"], size=2, replace=False)
                r = relations[rng.integers(0, len(relations))]
                if (s, r, o) in seen:
                    continue
                seen.add((s, r, o))
                originals.append(triple(str(s), str(r), str(o), docs=(f"d{len(seen)}",)))

            connected = set()
            for t in originals:
                connected.add((t.subject, t.object))
                connected.add((t.object, t.subject))
            expected: dict[tuple[str, str, str], set[str]] = {}
            for t in originals:
                for parent in parents.get(t.object, ()):
                    if parent == t.subject or (t.subject, parent) in connected:
                        continue
                    expected.setdefault((t.subject, t.relation, parent), set()).update(t.doc_ids)

            result = enhance_with_supertopics(originals, onto)
            inferred = {t.key: t for t in result if t.sources == {"INFERRED"}}
            assert set(inferred) == set(expected)
            for key, docs in expected.items():
                assert inferred[key].doc_ids == docs
                assert inferred[key].support == 0
            assert {t for t in result if t.sources != {"INFERRED"}} == set(originals)


class TestSerializeNTriples:
    def test_iri_minting_and_sorting(self):
        graph = KnowledgeGraph(
            namespace="http://example.org/skg/",
            triples=(
                triple("web search", "uses", "knowledge graphs"),
                triple("knowledge graphs", "skos:broader", "data structures"),
            ),
        )
        assert serialize_ntriples(graph) == (
            b"<http://example.org/skg/knowledge-graphs> "
            b"<http://www.w3.org/2004/02/skos/core#broader> "
            b"<http://example.org/skg/data-structures> .\n"
            b"<http://example.org/skg/web-search> "
            b"<http://example.org/skg/rel/uses> "
            b"<http://example.org/skg/knowledge-graphs> .\n"
        )

    def test_non_ascii_labels_percent_encode_as_utf8(self):
        graph = KnowledgeGraph(
            namespace="http://x",
            triples=(triple("naïve bayes", "used-for", "c++ parsing"),),
        )
        assert serialize_ntriples(graph) == (
            b"<http://x/na%C3%AFve-bayes> "
            b"<http://x/rel/used-for> "
            b"<http://x/c%2B%2B-parsing> .\n"
        )

    def test_output_ignores_triple_order(self):
        triples = (
            triple("a", "uses", "b"),
            triple("c", "uses", "d"),
            triple("b", "uses", "c"),
        )
        forward = KnowledgeGraph(namespace="http://x", triples=triples)
        backward = KnowledgeGraph(namespace="http://x", triples=triples[::-1])
        assert serialize_ntriples(forward) == serialize_ntriples(backward)

    def test_degenerate_graphs(self):
        assert serialize_ntriples(KnowledgeGraph("http://x", ())) == b""
        with pytest.raises(PipelineError, match="namespace"):
            serialize_ntriples(KnowledgeGraph("///", ()))


class TestSerializeProvenance:
    def test_records_are_sorted_and_complete(self):
        graph = KnowledgeGraph(
            namespace="http://x",
            triples=(
                triple("b", "uses", "c", support=2, sources=("OIE", "EF"), docs=("d2", "d1")),
                triple("a", "uses", "b"),
            ),
        )
        lines = serialize_provenance(graph).decode("utf-8").splitlines()
        assert [json.loads(line)["s"] for line in lines] == ["a", "b"]
        assert json.loads(lines[1]) == {
            "s": "b", "p": "uses", "o": "c",
            "support": 2, "sources": ["EF", "OIE"], "doc_ids": ["d1", "d2"],
        }
        # keys render in sorted order for byte stability
        assert lines[0].index('"doc_ids"') < lines[0].index('"o"') < lines[0].index('"s"')

    def test_empty_graph(self):
        assert serialize_provenance(KnowledgeGraph("http://x", ())) == b""


class TestSupportHistogram:
    def test_triples_count_toward_each_matching_group(self):
        histogram = support_histogram([
            triple("a", "r", "b", support=3, sources=("EF",)),
            triple("c", "r", "d", support=3, sources=("EF", "OIE")),
            triple("e", "r", "f", support=1, sources=("POS",)),
            triple("g", "r", "h", support=1, sources=("CONS",)),
            SupportedTriple("i", "r", "j", 0, frozenset({"INFERRED"}), frozenset({"d1"})),
        ])
        assert histogram.by_group["EF"] == {3: 2}
        assert histogram.by_group["OIE"] == {3: 1}
        assert histogram.by_group["POS+CONS"] == {1: 2}
        assert histogram.total("EF") == 2
        assert histogram.total("POS+CONS") == 2
        # inferred triples stay out of every table
        assert sum(histogram.total(group) for group in HISTOGRAM_GROUPS) == 5

    def test_groups_always_present(self):
        histogram = support_histogram([])
        assert set(histogram.by_group) == set(HISTOGRAM_GROUPS)
        assert all(histogram.total(group) == 0 for group in HISTOGRAM_GROUPS)


class TestExportUnderscoredCorpus:
    def sentences(self):
        return [
            make_sentence(
                doc_id="d2", sent_idx=0,
                tokens=[("Knowledge", "NN"), ("Graph", "NN"), ("search", "NN"), (".", ".")],
                entities=[], relations=[],
                text="Knowledge Graph search .",
            ),
            make_sentence(
                doc_id="d1", sent_idx=1,
                tokens=[("We", "PRP"), ("use", "VBP"), ("graphs", "NNS"), (".", ".")],
                entities=[], relations=[],
                text="We use graphs .",
            ),
        ]

    def test_multiword_entities_join_case_insensitively(self):
        out = export_underscored_corpus(self.sentences(), ["knowledge graph"])
        assert out == b"We use graphs .\nKnowledge_Graph search .\n"

    def test_longest_match_wins(self):
        out = export_underscored_corpus(
            self.sentences(), ["knowledge graph", "knowledge graph search"]
        )
        assert out.splitlines()[1] == b"Knowledge_Graph_search ."

    def test_greedy_left_to_right(self):
        sentence = make_sentence(
            tokens=[("graph", "NN"), ("search", "NN"), ("trees", "NNS")],
            entities=[], relations=[],
            text="graph search trees",
        )
        out = export_underscored_corpus([sentence], ["graph search", "search trees"])
        assert out == b"graph_search trees\n"

    def test_single_word_entities_change_nothing(self):
        out = export_underscored_corpus(self.sentences(), ["graphs", "search"])
        assert out == b"We use graphs .\nKnowledge Graph search .\n"

    def test_empty_corpus(self):
        assert export_underscored_corpus([], ["knowledge graph"]) == b""
