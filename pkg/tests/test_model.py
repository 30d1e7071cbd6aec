"""Unit tests for the shared domain types and their invariants."""

import numpy as np
import pytest

from scikg.model import (
    ENTITY_TYPES,
    PENN_TAGS,
    CandidateTriple,
    EmptyLabelError,
    EntityMention,
    EvaluationReport,
    RawRelation,
    SentenceAnnotation,
    SupportedTriple,
    Token,
    is_normalized,
    normalize_label,
)
from conftest import make_sentence, make_token


class TestNormalizeLabel:
    def test_lowercases_and_collapses_whitespace(self):
        assert normalize_label("Web  Ontology\tLanguage ") == "web ontology language"
        assert normalize_label("Machine Learning") == "machine learning"
        assert normalize_label("  WSD ") == "wsd"

    def test_idempotent_on_random_strings(self):
        rng = np.random.default_rng(42)
        alphabet = list("abcXYZ02 -\t\n_.")
        for _ in range(500):
            raw = "".join(rng.choice(alphabet, size=rng.integers(1, 30)))
            try:
                once = normalize_label(raw)
            except EmptyLabelError:
                assert not raw.strip()
                continue
            assert normalize_label(once) == once
            assert is_normalized(once)

    def test_whitespace_only_raises(self):
        for raw in ("", "   ", "\t\n", " \t "):
            with pytest.raises(EmptyLabelError):
                normalize_label(raw)
            assert not is_normalized(raw)

    def test_unnormalized_forms_are_detected(self):
        for raw in ("Graph", "two  spaces", " padded", "padded "):
            assert not is_normalized(raw)


class TestToken:
    def test_verb_detection_follows_tag_prefix(self):
        for tag in ("VB", "VBD", "VBG", "VBN", "VBP", "VBZ"):
            assert make_token("runs", pos=tag).is_verb
        for tag in ("NN", "MD", "JJ", "IN", "RB"):
            assert not make_token("runs", pos=tag).is_verb

    def test_empty_fields_rejected(self):
        with pytest.raises(ValueError):
            Token(surface="", lemma="x", pos="NN")
        with pytest.raises(ValueError):
            Token(surface="x", lemma="", pos="NN")
        with pytest.raises(ValueError):
            Token(surface="x", lemma="x", pos="")

    def test_tag_inventory_contains_verbs_and_punctuation(self):
        assert {"VB", "VBZ", "MD", "NN", ".", ",", "-LRB-", "-RRB-"} <= PENN_TAGS


class TestEntityMention:
    def test_valid_mention(self):
        m = EntityMention(start=0, end=2, label="semantic web", entity_type="Topic", source="CSO")
        assert (m.start, m.end) == (0, 2)

    def test_bad_span_rejected(self):
        for start, end in ((2, 2), (3, 1), (-1, 1)):
            with pytest.raises(ValueError):
                EntityMention(start=start, end=end, label="x", entity_type="Task", source="EF")

    def test_unnormalized_label_rejected(self):
        with pytest.raises(ValueError):
            EntityMention(start=0, end=1, label="Graph", entity_type="Task", source="EF")

    def test_unknown_type_and_source_rejected(self):
        with pytest.raises(ValueError):
            EntityMention(start=0, end=1, label="x", entity_type="Thing", source="EF")
        with pytest.raises(ValueError):
            EntityMention(start=0, end=1, label="x", entity_type="Task", source="XYZ")
        assert "Other-Scientific-Term" in ENTITY_TYPES


class TestSentenceAnnotation:
    def test_mention_spans_checked_against_tokens(self):
        with pytest.raises(ValueError):
            make_sentence(
                tokens=[("a",), ("b",)],
                entities=[(0, 3, "a b", "Task", "EF")],
            )

    def test_relation_indices_checked_against_mentions(self):
        with pytest.raises(ValueError):
            make_sentence(
                tokens=[("a",), ("b",)],
                entities=[(0, 1, "a", "Task", "EF")],
                relations=[(0, 1, "used-for", "EF")],
            )

    def test_relation_source_restricted(self):
        with pytest.raises(ValueError):
            RawRelation(subj=0, obj=1, label="used-for", source="POS")


class TestCandidateTriple:
    def test_key_and_validation(self):
        t = CandidateTriple(
            subject="a", relation="uses", object="b", source="EF", doc_ids=frozenset({"d1"})
        )
        assert t.key == ("a", "uses", "b")

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            CandidateTriple(
                subject="a", relation="uses", object="a", source="EF", doc_ids=frozenset({"d"})
            )

    def test_requires_witness(self):
        with pytest.raises(ValueError):
            CandidateTriple(subject="a", relation="uses", object="b", source="EF")

    def test_unknown_source_rejected(self):
        with pytest.raises(ValueError):
            CandidateTriple(
                subject="a", relation="uses", object="b", source="CONS", doc_ids=frozenset({"d"})
            )


class TestSupportedTriple:
    def test_supported_sources(self):
        t = SupportedTriple(
            subject="a",
            relation="uses",
            object="b",
            support=3,
            sources=frozenset({"EF", "CONS"}),
            doc_ids=frozenset({"d1"}),
        )
        assert t.support == 3

    def test_zero_support_only_for_inferred(self):
        SupportedTriple(
            subject="a", relation="uses", object="b", support=0,
            sources=frozenset({"INFERRED"}),
        )
        with pytest.raises(ValueError):
            SupportedTriple(
                subject="a", relation="uses", object="b", support=0,
                sources=frozenset({"EF"}),
            )

    def test_bad_source_sets_rejected(self):
        with pytest.raises(ValueError):
            SupportedTriple(
                subject="a", relation="uses", object="b", support=1, sources=frozenset()
            )
        with pytest.raises(ValueError):
            SupportedTriple(
                subject="a", relation="uses", object="b", support=1,
                sources=frozenset({"WEB"}),
            )


class TestEvaluationReport:
    def test_counts_to_scores(self):
        report = EvaluationReport.from_counts(tp=8, fp=2, fn=8)
        np.testing.assert_allclose(report.precision, 0.8)
        np.testing.assert_allclose(report.recall, 0.5)
        np.testing.assert_allclose(report.fmeasure, 2 * 0.8 * 0.5 / 1.3)
        assert not report.degenerate

    def test_matches_direct_arithmetic_on_random_counts(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            tp, fp, fn = (int(v) for v in rng.integers(0, 50, size=3))
            report = EvaluationReport.from_counts(tp=tp, fp=fp, fn=fn)
            p = tp / (tp + fp) if tp + fp else 0.0
            r = tp / (tp + fn) if tp + fn else 0.0
            f = 2 * p * r / (p + r) if p + r else 0.0
            np.testing.assert_allclose(
                [report.precision, report.recall, report.fmeasure], [p, r, f], atol=1e-12
            )
            assert report.degenerate == (tp + fp == 0 or tp + fn == 0 or p + r == 0)

    def test_zero_denominators_flagged(self):
        assert EvaluationReport.from_counts(tp=0, fp=0, fn=3).degenerate
        assert EvaluationReport.from_counts(tp=0, fp=3, fn=0).degenerate
        assert not EvaluationReport.from_counts(tp=1, fp=0, fn=0).degenerate

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            EvaluationReport.from_counts(tp=-1, fp=0, fn=0)
