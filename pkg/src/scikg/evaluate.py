"""Precision / recall / F-measure of a triple set against judged gold triples.

The gold standard defines the evaluation universe: predicted triples that
were never judged are ignored rather than punished.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .ingest import GoldStandardEntry
from .model import EvaluationReport, PipelineError


def fmeasure(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if precision < 0 or recall < 0:
        raise ValueError("precision and recall must be non-negative")
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def evaluate(
    predicted: Iterable[tuple[str, str, str]],
    gold: Sequence[GoldStandardEntry],
) -> EvaluationReport:
    """Score predictions inside the gold universe.

    True positives are predicted triples judged true, false positives are
    predicted triples judged false, and false negatives are true triples never
    predicted.
    """
    if not gold:
        raise PipelineError("gold standard is empty")
    gold_true = {e.key for e in gold if e.verdict}
    gold_false = {e.key for e in gold if not e.verdict}
    predictions = set(predicted)
    tp = len(predictions & gold_true)
    fp = len(predictions & gold_false)
    fn = len(gold_true - predictions)
    return EvaluationReport.from_counts(tp=tp, fp=fp, fn=fn)


def format_report_row(method: str, report: EvaluationReport) -> str:
    """One TSV row: method name, the three scores to 4 places, raw counts."""
    return (
        f"{method}\t{report.precision:.4f}\t{report.recall:.4f}\t{report.fmeasure:.4f}"
        f"\t{report.tp}\t{report.fp}\t{report.fn}"
    )
