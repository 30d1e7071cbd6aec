"""Knowledge graph construction from annotated scholarly abstracts."""

from .model import (
    CandidateTriple,
    EntityMention,
    EvaluationReport,
    SentenceAnnotation,
    SupportedTriple,
    Token,
    normalize_label,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateTriple",
    "EntityMention",
    "EvaluationReport",
    "SentenceAnnotation",
    "SupportedTriple",
    "Token",
    "normalize_label",
    "__version__",
]
