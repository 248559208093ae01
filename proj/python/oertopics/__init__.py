"""Per-skill LDA topic models over lecture transcripts.

Collapsed Gibbs training, C_V coherence model selection, covered-topic
extraction of new documents, and multi-label evaluation against expert
labels. Everything is deterministic for a fixed seed.
"""

from ._core import (
    Model,
    PipelineError,
    cv_coherence,
    default_stopwords,
    evaluate,
    load_model,
    normalize,
    sweep,
    train_model,
)

__all__ = [
    "Model",
    "PipelineError",
    "cv_coherence",
    "default_stopwords",
    "evaluate",
    "load_model",
    "normalize",
    "sweep",
    "train_model",
]
