"""fluentfix: speech-to-speech disfluency correction toolkit.

Label every word of an utterance fluent or disfluent, remove the disfluent
ones, classify the disfluency, count removed words, and (through pluggable
ASR/TTS backends) turn disfluent speech into fluent speech.
"""

__version__ = "0.1.0"

from .textcore import LanguageTag, Token, Transcript, detokenize, tokenize
from .engine import (
    CorrectionResult,
    DetectorConfig,
    DisfluencySpan,
    DisfluencyType,
    TokenLabel,
    Verdict,
    apply_removal,
    correct,
    default_config,
    detect_corrections,
    detect_false_starts,
    detect_fillers,
    detect_repetitions,
    disfluency_count,
    label_tokens,
)
from .classify import TypeHistogram, classify_spans, classify_utterance

__all__ = [
    "LanguageTag",
    "Token",
    "Transcript",
    "tokenize",
    "detokenize",
    "DisfluencyType",
    "Verdict",
    "TokenLabel",
    "DisfluencySpan",
    "DetectorConfig",
    "CorrectionResult",
    "default_config",
    "detect_fillers",
    "detect_repetitions",
    "detect_corrections",
    "detect_false_starts",
    "label_tokens",
    "apply_removal",
    "correct",
    "disfluency_count",
    "TypeHistogram",
    "classify_spans",
    "classify_utterance",
    "__version__",
]
