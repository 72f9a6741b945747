"""Utterance-level disfluency type from typed spans or labels.

The displayed class is the type that removed the most words; ties go to the
more structurally severe type (Correction > FalseStart > Repetition > Filler).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .engine import DisfluencySpan, DisfluencyType, TokenLabel
from .errors import ContractViolationError

# severity order used to break ties, most severe first
TIE_BREAK = (
    DisfluencyType.CORRECTION,
    DisfluencyType.FALSE_START,
    DisfluencyType.REPETITION,
    DisfluencyType.FILLER,
)
_RANK = {kind: len(TIE_BREAK) - i for i, kind in enumerate(TIE_BREAK)}


@dataclass(frozen=True)
class TypeHistogram:
    """Removed-word counts per disfluency type (Fluent excluded)."""

    counts: Mapping[DisfluencyType, int]

    def __post_init__(self):
        for kind, count in self.counts.items():
            if kind is DisfluencyType.FLUENT:
                raise ValueError("Fluent has no removed-word count")
            if count < 0:
                raise ValueError(f"negative count for {kind.value}")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def get(self, kind: DisfluencyType) -> int:
        return self.counts.get(kind, 0)

    @classmethod
    def from_labels(cls, labels: Iterable[TokenLabel]) -> "TypeHistogram":
        counts: dict[DisfluencyType, int] = {}
        for lab in labels:
            if lab.disfluent:
                counts[lab.type] = counts.get(lab.type, 0) + 1
        return cls(counts)


def classify_spans(spans: Sequence[DisfluencySpan]) -> TypeHistogram:
    """Sum span lengths per type. Spans must be non-overlapping."""
    ordered = sorted(spans, key=lambda s: s.start)
    for a, b in zip(ordered, ordered[1:]):
        if a.end > b.start:
            raise ContractViolationError(
                f"overlapping spans [{a.start},{a.end}) and [{b.start},{b.end})"
            )
    counts: dict[DisfluencyType, int] = {}
    for s in ordered:
        counts[s.type] = counts.get(s.type, 0) + (s.end - s.start)
    return TypeHistogram(counts)


def classify_utterance(hist: TypeHistogram) -> DisfluencyType:
    """Fluent when nothing was removed, else the dominant type."""
    if hist.total == 0:
        return DisfluencyType.FLUENT
    return max(TIE_BREAK, key=lambda kind: (hist.get(kind), _RANK[kind]))
