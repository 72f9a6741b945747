"""Deterministic disfluency labeling engine.

Labels every word token fluent or disfluent via four rule detectors run in a
fixed order (fillers, repetitions, corrections, false starts), removes the
disfluent tokens, and reports typed spans plus the removed-word count. The
engine is a pure function of (transcript, config) and is the rule-based
implementation of the backend-agnostic token-labeling contract; a learned
labeler can replace it behind the same interface.

Detector interplay, in order:

* Fillers claim single lexicon words; adjacent filler tokens merge.
* Repetitions find immediately repeated word n-grams (longest first) and
  remove all copies but the last. Tokens claimed by fillers are transparent
  when judging adjacency. Tokens inside a viable editing-term occurrence are
  off limits, so "I I mean ..." is left for the correction detector.
* Corrections anchor on an editing term with speech before and after it and
  remove the reparandum plus the editing term, keeping the repair. The
  reparandum is the shortest run ending at the editing term whose first word
  matches the repair's first word, or the single preceding word if none does.
* False starts fire at the utterance start only: a truncated word ("wa-")
  or a restart of the opening word beginning a longer phrase.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import ConfigError, ContractViolationError
from .lexicons import packaged_lexicons, load_lexicon_dir
from .textcore import LanguageTag, Token, Transcript, detokenize

MAX_CORRECTION_PASSES = 3


class DisfluencyType(str, Enum):
    FILLER = "Filler"
    REPETITION = "Repetition"
    CORRECTION = "Correction"
    FALSE_START = "FalseStart"
    FLUENT = "Fluent"


class Verdict(str, Enum):
    FLUENT = "fluent"
    DISFLUENT = "disfluent"


@dataclass(frozen=True)
class TokenLabel:
    """Per-word-token verdict. type is Fluent exactly when verdict is fluent."""

    token_index: int
    verdict: Verdict
    type: DisfluencyType

    def __post_init__(self):
        if (self.verdict is Verdict.FLUENT) != (self.type is DisfluencyType.FLUENT):
            raise ValueError("verdict and type disagree")

    @property
    def disfluent(self) -> bool:
        return self.verdict is Verdict.DISFLUENT


@dataclass(frozen=True)
class DisfluencySpan:
    """Contiguous token range removed as one disfluency."""

    start: int
    end: int
    type: DisfluencyType
    detector: str

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"bad span bounds [{self.start}, {self.end})")
        if self.type is DisfluencyType.FLUENT:
            raise ValueError("spans are never Fluent")


@dataclass(frozen=True)
class DetectorConfig:
    """Rule parameters: per-language lexicons and scan windows."""

    filler_lexicon: Mapping[LanguageTag, frozenset[str]]
    editing_terms: Mapping[LanguageTag, frozenset[str]]
    max_repeat_ngram: int = 5
    false_start_window: int = 5

    def __post_init__(self):
        if self.max_repeat_ngram < 1:
            raise ConfigError("max_repeat_ngram must be >= 1")
        if self.false_start_window < 1:
            raise ConfigError("false_start_window must be >= 1")
        if set(self.filler_lexicon) != set(self.editing_terms):
            raise ConfigError("filler and editing lexicons must cover the same languages")
        for lang, entries in self.filler_lexicon.items():
            if not entries:
                raise ConfigError(f"empty filler lexicon for {lang.value}")
            for entry in entries:
                if " " in entry:
                    raise ConfigError(f"filler entries are single words: {entry!r}")
        for lang, entries in self.editing_terms.items():
            if not entries:
                raise ConfigError(f"empty editing-term lexicon for {lang.value}")

    @property
    def languages(self) -> frozenset[LanguageTag]:
        return frozenset(self.filler_lexicon)

    def fillers_for(self, lang: LanguageTag) -> frozenset[str]:
        try:
            return self.filler_lexicon[lang]
        except KeyError:
            raise ConfigError(f"no filler lexicon for language {lang.value}") from None

    def editing_terms_for(self, lang: LanguageTag) -> frozenset[str]:
        try:
            return self.editing_terms[lang]
        except KeyError:
            raise ConfigError(f"no editing terms for language {lang.value}") from None


def default_config(**overrides) -> DetectorConfig:
    """The packaged lexicons with default windows."""
    params = dict(
        filler_lexicon=packaged_lexicons("fillers"),
        editing_terms=packaged_lexicons("editing_terms"),
    )
    params.update(overrides)
    return DetectorConfig(**params)


def config_from_dir(directory, **overrides) -> DetectorConfig:
    """Build a config from a lexicon directory (fillers.<lang>.txt etc.)."""
    params = dict(
        filler_lexicon=load_lexicon_dir(directory, "fillers"),
        editing_terms=load_lexicon_dir(directory, "editing_terms"),
    )
    params.update(overrides)
    return DetectorConfig(**params)


@dataclass(frozen=True)
class CorrectionResult:
    """Everything the tool reports for one utterance."""

    source: Transcript
    labels: tuple[TokenLabel, ...]
    spans: tuple[DisfluencySpan, ...]
    fluent: Transcript
    utterance_type: DisfluencyType
    disfluency_count: int

    def as_dict(self) -> dict:
        """Wire shape used by both the HTTP service and the CLI JSON output."""
        return {
            "raw_text": self.source.raw_text,
            "fluent_text": self.fluent.raw_text,
            "tokens": [t.text for t in self.source.tokens],
            "labels": [
                {
                    "token_index": lab.token_index,
                    "verdict": lab.verdict.value,
                    "type": lab.type.value,
                }
                for lab in self.labels
            ],
            "spans": [
                {
                    "start": s.start,
                    "end": s.end,
                    "type": s.type.value,
                    "detector": s.detector,
                }
                for s in self.spans
            ],
            "utterance_type": self.utterance_type.value,
            "disfluency_count": self.disfluency_count,
        }


# ---------------------------------------------------------------------------
# editing-term occurrence scanning (shared by repetitions and corrections)


def _term_token_lists(terms: Iterable[str]) -> list[tuple[str, ...]]:
    split = [tuple(term.split()) for term in terms]
    return sorted(split, key=len, reverse=True)


def _match_term_at(
    t: Transcript, pos: int, term: tuple[str, ...], claimed: set[int] | frozenset[int]
) -> int | None:
    """Return the end index if `term` occupies contiguous unclaimed word
    tokens starting at `pos`, else None."""
    idx = pos
    for word in term:
        if idx >= len(t.tokens):
            return None
        tok = t.tokens[idx]
        if not tok.is_word or idx in claimed or tok.lower != word:
            return None
        idx += 1
    return idx


def _occurrence_viable(t: Transcript, start: int, end: int, claimed) -> bool:
    """True when a correction could anchor here: a contiguous unclaimed run
    with at least one word ends just before the term, and an unclaimed word
    follows it."""
    has_before = False
    i = start - 1
    while i >= 0 and i not in claimed:
        if t.tokens[i].is_word:
            has_before = True
            break
        i -= 1
    if not has_before:
        return False
    return any(
        t.tokens[j].is_word and j not in claimed for j in range(end, len(t.tokens))
    )


def _viable_occurrence_indices(t: Transcript, cfg: DetectorConfig, claimed) -> set[int]:
    """Token indices covered by any viable editing-term occurrence."""
    blocked: set[int] = set()
    terms = _term_token_lists(cfg.editing_terms_for(t.lang))
    for pos in range(len(t.tokens)):
        for term in terms:
            end = _match_term_at(t, pos, term, claimed)
            if end is not None and _occurrence_viable(t, pos, end, claimed):
                blocked.update(range(pos, end))
    return blocked


# ---------------------------------------------------------------------------
# detectors


def detect_fillers(t: Transcript, cfg: DetectorConfig) -> list[DisfluencySpan]:
    """Length-1 Filler spans for lexicon words; adjacent hits merge."""
    lexicon = cfg.fillers_for(t.lang)
    spans: list[DisfluencySpan] = []
    for tok in t.tokens:
        if not tok.is_word or tok.lower not in lexicon:
            continue
        if spans and spans[-1].end == tok.index:
            spans[-1] = DisfluencySpan(
                spans[-1].start, tok.index + 1, DisfluencyType.FILLER, "filler"
            )
        else:
            spans.append(
                DisfluencySpan(tok.index, tok.index + 1, DisfluencyType.FILLER, "filler")
            )
    return spans


def _contiguous_groups(indices: Sequence[int]) -> list[tuple[int, int]]:
    groups: list[tuple[int, int]] = []
    for i in sorted(indices):
        if groups and groups[-1][1] == i:
            groups[-1] = (groups[-1][0], i + 1)
        else:
            groups.append((i, i + 1))
    return groups


def detect_repetitions(
    t: Transcript, cfg: DetectorConfig, claimed: frozenset[int] | set[int] = frozenset()
) -> list[DisfluencySpan]:
    """Immediately repeated word n-grams, longest n first, keeping the last copy.

    Tokens in `claimed` (filler spans) and punctuation are transparent when
    judging adjacency. Tokens inside a viable editing-term occurrence are
    never claimed; those belong to the correction detector.
    """
    blocked = _viable_occurrence_indices(t, cfg, claimed)
    removed: set[int] = set()
    spans: list[DisfluencySpan] = []

    max_n = cfg.max_repeat_ngram
    for n in range(max_n, 0, -1):
        visible = [
            i for i in t.word_indices if i not in claimed and i not in removed
        ]
        words = [t.tokens[i].lower for i in visible]
        j = 0
        while j + 2 * n <= len(visible):
            window = visible[j : j + 2 * n]
            if any(i in blocked for i in window) or words[j : j + n] != words[
                j + n : j + 2 * n
            ]:
                j += 1
                continue
            # extend to the maximal run of consecutive copies
            copies = 2
            while True:
                lo = j + copies * n
                hi = lo + n
                if hi > len(visible) or words[lo:hi] != words[j : j + n]:
                    break
                if any(i in blocked for i in visible[lo:hi]):
                    break
                copies += 1
            doomed = visible[j : j + (copies - 1) * n]
            removed.update(doomed)
            for start, end in _contiguous_groups(doomed):
                spans.append(
                    DisfluencySpan(start, end, DisfluencyType.REPETITION, "repetition")
                )
            j += copies * n
    spans.sort(key=lambda s: s.start)
    return spans


def detect_corrections(
    t: Transcript, cfg: DetectorConfig, claimed: frozenset[int] | set[int] = frozenset()
) -> list[DisfluencySpan]:
    """Reparandum + editing term spans; the repair after the term stays."""
    terms = _term_token_lists(cfg.editing_terms_for(t.lang))
    taken = set(claimed)
    spans: list[DisfluencySpan] = []
    pos = 0
    while pos < len(t.tokens):
        if pos in taken or not t.tokens[pos].is_word:
            pos += 1
            continue
        match_end = None
        for term in terms:
            match_end = _match_term_at(t, pos, term, taken)
            if match_end is not None:
                break
        if match_end is None:
            pos += 1
            continue
        span = _correction_span(t, pos, match_end, taken)
        if span is None:
            pos += 1
            continue
        spans.append(span)
        taken.update(range(span.start, span.end))
        pos = match_end
    return spans


def _correction_span(
    t: Transcript, e_start: int, e_end: int, taken: set[int]
) -> DisfluencySpan | None:
    # contiguous unclaimed run ending right before the editing term
    run_start = e_start
    while run_start - 1 >= 0 and (run_start - 1) not in taken:
        run_start -= 1
    before_words = [i for i in range(run_start, e_start) if t.tokens[i].is_word]
    if not before_words:
        return None
    repair_words = [
        i
        for i in range(e_end, len(t.tokens))
        if t.tokens[i].is_word and i not in taken
    ]
    if not repair_words:
        return None

    first_repair = t.tokens[repair_words[0]].lower
    # shortest reparandum (in words) whose first word matches the repair's
    # first word, capped at the repair's length; otherwise one word
    reparandum_words = 1
    for length in range(1, min(len(before_words), len(repair_words)) + 1):
        if t.tokens[before_words[-length]].lower == first_repair:
            reparandum_words = length
            break
    start = before_words[-reparandum_words]
    return DisfluencySpan(start, e_end, DisfluencyType.CORRECTION, "correction")


def detect_false_starts(
    t: Transcript, cfg: DetectorConfig, claimed: frozenset[int] | set[int] = frozenset()
) -> list[DisfluencySpan]:
    """Abandoned fragment at the utterance start: truncation ("wa-") or restart."""
    visible = [i for i in t.word_indices if i not in claimed]
    if not visible:
        return []
    window = cfg.false_start_window

    def emit(end: int) -> list[DisfluencySpan]:
        if any(i in claimed for i in range(end)):
            return []
        return [DisfluencySpan(0, end, DisfluencyType.FALSE_START, "false_start")]

    # (a) transcription truncation convention
    for i in visible[:window]:
        if t.tokens[i].text.endswith("-"):
            return emit(i + 1)

    # (b) restart: the opening word reappears, beginning a longer phrase
    first = t.tokens[visible[0]].lower
    for pos in range(2, min(window, len(visible))):
        i = visible[pos]
        if t.tokens[i].lower == first and len(visible) - pos > pos:
            return emit(i)
    return []


# ---------------------------------------------------------------------------
# composition


def label_tokens(
    t: Transcript, cfg: DetectorConfig
) -> tuple[tuple[TokenLabel, ...], tuple[DisfluencySpan, ...]]:
    """Run all detectors in order and label every word token."""
    spans: list[DisfluencySpan] = list(detect_fillers(t, cfg))
    claimed = {i for s in spans for i in range(s.start, s.end)}
    for detector in (detect_repetitions, detect_corrections, detect_false_starts):
        found = detector(t, cfg, frozenset(claimed))
        spans.extend(found)
        claimed.update(i for s in found for i in range(s.start, s.end))
    spans.sort(key=lambda s: s.start)

    type_by_index: dict[int, DisfluencyType] = {}
    for s in spans:
        for i in range(s.start, s.end):
            type_by_index[i] = s.type

    labels = []
    for tok in t.tokens:
        if not tok.is_word:
            continue
        kind = type_by_index.get(tok.index)
        if kind is None:
            labels.append(
                TokenLabel(tok.index, Verdict.FLUENT, DisfluencyType.FLUENT)
            )
        else:
            labels.append(TokenLabel(tok.index, Verdict.DISFLUENT, kind))
    return tuple(labels), tuple(spans)


def _kept_indices(t: Transcript, removed_words: set[int]) -> list[int]:
    """Surviving token indices: fluent words plus punctuation whose preceding
    word survived (leading punctuation always survives)."""
    kept: list[int] = []
    prev_word_kept = True
    for tok in t.tokens:
        if tok.is_word:
            prev_word_kept = tok.index not in removed_words
            if prev_word_kept:
                kept.append(tok.index)
        elif prev_word_kept:
            kept.append(tok.index)
    return kept


def _rebuild(t: Transcript, kept: list[int]) -> Transcript:
    tokens = tuple(
        Token(t.tokens[i].text, new_idx, t.tokens[i].is_word)
        for new_idx, i in enumerate(kept)
    )
    stripped = Transcript(tokens=tokens, lang=t.lang, raw_text="")
    return Transcript(tokens=tokens, lang=t.lang, raw_text=detokenize(stripped))


def apply_removal(t: Transcript, labels: Sequence[TokenLabel]) -> Transcript:
    """Drop disfluent-labeled word tokens; re-index from 0."""
    word_indices = t.word_indices
    if len(labels) != len(word_indices) or any(
        lab.token_index != idx for lab, idx in zip(labels, word_indices)
    ):
        raise ContractViolationError(
            f"expected one label per word token ({len(word_indices)}), got {len(labels)}"
        )
    removed = {lab.token_index for lab in labels if lab.disfluent}
    return _rebuild(t, _kept_indices(t, removed))


def correct(t: Transcript, cfg: DetectorConfig) -> CorrectionResult:
    """Label, remove, and classify; repeats on its own output (capped) so
    removals that expose new immediate repetitions are caught.

    Reported spans come from the first pass; labels and the count cover every
    pass, so `fluent` always equals the source minus disfluent-labeled words.
    """
    from .classify import TypeHistogram, classify_utterance

    first_spans: tuple[DisfluencySpan, ...] = ()
    removed_types: dict[int, DisfluencyType] = {}
    source_index = list(range(len(t.tokens)))  # current token idx -> source idx
    current = t

    for iteration in range(MAX_CORRECTION_PASSES):
        labels, spans = label_tokens(current, cfg)
        if iteration == 0:
            first_spans = spans
        removed = {lab.token_index: lab.type for lab in labels if lab.disfluent}
        if not removed:
            break
        for idx, kind in removed.items():
            removed_types[source_index[idx]] = kind
        kept = _kept_indices(current, set(removed))
        current = _rebuild(current, kept)
        source_index = [source_index[i] for i in kept]

    final_labels = []
    for tok in t.tokens:
        if not tok.is_word:
            continue
        kind = removed_types.get(tok.index)
        if kind is None:
            final_labels.append(
                TokenLabel(tok.index, Verdict.FLUENT, DisfluencyType.FLUENT)
            )
        else:
            final_labels.append(TokenLabel(tok.index, Verdict.DISFLUENT, kind))

    histogram = TypeHistogram.from_labels(final_labels)
    return CorrectionResult(
        source=t,
        labels=tuple(final_labels),
        spans=first_spans,
        fluent=current,
        utterance_type=classify_utterance(histogram),
        disfluency_count=t.word_count - current.word_count,
    )


def disfluency_count(result: CorrectionResult) -> int:
    """Words removed: source word count minus fluent word count."""
    return result.source.word_count - result.fluent.word_count
