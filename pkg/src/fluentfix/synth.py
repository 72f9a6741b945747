"""Synthetic disfluent utterances with gold token labels, plus scoring.

Injectors take a fluent word list and plant one disfluency family into it,
recording gold labels such that deleting the gold-positive tokens restores the
seed exactly. Generation is a pure function of (seeds, mix, rng_seed, config);
the RNG is Python's Mersenne Twister (random.Random), and every draw from a
lexicon goes through a sorted list so output is reproducible byte for byte.

By default the generator draws from the same lexicons the detectors use
(matched-oracle mode). Pass a GeneratorConfig built from the "adversarial"
profile to measure generalization to unseen vocabulary instead.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, TextIO

from .classify import TypeHistogram, classify_utterance
from .engine import (
    DetectorConfig,
    DisfluencyType,
    TokenLabel,
    correct,
    default_config,
)
from .errors import DataError
from .lexicons import load_lexicon_dir, packaged_lexicons
from .textcore import LanguageTag, transcript_from_words

INJECTION_TYPES = (
    DisfluencyType.FILLER,
    DisfluencyType.REPETITION,
    DisfluencyType.CORRECTION,
    DisfluencyType.FALSE_START,
)


@dataclass(frozen=True)
class AnnotatedUtterance:
    """Word tokens with gold per-token types; Fluent marks kept words."""

    tokens: tuple[str, ...]
    labels: tuple[DisfluencyType, ...]
    lang: LanguageTag
    seed_text: str
    injection: str

    def __post_init__(self):
        if len(self.tokens) != len(self.labels):
            raise ValueError("one label per token required")

    @property
    def kept_tokens(self) -> tuple[str, ...]:
        return tuple(
            tok
            for tok, lab in zip(self.tokens, self.labels)
            if lab is DisfluencyType.FLUENT
        )

    def gold_positive_indices(self) -> tuple[int, ...]:
        return tuple(
            i for i, lab in enumerate(self.labels) if lab is not DisfluencyType.FLUENT
        )


@dataclass(frozen=True)
class GeneratorConfig:
    """Detector parameters plus the extra material injection needs."""

    detector: DetectorConfig
    distractors: Mapping[LanguageTag, tuple[str, ...]]

    def fillers_list(self, lang: LanguageTag) -> list[str]:
        return sorted(self.detector.fillers_for(lang))

    def editing_terms_list(self, lang: LanguageTag) -> list[str]:
        return sorted(self.detector.editing_terms_for(lang))

    def distractors_list(self, lang: LanguageTag) -> list[str]:
        pool = self.distractors.get(lang, ())
        return sorted(pool)


def default_generator_config(
    detector: DetectorConfig | None = None, profile: str = "lexicons"
) -> GeneratorConfig:
    """Matched-lexicon generator by default; profile selects the word lists
    used for injected material (the detector config is untouched)."""
    det = detector if detector is not None else default_config()
    if profile != "lexicons":
        det_for_material = DetectorConfig(
            filler_lexicon=packaged_lexicons("fillers", profile=profile),
            editing_terms=packaged_lexicons("editing_terms", profile=profile),
            max_repeat_ngram=det.max_repeat_ngram,
            false_start_window=det.false_start_window,
        )
    else:
        det_for_material = det
    distractors = {
        lang: tuple(sorted(entries))
        for lang, entries in packaged_lexicons("distractors", profile=profile).items()
    }
    return GeneratorConfig(detector=det_for_material, distractors=distractors)


def generator_config_from_dir(directory) -> GeneratorConfig:
    det = DetectorConfig(
        filler_lexicon=load_lexicon_dir(directory, "fillers"),
        editing_terms=load_lexicon_dir(directory, "editing_terms"),
    )
    distractors = {
        lang: tuple(sorted(entries))
        for lang, entries in load_lexicon_dir(directory, "distractors").items()
    }
    return GeneratorConfig(detector=det, distractors=distractors)


def _require_tokens(tokens: Sequence[str]):
    if not tokens:
        raise DataError("cannot inject into an empty utterance")


def _finish(
    tokens: list[str],
    labels: list[DisfluencyType],
    lang: LanguageTag,
    seed_tokens: Sequence[str],
    injection: DisfluencyType,
) -> AnnotatedUtterance:
    out = AnnotatedUtterance(
        tokens=tuple(tokens),
        labels=tuple(labels),
        lang=lang,
        seed_text=" ".join(seed_tokens),
        injection=injection.value,
    )
    assert out.kept_tokens == tuple(seed_tokens), "gold removal must restore the seed"
    return out


def inject_filler(
    tokens: Sequence[str], lang: LanguageTag, rng_seed: int, cfg: GeneratorConfig
) -> AnnotatedUtterance:
    """Insert 1-3 lexicon fillers at random word boundaries."""
    _require_tokens(tokens)
    rng = random.Random(rng_seed)
    fillers = cfg.fillers_list(lang)
    out = list(tokens)
    labels: list[DisfluencyType] = [DisfluencyType.FLUENT] * len(out)
    for _ in range(rng.randint(1, 3)):
        pos = rng.randint(0, len(out))
        out.insert(pos, rng.choice(fillers))
        labels.insert(pos, DisfluencyType.FILLER)
    return _finish(out, labels, lang, tokens, DisfluencyType.FILLER)


def inject_repetition(
    tokens: Sequence[str], lang: LanguageTag, rng_seed: int, cfg: GeneratorConfig
) -> AnnotatedUtterance:
    """Duplicate a random n-gram immediately before itself, 1-2 extra copies."""
    _require_tokens(tokens)
    rng = random.Random(rng_seed)
    n = rng.randint(1, min(cfg.detector.max_repeat_ngram, len(tokens)))
    start = rng.randint(0, len(tokens) - n)
    copies = rng.randint(1, 2)
    gram = list(tokens[start : start + n])
    out = list(tokens[:start]) + gram * copies + list(tokens[start:])
    labels = (
        [DisfluencyType.FLUENT] * start
        + [DisfluencyType.REPETITION] * (n * copies)
        + [DisfluencyType.FLUENT] * (len(tokens) - start)
    )
    return _finish(out, labels, lang, tokens, DisfluencyType.REPETITION)


def inject_correction(
    tokens: Sequence[str], lang: LanguageTag, rng_seed: int, cfg: GeneratorConfig
) -> AnnotatedUtterance:
    """Insert "<distractor> <editing term>" before a random word."""
    _require_tokens(tokens)
    pool = cfg.distractors_list(lang)
    if not pool:
        raise DataError(f"no distractor list for language {lang.value}")
    rng = random.Random(rng_seed)
    idx = rng.randrange(len(tokens))
    word = tokens[idx].lower()
    prev = tokens[idx - 1].lower() if idx > 0 else None
    # the distractor must differ from the repaired word, and from the word
    # before the insertion point so no artificial repetition appears
    candidates = [d for d in pool if d != word and d != prev]
    if not candidates:
        raise DataError("distractor pool exhausted by rejection rules")
    distractor = rng.choice(candidates)
    term_words = rng.choice(cfg.editing_terms_list(lang)).split()

    inserted = [distractor] + term_words
    out = list(tokens[:idx]) + inserted + list(tokens[idx:])
    labels = (
        [DisfluencyType.FLUENT] * idx
        + [DisfluencyType.CORRECTION] * len(inserted)
        + [DisfluencyType.FLUENT] * (len(tokens) - idx)
    )
    return _finish(out, labels, lang, tokens, DisfluencyType.CORRECTION)


def inject_false_start(
    tokens: Sequence[str], lang: LanguageTag, rng_seed: int, cfg: GeneratorConfig
) -> AnnotatedUtterance:
    """Prepend an abandoned fragment of the opening words, last one truncated."""
    _require_tokens(tokens)
    rng = random.Random(rng_seed)
    m = rng.randint(1, min(3, len(tokens)))
    fragment = list(tokens[:m])
    last = fragment[-1]
    cut = rng.randint(1, max(1, len(last) - 1))
    fragment[-1] = last[:cut] + "-"
    out = fragment + list(tokens)
    labels = [DisfluencyType.FALSE_START] * m + [DisfluencyType.FLUENT] * len(tokens)
    return _finish(out, labels, lang, tokens, DisfluencyType.FALSE_START)


_INJECTORS: dict[DisfluencyType, Callable] = {
    DisfluencyType.FILLER: inject_filler,
    DisfluencyType.REPETITION: inject_repetition,
    DisfluencyType.CORRECTION: inject_correction,
    DisfluencyType.FALSE_START: inject_false_start,
}


def _normalize_mix(mix: Mapping) -> dict[DisfluencyType, float]:
    out: dict[DisfluencyType, float] = {}
    for key, value in mix.items():
        try:
            kind = key if isinstance(key, DisfluencyType) else DisfluencyType(str(key))
        except ValueError:
            raise DataError(f"invalid mix type: {key}") from None
        if kind not in INJECTION_TYPES and kind is not DisfluencyType.FLUENT:
            raise DataError(f"invalid mix type: {key}")
        if value < 0:
            raise DataError(f"negative mix proportion for {kind.value}")
        out[kind] = out.get(kind, 0.0) + float(value)
    if abs(sum(out.values()) - 1.0) > 1e-9:
        raise DataError(f"mix proportions must sum to 1, got {sum(out.values())}")
    return out


def _quota(mix: dict[DisfluencyType, float], count: int) -> list[DisfluencyType]:
    """Largest-remainder assignment: exact deterministic per-type counts."""
    order = list(INJECTION_TYPES) + [DisfluencyType.FLUENT]
    present = [k for k in order if k in mix]
    base = {k: int(mix[k] * count) for k in present}
    remainders = sorted(
        present,
        key=lambda k: (-(mix[k] * count - base[k]), order.index(k)),
    )
    short = count - sum(base.values())
    for k in remainders[:short]:
        base[k] += 1
    assignment: list[DisfluencyType] = []
    for k in present:
        assignment.extend([k] * base[k])
    return assignment


def generate_corpus(
    seeds: Sequence[str],
    mix: Mapping,
    rng_seed: int,
    cfg: GeneratorConfig,
    lang: LanguageTag = LanguageTag.EN,
    count: int | None = None,
) -> list[AnnotatedUtterance]:
    """One annotated utterance per seed (seeds cycle when count exceeds them).

    The mix maps disfluency types (optionally including Fluent for untouched
    utterances) to proportions summing to 1; per-type counts follow the
    largest-remainder rule, so they are exact, not sampled.
    """
    if not seeds:
        raise DataError("no seed sentences given")
    norm = _normalize_mix(mix)
    total = len(seeds) if count is None else count
    assignment = _quota(norm, total)
    rng = random.Random(rng_seed)
    rng.shuffle(assignment)

    out: list[AnnotatedUtterance] = []
    for i in range(total):
        seed_text = seeds[i % len(seeds)]
        words = [t.text for t in transcript_from_words(seed_text.split(), lang).tokens]
        kind = assignment[i]
        child_seed = rng.getrandbits(32)
        if kind is DisfluencyType.FLUENT:
            out.append(
                AnnotatedUtterance(
                    tokens=tuple(words),
                    labels=tuple([DisfluencyType.FLUENT] * len(words)),
                    lang=lang,
                    seed_text=" ".join(words),
                    injection=DisfluencyType.FLUENT.value,
                )
            )
        else:
            out.append(_INJECTORS[kind](words, lang, child_seed, cfg))
    return out


def read_seed_lines(fp: TextIO) -> list[str]:
    """Seed corpus format: one fluent sentence per line, '#' comments allowed."""
    seeds = []
    for line in fp:
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            seeds.append(stripped)
    return seeds


def packaged_seeds(lang: LanguageTag) -> list[str]:
    from importlib import resources

    ref = resources.files("fluentfix.data") / f"seeds.{lang.value}.txt"
    return read_seed_lines(ref.read_text(encoding="utf-8").splitlines(True))


# ---------------------------------------------------------------------------
# corpus files: one JSON object per line


def utterance_to_json(u: AnnotatedUtterance) -> str:
    return json.dumps(
        {
            "tokens": list(u.tokens),
            "labels": [lab.value for lab in u.labels],
            "lang": u.lang.value,
            "seed_text": u.seed_text,
            "injection": u.injection,
        },
        ensure_ascii=False,
    )


def write_corpus(fp: TextIO, utterances: Iterable[AnnotatedUtterance]):
    for u in utterances:
        fp.write(utterance_to_json(u))
        fp.write("\n")


def parse_corpus_line(line: str, lineno: int = 0) -> AnnotatedUtterance:
    try:
        obj = json.loads(line)
        return AnnotatedUtterance(
            tokens=tuple(obj["tokens"]),
            labels=tuple(DisfluencyType(lab) for lab in obj["labels"]),
            lang=LanguageTag(obj["lang"]),
            seed_text=obj["seed_text"],
            injection=obj.get("injection", ""),
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise DataError(f"corpus line {lineno}: {exc}") from exc


def read_corpus(fp: TextIO) -> list[AnnotatedUtterance]:
    out = []
    for lineno, line in enumerate(fp, start=1):
        if line.strip():
            out.append(parse_corpus_line(line, lineno))
    return out


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "Metrics":
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        f1 = 0.0 if p + r == 0 else 2 * p * r / (p + r)
        return cls(precision=p, recall=r, f1=f1, tp=tp, fp=fp, fn=fn)


@dataclass(frozen=True)
class EvalReport:
    """Token-level scores with disfluent as the positive class."""

    overall: Metrics
    per_type: Mapping[str, Metrics]
    utterance_type_accuracy: float
    corpus_size: int

    def as_dict(self) -> dict:
        def metr(m: Metrics) -> dict:
            return {
                "precision": m.precision,
                "recall": m.recall,
                "f1": m.f1,
                "tp": m.tp,
                "fp": m.fp,
                "fn": m.fn,
            }

        return {
            "overall": metr(self.overall),
            "per_type": {k: metr(v) for k, v in self.per_type.items()},
            "utterance_type_accuracy": self.utterance_type_accuracy,
            "corpus_size": self.corpus_size,
        }


Labeler = Callable[[Sequence[str], LanguageTag], Sequence[TokenLabel]]


def engine_labeler(cfg: DetectorConfig) -> Labeler:
    """The rule engine behind the generic token-labeling contract."""

    def label(tokens: Sequence[str], lang: LanguageTag) -> Sequence[TokenLabel]:
        return correct(transcript_from_words(list(tokens), lang), cfg).labels

    return label


def evaluate(gold: Sequence[AnnotatedUtterance], labeler: Labeler) -> EvalReport:
    """Score a labeler against gold: micro P/R/F1 overall and per gold type,
    plus utterance-level type accuracy."""
    counts: dict[str, list[int]] = {}  # injection -> [tp, fp, fn]
    overall = [0, 0, 0]
    type_hits = 0

    for pos, utt in enumerate(gold):
        predicted = labeler(utt.tokens, utt.lang)
        if len(predicted) != len(utt.tokens):
            raise DataError(
                f"labeler returned {len(predicted)} labels for {len(utt.tokens)} "
                f"tokens in utterance {pos} ({utt.seed_text!r})"
            )
        bucket = counts.setdefault(utt.injection, [0, 0, 0])
        for lab, gold_type in zip(predicted, utt.labels):
            pred_pos = lab.disfluent
            gold_pos = gold_type is not DisfluencyType.FLUENT
            slot = 0 if (pred_pos and gold_pos) else 1 if pred_pos else 2 if gold_pos else -1
            if slot >= 0:
                bucket[slot] += 1
                overall[slot] += 1
        predicted_type = classify_utterance(TypeHistogram.from_labels(predicted))
        if predicted_type.value == utt.injection:
            type_hits += 1

    per_type = {
        name: Metrics.from_counts(*tallies)
        for name, tallies in sorted(counts.items())
        if name != DisfluencyType.FLUENT.value
    }
    return EvalReport(
        overall=Metrics.from_counts(*overall),
        per_type=per_type,
        utterance_type_accuracy=type_hits / len(gold) if gold else 0.0,
        corpus_size=len(gold),
    )
