"""Random speaking prompts in the style of language-exam conversation topics."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import DataError
from .textcore import LanguageTag


@dataclass(frozen=True)
class Prompt:
    id: str
    lang: LanguageTag
    category: str
    text: str


@dataclass(frozen=True)
class PromptBank:
    prompts: tuple[Prompt, ...]

    def for_language(self, lang: LanguageTag) -> tuple[Prompt, ...]:
        return tuple(p for p in self.prompts if p.lang is lang)


def _parse_bank(lines: Iterable[str], source: str,
                languages: tuple[LanguageTag, ...]) -> PromptBank:
    prompts: list[Prompt] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            prompt = Prompt(
                id=str(obj["id"]),
                lang=LanguageTag(obj["lang"]),
                category=str(obj["category"]),
                text=str(obj["text"]),
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise DataError(f"{source}:{lineno}: bad prompt line: {exc}") from exc
        if prompt.id in seen:
            raise DataError(f"{source}:{lineno}: duplicate prompt id {prompt.id!r}")
        seen.add(prompt.id)
        prompts.append(prompt)

    bank = PromptBank(prompts=tuple(prompts))
    for lang in languages:
        if not bank.for_language(lang):
            raise DataError(f"{source}: no prompts for language {lang.value!r}")
    return bank


def load_bank(path: str | Path,
              languages: tuple[LanguageTag, ...] = tuple(LanguageTag)) -> PromptBank:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read prompt bank {path}: {exc}") from exc
    return _parse_bank(text.splitlines(), str(path), languages)


def packaged_bank(languages: tuple[LanguageTag, ...] = tuple(LanguageTag)) -> PromptBank:
    ref = resources.files("fluentfix.data") / "prompts.jsonl"
    return _parse_bank(ref.read_text(encoding="utf-8").splitlines(), str(ref), languages)


def random_prompt(bank: PromptBank, lang: LanguageTag,
                  rng_seed: int | None = None) -> Prompt:
    """Uniform draw over the language's prompts; seeded calls are deterministic."""
    pool = bank.for_language(lang)
    if not pool:
        raise DataError(f"no prompts for language {lang.value!r}")
    rng = random.Random(rng_seed) if rng_seed is not None else random
    return pool[rng.randrange(len(pool))]
