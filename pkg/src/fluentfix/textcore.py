"""Tokenization, detokenization and the transcript types everything else shares.

Tokens are whitespace-separated words with leading/trailing punctuation split
off into separate non-word tokens. A trailing "-" is kept attached to its word
because transcripts use it to mark truncated (abandoned) words, e.g. "wa-".
Case is preserved; all matching downstream is case-insensitive.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum


class LanguageTag(str, Enum):
    """Supported input languages."""

    EN = "en"
    HI = "hi"

    @classmethod
    def parse(cls, code: str) -> "LanguageTag":
        try:
            return cls(code)
        except ValueError:
            from .errors import UnsupportedLanguageError

            raise UnsupportedLanguageError(f"unsupported language: {code!r}") from None


def _is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


@dataclass(frozen=True)
class Token:
    """One unit of an utterance: a word or a split-off punctuation mark."""

    text: str
    index: int
    is_word: bool = True

    def __post_init__(self):
        if not self.text:
            raise ValueError("token text must be non-empty")
        if any(c.isspace() for c in self.text):
            raise ValueError(f"token text contains whitespace: {self.text!r}")

    @property
    def lower(self) -> str:
        return self.text.lower()


@dataclass(frozen=True)
class Transcript:
    """A tokenized utterance plus the language it was spoken in."""

    tokens: tuple[Token, ...]
    lang: LanguageTag
    raw_text: str = ""

    def __post_init__(self):
        for pos, tok in enumerate(self.tokens):
            if tok.index != pos:
                raise ValueError("token indices must be contiguous from 0")

    @property
    def word_indices(self) -> tuple[int, ...]:
        return tuple(t.index for t in self.tokens if t.is_word)

    @property
    def word_tokens(self) -> tuple[Token, ...]:
        return tuple(t for t in self.tokens if t.is_word)

    @property
    def word_count(self) -> int:
        return sum(1 for t in self.tokens if t.is_word)

    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]


def _split_chunk(chunk: str) -> list[tuple[str, bool]]:
    """Split one whitespace-free chunk into (text, is_word) pieces.

    Leading and trailing punctuation characters become single-char non-word
    tokens. "-" never splits off a word chunk (truncation convention), but a
    chunk made entirely of punctuation is emitted char by char.
    """
    if all(_is_punct_char(c) for c in chunk):
        return [(c, False) for c in chunk]

    left = 0
    while _is_punct_char(chunk[left]) and chunk[left] != "-":
        left += 1
    right = len(chunk)
    while _is_punct_char(chunk[right - 1]) and chunk[right - 1] != "-":
        right -= 1

    pieces: list[tuple[str, bool]] = [(c, False) for c in chunk[:left]]
    pieces.append((chunk[left:right], True))
    pieces.extend((c, False) for c in chunk[right:])
    return pieces


def tokenize(text: str, lang: LanguageTag) -> Transcript:
    """Tokenize raw text into a Transcript. Total: any input is accepted."""
    pieces: list[tuple[str, bool]] = []
    for chunk in text.split():
        pieces.extend(_split_chunk(chunk))
    tokens = tuple(
        Token(text=p, index=i, is_word=w) for i, (p, w) in enumerate(pieces)
    )
    return Transcript(tokens=tokens, lang=lang, raw_text=text)


def detokenize(transcript: Transcript) -> str:
    """Join word tokens with spaces; punctuation attaches to the preceding token."""
    parts: list[str] = []
    for tok in transcript.tokens:
        if not tok.is_word and parts:
            parts[-1] += tok.text
        else:
            parts.append(tok.text)
    return " ".join(parts)


def transcript_from_words(
    words: list[str] | tuple[str, ...], lang: LanguageTag
) -> Transcript:
    """Build a Transcript by re-tokenizing a list of word strings.

    Convenience for corpora stored as token lists; equivalent to tokenizing
    the space-joined text.
    """
    return tokenize(" ".join(words), lang)
