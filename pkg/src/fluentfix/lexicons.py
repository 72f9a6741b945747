"""Lexicon file loading and the packaged default word lists.

File format: UTF-8, one entry per line, "#" starts a comment, blank lines
ignored. Multi-word entries are space-separated. Entries are stored lowercase.
Packaged defaults live under fluentfix/data/lexicons as
<name>.<lang>.txt (e.g. fillers.en.txt).
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .textcore import LanguageTag

_DATA_PACKAGE = "fluentfix.data"


def parse_lexicon_lines(lines, source: str = "<memory>") -> frozenset[str]:
    entries = set()
    for lineno, line in enumerate(lines, start=1):
        entry = line.split("#", 1)[0].strip()
        if not entry:
            continue
        entries.add(" ".join(entry.lower().split()))
    if not entries:
        raise ConfigError(f"lexicon {source} has no entries")
    return frozenset(entries)


def load_lexicon_file(path: str | Path) -> frozenset[str]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read lexicon {path}: {exc}") from exc
    return parse_lexicon_lines(text.splitlines(), source=str(path))


def _packaged_lexicon(name: str, lang: LanguageTag, profile: str) -> frozenset[str]:
    ref = resources.files(_DATA_PACKAGE) / profile / f"{name}.{lang.value}.txt"
    return parse_lexicon_lines(
        ref.read_text(encoding="utf-8").splitlines(), source=str(ref)
    )


def load_lexicon_dir(
    directory: str | Path, name: str, languages=tuple(LanguageTag)
) -> dict[LanguageTag, frozenset[str]]:
    """Load <name>.<lang>.txt for each language from a directory."""
    directory = Path(directory)
    out = {}
    for lang in languages:
        out[lang] = load_lexicon_file(directory / f"{name}.{lang.value}.txt")
    return out


def packaged_lexicons(name: str, languages=tuple(LanguageTag), profile: str = "lexicons"):
    """Packaged word lists; profile "adversarial" holds lists disjoint from
    the defaults, for generalization measurement."""
    return {lang: _packaged_lexicon(name, lang, profile) for lang in languages}
