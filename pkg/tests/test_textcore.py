import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fluentfix.errors import UnsupportedLanguageError
from fluentfix.textcore import (
    LanguageTag,
    Token,
    Transcript,
    detokenize,
    tokenize,
    transcript_from_words,
)

EN = LanguageTag.EN
HI = LanguageTag.HI

# Hand-tokenized fixture sentences: text -> [(token, is_word), ...]
HAND_TOKENIZED = [
    ("I um want to go", [("I", True), ("um", True), ("want", True), ("to", True), ("go", True)]),
    ("", []),
    ("well, I I think", [("well", True), (",", False), ("I", True), ("I", True), ("think", True)]),
    ("hello", [("hello", True)]),
    ("  spaced   out  ", [("spaced", True), ("out", True)]),
    ("don't stop", [("don't", True), ("stop", True)]),
    ("wait... what", [("wait", True), (".", False), (".", False), (".", False), ("what", True)]),
    ("(quietly) he left", [("(", False), ("quietly", True), (")", False), ("he", True), ("left", True)]),
    ("café naïve", [("café", True), ("naïve", True)]),
    ("wa- I want", [("wa-", True), ("I", True), ("want", True)]),
    ("- dash alone", [("-", False), ("dash", True), ("alone", True)]),
    ("3.5 liters", [("3.5", True), ("liters", True)]),
    ("price: $5", [("price", True), (":", False), ("$5", True)]),
    ("end.", [("end", True), (".", False)]),
    ("'quote'", [("'", False), ("quote", True), ("'", False)]),
    ("अच्छा।", [("अच्छा", True), ("।", False)]),
    ("मैं जाना चाहता हूँ", [("मैं", True), ("जाना", True), ("चाहता", True), ("हूँ", True)]),
    ("हैलो, दुनिया", [("हैलो", True), (",", False), ("दुनिया", True)]),
    ("co-op works", [("co-op", True), ("works", True)]),
    ("um...", [("um", True), (".", False), (".", False), (".", False)]),
]


@pytest.mark.parametrize("text,expected", HAND_TOKENIZED, ids=range(len(HAND_TOKENIZED)))
def test_tokenize_against_hand_fixtures(text, expected):
    lang = HI if any("ऀ" <= c <= "ॿ" for c in text) else EN
    t = tokenize(text, lang)
    assert [(tok.text, tok.is_word) for tok in t.tokens] == expected
    assert [tok.index for tok in t.tokens] == list(range(len(expected)))
    assert t.raw_text == text


def test_tokenize_empty_input():
    assert tokenize("", EN).tokens == ()


def test_detokenize_plain_join():
    assert detokenize(transcript_from_words(["I", "want", "to", "go"], EN)) == "I want to go"


def test_detokenize_empty():
    assert detokenize(Transcript(tokens=(), lang=EN)) == ""


def test_detokenize_attaches_punctuation():
    t = tokenize("well, I think", EN)
    assert detokenize(t) == "well, I think"


def test_detokenize_leading_punctuation_round_trips():
    t = tokenize("(so) we left", EN)
    again = tokenize(detokenize(t), EN)
    assert [x.text for x in again.tokens] == [x.text for x in t.tokens]


def test_token_rejects_whitespace_and_empty():
    with pytest.raises(ValueError):
        Token(text="a b", index=0)
    with pytest.raises(ValueError):
        Token(text="", index=0)


def test_transcript_requires_contiguous_indices():
    with pytest.raises(ValueError):
        Transcript(tokens=(Token("a", 1),), lang=EN)


def test_language_tag_parsing():
    assert LanguageTag.parse("en") is EN
    assert LanguageTag.parse("hi") is HI
    with pytest.raises(UnsupportedLanguageError):
        LanguageTag.parse("fr")


@given(st.text(max_size=80))
@settings(max_examples=300)
def test_tokenize_idempotent_normalization(s):
    once = tokenize(s, EN)
    again = tokenize(detokenize(once), EN)
    assert [(t.text, t.is_word) for t in again.tokens] == [
        (t.text, t.is_word) for t in once.tokens
    ]


@given(st.text(max_size=80))
@settings(max_examples=300)
def test_tokens_have_no_whitespace_and_cover_nonspace_runs(s):
    t = tokenize(s, EN)
    for tok in t.tokens:
        assert tok.text and not any(c.isspace() for c in tok.text)
    # token texts concatenated must equal the input with whitespace removed
    assert "".join(tok.text for tok in t.tokens) == "".join(s.split())


def test_word_token_count_matches_runs_plus_splits():
    t = tokenize("well, I think...", EN)
    # 3 whitespace runs plus 4 split-off punctuation marks
    assert len(t.tokens) == 7
    assert t.word_count == 3
