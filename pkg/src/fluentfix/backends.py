"""ASR and TTS backend contracts with mock and HTTP implementations.

The mocks make the whole pipeline runnable and assertable without any model:
the mock ASR replays transcripts registered against a clip digest (or embedded
in the WAV INFO comment), and the mock TTS emits a fixed beep code whose
duration is a closed-form function of the word count.

HTTP adapters forward to remote services implementing the wire contract:
ASR takes multipart {audio: WAV file, lang: code} and answers {"text": ...};
TTS takes JSON {"text", "lang"} and answers WAV bytes. Timeouts are retried
once (the requests are idempotent); other failures map to stage-tagged errors.
"""

from __future__ import annotations

from typing import Protocol

import httpx
import numpy as np

from .audio import AudioClip, clip_from_array, encode_wav, ingest_wav, sine_wave
from .errors import MockBackendError, PipelineError
from .textcore import LanguageTag, tokenize

BEEP_HZ = 440
BEEP_MS = 100
GAP_MS = 50


class AsrBackend(Protocol):
    def transcribe(self, audio: AudioClip, lang: LanguageTag) -> str: ...


class TtsBackend(Protocol):
    def synthesize(self, text: str, lang: LanguageTag) -> AudioClip: ...


class MockAsr:
    """Replays fixture transcripts keyed by clip digest, or the WAV comment."""

    def __init__(self):
        self._fixtures: dict[str, str] = {}

    def register(self, clip: AudioClip, transcript: str) -> str:
        self._fixtures[clip.digest] = transcript
        return clip.digest

    def transcribe(self, audio: AudioClip, lang: LanguageTag) -> str:
        if audio.digest in self._fixtures:
            return self._fixtures[audio.digest]
        if audio.comment is not None:
            return audio.comment
        raise MockBackendError("asr", "no fixture transcript for this clip")


class MockTts:
    """One 100 ms 440 Hz beep per word with 50 ms gaps: 150*W - 50 ms total."""

    def synthesize(self, text: str, lang: LanguageTag) -> AudioClip:
        words = tokenize(text, lang).word_count
        if words == 0:
            return AudioClip(samples=b"")
        beep = sine_wave(BEEP_HZ, BEEP_MS, amplitude=0.5)
        gap = np.zeros(int(16000 * GAP_MS / 1000), dtype=np.int16)
        pieces = []
        for i in range(words):
            pieces.append(beep)
            if i < words - 1:
                pieces.append(gap)
        return clip_from_array(np.concatenate(pieces))


def _request_with_retry(send, stage: str):
    """Run a request callable, retrying once on timeout. Returns (resp, retries)."""
    retries = 0
    while True:
        try:
            return send(), retries
        except httpx.TimeoutException as exc:
            if retries >= 1:
                raise PipelineError(stage, f"timeout after retry: {exc}") from exc
            retries += 1
        except httpx.HTTPError as exc:
            raise PipelineError(stage, f"transport failure: {exc}") from exc


class HttpAsr:
    """Adapter for a remote ASR service (see module docstring for the wire)."""

    def __init__(self, endpoint_url: str, timeout_ms: int = 10000,
                 client: httpx.Client | None = None):
        self.endpoint_url = endpoint_url
        self._client = client or httpx.Client(timeout=timeout_ms / 1000)
        self.last_retries = 0

    def transcribe(self, audio: AudioClip, lang: LanguageTag) -> str:
        def send():
            return self._client.post(
                self.endpoint_url,
                files={"audio": ("audio.wav", encode_wav(audio), "audio/wav")},
                data={"lang": lang.value},
            )

        resp, self.last_retries = _request_with_retry(send, "asr")
        if resp.status_code != 200:
            raise PipelineError("asr", f"remote ASR returned {resp.status_code}")
        try:
            text = resp.json()["text"]
        except (ValueError, KeyError) as exc:
            raise PipelineError("asr", f"malformed ASR response: {exc}") from exc
        if not isinstance(text, str):
            raise PipelineError("asr", "ASR response text is not a string")
        return text


class HttpTts:
    """Adapter for a remote TTS service returning WAV bytes."""

    def __init__(self, endpoint_url: str, timeout_ms: int = 10000,
                 client: httpx.Client | None = None):
        self.endpoint_url = endpoint_url
        self._client = client or httpx.Client(timeout=timeout_ms / 1000)
        self.last_retries = 0

    def synthesize(self, text: str, lang: LanguageTag) -> AudioClip:
        def send():
            return self._client.post(
                self.endpoint_url, json={"text": text, "lang": lang.value}
            )

        resp, self.last_retries = _request_with_retry(send, "tts")
        if resp.status_code != 200:
            raise PipelineError("tts", f"remote TTS returned {resp.status_code}")
        try:
            return ingest_wav(resp.content)
        except Exception as exc:
            raise PipelineError("tts", f"malformed TTS audio: {exc}") from exc
