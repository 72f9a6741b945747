"""End-to-end orchestration: ASR -> correction -> classification -> TTS.

`process` is a pure composition over whatever backends it is handed; with the
mock backends the result is fully deterministic apart from wall-clock timings
(audio ids are content digests, so they repeat for identical inputs).
"""

from __future__ import annotations

import hashlib
import threading
import time
from dataclasses import dataclass

from .audio import AudioClip, encode_wav
from .backends import AsrBackend, TtsBackend
from .engine import CorrectionResult, DetectorConfig, correct
from .errors import PipelineError
from .textcore import LanguageTag, tokenize


class AudioStore:
    """In-memory WAV store with TTL eviction; ids are content digests."""

    def __init__(self, ttl_seconds: float = 900.0, clock=time.monotonic):
        self._ttl = ttl_seconds
        self._clock = clock
        self._items: dict[str, tuple[bytes, float]] = {}
        self._lock = threading.Lock()

    def put(self, wav: bytes) -> str:
        key = hashlib.sha256(wav).hexdigest()[:32]
        with self._lock:
            self._items[key] = (wav, self._clock() + self._ttl)
        return key

    def get(self, key: str) -> bytes | None:
        now = self._clock()
        with self._lock:
            entry = self._items.get(key)
            if entry is None:
                return None
            wav, expiry = entry
            if now >= expiry:
                del self._items[key]
                return None
            return wav

    def purge(self):
        now = self._clock()
        with self._lock:
            dead = [k for k, (_, exp) in self._items.items() if now >= exp]
            for k in dead:
                del self._items[k]

    def __len__(self) -> int:
        with self._lock:
            return len(self._items)


@dataclass(frozen=True)
class PipelineResult:
    correction: CorrectionResult
    raw_audio_id: str
    fluent_audio_id: str
    timings: dict[str, float]


def process(
    audio: AudioClip,
    lang: LanguageTag,
    asr: AsrBackend,
    tts: TtsBackend,
    cfg: DetectorConfig,
    store: AudioStore,
    source_wav: bytes | None = None,
) -> PipelineResult:
    """Run the full speech-to-speech correction flow and store both clips.

    `source_wav`, when given, is stored verbatim as the raw audio (the service
    passes the uploaded bytes through unchanged); otherwise the input clip is
    re-encoded. An empty fluent transcript skips TTS and stores a 0-sample clip.
    """
    timings: dict[str, float] = {}
    started = time.perf_counter()

    mark = time.perf_counter()
    try:
        text = asr.transcribe(audio, lang)
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError("asr", f"ASR backend failed: {exc}") from exc
    timings["asr_ms"] = (time.perf_counter() - mark) * 1000
    timings["asr_retries"] = float(getattr(asr, "last_retries", 0))

    mark = time.perf_counter()
    result = correct(tokenize(text, lang), cfg)
    timings["dc_ms"] = (time.perf_counter() - mark) * 1000

    mark = time.perf_counter()
    if result.fluent.word_count == 0:
        fluent_clip = AudioClip(samples=b"")
    else:
        try:
            fluent_clip = tts.synthesize(result.fluent.raw_text, lang)
        except PipelineError:
            raise
        except Exception as exc:
            raise PipelineError("tts", f"TTS backend failed: {exc}") from exc
    timings["tts_ms"] = (time.perf_counter() - mark) * 1000
    timings["tts_retries"] = float(getattr(tts, "last_retries", 0))

    raw_id = store.put(source_wav if source_wav is not None else encode_wav(audio))
    fluent_id = store.put(encode_wav(fluent_clip))
    timings["total_ms"] = (time.perf_counter() - started) * 1000
    return PipelineResult(
        correction=result,
        raw_audio_id=raw_id,
        fluent_audio_id=fluent_id,
        timings=timings,
    )
