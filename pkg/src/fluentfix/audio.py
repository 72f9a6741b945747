"""Mono PCM16 audio clips and minimal RIFF/WAV encoding.

Canonical internal format: 16 kHz mono signed 16-bit little-endian. The
parser accepts any PCM16 WAV; `ingest_wav` downmixes and resamples to the
canonical form. A RIFF LIST/INFO ICMT chunk round-trips through
`AudioClip.comment` (the mock ASR reads embedded transcripts from it).
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

import numpy as np

from .errors import InvalidAudioError

CANONICAL_RATE = 16000


@dataclass(frozen=True)
class AudioClip:
    """Immutable mono PCM16 audio."""

    samples: bytes
    sample_rate: int = CANONICAL_RATE
    channels: int = 1
    comment: str | None = None

    def __post_init__(self):
        if self.channels != 1:
            raise InvalidAudioError("clips are mono only")
        if self.sample_rate <= 0:
            raise InvalidAudioError("sample rate must be positive")
        if len(self.samples) % 2 != 0:
            raise InvalidAudioError("PCM16 sample buffer has odd byte length")

    @property
    def sample_count(self) -> int:
        return len(self.samples) // 2

    @property
    def duration_ms(self) -> int:
        return round(1000 * self.sample_count / self.sample_rate)

    @property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.sample_rate).encode())
        h.update(self.samples)
        return h.hexdigest()

    def as_array(self) -> np.ndarray:
        return np.frombuffer(self.samples, dtype="<i2")


def clip_from_array(samples: np.ndarray, sample_rate: int = CANONICAL_RATE,
                    comment: str | None = None) -> AudioClip:
    arr = np.asarray(samples)
    if arr.dtype != np.int16:
        arr = np.clip(np.rint(arr), -32768, 32767).astype(np.int16)
    return AudioClip(samples=arr.astype("<i2").tobytes(), sample_rate=sample_rate,
                     comment=comment)


def sine_wave(freq_hz: float, duration_ms: int, amplitude: float = 0.5,
              sample_rate: int = CANONICAL_RATE) -> np.ndarray:
    n = int(round(sample_rate * duration_ms / 1000))
    t = np.arange(n) / sample_rate
    return np.rint(amplitude * 32767 * np.sin(2 * np.pi * freq_hz * t)).astype(np.int16)


def resample(samples: np.ndarray, src_rate: int, dst_rate: int) -> np.ndarray:
    """Linear-interpolation resampling of mono int16 samples."""
    if src_rate == dst_rate or len(samples) == 0:
        return samples.astype(np.int16)
    n_dst = int(round(len(samples) * dst_rate / src_rate))
    positions = np.arange(n_dst) * (src_rate / dst_rate)
    out = np.interp(positions, np.arange(len(samples)), samples.astype(np.float64))
    return np.clip(np.rint(out), -32768, 32767).astype(np.int16)


# ---------------------------------------------------------------------------
# RIFF / WAVE


def encode_wav(clip: AudioClip) -> bytes:
    """Serialize a clip as a PCM16 WAV, with an INFO ICMT chunk if commented."""
    fmt = struct.pack(
        "<HHIIHH",
        1,  # PCM
        1,  # mono
        clip.sample_rate,
        clip.sample_rate * 2,
        2,  # block align
        16,  # bits per sample
    )
    chunks = [(b"fmt ", fmt), (b"data", clip.samples)]
    if clip.comment is not None:
        payload = clip.comment.encode("utf-8") + b"\x00"
        if len(payload) % 2:
            payload += b"\x00"
        chunks.append((b"LIST", b"INFO" + b"ICMT" + struct.pack("<I", len(payload)) + payload))

    body = b"WAVE"
    for tag, data in chunks:
        body += tag + struct.pack("<I", len(data)) + data
        if len(data) % 2:
            body += b"\x00"
    return b"RIFF" + struct.pack("<I", len(body)) + body


def _iter_chunks(data: bytes, offset: int, end: int):
    while offset + 8 <= end:
        tag = data[offset : offset + 4]
        (size,) = struct.unpack_from("<I", data, offset + 4)
        start = offset + 8
        if start + size > end:
            raise InvalidAudioError("truncated WAV chunk")
        yield tag, start, size
        offset = start + size + (size % 2)


def parse_wav(data: bytes) -> tuple[np.ndarray, int, str | None]:
    """Parse a PCM16 WAV into (samples[n, channels], rate, comment)."""
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise InvalidAudioError("not a RIFF/WAVE file")
    (riff_size,) = struct.unpack_from("<I", data, 4)
    end = min(len(data), 8 + riff_size)

    fmt = None
    pcm = None
    comment = None
    for tag, start, size in _iter_chunks(data, 12, end):
        if tag == b"fmt ":
            if size < 16:
                raise InvalidAudioError("fmt chunk too short")
            fmt = struct.unpack_from("<HHIIHH", data, start)
        elif tag == b"data":
            pcm = data[start : start + size]
        elif tag == b"LIST" and data[start : start + 4] == b"INFO":
            for sub, sub_start, sub_size in _iter_chunks(data, start + 4, start + size):
                if sub == b"ICMT":
                    raw = data[sub_start : sub_start + sub_size].rstrip(b"\x00")
                    comment = raw.decode("utf-8", errors="replace")

    if fmt is None or pcm is None:
        raise InvalidAudioError("missing fmt or data chunk")
    audio_format, channels, rate, _, _, bits = fmt
    if audio_format != 1 or bits != 16:
        raise InvalidAudioError(f"unsupported WAV encoding (format={audio_format}, bits={bits})")
    if channels < 1:
        raise InvalidAudioError("invalid channel count")
    frame = channels * 2
    usable = len(pcm) - (len(pcm) % frame)
    arr = np.frombuffer(pcm[:usable], dtype="<i2").reshape(-1, channels)
    return arr, rate, comment


def ingest_wav(data: bytes, target_rate: int = CANONICAL_RATE) -> AudioClip:
    """Decode arbitrary PCM16 WAV bytes into a canonical mono clip."""
    arr, rate, comment = parse_wav(data)
    if arr.shape[1] > 1:
        mono = np.rint(arr.astype(np.float64).mean(axis=1)).astype(np.int16)
    else:
        mono = arr[:, 0]
    mono = resample(mono, rate, target_rate)
    return clip_from_array(mono, sample_rate=target_rate, comment=comment)
