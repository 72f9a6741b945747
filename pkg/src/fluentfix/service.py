"""HTTP service exposing correction, the speech pipeline, topics and audio.

Error bodies are uniform: {"code": ..., "message": ..., "stage"?: ...} so the
browser client can tell mic, validation and backend-stage failures apart.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, asdict

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from . import __version__
from .backends import HttpAsr, HttpTts, MockAsr, MockTts
from .engine import DetectorConfig, config_from_dir, correct, default_config
from .errors import (
    ConfigError,
    InvalidAudioError,
    PipelineError,
    UnsupportedLanguageError,
)
from .pipeline import AudioStore, process
from .textcore import LanguageTag, tokenize
from .topics import PromptBank, load_bank, packaged_bank, random_prompt
from .audio import ingest_wav

MAX_CORRECT_BODY = 64 * 1024


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    backend_mode: str = "mock"  # mock | remote
    asr_url: str | None = None
    tts_url: str | None = None
    lexicon_dir: str | None = None  # None -> packaged defaults
    prompt_bank_path: str | None = None  # None -> packaged bank
    audio_ttl_seconds: float = 900.0
    max_upload_bytes: int = 8 * 1024 * 1024
    cors_origins: tuple[str, ...] = ("*",)
    languages: tuple[str, ...] = ("en", "hi")

    def __post_init__(self):
        if self.backend_mode not in ("mock", "remote"):
            raise ConfigError(f"unknown backend mode {self.backend_mode!r}")
        if self.backend_mode == "remote" and not (self.asr_url and self.tts_url):
            raise ConfigError("remote mode requires both --asr-url and --tts-url")
        if self.max_upload_bytes < 1024 * 1024:
            raise ConfigError("max_upload_bytes must be at least 1 MiB")
        for code in self.languages:
            LanguageTag.parse(code)

    @classmethod
    def from_env(cls, **overrides) -> "ServiceConfig":
        """Environment variables (FLUENTFIX_*) override defaults; explicit
        keyword arguments override both."""
        env_map = {
            "host": "FLUENTFIX_HOST",
            "port": "FLUENTFIX_PORT",
            "backend_mode": "FLUENTFIX_BACKEND_MODE",
            "asr_url": "FLUENTFIX_ASR_URL",
            "tts_url": "FLUENTFIX_TTS_URL",
            "lexicon_dir": "FLUENTFIX_LEXICONS",
            "prompt_bank_path": "FLUENTFIX_PROMPTS",
            "audio_ttl_seconds": "FLUENTFIX_AUDIO_TTL",
            "max_upload_bytes": "FLUENTFIX_MAX_UPLOAD",
        }
        params: dict = {}
        for attr, var in env_map.items():
            if var in os.environ:
                value: object = os.environ[var]
                if attr == "port":
                    value = int(value)  # type: ignore[arg-type]
                elif attr == "audio_ttl_seconds":
                    value = float(value)  # type: ignore[arg-type]
                elif attr == "max_upload_bytes":
                    value = int(value)  # type: ignore[arg-type]
                params[attr] = value
        params.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**params)


def _error(status: int, code: str, message: str, stage: str | None = None) -> JSONResponse:
    body: dict = {"code": code, "message": message}
    if stage is not None:
        body["stage"] = stage
    return JSONResponse(status_code=status, content=body)


def _parse_lang(code: str | None, allowed: tuple[str, ...]) -> LanguageTag:
    if code is None or code not in allowed:
        raise UnsupportedLanguageError(f"unsupported language: {code!r}")
    return LanguageTag.parse(code)


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    detector: DetectorConfig = (
        config_from_dir(config.lexicon_dir) if config.lexicon_dir else default_config()
    )
    langs = tuple(LanguageTag.parse(c) for c in config.languages)
    bank: PromptBank = (
        load_bank(config.prompt_bank_path, languages=langs)
        if config.prompt_bank_path
        else packaged_bank(languages=langs)
    )
    store = AudioStore(ttl_seconds=config.audio_ttl_seconds)
    if config.backend_mode == "remote":
        asr = HttpAsr(config.asr_url)
        tts = HttpTts(config.tts_url)
    else:
        asr = MockAsr()
        tts = MockTts()

    app = FastAPI(title="fluentfix", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    # exposed for tests and embedding (e.g. registering mock ASR fixtures)
    app.state.config = config
    app.state.store = store
    app.state.asr = asr
    app.state.tts = tts
    app.state.detector = detector

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/api/languages")
    def languages():
        return {"languages": list(config.languages)}

    @app.get("/api/topic")
    def topic(lang: str | None = None, seed: int | None = None):
        try:
            tag = _parse_lang(lang, config.languages)
        except UnsupportedLanguageError as exc:
            return _error(400, "unsupported_language", str(exc))
        prompt = random_prompt(bank, tag, rng_seed=seed)
        return {
            "id": prompt.id,
            "lang": prompt.lang.value,
            "category": prompt.category,
            "text": prompt.text,
        }

    @app.post("/api/correct")
    async def correct_text(request: Request):
        length = request.headers.get("content-length")
        if length is not None and int(length) > MAX_CORRECT_BODY:
            return _error(413, "payload_too_large", "body exceeds 64 KiB")
        body = await request.body()
        if len(body) > MAX_CORRECT_BODY:
            return _error(413, "payload_too_large", "body exceeds 64 KiB")
        try:
            payload = json.loads(body)
            text = payload["text"]
            lang_code = payload["lang"]
            if not isinstance(text, str) or not isinstance(lang_code, str):
                raise ValueError("text and lang must be strings")
        except (ValueError, KeyError, TypeError) as exc:
            return _error(400, "bad_request", f"malformed JSON body: {exc}")
        try:
            tag = _parse_lang(lang_code, config.languages)
        except UnsupportedLanguageError as exc:
            return _error(400, "unsupported_language", str(exc))
        result = correct(tokenize(text, tag), detector)
        return JSONResponse(result.as_dict())

    @app.post("/api/process")
    async def process_audio(request: Request):
        length = request.headers.get("content-length")
        if length is not None and int(length) > config.max_upload_bytes:
            return _error(413, "payload_too_large", "upload exceeds limit")
        try:
            form = await request.form()
        except Exception as exc:
            return _error(400, "bad_request", f"malformed multipart body: {exc}")
        upload = form.get("audio")
        lang_code = form.get("lang")
        if upload is None or isinstance(upload, str):
            return _error(400, "bad_request", "missing audio file field")
        try:
            tag = _parse_lang(lang_code if isinstance(lang_code, str) else None,
                              config.languages)
        except UnsupportedLanguageError as exc:
            return _error(400, "unsupported_language", str(exc))
        wav_bytes = await upload.read()
        if len(wav_bytes) > config.max_upload_bytes:
            return _error(413, "payload_too_large", "upload exceeds limit")
        try:
            clip = ingest_wav(wav_bytes)
        except InvalidAudioError as exc:
            return _error(400, "invalid_audio", str(exc))
        try:
            result = process(clip, tag, asr, tts, detector, store,
                             source_wav=wav_bytes)
        except PipelineError as exc:
            return _error(502, "backend_failure", exc.message, stage=exc.stage)
        body = result.correction.as_dict()
        body["raw_audio_url"] = f"/api/audio/{result.raw_audio_id}"
        body["fluent_audio_url"] = f"/api/audio/{result.fluent_audio_id}"
        body["timings"] = result.timings
        return JSONResponse(body)

    @app.api_route("/api/audio/{audio_id}", methods=["GET", "HEAD"])
    def get_audio(audio_id: str, request: Request):
        wav = store.get(audio_id)
        if wav is None:
            return _error(404, "not_found", "unknown or expired audio id")
        if request.method == "HEAD":
            return Response(
                media_type="audio/wav",
                headers={"content-length": str(len(wav))},
            )
        return Response(content=wav, media_type="audio/wav")

    return app


def run(config: ServiceConfig):
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)


def print_config(config: ServiceConfig) -> str:
    return json.dumps(asdict(config), indent=2, sort_keys=True)
