"""Exception hierarchy shared across the package."""


class FluentFixError(Exception):
    """Base class for all package errors."""


class ConfigError(FluentFixError):
    """Invalid or missing configuration (lexicons, languages, flags)."""


class UnsupportedLanguageError(ConfigError):
    """A language code outside the supported set was requested."""


class ContractViolationError(FluentFixError):
    """A caller broke an API precondition (e.g. label-count mismatch)."""


class DataError(FluentFixError):
    """Malformed input data (corpus lines, prompt banks, WAV files)."""


class InvalidAudioError(DataError):
    """Bytes that do not parse as the supported WAV format."""


class PipelineError(FluentFixError):
    """A pipeline stage failed; carries the stage name for error surfaces."""

    def __init__(self, stage: str, message: str):
        super().__init__(message)
        self.stage = stage
        self.message = message


class MockBackendError(PipelineError):
    """Mock backend has no scripted behaviour for the given input."""
