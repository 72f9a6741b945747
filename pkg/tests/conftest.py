import pytest

from fluentfix.engine import default_config
from fluentfix.synth import default_generator_config
from fluentfix.textcore import LanguageTag, tokenize

FIXTURE_DIR = None  # set below


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def gen_cfg(cfg):
    return default_generator_config(cfg)


@pytest.fixture(params=[LanguageTag.EN, LanguageTag.HI], ids=["en", "hi"])
def lang(request):
    return request.param


@pytest.fixture
def tok():
    def _tok(text, lang=LanguageTag.EN):
        return tokenize(text, lang)

    return _tok


def fixture_path(name):
    from pathlib import Path

    return Path(__file__).parent / "fixtures" / name


def read_fixture_lines(name):
    lines = []
    for line in fixture_path(name).read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append(stripped)
    return lines
