"""Command line front door: correct transcripts, generate corpora, evaluate, serve.

Exit codes: 0 success, 1 usage/config error, 2 data error (processing continues
past bad lines where possible; failures go to stderr).
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from .engine import DetectorConfig, config_from_dir, correct, default_config
from .errors import ConfigError, DataError
from .synth import (
    default_generator_config,
    engine_labeler,
    evaluate,
    generate_corpus,
    generator_config_from_dir,
    parse_corpus_line,
    read_seed_lines,
    utterance_to_json,
)
from .textcore import LanguageTag, tokenize


def _detector(lexicons: str | None) -> DetectorConfig:
    return config_from_dir(lexicons) if lexicons else default_config()


@click.group()
def main():
    """Disfluency correction toolkit."""


@main.command("correct")
@click.option("--lang", type=click.Choice([l.value for l in LanguageTag]), default="en")
@click.option("--in", "input_path", default="-", help="Input file, one utterance per line (- for stdin).")
@click.option("--json", "as_json", is_flag=True, help="Emit one result object per line instead of plain text.")
@click.option("--lexicons", default=None, help="Directory of lexicon files overriding the packaged defaults.")
@click.option("--jobs", default=1, show_default=True, help="Parallel workers; output order is preserved.")
def cmd_correct(lang, input_path, as_json, lexicons, jobs):
    """Correct utterances line by line."""
    tag = LanguageTag(lang)
    cfg = _detector(lexicons)
    try:
        stream = (
            sys.stdin.buffer if input_path == "-" else open(input_path, "rb")
        )
    except OSError as exc:
        raise click.ClickException(str(exc))

    failures = 0

    def handle(raw: bytes) -> str | None:
        try:
            line = raw.decode("utf-8").rstrip("\r\n")
        except UnicodeDecodeError as exc:
            raise DataError(f"undecodable line: {exc}")
        result = correct(tokenize(line, tag), cfg)
        return json.dumps(result.as_dict(), ensure_ascii=False) if as_json \
            else result.fluent.raw_text

    def run(lines):
        nonlocal failures
        if jobs > 1:
            def safe(raw):
                try:
                    return handle(raw)
                except DataError as exc:
                    return exc
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                for lineno, out in enumerate(pool.map(safe, lines), start=1):
                    if isinstance(out, DataError):
                        failures += 1
                        click.echo(f"line {lineno}: {out}", err=True)
                    else:
                        click.echo(out)
        else:
            for lineno, raw in enumerate(lines, start=1):
                try:
                    click.echo(handle(raw))
                except DataError as exc:
                    failures += 1
                    click.echo(f"line {lineno}: {exc}", err=True)

    with stream:
        run(stream)
    if failures:
        sys.exit(2)


def _parse_mix(mix: str) -> dict[str, float]:
    out: dict[str, float] = {}
    for part in mix.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, value = part.partition("=")
        if not value:
            raise DataError(f"mix entry {part!r} is not NAME=PROPORTION")
        out[name.strip()] = float(value)
    return out


@main.command("synth")
@click.option("--seeds", "seeds_path", default=None,
              help="Fluent seed sentences, one per line (default: packaged corpus).")
@click.option("--n", "count", type=int, default=None, help="Number of utterances (seeds cycle).")
@click.option("--mix", default="Filler=0.25,Repetition=0.25,Correction=0.25,FalseStart=0.25",
              show_default=True)
@click.option("--seed", "rng_seed", type=int, default=0, show_default=True)
@click.option("--lang", type=click.Choice([l.value for l in LanguageTag]), default="en")
@click.option("--out", "out_path", default="-", help="Output JSONL path (- for stdout).")
@click.option("--lexicons", default=None, help="Lexicon directory for generator material.")
@click.option("--adversarial", is_flag=True,
              help="Draw injected material from the packaged adversarial lists.")
def cmd_synth(seeds_path, count, mix, rng_seed, lang, out_path, lexicons, adversarial):
    """Generate a gold-labeled synthetic corpus, deterministically."""
    tag = LanguageTag(lang)
    try:
        if seeds_path:
            with open(seeds_path, encoding="utf-8") as fp:
                seeds = read_seed_lines(fp)
        else:
            from .synth import packaged_seeds

            seeds = packaged_seeds(tag)
        if not seeds:
            raise click.ClickException("seeds file is empty")
        if lexicons:
            gen_cfg = generator_config_from_dir(lexicons)
        else:
            gen_cfg = default_generator_config(
                profile="adversarial" if adversarial else "lexicons"
            )
        corpus = generate_corpus(seeds, _parse_mix(mix), rng_seed, gen_cfg,
                                 lang=tag, count=count)
    except (DataError, ConfigError, ValueError, OSError) as exc:
        raise click.ClickException(str(exc))

    if out_path == "-":
        for u in corpus:
            click.echo(utterance_to_json(u))
    else:
        with open(out_path, "w", encoding="utf-8") as fp:
            for u in corpus:
                fp.write(utterance_to_json(u) + "\n")


def _format_report(report) -> str:
    rows = [("type", "precision", "recall", "f1", "tp", "fp", "fn")]
    for name, m in report.per_type.items():
        rows.append((name, f"{m.precision:.4f}", f"{m.recall:.4f}", f"{m.f1:.4f}",
                     str(m.tp), str(m.fp), str(m.fn)))
    m = report.overall
    rows.append(("overall", f"{m.precision:.4f}", f"{m.recall:.4f}", f"{m.f1:.4f}",
                 str(m.tp), str(m.fp), str(m.fn)))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    lines.append(f"utterance_type_accuracy  {report.utterance_type_accuracy:.4f}")
    lines.append(f"corpus_size              {report.corpus_size}")
    return "\n".join(lines)


@main.command("eval")
@click.option("--corpus", "corpus_path", required=True, help="JSONL corpus with gold labels.")
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
@click.option("--lexicons", default=None, help="Lexicon directory for the engine under test.")
def cmd_eval(corpus_path, as_json, lexicons):
    """Score the rule engine against a gold corpus."""
    cfg = _detector(lexicons)
    utterances = []
    try:
        with open(corpus_path, encoding="utf-8") as fp:
            for lineno, line in enumerate(fp, start=1):
                if line.strip():
                    utterances.append(parse_corpus_line(line, lineno))
    except OSError as exc:
        raise click.ClickException(str(exc))
    except DataError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    if not utterances:
        raise click.ClickException("empty corpus")

    report = evaluate(utterances, engine_labeler(cfg))
    if as_json:
        click.echo(json.dumps(report.as_dict(), ensure_ascii=False))
    else:
        click.echo(_format_report(report))


@main.command("serve")
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--backend-mode", type=click.Choice(["mock", "remote"]), default=None)
@click.option("--asr-url", default=None)
@click.option("--tts-url", default=None)
@click.option("--lexicons", default=None)
@click.option("--prompts", default=None)
@click.option("--audio-ttl", type=float, default=None)
@click.option("--max-upload", type=int, default=None)
@click.option("--cors-origin", multiple=True, help="Allowed CORS origin (repeatable).")
@click.option("--print-config", is_flag=True, help="Dump the effective config and exit.")
def cmd_serve(host, port, backend_mode, asr_url, tts_url, lexicons, prompts,
              audio_ttl, max_upload, cors_origin, print_config):
    """Run the HTTP service (flags override FLUENTFIX_* env vars)."""
    from . import service

    try:
        config = service.ServiceConfig.from_env(
            host=host,
            port=port,
            backend_mode=backend_mode,
            asr_url=asr_url,
            tts_url=tts_url,
            lexicon_dir=lexicons,
            prompt_bank_path=prompts,
            audio_ttl_seconds=audio_ttl,
            max_upload_bytes=max_upload,
            cors_origins=tuple(cors_origin) if cors_origin else None,
        )
    except ConfigError as exc:
        raise click.ClickException(str(exc))
    if print_config:
        click.echo(service.print_config(config))
        return
    service.run(config)


if __name__ == "__main__":
    main()
