"""Command-line surface: transform phoneme files, derive rate factors from
segmented recordings, score listening tests, syllabify words, and drive the
external synthesizers end to end.

Exit codes: 0 success, 1 parse/alignment/schema errors, 2 I/O and usage
errors, 3 external synthesizer errors.  Diagnostics go to stderr; data goes
to stdout or the requested output files.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import __version__
from .analysis import derive_profile, measure_pho, measure_textgrid, parse_pitch_sidecar, segment_plan
from .errors import EmotifError
from .evaluation import (EMOTIONS, check_recognition_threshold, clarity_rate,
                         confusion_matrix, intelligibility_accuracy,
                         naturalness_report, naturalness_summary,
                         parse_intelligibility_csv, parse_perception_csv,
                         perception_summary, summary_json)
from .lexicon import (Lexicon, align, classify_context, load_default_lexicon,
                      load_lexicon, syllabify_orthographic, tokenize_sentence)
from .pho import emit_pho, parse_pho
from .profiles import BUILTIN_PROFILES, EmotionProfile, PitchEdge, builtin_profile, load_profile, save_profile
from .synth import SynthConfig, SynthError, generate_standard_pho, render_wav
from .textgrid import read_textgrid
from .transform import apply_emotion

EXIT_DATA_ERROR = 1
EXIT_IO_ERROR = 2
EXIT_SYNTH_ERROR = 3


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_lexicon_opt(path: str | None) -> Lexicon:
    return load_lexicon(path) if path else load_default_lexicon()


def _resolve_profile(emotion: str | None, profile: str | None) -> EmotionProfile:
    """``--emotion`` names a built-in; ``--profile`` takes a file path or a
    built-in name, and an existing file wins over a same-named built-in."""
    if (emotion is None) == (profile is None):
        raise click.UsageError("give exactly one of --emotion or --profile")
    if emotion is not None:
        return builtin_profile(emotion)
    if Path(profile).is_file():
        if profile.lower() in BUILTIN_PROFILES:
            click.echo(f"warning: {profile!r} is both a file and a built-in name; using the file",
                       err=True)
        return load_profile(profile)
    if profile.lower() in BUILTIN_PROFILES:
        return builtin_profile(profile)
    raise click.UsageError(f"profile {profile!r} is neither a file nor a built-in name")


def _parse_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` configuration, quotes optional, ``#`` comments."""
    values: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(f"config line {raw!r} is not 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip().strip("\"'")
    return values


def _synth_config(config_file: str | None, espeak_bin: str | None, mbrola_bin: str | None,
                  voice: str | None, voice_db: str | None) -> tuple[SynthConfig, str | None]:
    cfg = _parse_config_file(config_file) if config_file else {}
    lexicon_path = cfg.get("lexicon")
    return SynthConfig(
        espeak_path=espeak_bin or cfg.get("espeak_bin"),
        mbrola_path=mbrola_bin or cfg.get("mbrola_bin"),
        voice_name=voice or cfg.get("voice") or SynthConfig.voice_name,
        voice_db_path=voice_db or cfg.get("voice_db"),
    ), lexicon_path


def _context_table(doc, aligned, contexts, profile: EmotionProfile) -> str:
    phonemes = doc.phonemes
    lines = [f"{'word':<12}{'wpos':<8}{'syl':<6}{'spos':<8}{'phonemes':<24}"
             f"{'dur %':<22}{'pitch start/end %'}"]
    for word in aligned.words:
        for si, syl in enumerate(word.syllables):
            ctx0 = contexts[syl.indices[0]]
            symbols = []
            durs = []
            for idx in syl.indices:
                ctx = contexts[idx]
                symbols.append(f"{phonemes[idx].symbol}:{ctx.role.value}")
                durs.append(f"{profile.lookup_duration(ctx):+g}")
            f_start = profile.lookup_pitch(ctx0.word_position, ctx0.syllable_position, PitchEdge.START)
            f_end = profile.lookup_pitch(ctx0.word_position, ctx0.syllable_position, PitchEdge.END)
            lines.append(f"{word.orthographic:<12}{ctx0.word_position.value:<8}{si + 1:<6}"
                         f"{ctx0.syllable_position.value:<8}{' '.join(symbols):<24}"
                         f"{','.join(durs):<22}{f_start:+g}/{f_end:+g}")
    return "\n".join(lines)


@click.group()
@click.version_option(version=__version__, prog_name="emotif")
def main():
    """Inject emotion into MBROLA phoneme streams and score the experiments."""
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")


@main.command("transform")
@click.option("--in", "-i", "in_pho", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Standard .pho file to transform.")
@click.option("--text", "-t", required=True, help="The sentence the file pronounces.")
@click.option("--emotion", "-e", type=click.Choice(sorted(BUILTIN_PROFILES)), default=None)
@click.option("--profile", "-p", default=None, help="Profile JSON file (or built-in name).")
@click.option("--lexicon", "-l", "lexicon_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Lexicon TSV (defaults to the packaged sample).")
@click.option("--out", "-o", "out_pho", type=click.Path(dir_okay=False), default=None,
              help="Output .pho path (stdout when omitted).")
@click.option("--g2p-fallback", is_flag=True, help="Allow rule-based G2P for unknown words.")
@click.option("--verbose", "-v", is_flag=True, help="Print the per-word context table.")
def cmd_transform(in_pho, text, emotion, profile, lexicon_path, out_pho, g2p_fallback, verbose):
    """Apply an emotion profile to a standard phoneme file."""
    prof = _resolve_profile(emotion, profile)
    try:
        lexicon = _load_lexicon_opt(lexicon_path)
        source = Path(in_pho).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_IO_ERROR, str(exc))
    try:
        doc = parse_pho(source)
        aligned = align(doc, tokenize_sentence(text), lexicon, g2p_fallback=g2p_fallback)
        contexts = classify_context(aligned)
        result = apply_emotion(doc, aligned, prof)
    except EmotifError as exc:
        _fail(EXIT_DATA_ERROR, str(exc))
    rendered = emit_pho(result)
    if verbose:
        click.echo(_context_table(doc, aligned, contexts, prof), err=out_pho is None)
    if out_pho:
        try:
            Path(out_pho).write_text(rendered, encoding="utf-8")
        except OSError as exc:
            _fail(EXIT_IO_ERROR, str(exc))
    else:
        click.echo(rendered, nl=False)


@main.command("derive")
@click.option("--manifest", "-m", required=True, type=click.Path(exists=True, dir_okay=False),
              help="JSON manifest of (pho, textgrid, pitch, sentence) pairs.")
@click.option("--out", "-o", "out_profile", required=True, type=click.Path(dir_okay=False),
              help="Where to write the derived profile JSON.")
@click.option("--report", "-r", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Write the derivation report here instead of stdout.")
@click.option("--lexicon", "-l", "lexicon_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--name", "-n", default=None, help="Profile name (defaults to the manifest's).")
def cmd_derive(manifest, out_profile, report_path, lexicon_path, name):
    """Derive a rate-factor profile from aligned standard/recorded pairs."""
    base = Path(manifest).parent
    try:
        manifest_data = json.loads(Path(manifest).read_text(encoding="utf-8"))
        lexicon = _load_lexicon_opt(lexicon_path)
    except (OSError, json.JSONDecodeError) as exc:
        _fail(EXIT_IO_ERROR, f"cannot read manifest: {exc}")
    pairs = []
    try:
        for entry in manifest_data.get("pairs", []):
            pho_path = base / entry["pho"]
            try:
                doc = parse_pho(pho_path.read_text(encoding="utf-8"))
                sentence = tokenize_sentence(entry["sentence"])
                aligned = align(doc, sentence, lexicon)
                tiers = read_textgrid(base / entry["textgrid"])
                wanted = entry.get("tier")
                tier = next((t for t in tiers if wanted is None or t.name == wanted), None)
                if tier is None:
                    raise EmotifError(f"no usable interval tier in {entry['textgrid']}")
                sidecar = parse_pitch_sidecar((base / entry["pitch"]).read_text(encoding="utf-8"))
                standard = measure_pho(doc, aligned)
                recorded = measure_textgrid(tier, sidecar, sentence)
                pairs.append((standard, recorded, segment_plan(aligned)))
            except EmotifError as exc:
                raise EmotifError(f"pair {entry.get('pho', '?')}: {exc}") from exc
        profile, report = derive_profile(pairs, name or manifest_data.get("name", "derived"))
    except EmotifError as exc:
        _fail(EXIT_DATA_ERROR, str(exc))
    except (OSError, KeyError) as exc:
        _fail(EXIT_IO_ERROR, f"manifest entry problem: {exc!r}")
    try:
        save_profile(profile, out_profile)
        if report_path:
            Path(report_path).write_text(report.render_text(), encoding="utf-8")
        else:
            click.echo(report.render_text(), nl=False)
    except OSError as exc:
        _fail(EXIT_IO_ERROR, str(exc))


@main.command("score")
@click.argument("mode", type=click.Choice(["perception", "intelligibility", "naturalness"]))
@click.argument("csv_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--check-threshold", "threshold", type=float, default=None,
              help="Fail (nonzero exit) unless every emotion reaches this recognition %.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None,
              help="Also write a machine-readable summary here.")
def cmd_score(mode, csv_file, threshold, json_path):
    """Score a listening-test response CSV."""
    try:
        text = Path(csv_file).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_IO_ERROR, str(exc))
    matrix = None
    try:
        if mode == "perception":
            matrix = confusion_matrix(parse_perception_csv(text))
            summary = perception_summary(matrix, threshold if threshold is not None else 60.0)
            click.echo(matrix.render_text(), nl=False)
            for emotion in EMOTIONS:
                click.echo(f"{emotion.value:<8} recognition: {matrix.recognition_rate(emotion):.2f}%")
        elif mode == "naturalness":
            report = naturalness_report(parse_perception_csv(text))
            summary = naturalness_summary(report)
            click.echo(report.render_text(), nl=False)
        else:
            records = parse_intelligibility_csv(text)
            accuracy = intelligibility_accuracy(records)
            clarity = clarity_rate(records)
            summary = {"word_accuracy_pct": round(accuracy, 4), "clarity_rate_pct": round(clarity, 4)}
            click.echo(f"word accuracy: {accuracy:.2f}%")
            click.echo(f"clarity rate:  {clarity:.2f}%")
    except EmotifError as exc:
        _fail(EXIT_DATA_ERROR, str(exc))
    if json_path:
        try:
            Path(json_path).write_text(summary_json(summary), encoding="utf-8")
        except OSError as exc:
            _fail(EXIT_IO_ERROR, str(exc))
    if matrix is not None and threshold is not None:
        failed = [e.value for e, ok in
                  check_recognition_threshold(matrix, threshold).items() if not ok]
        if failed:
            _fail(EXIT_DATA_ERROR, f"below {threshold:g}% recognition: {', '.join(failed)}")


@main.command("syllabify")
@click.argument("words", nargs=-1, required=True)
def cmd_syllabify(words):
    """Print hyphenated syllables and the per-word syllable-count digits."""
    pieces = []
    structure = []
    for chunk in words:
        for word in tokenize_sentence(chunk):
            try:
                syllables = syllabify_orthographic(word)
            except EmotifError as exc:
                _fail(EXIT_DATA_ERROR, str(exc))
            pieces.append("-".join(syllables))
            structure.append(str(len(syllables)))
    click.echo(" ".join(pieces))
    click.echo("".join(structure))


@main.command("synth")
@click.option("--text", "-t", required=True, help="Sentence to speak.")
@click.option("--emotion", "-e", type=click.Choice(sorted(BUILTIN_PROFILES)), default=None)
@click.option("--profile", "-p", default=None)
@click.option("--out", "-o", "out_wav", required=True, type=click.Path(dir_okay=False))
@click.option("--keep-pho", type=click.Path(dir_okay=False), default=None,
              help="Also write the transformed .pho here.")
@click.option("--lexicon", "-l", "lexicon_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--g2p-fallback", is_flag=True)
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key = value config with espeak_bin/mbrola_bin/voice/voice_db/lexicon.")
@click.option("--espeak-bin", default=None)
@click.option("--mbrola-bin", default=None)
@click.option("--voice", default=None)
@click.option("--voice-db", default=None)
def cmd_synth(text, emotion, profile, out_wav, keep_pho, lexicon_path, g2p_fallback,
              config_file, espeak_bin, mbrola_bin, voice, voice_db):
    """Full pipeline: frontend phonemes, emotion transform, audio rendering."""
    prof = _resolve_profile(emotion, profile)
    config, config_lexicon = _synth_config(config_file, espeak_bin, mbrola_bin, voice, voice_db)
    try:
        lexicon = _load_lexicon_opt(lexicon_path or config_lexicon)
    except OSError as exc:
        _fail(EXIT_IO_ERROR, str(exc))
    try:
        doc = generate_standard_pho(text, config)
        aligned = align(doc, tokenize_sentence(text), lexicon, g2p_fallback=g2p_fallback)
        result = apply_emotion(doc, aligned, prof)
        if keep_pho:
            Path(keep_pho).write_text(emit_pho(result), encoding="utf-8")
        render_wav(result, config, out_wav)
    except SynthError as exc:
        _fail(EXIT_SYNTH_ERROR, str(exc))
    except EmotifError as exc:
        _fail(EXIT_DATA_ERROR, str(exc))
    except OSError as exc:
        _fail(EXIT_IO_ERROR, str(exc))
    click.echo(f"wrote {out_wav}", err=True)


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
