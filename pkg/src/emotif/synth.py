"""Bridge to the external synthesizer binaries: an espeak-compatible frontend
for standard phoneme generation and mbrola for audio rendering.

Nothing else in the package needs these binaries; they are resolved from
explicit configuration first, then the ``EMOTIF_ESPEAK_BIN`` /
``EMOTIF_MBROLA_BIN`` / ``EMOTIF_VOICE_DB`` environment variables, then the
system path.  Tests point the config at stub executables.
"""

from __future__ import annotations

import logging
import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmotifError
from .pho import PhoDocument, PhoParseError, emit_pho, parse_pho

logger = logging.getLogger(__name__)

ESPEAK_ENV = "EMOTIF_ESPEAK_BIN"
MBROLA_ENV = "EMOTIF_MBROLA_BIN"
VOICE_DB_ENV = "EMOTIF_VOICE_DB"

DEFAULT_VOICE = "mb-id1"
# Placeholders: {voice} and {text}.  The exact flag set is configurable since
# frontends differ in how they dump mbrola phoneme data.
DEFAULT_ESPEAK_ARGS = ("-v", "{voice}", "-q", "--pho", "{text}")


class SynthError(EmotifError):
    pass


class BinaryNotFoundError(SynthError):
    """The required external executable could not be located."""


class NonZeroExitError(SynthError):
    """The external process failed; stderr is captured in the message."""

    def __init__(self, command: list[str], returncode: int, stderr: str):
        super().__init__(f"{command[0]} exited with status {returncode}: {stderr.strip()}")
        self.command = command
        self.returncode = returncode
        self.stderr = stderr


class EmptyOutputError(SynthError):
    """The renderer exited cleanly but produced no audio."""


class ParseFailureError(SynthError):
    """The frontend's captured phoneme output could not be parsed."""


@dataclass(frozen=True)
class SynthConfig:
    espeak_path: str | None = None
    mbrola_path: str | None = None
    voice_name: str = DEFAULT_VOICE
    voice_db_path: str | None = None
    espeak_args: tuple[str, ...] = field(default=DEFAULT_ESPEAK_ARGS)

    def resolve_espeak(self) -> str:
        return _resolve_binary(self.espeak_path, ESPEAK_ENV, "espeak")

    def resolve_mbrola(self) -> str:
        return _resolve_binary(self.mbrola_path, MBROLA_ENV, "mbrola")

    def resolve_voice_db(self) -> str:
        path = self.voice_db_path or os.environ.get(VOICE_DB_ENV)
        if not path or not Path(path).is_file():
            raise BinaryNotFoundError(
                f"mbrola voice database not found (set voice_db_path or ${VOICE_DB_ENV})")
        return path


def _resolve_binary(configured: str | None, env_var: str, name: str) -> str:
    for candidate in (configured, os.environ.get(env_var)):
        if candidate:
            if Path(candidate).is_file() and os.access(candidate, os.X_OK):
                return candidate
            raise BinaryNotFoundError(f"{name} binary {candidate!r} is not an executable file")
    found = shutil.which(name)
    if found:
        return found
    raise BinaryNotFoundError(
        f"{name} binary not found: configure it, set ${env_var}, or install it on the path")


def _run(command: list[str]) -> subprocess.CompletedProcess:
    proc = subprocess.run(command, capture_output=True, text=True)
    if proc.returncode != 0:
        raise NonZeroExitError(command, proc.returncode, proc.stderr)
    return proc


def generate_standard_pho(text: str, config: SynthConfig) -> PhoDocument:
    """Run the frontend in phoneme-output mode and parse what it prints."""
    espeak = config.resolve_espeak()
    args = [a.format(voice=config.voice_name, text=text) for a in config.espeak_args]
    proc = _run([espeak, *args])
    try:
        return parse_pho(proc.stdout)
    except PhoParseError as exc:
        raise ParseFailureError(f"could not parse frontend output: {exc}") from exc


def render_wav(doc: PhoDocument, config: SynthConfig, out_path) -> Path:
    """Emit the document to a temporary ``.pho`` and render it with mbrola.

    The temporary file is removed on success and kept (with its path logged)
    when rendering fails, so failures stay debuggable.
    """
    mbrola = config.resolve_mbrola()
    voice_db = config.resolve_voice_db()
    out_path = Path(out_path)
    fd, tmp_name = tempfile.mkstemp(suffix=".pho", prefix="emotif-")
    tmp = Path(tmp_name)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(emit_pho(doc))
        _run([mbrola, voice_db, str(tmp), str(out_path)])
        if not out_path.is_file() or out_path.stat().st_size == 0:
            raise EmptyOutputError(f"mbrola produced no audio at {out_path}")
    except Exception:
        logger.error("rendering failed; phoneme input retained at %s", tmp)
        raise
    tmp.unlink(missing_ok=True)
    return out_path
