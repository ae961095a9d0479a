"""MBROLA ``.pho`` phoneme-stream format: in-memory IR, parser and emitter.

A ``.pho`` file carries one phoneme per line: a SAMPA symbol, a duration in
milliseconds, and zero or more ``(position%, Hz)`` pitch points describing the
fundamental-frequency contour within the phoneme.  Lines starting with ``;``
are comments; blank lines are allowed.  Both are preserved so a transformed
file stays diffable against its input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import EmotifError

PITCH_MIN_HZ = 30.0
PITCH_MAX_HZ = 600.0


class PhoParseError(EmotifError):
    """A ``.pho`` line could not be parsed.  Carries the 1-based line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class MalformedLineError(PhoParseError):
    """Wrong token shape, e.g. an unpaired pitch value or a bare symbol."""


class NonNumericFieldError(PhoParseError):
    """A duration, position or frequency field is not a number."""


class NonPositiveDurationError(PhoParseError):
    """Duration must be a positive integer number of milliseconds."""


class PositionOutOfRangeError(PhoParseError):
    """Pitch-point positions are percentages and must lie in [0, 100]."""


class NonPositiveFrequencyError(PhoParseError):
    """Pitch-point frequencies must be strictly positive."""


@dataclass(frozen=True)
class PitchPoint:
    """A pitch target at ``position_percent`` of the phoneme's duration."""

    position_percent: float
    frequency_hz: float

    def __post_init__(self):
        if not 0.0 <= self.position_percent <= 100.0:
            raise ValueError(f"position {self.position_percent} outside [0, 100]")
        if not math.isfinite(self.frequency_hz) or self.frequency_hz <= 0.0:
            raise ValueError(f"frequency {self.frequency_hz} must be positive and finite")


@dataclass(frozen=True)
class PhonemeRecord:
    """One phoneme: SAMPA symbol, integer duration, ordered pitch contour.

    An empty ``pitch_points`` tuple models an unvoiced or silent segment.
    """

    symbol: str
    duration_ms: int
    pitch_points: tuple[PitchPoint, ...] = ()

    def __post_init__(self):
        if not self.symbol or any(c.isspace() for c in self.symbol):
            raise ValueError(f"symbol {self.symbol!r} must be non-empty without whitespace")
        if not isinstance(self.duration_ms, int) or self.duration_ms < 1:
            raise ValueError(f"duration {self.duration_ms!r} must be an integer >= 1 ms")
        positions = [p.position_percent for p in self.pitch_points]
        if any(b < a for a, b in zip(positions, positions[1:])):
            raise ValueError("pitch points must be ordered by non-decreasing position")


@dataclass(frozen=True)
class Comment:
    """A verbatim comment line (must start with ``;``)."""

    text: str

    def __post_init__(self):
        if not self.text.startswith(";"):
            raise ValueError("comment lines must start with ';'")


@dataclass(frozen=True)
class Blank:
    """An empty line."""


PhoItem = PhonemeRecord | Comment | Blank


@dataclass(frozen=True)
class PhoDocument:
    """An ordered ``.pho`` file: phonemes interleaved with comments and blanks."""

    items: tuple[PhoItem, ...] = field(default_factory=tuple)

    @property
    def phonemes(self) -> tuple[PhonemeRecord, ...]:
        """The phoneme records only, in document order."""
        return tuple(it for it in self.items if isinstance(it, PhonemeRecord))

    def total_duration_ms(self) -> int:
        return sum(p.duration_ms for p in self.phonemes)


def _parse_number(token: str, what: str, line_no: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise NonNumericFieldError(f"{what} {token!r} is not a number", line_no) from None
    if not math.isfinite(value):
        raise NonNumericFieldError(f"{what} {token!r} is not finite", line_no)
    return value


def _parse_phoneme_line(line: str, line_no: int) -> PhonemeRecord:
    tokens = line.split()
    if len(tokens) < 2:
        raise MalformedLineError("expected 'symbol duration [pos hz]*'", line_no)
    symbol = tokens[0]
    try:
        duration = int(tokens[1])
    except ValueError:
        raise NonNumericFieldError(f"duration {tokens[1]!r} is not an integer", line_no) from None
    if duration < 1:
        raise NonPositiveDurationError(f"duration {duration} must be >= 1 ms", line_no)
    rest = tokens[2:]
    if len(rest) % 2 != 0:
        raise MalformedLineError("unpaired pitch value (positions and frequencies come in pairs)", line_no)
    points = []
    for pos_tok, hz_tok in zip(rest[0::2], rest[1::2]):
        pos = _parse_number(pos_tok, "pitch position", line_no)
        hz = _parse_number(hz_tok, "pitch frequency", line_no)
        if not 0.0 <= pos <= 100.0:
            raise PositionOutOfRangeError(f"pitch position {pos} outside [0, 100]", line_no)
        if hz <= 0.0:
            raise NonPositiveFrequencyError(f"pitch frequency {hz} must be positive", line_no)
        points.append(PitchPoint(pos, hz))
    try:
        return PhonemeRecord(symbol, duration, tuple(points))
    except ValueError as exc:
        raise MalformedLineError(str(exc), line_no) from None


def parse_pho(text: str) -> PhoDocument:
    """Parse ``.pho`` text (LF or CRLF) into a :class:`PhoDocument`.

    Comment and blank lines are kept verbatim in order; every other line must
    match ``symbol duration (pos hz)*``.
    """
    items: list[PhoItem] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith(";"):
            items.append(Comment(raw))
        elif not raw.strip():
            items.append(Blank())
        else:
            items.append(_parse_phoneme_line(raw, line_no))
    return PhoDocument(tuple(items))


def format_number(value: float) -> str:
    """Render a position or frequency: integer when whole, else up to two
    decimals with no trailing zeros."""
    if value == int(value):
        return str(int(value))
    s = f"{value:.2f}".rstrip("0").rstrip(".")
    return s


def emit_pho(doc: PhoDocument) -> str:
    """Render a document canonically: LF line endings, single spaces, integer
    durations, minimal-decimal frequencies.  ``parse_pho(emit_pho(d)) == d``
    for documents whose real-valued fields carry at most two decimals."""
    lines = []
    for item in doc.items:
        if isinstance(item, PhonemeRecord):
            fields = [item.symbol, str(item.duration_ms)]
            for p in item.pitch_points:
                fields.append(format_number(p.position_percent))
                fields.append(format_number(p.frequency_hz))
            lines.append(" ".join(fields))
        elif isinstance(item, Comment):
            lines.append(item.text)
        else:
            lines.append("")
    return "".join(line + "\n" for line in lines)
