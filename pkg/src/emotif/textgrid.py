"""Reader for Praat TextGrid files, long ("verbose") and short text forms.

Only interval tiers are returned; point tiers are consumed and ignored.
Times stay in seconds, as written by Praat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmotifError


class TextGridError(EmotifError):
    pass


class UnsupportedFormatError(TextGridError):
    """Input is not a readable TextGrid text file."""


class NonMonotoneTimesError(TextGridError):
    """An interval ends at or before its start."""


@dataclass(frozen=True)
class Interval:
    label: str
    start_s: float
    end_s: float


@dataclass(frozen=True)
class IntervalTier:
    name: str
    intervals: tuple[Interval, ...]


def _value_lines(text: str) -> list[str]:
    """Reduce both TextGrid layouts to one value per line.

    Long-form lines are ``key = value`` pairs or ``item [k]:`` headers; short
    form carries bare values.  Quoted values are kept quoted for the reader.
    """
    values = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith('"'):
            values.append(line)
        elif "=" in line:
            values.append(line.split("=", 1)[1].strip())
        elif line.endswith(":"):
            continue  # structural header such as 'item [1]:'
        else:
            values.append(line)
    return values


class _Reader:
    def __init__(self, values: list[str]):
        self._values = values
        self._pos = 0

    def next(self, what: str) -> str:
        if self._pos >= len(self._values):
            raise UnsupportedFormatError(f"unexpected end of file, expected {what}")
        value = self._values[self._pos]
        self._pos += 1
        return value

    def number(self, what: str) -> float:
        value = self.next(what)
        try:
            number = float(value)
        except ValueError:
            raise UnsupportedFormatError(f"expected {what}, got {value!r}") from None
        if not math.isfinite(number):
            raise UnsupportedFormatError(f"{what} {value!r} is not finite")
        return number

    def string(self, what: str) -> str:
        value = self.next(what)
        if len(value) < 2 or not value.startswith('"') or not value.endswith('"'):
            raise UnsupportedFormatError(f"expected quoted {what}, got {value!r}")
        return value[1:-1].replace('""', '"')


def parse_textgrid(text: str) -> list[IntervalTier]:
    """Parse TextGrid text (either layout) into its interval tiers."""
    reader = _Reader(_value_lines(text))
    if reader.string("file type") != "ooTextFile":
        raise UnsupportedFormatError("not an ooTextFile")
    if reader.string("object class") != "TextGrid":
        raise UnsupportedFormatError("not a TextGrid object")
    reader.number("xmin")
    reader.number("xmax")
    if "<exists>" not in reader.next("tiers flag"):
        return []
    count = int(reader.number("tier count"))

    tiers = []
    for _ in range(count):
        tier_class = reader.string("tier class")
        name = reader.string("tier name")
        reader.number("tier xmin")
        reader.number("tier xmax")
        size = int(reader.number("element count"))
        if tier_class == "IntervalTier":
            intervals = []
            for _ in range(size):
                start = reader.number("interval xmin")
                end = reader.number("interval xmax")
                label = reader.string("interval text")
                if end <= start:
                    raise NonMonotoneTimesError(
                        f"interval {label!r} in tier {name!r} ends at {end} <= start {start}")
                intervals.append(Interval(label, start, end))
            tiers.append(IntervalTier(name, tuple(intervals)))
        elif tier_class == "TextTier":
            for _ in range(size):  # point tiers are skipped
                reader.number("point time")
                reader.string("point mark")
        else:
            raise UnsupportedFormatError(f"unknown tier class {tier_class!r}")
    return tiers


def decode_textgrid_bytes(data: bytes) -> str:
    """Decode TextGrid bytes; Praat writes UTF-8 or UTF-16 with a BOM."""
    if data.startswith(b"\xff\xfe") or data.startswith(b"\xfe\xff"):
        return data.decode("utf-16")
    if data.startswith(b"\xef\xbb\xbf"):
        return data.decode("utf-8-sig")
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        raise UnsupportedFormatError("undecodable TextGrid bytes (expected UTF-8 or UTF-16)") from None


def read_textgrid(path) -> list[IntervalTier]:
    with open(path, "rb") as fh:
        return parse_textgrid(decode_textgrid_bytes(fh.read()))
