"""Emotion profiles: signed-percent rate factors per prosodic cell.

A profile holds 19 duration factors (first/last word x first/middle/last
syllable x onset-consonant/coda-consonant/vowel, plus one undifferentiated
other-word factor) and 14 pitch factors (the same word/syllable grid x
syllable-start/syllable-end edges, plus an other-word start/end pair).
Factors are relative percentage differences; a factor ``f`` scales a value by
``1 + f/100``, so every factor must stay above -100.

Built-in profiles for happy, angry and sad speech ship with the package,
together with an all-zero neutral profile useful as an identity check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import EmotifError
from .lexicon import PhonemeRole, ProsodicContext, SyllablePosition, WordPosition


class PitchEdge(Enum):
    START = "start"
    END = "end"


class ProfileFormatError(EmotifError):
    """A profile file violates the schema."""


class MissingCellError(ProfileFormatError):
    """A required factor cell is absent."""


class SignSyntaxError(ProfileFormatError):
    """A textual factor lacks an explicit sign."""


class FactorOutOfRangeError(ProfileFormatError):
    """A factor at or below -100 would zero or negate the scaled value."""


DurationKey = tuple[WordPosition, SyllablePosition, PhonemeRole]
PitchKey = tuple[WordPosition, SyllablePosition, PitchEdge]

EDGE_WORDS = (WordPosition.FIRST, WordPosition.LAST)
SYLLABLE_POSITIONS = (SyllablePosition.FIRST, SyllablePosition.MIDDLE, SyllablePosition.LAST)
ROLES = (PhonemeRole.CONSONANT1, PhonemeRole.CONSONANT2, PhonemeRole.VOWEL)
PITCH_EDGES = (PitchEdge.START, PitchEdge.END)


def _check_factor(value: float, where: str) -> float:
    value = float(value)
    if value <= -100.0:
        raise FactorOutOfRangeError(f"{where}: factor {value} must be greater than -100")
    return value


@dataclass(frozen=True)
class EmotionProfile:
    name: str
    duration: dict[DurationKey, float]
    duration_other_word: float
    pitch: dict[PitchKey, float]
    pitch_other_word: tuple[float, float]

    def __post_init__(self):
        for word in EDGE_WORDS:
            for syl in SYLLABLE_POSITIONS:
                for role in ROLES:
                    if (word, syl, role) not in self.duration:
                        raise MissingCellError(f"duration cell {word.value}/{syl.value}/{role.value} missing")
                for edge in PITCH_EDGES:
                    if (word, syl, edge) not in self.pitch:
                        raise MissingCellError(f"pitch cell {word.value}/{syl.value}/{edge.value} missing")
        if len(self.duration) != 18 or len(self.pitch) != 12:
            raise ProfileFormatError("unexpected extra factor cells")
        for key, value in self.duration.items():
            _check_factor(value, f"duration {key}")
        for key, value in self.pitch.items():
            _check_factor(value, f"pitch {key}")
        _check_factor(self.duration_other_word, "duration other_word")
        for v in self.pitch_other_word:
            _check_factor(v, "pitch other_word")

    def lookup_duration(self, ctx: ProsodicContext) -> float:
        """Duration factor for a phoneme's prosodic cell.  Words that are
        neither first nor last take the single other-word factor."""
        if ctx.word_position is WordPosition.OTHER:
            return self.duration_other_word
        return self.duration[(ctx.word_position, ctx.syllable_position, ctx.role)]

    def lookup_pitch(self, word_position: WordPosition,
                     syllable_position: SyllablePosition, edge: PitchEdge) -> float:
        if word_position is WordPosition.OTHER:
            return self.pitch_other_word[0 if edge is PitchEdge.START else 1]
        return self.pitch[(word_position, syllable_position, edge)]


def _make_profile(name: str, duration_rows: list[list[float]], duration_other: float,
                  pitch_rows: list[list[float]], pitch_other: tuple[float, float]) -> EmotionProfile:
    """Build a profile from six (cons1, cons2, vowel) duration rows and six
    (start, end) pitch rows ordered first-word then last-word, each
    first/middle/last syllable."""
    duration = {}
    pitch = {}
    row = 0
    for word in EDGE_WORDS:
        for syl in SYLLABLE_POSITIONS:
            c1, c2, v = duration_rows[row]
            duration[(word, syl, PhonemeRole.CONSONANT1)] = float(c1)
            duration[(word, syl, PhonemeRole.CONSONANT2)] = float(c2)
            duration[(word, syl, PhonemeRole.VOWEL)] = float(v)
            start, end = pitch_rows[row]
            pitch[(word, syl, PitchEdge.START)] = float(start)
            pitch[(word, syl, PitchEdge.END)] = float(end)
            row += 1
    return EmotionProfile(name, duration, float(duration_other), pitch,
                          (float(pitch_other[0]), float(pitch_other[1])))


HAPPY = _make_profile(
    "happy",
    duration_rows=[
        [-38, -32, 65],   # first word, first syllable
        [4, -36, 61],     # first word, middle
        [-11, 30, 89],    # first word, last
        [-16, 53, 174],   # last word, first
        [-5, 21, 252],    # last word, middle
        [14, 60, 256],    # last word, last
    ],
    duration_other=21,
    pitch_rows=[
        [132, 152],
        [133, 162],
        [173, 201],
        [205, 282],
        [243, 363],
        [288, 333],
    ],
    pitch_other=(226, 242),
)

ANGRY = _make_profile(
    "angry",
    duration_rows=[
        [-36, 1, 12],
        [5, -3, 72],
        [-15, 5, 136],
        [-18, -10, 77],
        [-41, 5, 26],
        [9, -16, 58],
    ],
    duration_other=5,
    pitch_rows=[
        [172, 183],
        [195, 260],
        [244, 237],
        [192, 232],
        [154, 207],
        [209, 202],
    ],
    pitch_other=(192, 205),
)

SAD = _make_profile(
    "sad",
    duration_rows=[
        [-25, -40, 113],
        [-11, 40, 135],
        [8, -26, -40],
        [10, -7, 117],
        [8, 33, 169],
        [10, 10, 229],
    ],
    duration_other=33,
    pitch_rows=[
        [123, 122],
        [96, 108],
        [107, 112],
        [88, 133],
        [89, 137],
        [116, 136],
    ],
    pitch_other=(113, 116),
)

NEUTRAL = _make_profile(
    "neutral",
    duration_rows=[[0, 0, 0]] * 6,
    duration_other=0,
    pitch_rows=[[0, 0]] * 6,
    pitch_other=(0, 0),
)

BUILTIN_PROFILES = {p.name: p for p in (HAPPY, ANGRY, SAD, NEUTRAL)}


def builtin_profile(name: str) -> EmotionProfile:
    """One of the built-in profiles: happy, angry, sad or neutral."""
    try:
        return BUILTIN_PROFILES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown built-in profile {name!r}; "
                         f"choose from {sorted(BUILTIN_PROFILES)}") from None


_WORD_KEYS = {"first_word": WordPosition.FIRST, "last_word": WordPosition.LAST}
_SYL_KEYS = {"first": SyllablePosition.FIRST, "middle": SyllablePosition.MIDDLE,
             "last": SyllablePosition.LAST}
_ROLE_KEYS = {"cons1": PhonemeRole.CONSONANT1, "cons2": PhonemeRole.CONSONANT2,
              "vowel": PhonemeRole.VOWEL}
_EDGE_KEYS = {"start": PitchEdge.START, "end": PitchEdge.END}


def _coerce_factor(value, where: str) -> float:
    """Accept a JSON number, or a string that carries an explicit sign
    ('+65', '-38', '(+)65').  An unsigned non-zero string is rejected so the
    direction of every factor is stated, never implied."""
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ProfileFormatError(f"{where}: factor must be a number, got {value!r}")
    if isinstance(value, str):
        text = value.strip().replace("(+)", "+").replace("(-)", "-").rstrip("%").strip()
        if not text.startswith(("+", "-")) and text not in ("0", "0.0"):
            raise SignSyntaxError(f"{where}: textual factor {value!r} lacks an explicit sign")
        try:
            value = float(text)
        except ValueError:
            raise ProfileFormatError(f"{where}: cannot parse factor {value!r}") from None
    return _check_factor(value, where)


def _require(mapping, key: str, where: str):
    if not isinstance(mapping, dict) or key not in mapping:
        raise MissingCellError(f"{where}: missing {key!r}")
    return mapping[key]


def profile_from_dict(data: dict) -> EmotionProfile:
    name = _require(data, "name", "profile")
    duration_obj = _require(data, "duration", "profile")
    pitch_obj = _require(data, "pitch", "profile")
    duration = {}
    pitch = {}
    for word_key, word in _WORD_KEYS.items():
        dword = _require(duration_obj, word_key, "duration")
        pword = _require(pitch_obj, word_key, "pitch")
        for syl_key, syl in _SYL_KEYS.items():
            dcell = _require(dword, syl_key, f"duration.{word_key}")
            pcell = _require(pword, syl_key, f"pitch.{word_key}")
            for role_key, role in _ROLE_KEYS.items():
                raw = _require(dcell, role_key, f"duration.{word_key}.{syl_key}")
                duration[(word, syl, role)] = _coerce_factor(
                    raw, f"duration.{word_key}.{syl_key}.{role_key}")
            for edge_key, edge in _EDGE_KEYS.items():
                raw = _require(pcell, edge_key, f"pitch.{word_key}.{syl_key}")
                pitch[(word, syl, edge)] = _coerce_factor(
                    raw, f"pitch.{word_key}.{syl_key}.{edge_key}")
    duration_other = _coerce_factor(_require(duration_obj, "other_word", "duration"),
                                    "duration.other_word")
    other_pitch = _require(pitch_obj, "other_word", "pitch")
    pitch_other = (_coerce_factor(_require(other_pitch, "start", "pitch.other_word"),
                                  "pitch.other_word.start"),
                   _coerce_factor(_require(other_pitch, "end", "pitch.other_word"),
                                  "pitch.other_word.end"))
    return EmotionProfile(str(name), duration, duration_other, pitch, pitch_other)


def profile_to_dict(profile: EmotionProfile) -> dict:
    duration: dict = {}
    pitch: dict = {}
    for word_key, word in _WORD_KEYS.items():
        duration[word_key] = {}
        pitch[word_key] = {}
        for syl_key, syl in _SYL_KEYS.items():
            duration[word_key][syl_key] = {
                role_key: profile.duration[(word, syl, role)]
                for role_key, role in _ROLE_KEYS.items()
            }
            pitch[word_key][syl_key] = {
                edge_key: profile.pitch[(word, syl, edge)]
                for edge_key, edge in _EDGE_KEYS.items()
            }
    duration["other_word"] = profile.duration_other_word
    pitch["other_word"] = {"start": profile.pitch_other_word[0],
                           "end": profile.pitch_other_word[1]}
    return {"name": profile.name, "duration": duration, "pitch": pitch}


def load_profile(path) -> EmotionProfile:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ProfileFormatError(f"{path}: {exc}") from None
    return profile_from_dict(data)


def save_profile(profile: EmotionProfile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(profile_to_dict(profile), fh, indent=2)
        fh.write("\n")
