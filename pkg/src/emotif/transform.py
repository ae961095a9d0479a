"""The manipulation engine: scale durations and pitch contours of an aligned
phoneme stream according to an emotion profile.

Durations scale per phoneme by the factor of its prosodic cell, rounded
half-up to whole milliseconds once, at the end.  Pitch scales per syllable:
the profile gives factors only for the syllable's start and end, so every
pitch point takes the factor interpolated linearly over the syllable's
duration at the point's position.  Scaled frequencies are clamped to
[30, 600] Hz so extreme factors still yield synthesizable input; pauses and
comments pass through untouched.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import EmotifError
from .lexicon import (AlignedUtterance, Lexicon, ProsodicContext, classify_context,
                      tokenize_sentence)
from .lexicon import align as align_utterance
from .pho import PITCH_MAX_HZ, PITCH_MIN_HZ, PhoDocument, PhonemeRecord, PitchPoint
from .profiles import EmotionProfile, PitchEdge


class ContextMissingError(EmotifError):
    """An aligned phoneme has no prosodic context (upstream bug)."""


def scale_duration(duration_ms: int, factor: float) -> int:
    """``round_half_up(duration * (1 + factor/100))``, at least 1 ms."""
    scaled = duration_ms * (1.0 + factor / 100.0)
    return max(1, math.floor(scaled + 0.5))


def _clamp_hz(value: float) -> float:
    return min(PITCH_MAX_HZ, max(PITCH_MIN_HZ, value))


def scale_pitch_contour(records: Sequence[PhonemeRecord], f_start: float,
                        f_end: float) -> list[PhonemeRecord]:
    """Scale the pitch points of one syllable's contiguous phonemes.

    A point's applied factor is ``f_start + r * (f_end - f_start)`` where
    ``r`` is the point's time position relative to the syllable's total
    duration.  Durations are left unchanged; phonemes without pitch points
    come back as-is.
    """
    total = sum(r.duration_ms for r in records)
    out = []
    offset = 0
    for record in records:
        if not record.pitch_points:
            out.append(record)
            offset += record.duration_ms
            continue
        points = []
        for point in record.pitch_points:
            t = offset + point.position_percent / 100.0 * record.duration_ms
            r = t / total if total > 0 else 0.0
            factor = f_start + r * (f_end - f_start)
            hz = _clamp_hz(round(point.frequency_hz * (1.0 + factor / 100.0), 2))
            points.append(PitchPoint(point.position_percent, hz))
        out.append(PhonemeRecord(record.symbol, record.duration_ms, tuple(points)))
        offset += record.duration_ms
    return out


def apply_emotion(doc: PhoDocument, aligned: AlignedUtterance,
                  profile: EmotionProfile) -> PhoDocument:
    """Return a new document with the profile applied per prosodic cell.

    Unaligned phonemes (pauses), comments and blanks are carried over
    verbatim; symbols and ordering never change.
    """
    contexts = classify_context(aligned)
    phonemes = doc.phonemes
    replacement: dict[int, PhonemeRecord] = {}

    for word in aligned.words:
        for syllable in word.syllables:
            first_ctx = contexts.get(syllable.indices[0])
            if first_ctx is None:
                raise ContextMissingError(f"no context for stream index {syllable.indices[0]}")
            f_start = profile.lookup_pitch(first_ctx.word_position,
                                           first_ctx.syllable_position, PitchEdge.START)
            f_end = profile.lookup_pitch(first_ctx.word_position,
                                         first_ctx.syllable_position, PitchEdge.END)
            originals = [phonemes[i] for i in syllable.indices]
            pitched = scale_pitch_contour(originals, f_start, f_end)
            for idx, record in zip(syllable.indices, pitched):
                ctx = contexts.get(idx)
                if ctx is None:
                    raise ContextMissingError(f"no context for stream index {idx}")
                duration = scale_duration(record.duration_ms, profile.lookup_duration(ctx))
                replacement[idx] = PhonemeRecord(record.symbol, duration, record.pitch_points)

    items = []
    phoneme_index = 0
    for item in doc.items:
        if isinstance(item, PhonemeRecord):
            items.append(replacement.get(phoneme_index, item))
            phoneme_index += 1
        else:
            items.append(item)
    return PhoDocument(tuple(items))


def transform_pipeline(text: str, profile: EmotionProfile, lexicon: Lexicon,
                       standard: PhoDocument | None = None, synth_config=None,
                       g2p_fallback: bool = True) -> PhoDocument:
    """Full sentence-to-document pipeline.

    The standard (unemotional) phoneme stream comes either from ``standard``
    or, when absent, from the external synthesizer frontend configured by
    ``synth_config``.  Intermediate state is transient; only the transformed
    document is returned.
    """
    words = tokenize_sentence(text)
    if not words:
        return PhoDocument(())
    if standard is None:
        from .synth import SynthConfig, generate_standard_pho
        standard = generate_standard_pho(text, synth_config or SynthConfig())
    aligned = align_utterance(standard, words, lexicon, g2p_fallback=g2p_fallback)
    return apply_emotion(standard, aligned, profile)
