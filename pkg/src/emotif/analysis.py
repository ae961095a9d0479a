"""Rate-factor derivation: measure phoneme streams and Praat segmentations,
compute signed percentage differences, and aggregate them per prosodic cell
into an emotion profile.

The difference formulas are relative to the standard stream:
``|measured - standard| / standard * 100`` with a positive sign exactly when
the measured value exceeds the standard one.  Cell aggregation is the
arithmetic mean of the signed percentages; a cell nobody sampled derives as
zero, with a warning in the report.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from statistics import fmean
from typing import Sequence

from .errors import EmotifError
from .lexicon import (AlignedUtterance, PhonemeRole, ProsodicContext,
                      SyllablePosition, WordPosition, classify_context)
from .pho import PhoDocument
from .profiles import (EDGE_WORDS, PITCH_EDGES, ROLES, SYLLABLE_POSITIONS,
                       EmotionProfile, PitchEdge)
from .textgrid import IntervalTier

logger = logging.getLogger(__name__)

PAUSE_LABELS = frozenset({"", "_"})


class MissingPitchError(EmotifError):
    """A pitch difference was requested for an unvoiced side."""


class LabelMismatchError(EmotifError):
    """Paired utterances disagree on segment labels or counts."""


class EmptyCorpusError(EmotifError):
    """No pairs were supplied for derivation."""


class PitchSidecarError(EmotifError):
    """The pitch sidecar file is malformed."""


@dataclass(frozen=True)
class SegmentMeasurement:
    """One measured phoneme: label, real-valued duration, edge pitches.

    Both pitch fields are ``None`` together for an unvoiced segment.
    """

    label: str
    duration_ms: float
    start_pitch_hz: float | None = None
    end_pitch_hz: float | None = None

    def __post_init__(self):
        if self.duration_ms <= 0:
            raise ValueError(f"duration {self.duration_ms} must be positive")


@dataclass(frozen=True)
class MeasuredUtterance:
    segments: tuple[SegmentMeasurement, ...]
    sentence: tuple[str, ...] = ()


@dataclass(frozen=True)
class DiffSample:
    """Signed-percent differences for one phoneme (duration) or one syllable
    (pitch edges), tagged with its prosodic cell."""

    context: ProsodicContext
    duration_diff_pct: float | None = None
    start_pitch_diff_pct: float | None = None
    end_pitch_diff_pct: float | None = None


@dataclass(frozen=True)
class SyllableSlot:
    """One syllable's segment ordinals with their prosodic classification."""

    segment_indices: tuple[int, ...]
    word_position: WordPosition
    syllable_position: SyllablePosition
    roles: tuple[PhonemeRole, ...]


@dataclass(frozen=True)
class UtterancePlan:
    syllables: tuple[SyllableSlot, ...]


def measure_pho(doc: PhoDocument, aligned: AlignedUtterance) -> MeasuredUtterance:
    """Measurements of the aligned (non-pause) phonemes, in stream order:
    duration from the record, edge pitches from its first and last points."""
    phonemes = doc.phonemes
    segments = []
    for idx in aligned.aligned_indices():
        record = phonemes[idx]
        start = record.pitch_points[0].frequency_hz if record.pitch_points else None
        end = record.pitch_points[-1].frequency_hz if record.pitch_points else None
        segments.append(SegmentMeasurement(record.symbol, float(record.duration_ms), start, end))
    sentence = tuple(w.orthographic for w in aligned.words)
    return MeasuredUtterance(tuple(segments), sentence)


def parse_pitch_sidecar(text: str) -> list[tuple[str, float | None, float | None]]:
    """Parse ``label<TAB>start_hz<TAB>end_hz`` lines (``-`` marks an absent
    value, ``#`` starts a comment)."""
    entries = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise PitchSidecarError(f"line {line_no}: expected 'label<TAB>start<TAB>end'")
        label, start_tok, end_tok = (f.strip() for f in fields)

        def _value(token: str) -> float | None:
            if token == "-":
                return None
            try:
                value = float(token)
            except ValueError:
                raise PitchSidecarError(f"line {line_no}: bad pitch value {token!r}") from None
            if not math.isfinite(value) or value <= 0:
                raise PitchSidecarError(f"line {line_no}: pitch {value} must be positive")
            return value

        entries.append((label, _value(start_tok), _value(end_tok)))
    return entries


def measure_textgrid(tier: IntervalTier,
                     pitch_entries: Sequence[tuple[str, float | None, float | None]],
                     sentence: Sequence[str] = ()) -> MeasuredUtterance:
    """Measurements from a segmentation tier plus its pitch sidecar.

    Pause intervals (empty or ``_`` labels) are dropped; the sidecar must
    list the remaining segments in order with matching labels.
    """
    spoken = [iv for iv in tier.intervals if iv.label not in PAUSE_LABELS]
    if len(spoken) != len(pitch_entries):
        raise LabelMismatchError(
            f"tier {tier.name!r} has {len(spoken)} spoken segments, sidecar lists {len(pitch_entries)}")
    segments = []
    for iv, (label, start, end) in zip(spoken, pitch_entries):
        if iv.label != label:
            raise LabelMismatchError(
                f"segment {iv.label!r} at {iv.start_s}s does not match sidecar label {label!r}")
        duration_ms = (iv.end_s - iv.start_s) * 1000.0
        segments.append(SegmentMeasurement(iv.label, duration_ms, start, end))
    return MeasuredUtterance(tuple(segments), tuple(sentence))


def _signed_diff(standard: float, measured: float) -> float:
    if standard <= 0 or measured <= 0:
        raise ValueError("diff inputs must be positive")
    magnitude = abs(measured - standard) / standard * 100.0
    if measured > standard:
        return magnitude
    if measured < standard:
        return -magnitude
    return 0.0


def duration_diff(standard_ms: float, measured_ms: float) -> float:
    """Signed percent by which the measured duration differs from standard."""
    return _signed_diff(standard_ms, measured_ms)


def start_pitch_diff(standard_hz: float | None, measured_hz: float | None) -> float:
    if standard_hz is None or measured_hz is None:
        raise MissingPitchError("start pitch absent on one side")
    return _signed_diff(standard_hz, measured_hz)


def end_pitch_diff(standard_hz: float | None, measured_hz: float | None) -> float:
    if standard_hz is None or measured_hz is None:
        raise MissingPitchError("end pitch absent on one side")
    return _signed_diff(standard_hz, measured_hz)


def segment_plan(aligned: AlignedUtterance) -> UtterancePlan:
    """Map an alignment onto segment ordinals (the order measure_pho uses)."""
    contexts = classify_context(aligned)
    ordinal = {idx: n for n, idx in enumerate(aligned.aligned_indices())}
    slots = []
    for word in aligned.words:
        for syllable in word.syllables:
            ctx0 = contexts[syllable.indices[0]]
            slots.append(SyllableSlot(
                segment_indices=tuple(ordinal[i] for i in syllable.indices),
                word_position=ctx0.word_position,
                syllable_position=ctx0.syllable_position,
                roles=tuple(contexts[i].role for i in syllable.indices),
            ))
    return UtterancePlan(tuple(slots))


def diff_samples(standard: MeasuredUtterance, recorded: MeasuredUtterance,
                 plan: UtterancePlan) -> list[DiffSample]:
    """Per-phoneme duration diffs and per-syllable edge pitch diffs.

    Syllable start pitch reads from the first segment voiced on both sides,
    end pitch from the last; a syllable voiced on only one side contributes
    no pitch sample.
    """
    if len(standard.segments) != len(recorded.segments):
        raise LabelMismatchError(
            f"segment counts differ: {len(standard.segments)} vs {len(recorded.segments)}")
    for n, (s, r) in enumerate(zip(standard.segments, recorded.segments)):
        if s.label != r.label:
            raise LabelMismatchError(f"segment {n}: label {s.label!r} vs {r.label!r}")

    samples = []
    for slot in plan.syllables:
        for ordinal, role in zip(slot.segment_indices, slot.roles):
            s, r = standard.segments[ordinal], recorded.segments[ordinal]
            ctx = ProsodicContext(slot.word_position, slot.syllable_position, role)
            samples.append(DiffSample(ctx, duration_diff_pct=duration_diff(s.duration_ms, r.duration_ms)))

        starts = [n for n in slot.segment_indices
                  if standard.segments[n].start_pitch_hz is not None
                  and recorded.segments[n].start_pitch_hz is not None]
        ends = [n for n in slot.segment_indices
                if standard.segments[n].end_pitch_hz is not None
                and recorded.segments[n].end_pitch_hz is not None]
        if starts and ends:
            first, last = starts[0], ends[-1]
            first_role = slot.roles[slot.segment_indices.index(first)]
            ctx = ProsodicContext(slot.word_position, slot.syllable_position, first_role)
            samples.append(DiffSample(
                ctx,
                start_pitch_diff_pct=start_pitch_diff(standard.segments[first].start_pitch_hz,
                                                      recorded.segments[first].start_pitch_hz),
                end_pitch_diff_pct=end_pitch_diff(standard.segments[last].end_pitch_hz,
                                                  recorded.segments[last].end_pitch_hz),
            ))
    return samples


OTHER_WORD = "other_word"


@dataclass(frozen=True)
class DerivationReport:
    """Per-cell sample counts and means behind a derived profile."""

    name: str
    duration_counts: dict
    pitch_counts: dict
    warnings: tuple[str, ...]

    def render_text(self) -> str:
        lines = [f"Derived profile: {self.name}", "",
                 "Duration factors (% vs standard, n samples)",
                 f"{'word':<12}{'syllable':<10}{'cons1':>16}{'cons2':>16}{'vowel':>16}"]
        for word in EDGE_WORDS:
            for syl in SYLLABLE_POSITIONS:
                cells = []
                for role in (PhonemeRole.CONSONANT1, PhonemeRole.CONSONANT2, PhonemeRole.VOWEL):
                    mean, n = self.duration_counts[(word, syl, role)]
                    cells.append(f"{mean:+.1f} [{n}]")
                lines.append(f"{word.value:<12}{syl.value:<10}"
                             f"{cells[0]:>16}{cells[1]:>16}{cells[2]:>16}")
        mean, n = self.duration_counts[OTHER_WORD]
        lines.append(f"{'other':<12}{'any':<10}{f'{mean:+.1f} [{n}]':>16}")
        lines += ["", "Pitch factors (% vs standard, n samples)",
                  f"{'word':<12}{'syllable':<10}{'start':>16}{'end':>16}"]
        for word in EDGE_WORDS:
            for syl in SYLLABLE_POSITIONS:
                cells = []
                for edge in PITCH_EDGES:
                    mean, n = self.pitch_counts[(word, syl, edge)]
                    cells.append(f"{mean:+.1f} [{n}]")
                lines.append(f"{word.value:<12}{syl.value:<10}{cells[0]:>16}{cells[1]:>16}")
        start_stats = self.pitch_counts[(OTHER_WORD, PitchEdge.START)]
        end_stats = self.pitch_counts[(OTHER_WORD, PitchEdge.END)]
        lines.append(f"{'other':<12}{'any':<10}"
                     f"{f'{start_stats[0]:+.1f} [{start_stats[1]}]':>16}"
                     f"{f'{end_stats[0]:+.1f} [{end_stats[1]}]':>16}")
        if self.warnings:
            lines += [""] + [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines) + "\n"


def derive_profile(pairs: Sequence[tuple[MeasuredUtterance, MeasuredUtterance, UtterancePlan]],
                   name: str) -> tuple[EmotionProfile, DerivationReport]:
    """Aggregate diff samples from (standard, recorded, plan) pairs into a
    profile.  Unsampled cells derive as 0 and are listed as warnings."""
    if not pairs:
        raise EmptyCorpusError("no utterance pairs to derive from")

    duration_acc: dict = {(w, s, r): [] for w in EDGE_WORDS for s in SYLLABLE_POSITIONS for r in ROLES}
    duration_acc[OTHER_WORD] = []
    pitch_acc: dict = {(w, s, e): [] for w in EDGE_WORDS for s in SYLLABLE_POSITIONS for e in PITCH_EDGES}
    pitch_acc[(OTHER_WORD, PitchEdge.START)] = []
    pitch_acc[(OTHER_WORD, PitchEdge.END)] = []

    for standard, recorded, plan in pairs:
        for sample in diff_samples(standard, recorded, plan):
            ctx = sample.context
            if sample.duration_diff_pct is not None:
                if ctx.word_position is WordPosition.OTHER:
                    duration_acc[OTHER_WORD].append(sample.duration_diff_pct)
                else:
                    duration_acc[(ctx.word_position, ctx.syllable_position, ctx.role)].append(
                        sample.duration_diff_pct)
            if sample.start_pitch_diff_pct is not None:
                if ctx.word_position is WordPosition.OTHER:
                    pitch_acc[(OTHER_WORD, PitchEdge.START)].append(sample.start_pitch_diff_pct)
                    pitch_acc[(OTHER_WORD, PitchEdge.END)].append(sample.end_pitch_diff_pct)
                else:
                    key = (ctx.word_position, ctx.syllable_position)
                    pitch_acc[key + (PitchEdge.START,)].append(sample.start_pitch_diff_pct)
                    pitch_acc[key + (PitchEdge.END,)].append(sample.end_pitch_diff_pct)

    warnings = []

    def _mean(values: list[float], label: str) -> tuple[float, int]:
        if not values:
            warnings.append(f"no samples for {label}; factor set to 0")
            return 0.0, 0
        return fmean(values), len(values)

    duration = {}
    duration_counts: dict = {}
    for key, values in duration_acc.items():
        if key == OTHER_WORD:
            continue
        word, syl, role = key
        mean, n = _mean(values, f"duration {word.value}/{syl.value}/{role.value}")
        duration[key] = mean
        duration_counts[key] = (mean, n)
    other_mean, other_n = _mean(duration_acc[OTHER_WORD], "duration other_word")
    duration_counts[OTHER_WORD] = (other_mean, other_n)

    pitch = {}
    pitch_counts: dict = {}
    for key, values in pitch_acc.items():
        if key[0] == OTHER_WORD:
            continue
        word, syl, edge = key
        mean, n = _mean(values, f"pitch {word.value}/{syl.value}/{edge.value}")
        pitch[key] = mean
        pitch_counts[key] = (mean, n)
    other_start, n_start = _mean(pitch_acc[(OTHER_WORD, PitchEdge.START)], "pitch other_word start")
    other_end, n_end = _mean(pitch_acc[(OTHER_WORD, PitchEdge.END)], "pitch other_word end")
    pitch_counts[(OTHER_WORD, PitchEdge.START)] = (other_start, n_start)
    pitch_counts[(OTHER_WORD, PitchEdge.END)] = (other_end, n_end)

    for warning in warnings:
        logger.warning("%s", warning)

    profile = EmotionProfile(name, duration, other_mean, pitch, (other_start, other_end))
    report = DerivationReport(name, duration_counts, pitch_counts, tuple(warnings))
    return profile, report
