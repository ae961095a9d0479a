"""Scoring for listening experiments: emotion perception confusion matrices,
transcription-based intelligibility, clarity ratings and naturalness reports.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from enum import Enum
from statistics import fmean

from .errors import EmotifError

RECOGNITION_THRESHOLD_PCT = 60.0


class Emotion(Enum):
    HAPPY = "happy"
    ANGRY = "angry"
    SAD = "sad"

    @classmethod
    def parse(cls, token: str) -> "Emotion":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ResponseFormatError(f"unknown emotion {token!r}") from None


EMOTIONS = (Emotion.HAPPY, Emotion.ANGRY, Emotion.SAD)


class EmptyInputError(EmotifError):
    """No responses or records to score."""


class OutOfScaleError(EmotifError):
    """A clarity rating falls outside the 1..5 scale."""


class ResponseFormatError(EmotifError):
    """A response or record file violates its CSV schema."""


@dataclass(frozen=True)
class PerceptionResponse:
    stimulus_id: str
    true_emotion: Emotion
    chosen_emotion: Emotion
    listener_id: str


@dataclass(frozen=True)
class IntelligibilityRecord:
    stimulus_id: str
    reference_sentence: tuple[str, ...]
    transcript: tuple[str, ...]
    clarity_rating: int

    def __post_init__(self):
        if not 1 <= self.clarity_rating <= 5:
            raise OutOfScaleError(f"rating {self.clarity_rating} outside 1..5")


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts of chosen emotion per true emotion, with row percentages."""

    counts: dict[Emotion, dict[Emotion, int]]

    def row_total(self, true: Emotion) -> int:
        return sum(self.counts[true].values())

    def percentage(self, true: Emotion, chosen: Emotion) -> float:
        total = self.row_total(true)
        if total == 0:
            return 0.0
        return self.counts[true][chosen] / total * 100.0

    def recognition_rate(self, emotion: Emotion) -> float:
        return self.percentage(emotion, emotion)

    def render_text(self) -> str:
        corner = "true / chosen"
        header = f"{corner:<16}" + "".join(f"{e.value:>10}" for e in EMOTIONS)
        lines = [header]
        for true in EMOTIONS:
            if self.row_total(true) == 0:
                cells = "".join(f"{'-':>10}" for _ in EMOTIONS)
            else:
                cells = "".join(f"{self.percentage(true, c):>9.2f}%" for c in EMOTIONS)
            lines.append(f"{true.value:<16}" + cells)
        return "\n".join(lines) + "\n"


def confusion_matrix(responses: list[PerceptionResponse]) -> ConfusionMatrix:
    if not responses:
        raise EmptyInputError("no perception responses")
    counts = {t: {c: 0 for c in EMOTIONS} for t in EMOTIONS}
    for resp in responses:
        counts[resp.true_emotion][resp.chosen_emotion] += 1
    return ConfusionMatrix(counts)


def check_recognition_threshold(matrix: ConfusionMatrix,
                                threshold_pct: float = RECOGNITION_THRESHOLD_PCT) -> dict[Emotion, bool]:
    """Per-emotion pass/fail: the diagonal must reach the threshold
    (inclusive).  Emotions without responses fail."""
    return {e: matrix.row_total(e) > 0 and matrix.recognition_rate(e) >= threshold_pct
            for e in EMOTIONS}


def normalize_words(words) -> tuple[str, ...]:
    """Lowercase and strip punctuation for word-level comparison."""
    if isinstance(words, str):
        words = words.split()
    out = []
    for word in words:
        cleaned = re.sub(r"[^\w]", "", word.lower(), flags=re.UNICODE)
        if cleaned:
            out.append(cleaned)
    return tuple(out)


def _record_accuracy(record: IntelligibilityRecord) -> float:
    reference = normalize_words(record.reference_sentence)
    transcript = normalize_words(record.transcript)
    if not reference:
        raise EmptyInputError(f"record {record.stimulus_id!r} has an empty reference")
    correct = sum(1 for i, word in enumerate(reference)
                  if i < len(transcript) and transcript[i] == word)
    return correct / len(reference) * 100.0


def intelligibility_accuracy(records: list[IntelligibilityRecord]) -> float:
    """Mean over records of position-aligned word accuracy (percent)."""
    if not records:
        raise EmptyInputError("no intelligibility records")
    return fmean(_record_accuracy(r) for r in records)


def clarity_rate(records: list[IntelligibilityRecord]) -> float:
    """Mean clarity rating normalized to percent of the 5-point scale."""
    if not records:
        raise EmptyInputError("no intelligibility records")
    return fmean(r.clarity_rating for r in records) / 5.0 * 100.0


@dataclass(frozen=True)
class NaturalnessReport:
    """Emotion-recognition results for synthesized stimuli.

    ``overall_pct`` weights every response equally; ``per_emotion_mean_pct``
    is the unweighted mean of the per-emotion rates.  The two differ whenever
    the emotions have unequal response counts, so both are always reported.
    """

    overall_pct: float
    per_emotion_pct: dict[Emotion, float]
    per_emotion_mean_pct: float
    matrix: ConfusionMatrix

    def render_text(self) -> str:
        lines = ["Naturalness (emotion recognition)", self.matrix.render_text().rstrip("\n"), ""]
        for emotion in EMOTIONS:
            lines.append(f"{emotion.value:<8} recognition: {self.per_emotion_pct[emotion]:.2f}%")
        lines.append(f"overall accuracy (response-weighted): {self.overall_pct:.2f}%")
        lines.append(f"per-emotion mean (equal weight):      {self.per_emotion_mean_pct:.2f}%")
        return "\n".join(lines) + "\n"


def naturalness_report(responses: list[PerceptionResponse]) -> NaturalnessReport:
    if not responses:
        raise EmptyInputError("no naturalness responses")
    matrix = confusion_matrix(responses)
    correct = sum(1 for r in responses if r.true_emotion is r.chosen_emotion)
    overall = correct / len(responses) * 100.0
    per_emotion = {e: matrix.recognition_rate(e) for e in EMOTIONS}
    sampled = [per_emotion[e] for e in EMOTIONS if matrix.row_total(e) > 0]
    return NaturalnessReport(overall, per_emotion, fmean(sampled), matrix)


PERCEPTION_HEADER = ("listener_id", "stimulus_id", "true_emotion", "chosen_emotion")
INTELLIGIBILITY_HEADER = ("stimulus_id", "rating", "reference", "transcript")


def _rows(text: str, width: int, what: str) -> list[list[str]]:
    rows = []
    for row in csv.reader(io.StringIO(text)):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != width:
            raise ResponseFormatError(f"{what}: expected {width} columns, got {len(row)}: {row!r}")
        rows.append([cell.strip() for cell in row])
    return rows


def parse_perception_csv(text: str) -> list[PerceptionResponse]:
    """``listener_id,stimulus_id,true_emotion,chosen_emotion`` rows; a header
    row matching those names is skipped."""
    rows = _rows(text, 4, "perception csv")
    if rows and tuple(c.lower() for c in rows[0]) == PERCEPTION_HEADER:
        rows = rows[1:]
    return [PerceptionResponse(stimulus_id=r[1], true_emotion=Emotion.parse(r[2]),
                               chosen_emotion=Emotion.parse(r[3]), listener_id=r[0])
            for r in rows]


def parse_intelligibility_csv(text: str) -> list[IntelligibilityRecord]:
    """``stimulus_id,rating,"reference","transcript"`` rows."""
    rows = _rows(text, 4, "intelligibility csv")
    if rows and tuple(c.lower() for c in rows[0]) == INTELLIGIBILITY_HEADER:
        rows = rows[1:]
    records = []
    for row in rows:
        try:
            rating = int(row[1])
        except ValueError:
            raise ResponseFormatError(f"rating {row[1]!r} is not an integer") from None
        records.append(IntelligibilityRecord(
            stimulus_id=row[0], reference_sentence=tuple(row[2].split()),
            transcript=tuple(row[3].split()), clarity_rating=rating))
    return records


def perception_summary(matrix: ConfusionMatrix,
                       threshold_pct: float = RECOGNITION_THRESHOLD_PCT) -> dict:
    passes = check_recognition_threshold(matrix, threshold_pct)
    return {
        "rows": {t.value: {c.value: round(matrix.percentage(t, c), 4) for c in EMOTIONS}
                 for t in EMOTIONS},
        "counts": {t.value: {c.value: matrix.counts[t][c] for c in EMOTIONS} for t in EMOTIONS},
        "recognition": {e.value: round(matrix.recognition_rate(e), 4) for e in EMOTIONS},
        "threshold_pct": threshold_pct,
        "passes": {e.value: passes[e] for e in EMOTIONS},
        "all_pass": all(passes.values()),
    }


def naturalness_summary(report: NaturalnessReport) -> dict:
    return {
        "overall_pct": round(report.overall_pct, 4),
        "per_emotion_pct": {e.value: round(report.per_emotion_pct[e], 4) for e in EMOTIONS},
        "per_emotion_mean_pct": round(report.per_emotion_mean_pct, 4),
    }


def summary_json(summary: dict) -> str:
    return json.dumps(summary, indent=2) + "\n"
