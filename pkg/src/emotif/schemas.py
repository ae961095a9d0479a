"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator


class TransformRequest(BaseModel):
    pho: str = Field(description="Standard .pho file contents")
    sentence: str = Field(description="The sentence the phoneme stream pronounces")
    emotion: str | None = Field(default=None, description="Built-in profile name")
    profile: dict | None = Field(default=None, description="Inline profile object")
    g2p_fallback: bool = True

    model_config = {
        "json_schema_extra": {
            "examples": [
                {"pho": "_ 100\na 90 0 110 100 115\nk 70\nu 80 0 115 100 118\n_ 100\n",
                 "sentence": "aku", "emotion": "happy"}
            ]
        }
    }

    @model_validator(mode="after")
    def _one_profile_source(self):
        if (self.emotion is None) == (self.profile is None):
            raise ValueError("give exactly one of 'emotion' or 'profile'")
        return self


class SyllableInfo(BaseModel):
    phonemes: list[str]
    position: str
    roles: list[str]


class WordInfo(BaseModel):
    word: str
    position: str
    syllables: list[SyllableInfo]


class TransformResponse(BaseModel):
    pho: str
    words: list[WordInfo]


class SyllabifyRequest(BaseModel):
    words: list[str] = Field(min_length=1)


class SyllabifyResponse(BaseModel):
    syllables: list[list[str]]
    structure: str


class PerceptionResponseIn(BaseModel):
    listener_id: str
    stimulus_id: str
    true_emotion: str
    chosen_emotion: str


class PerceptionScoreRequest(BaseModel):
    responses: list[PerceptionResponseIn] = Field(min_length=1)
    threshold_pct: float = 60.0


class PerceptionScoreResponse(BaseModel):
    rows: dict[str, dict[str, float]]
    counts: dict[str, dict[str, int]]
    recognition: dict[str, float]
    threshold_pct: float
    passes: dict[str, bool]
    all_pass: bool
    table: str


class IntelligibilityRecordIn(BaseModel):
    stimulus_id: str
    rating: int = Field(ge=1, le=5)
    reference: str
    transcript: str


class IntelligibilityScoreRequest(BaseModel):
    records: list[IntelligibilityRecordIn] = Field(min_length=1)


class IntelligibilityScoreResponse(BaseModel):
    word_accuracy_pct: float
    clarity_rate_pct: float


class NaturalnessScoreRequest(BaseModel):
    responses: list[PerceptionResponseIn] = Field(min_length=1)


class NaturalnessScoreResponse(BaseModel):
    overall_pct: float
    per_emotion_pct: dict[str, float]
    per_emotion_mean_pct: float
    table: str


class DerivePair(BaseModel):
    pho: str = Field(description=".pho file contents for the standard stream")
    textgrid: str = Field(description="TextGrid contents for the recording")
    pitch: str = Field(description="Pitch sidecar contents (label/start/end)")
    sentence: str
    tier: str | None = None


class DeriveRequest(BaseModel):
    name: str = "derived"
    pairs: list[DerivePair] = Field(min_length=1)


class DeriveResponse(BaseModel):
    profile: dict
    report: str


class HealthResponse(BaseModel):
    status: str
    version: str
