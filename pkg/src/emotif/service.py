"""FastAPI service wrapping the core package for long-running, multi-client
use.  The CLI covers the same operations for batch work on local files.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__, schemas
from .analysis import derive_profile, measure_pho, measure_textgrid, parse_pitch_sidecar, segment_plan
from .errors import EmotifError
from .evaluation import (Emotion, IntelligibilityRecord, PerceptionResponse,
                         clarity_rate, confusion_matrix, intelligibility_accuracy,
                         naturalness_report, naturalness_summary, perception_summary)
from .lexicon import align, classify_context, load_default_lexicon, tokenize_sentence
from .pho import emit_pho, parse_pho
from .profiles import BUILTIN_PROFILES, builtin_profile, profile_from_dict, profile_to_dict
from .textgrid import parse_textgrid
from .transform import apply_emotion


def create_app() -> FastAPI:
    app = FastAPI(title="emotif", version=__version__,
                  description="Emotion injection for MBROLA phoneme streams")
    lexicon = load_default_lexicon()

    def _profile_from(request):
        try:
            if request.emotion is not None:
                return builtin_profile(request.emotion)
            return profile_from_dict(request.profile)
        except (EmotifError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.get("/profiles")
    def list_profiles() -> list[str]:
        return sorted(BUILTIN_PROFILES)

    @app.get("/profiles/{name}")
    def get_profile(name: str) -> dict:
        if name.lower() not in BUILTIN_PROFILES:
            raise HTTPException(status_code=404, detail=f"no built-in profile {name!r}")
        return profile_to_dict(builtin_profile(name))

    @app.post("/transform", response_model=schemas.TransformResponse)
    def transform(request: schemas.TransformRequest):
        profile = _profile_from(request)
        try:
            doc = parse_pho(request.pho)
            words = tokenize_sentence(request.sentence)
            aligned = align(doc, words, lexicon, g2p_fallback=request.g2p_fallback)
            contexts = classify_context(aligned)
            result = apply_emotion(doc, aligned, profile)
        except EmotifError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        phonemes = doc.phonemes
        word_infos = []
        for word in aligned.words:
            syllables = []
            for syl in word.syllables:
                ctxs = [contexts[i] for i in syl.indices]
                syllables.append(schemas.SyllableInfo(
                    phonemes=[phonemes[i].symbol for i in syl.indices],
                    position=ctxs[0].syllable_position.value,
                    roles=[c.role.value for c in ctxs],
                ))
            word_infos.append(schemas.WordInfo(
                word=word.orthographic,
                position=contexts[word.syllables[0].indices[0]].word_position.value,
                syllables=syllables,
            ))
        return schemas.TransformResponse(pho=emit_pho(result), words=word_infos)

    @app.post("/syllabify", response_model=schemas.SyllabifyResponse)
    def syllabify(request: schemas.SyllabifyRequest):
        from .lexicon import syllabify_orthographic
        out = []
        try:
            for chunk in request.words:
                for word in tokenize_sentence(chunk):
                    out.append(syllabify_orthographic(word))
        except EmotifError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return schemas.SyllabifyResponse(
            syllables=out, structure="".join(str(len(s)) for s in out))

    @app.post("/score/perception", response_model=schemas.PerceptionScoreResponse)
    def score_perception(request: schemas.PerceptionScoreRequest):
        try:
            responses = [PerceptionResponse(r.stimulus_id, Emotion.parse(r.true_emotion),
                                            Emotion.parse(r.chosen_emotion), r.listener_id)
                         for r in request.responses]
            matrix = confusion_matrix(responses)
        except EmotifError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        summary = perception_summary(matrix, request.threshold_pct)
        return schemas.PerceptionScoreResponse(table=matrix.render_text(), **summary)

    @app.post("/score/intelligibility", response_model=schemas.IntelligibilityScoreResponse)
    def score_intelligibility(request: schemas.IntelligibilityScoreRequest):
        try:
            records = [IntelligibilityRecord(r.stimulus_id, tuple(r.reference.split()),
                                             tuple(r.transcript.split()), r.rating)
                       for r in request.records]
            return schemas.IntelligibilityScoreResponse(
                word_accuracy_pct=intelligibility_accuracy(records),
                clarity_rate_pct=clarity_rate(records))
        except EmotifError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/score/naturalness", response_model=schemas.NaturalnessScoreResponse)
    def score_naturalness(request: schemas.NaturalnessScoreRequest):
        try:
            responses = [PerceptionResponse(r.stimulus_id, Emotion.parse(r.true_emotion),
                                            Emotion.parse(r.chosen_emotion), r.listener_id)
                         for r in request.responses]
            report = naturalness_report(responses)
        except EmotifError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return schemas.NaturalnessScoreResponse(table=report.render_text(),
                                                **naturalness_summary(report))

    @app.post("/derive", response_model=schemas.DeriveResponse)
    def derive(request: schemas.DeriveRequest):
        try:
            pairs = []
            for pair in request.pairs:
                doc = parse_pho(pair.pho)
                sentence = tokenize_sentence(pair.sentence)
                aligned = align(doc, sentence, lexicon)
                tiers = parse_textgrid(pair.textgrid)
                tier = next((t for t in tiers if pair.tier is None or t.name == pair.tier), None)
                if tier is None:
                    raise HTTPException(status_code=400, detail="no usable interval tier")
                sidecar = parse_pitch_sidecar(pair.pitch)
                standard = measure_pho(doc, aligned)
                recorded = measure_textgrid(tier, sidecar, sentence)
                pairs.append((standard, recorded, segment_plan(aligned)))
            profile, report = derive_profile(pairs, request.name)
        except EmotifError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return schemas.DeriveResponse(profile=profile_to_dict(profile),
                                      report=report.render_text())

    return app


app = create_app()
