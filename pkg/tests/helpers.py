"""Shared generators for randomized documents, sentences and profiles.

Documents built here are always alignable against the packaged lexicon:
phonemes follow the lexicon entries word by word, with pauses between words.
Fixture phonemes are fully voiced with pitch points pinned to 0% and 100%,
so syllable-edge factors land exactly on the first and last contour points.
"""

import random

from emotif import PhoDocument, PhonemeRecord, PitchPoint, Blank, Comment, align
from emotif.profiles import (EDGE_WORDS, PITCH_EDGES, ROLES, SYLLABLE_POSITIONS,
                             EmotionProfile)

WORD_POOL = [
    "aku", "suka", "sekali", "senior", "amat", "cantik", "kamu", "diam",
    "saja", "pergi", "kalian", "berdua", "hilang", "hadiah", "itu",
    "lupakan", "sempurna", "terlambat",
]


def random_sentence(rng: random.Random, n_words: int | None = None) -> list[str]:
    n = n_words if n_words is not None else rng.randint(3, 6)
    return [rng.choice(WORD_POOL) for _ in range(n)]


def voiced_record(rng: random.Random, symbol: str, min_duration: int = 60,
                  max_duration: int = 200, midpoint: bool = False) -> PhonemeRecord:
    duration = rng.randint(min_duration, max_duration)
    start_hz = round(rng.uniform(80.0, 125.0), 2)
    end_hz = round(rng.uniform(80.0, 125.0), 2)
    points = [PitchPoint(0.0, start_hz)]
    if midpoint:
        points.append(PitchPoint(50.0, round(rng.uniform(80.0, 125.0), 2)))
    points.append(PitchPoint(100.0, end_hz))
    return PhonemeRecord(symbol, duration, tuple(points))


def build_sentence_doc(rng: random.Random, lexicon, words: list[str],
                       with_comment: bool = False, midpoints: bool = False) -> PhoDocument:
    items = []
    if with_comment:
        items.append(Comment("; generated fixture"))
    items.append(PhonemeRecord("_", rng.randint(40, 120)))
    for wi, word in enumerate(words):
        entry = lexicon.resolve(word)
        for symbol in entry.phonemes:
            items.append(voiced_record(rng, symbol, midpoint=midpoints and rng.random() < 0.3))
        if wi < len(words) - 1 and rng.random() < 0.5:
            items.append(PhonemeRecord("_", rng.randint(30, 80)))
    items.append(PhonemeRecord("_", rng.randint(40, 120)))
    if with_comment:
        items.append(Blank())
    return PhoDocument(tuple(items))


def aligned_fixture(rng: random.Random, lexicon, n_words: int | None = None,
                    with_comment: bool = False, midpoints: bool = False):
    words = random_sentence(rng, n_words)
    doc = build_sentence_doc(rng, lexicon, words, with_comment=with_comment, midpoints=midpoints)
    return doc, words, align(doc, words, lexicon)


def random_profile(rng: random.Random, low: float = -98.9, high: float = 400.0) -> EmotionProfile:
    duration = {(w, s, r): rng.uniform(low, high)
                for w in EDGE_WORDS for s in SYLLABLE_POSITIONS for r in ROLES}
    pitch = {(w, s, e): rng.uniform(low, high)
             for w in EDGE_WORDS for s in SYLLABLE_POSITIONS for e in PITCH_EDGES}
    return EmotionProfile("fuzz", duration, rng.uniform(low, high), pitch,
                          (rng.uniform(low, high), rng.uniform(low, high)))
