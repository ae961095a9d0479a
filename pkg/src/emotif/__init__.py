"""Emotion injection for MBROLA phoneme streams.

The package parses ``.pho`` phoneme files, aligns them to the words of an
Indonesian sentence, scales per-phoneme durations and per-syllable pitch
contours with signed-percent rate factors, derives those factors from
Praat-segmented recordings, and scores listening experiments.
"""

from .analysis import (DerivationReport, DiffSample, EmptyCorpusError,
                       LabelMismatchError, MeasuredUtterance, MissingPitchError,
                       SegmentMeasurement, UtterancePlan, derive_profile,
                       diff_samples, duration_diff, end_pitch_diff, measure_pho,
                       measure_textgrid, parse_pitch_sidecar, segment_plan,
                       start_pitch_diff)
from .errors import EmotifError
from .evaluation import (ConfusionMatrix, Emotion, IntelligibilityRecord,
                         NaturalnessReport, PerceptionResponse,
                         check_recognition_threshold, clarity_rate,
                         confusion_matrix, intelligibility_accuracy,
                         naturalness_report, parse_intelligibility_csv,
                         parse_perception_csv)
from .lexicon import (AlignedSyllable, AlignedUtterance, AlignedWord, Lexicon,
                      LexiconEntry, PhonemeRole, ProsodicContext, Syllable,
                      SyllablePosition, WordPosition, align, classify_context,
                      grapheme_to_sampa, load_default_lexicon, load_lexicon,
                      parse_lexicon, syllabify_orthographic, tokenize_sentence)
from .pho import (Blank, Comment, PhoDocument, PhonemeRecord, PhoParseError,
                  PitchPoint, emit_pho, parse_pho)
from .profiles import (ANGRY, HAPPY, NEUTRAL, SAD, EmotionProfile, PitchEdge,
                       builtin_profile, load_profile, profile_from_dict,
                       profile_to_dict, save_profile)
from .synth import SynthConfig, generate_standard_pho, render_wav
from .textgrid import IntervalTier, parse_textgrid, read_textgrid
from .transform import (apply_emotion, scale_duration, scale_pitch_contour,
                        transform_pipeline)

__version__ = "0.1.0"
