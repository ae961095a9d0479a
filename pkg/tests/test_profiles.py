import json

import pytest

from emotif import builtin_profile, load_profile, profile_from_dict, profile_to_dict, save_profile
from emotif.lexicon import PhonemeRole, ProsodicContext, SyllablePosition, WordPosition
from emotif.profiles import (FactorOutOfRangeError, MissingCellError, PitchEdge,
                             SignSyntaxError)

F, M, L = SyllablePosition.FIRST, SyllablePosition.MIDDLE, SyllablePosition.LAST
WF, WL, WO = WordPosition.FIRST, WordPosition.LAST, WordPosition.OTHER
C1, C2, V = PhonemeRole.CONSONANT1, PhonemeRole.CONSONANT2, PhonemeRole.VOWEL
S, E = PitchEdge.START, PitchEdge.END


def test_builtin_spot_values():
    happy = builtin_profile("happy")
    assert happy.duration[(WF, F, C1)] == -38
    assert happy.duration[(WL, L, V)] == 256
    assert builtin_profile("angry").pitch[(WF, M, E)] == 260
    assert builtin_profile("sad").duration[(WL, L, V)] == 229


def test_lookup_duration():
    happy = builtin_profile("happy")
    assert happy.lookup_duration(ProsodicContext(WL, L, V)) == 256
    assert happy.lookup_duration(ProsodicContext(WO, M, V)) == 21
    assert happy.lookup_duration(ProsodicContext(WO, F, C1)) == 21
    neutral = builtin_profile("neutral")
    for word in (WF, WL, WO):
        for syl in (F, M, L):
            for role in (C1, C2, V):
                assert neutral.lookup_duration(ProsodicContext(word, syl, role)) == 0


def test_lookup_pitch():
    assert builtin_profile("happy").lookup_pitch(WL, M, E) == 363
    assert builtin_profile("sad").lookup_pitch(WO, F, S) == 113
    assert builtin_profile("sad").lookup_pitch(WO, L, S) == 113
    assert builtin_profile("angry").lookup_pitch(WF, F, S) == 172


def test_unknown_builtin():
    with pytest.raises(ValueError):
        builtin_profile("surprised")


def test_profile_counts():
    for name in ("happy", "angry", "sad", "neutral"):
        profile = builtin_profile(name)
        assert len(profile.duration) == 18
        assert len(profile.pitch) == 12


def test_save_load_round_trip(tmp_path):
    for name in ("happy", "angry", "sad", "neutral"):
        path = tmp_path / f"{name}.json"
        save_profile(builtin_profile(name), path)
        assert load_profile(path) == builtin_profile(name)


def test_load_missing_cell(tmp_path):
    data = profile_to_dict(builtin_profile("happy"))
    del data["duration"]["last_word"]["middle"]["vowel"]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    with pytest.raises(MissingCellError):
        load_profile(path)


def test_load_out_of_range(tmp_path):
    data = profile_to_dict(builtin_profile("happy"))
    data["duration"]["first_word"]["first"]["cons1"] = -150
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    with pytest.raises(FactorOutOfRangeError):
        load_profile(path)


def test_textual_factors_need_signs():
    data = profile_to_dict(builtin_profile("happy"))
    data["duration"]["first_word"]["first"]["cons1"] = "(+)65"
    data["duration"]["first_word"]["first"]["cons2"] = "-32"
    profile = profile_from_dict(data)
    assert profile.duration[(WF, F, C1)] == 65
    assert profile.duration[(WF, F, C2)] == -32
    data["duration"]["first_word"]["first"]["vowel"] = "65"
    with pytest.raises(SignSyntaxError):
        profile_from_dict(data)


def test_lookup_is_total():
    profile = builtin_profile("angry")
    for word in (WF, WL, WO):
        for syl in (F, M, L):
            for role in (C1, C2, V):
                profile.lookup_duration(ProsodicContext(word, syl, role))
            for edge in (S, E):
                profile.lookup_pitch(word, syl, edge)


# Independent transcription of the built-in factor tables, used by the
# acceptance suite for the exhaustive 99-factor fidelity check.
TABLE_DURATION = {
    "happy": {
        (WF, F): (-38, -32, 65), (WF, M): (4, -36, 61), (WF, L): (-11, 30, 89),
        (WL, F): (-16, 53, 174), (WL, M): (-5, 21, 252), (WL, L): (14, 60, 256),
        "other": 21,
    },
    "angry": {
        (WF, F): (-36, 1, 12), (WF, M): (5, -3, 72), (WF, L): (-15, 5, 136),
        (WL, F): (-18, -10, 77), (WL, M): (-41, 5, 26), (WL, L): (9, -16, 58),
        "other": 5,
    },
    "sad": {
        (WF, F): (-25, -40, 113), (WF, M): (-11, 40, 135), (WF, L): (8, -26, -40),
        (WL, F): (10, -7, 117), (WL, M): (8, 33, 169), (WL, L): (10, 10, 229),
        "other": 33,
    },
}

TABLE_PITCH = {
    "happy": {
        (WF, F): (132, 152), (WF, M): (133, 162), (WF, L): (173, 201),
        (WL, F): (205, 282), (WL, M): (243, 363), (WL, L): (288, 333),
        "other": (226, 242),
    },
    "angry": {
        (WF, F): (172, 183), (WF, M): (195, 260), (WF, L): (244, 237),
        (WL, F): (192, 232), (WL, M): (154, 207), (WL, L): (209, 202),
        "other": (192, 205),
    },
    "sad": {
        (WF, F): (123, 122), (WF, M): (96, 108), (WF, L): (107, 112),
        (WL, F): (88, 133), (WL, M): (89, 137), (WL, L): (116, 136),
        "other": (113, 116),
    },
}


def iter_expected_factors(emotion):
    """Yield (description, expected, actual) for all 33 factors of an emotion."""
    profile = builtin_profile(emotion)
    for (word, syl), (c1, c2, v) in ((k, v) for k, v in TABLE_DURATION[emotion].items()
                                     if k != "other"):
        for role, expected in zip((C1, C2, V), (c1, c2, v)):
            yield (f"duration {word.value}/{syl.value}/{role.value}", expected,
                   profile.duration[(word, syl, role)])
    yield ("duration other_word", TABLE_DURATION[emotion]["other"], profile.duration_other_word)
    for (word, syl), (start, end) in ((k, v) for k, v in TABLE_PITCH[emotion].items()
                                      if k != "other"):
        yield (f"pitch {word.value}/{syl.value}/start", start, profile.pitch[(word, syl, S)])
        yield (f"pitch {word.value}/{syl.value}/end", end, profile.pitch[(word, syl, E)])
    other = TABLE_PITCH[emotion]["other"]
    yield ("pitch other_word start", other[0], profile.pitch_other_word[0])
    yield ("pitch other_word end", other[1], profile.pitch_other_word[1])


def test_all_builtin_factors_match_reference_tables():
    total = 0
    for emotion in ("happy", "angry", "sad"):
        for description, expected, actual in iter_expected_factors(emotion):
            assert actual == expected, f"{emotion} {description}"
            total += 1
    assert total == 99
