import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emotif import Blank, Comment, PhoDocument, PhonemeRecord, PitchPoint, emit_pho, parse_pho
from emotif.pho import (MalformedLineError, NonNumericFieldError,
                        NonPositiveDurationError, NonPositiveFrequencyError,
                        PositionOutOfRangeError, format_number)


def test_parse_silence_line():
    doc = parse_pho("_ 100\n")
    assert doc.items == (PhonemeRecord("_", 100),)


def test_parse_line_with_pitch_points():
    doc = parse_pho("a 150 10 120 90 200\n")
    assert doc.items == (PhonemeRecord("a", 150, (PitchPoint(10, 120), PitchPoint(90, 200))),)


def test_parse_unpaired_pitch_value():
    with pytest.raises(MalformedLineError):
        parse_pho("a 150 10 120 90\n")


def test_parse_preserves_comments_and_blanks():
    text = "; a comment\n_ 100\n\na 50 0 120\n"
    doc = parse_pho(text)
    assert doc.items[0] == Comment("; a comment")
    assert doc.items[2] == Blank()
    assert emit_pho(doc) == text


def test_parse_accepts_crlf():
    doc = parse_pho("_ 100\r\na 50 0 120\r\n")
    assert [p.symbol for p in doc.phonemes] == ["_", "a"]
    assert emit_pho(doc) == "_ 100\na 50 0 120\n"


@pytest.mark.parametrize("line,error", [
    ("a", MalformedLineError),
    ("a x10", NonNumericFieldError),
    ("a 10.5", NonNumericFieldError),
    ("a 0", NonPositiveDurationError),
    ("a -5", NonPositiveDurationError),
    ("a 100 101 120", PositionOutOfRangeError),
    ("a 100 -1 120", PositionOutOfRangeError),
    ("a 100 50 0", NonPositiveFrequencyError),
    ("a 100 50 -20", NonPositiveFrequencyError),
    ("a 100 x 120", NonNumericFieldError),
    ("a 100 50 y", NonNumericFieldError),
    ("a 100 50 inf", NonNumericFieldError),
    ("a 100 nan 120", NonNumericFieldError),
    ("a 100 90 120 10 130", MalformedLineError),  # positions out of order
])
def test_parse_errors(line, error):
    with pytest.raises(error):
        parse_pho(line + "\n")


def test_parse_error_reports_line_number():
    with pytest.raises(MalformedLineError) as err:
        parse_pho("_ 100\na 50 10\n")
    assert err.value.line_no == 2


def test_emit_empty_document():
    assert emit_pho(PhoDocument(())) == ""


def test_emit_formats_frequencies_minimally():
    doc = PhoDocument((PhonemeRecord("a", 150, (PitchPoint(10.0, 120.0), PitchPoint(90.0, 200.5))),))
    assert emit_pho(doc) == "a 150 10 120 90 200.5\n"


@pytest.mark.parametrize("value,expected", [
    (120.0, "120"), (120.5, "120.5"), (120.25, "120.25"),
    (0.1, "0.1"), (99.99, "99.99"), (33.0, "33"),
])
def test_format_number(value, expected):
    assert format_number(value) == expected


def test_total_duration_invariant_under_round_trip():
    text = "_ 100\na 90 0 110 100 115\nk 70\n"
    doc = parse_pho(text)
    assert doc.total_duration_ms() == 260
    assert parse_pho(emit_pho(doc)).total_duration_ms() == 260


def test_record_invariants():
    with pytest.raises(ValueError):
        PhonemeRecord("", 100)
    with pytest.raises(ValueError):
        PhonemeRecord("a b", 100)
    with pytest.raises(ValueError):
        PhonemeRecord("a", 0)
    with pytest.raises(ValueError):
        PitchPoint(101, 100)
    with pytest.raises(ValueError):
        PitchPoint(10, 0)
    with pytest.raises(ValueError):
        PitchPoint(10, float("nan"))


def _quantized(lo, hi):
    return st.integers(int(lo * 100), int(hi * 100)).map(lambda n: n / 100.0)


symbols = st.text(alphabet="abdefghijklmnopqrstuvwz@SNJ_", min_size=1, max_size=3)


@st.composite
def pho_documents(draw):
    def record(_):
        syms = draw(symbols)
        n_points = draw(st.integers(0, 4))
        positions = sorted(draw(_quantized(0, 100)) for _ in range(n_points))
        points = tuple(PitchPoint(p, draw(_quantized(30, 600))) for p in positions)
        return PhonemeRecord(syms, draw(st.integers(1, 500)), points)

    items = draw(st.lists(st.one_of(
        st.builds(record, st.none()),
        st.builds(lambda t: Comment(";" + t), st.text(alphabet=" ;abcxyz0189", max_size=10)),
        st.just(Blank()),
    ), max_size=12))
    return PhoDocument(tuple(items))


@given(pho_documents())
@settings(max_examples=120, deadline=None)
def test_round_trip_property(doc):
    assert parse_pho(emit_pho(doc)) == doc


@given(pho_documents())
@settings(max_examples=60, deadline=None)
def test_emit_parse_emit_is_stable(doc):
    once = emit_pho(doc)
    assert emit_pho(parse_pho(once)) == once
