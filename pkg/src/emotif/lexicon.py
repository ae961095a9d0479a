"""Word/syllable/phoneme structure: Indonesian orthographic syllabification,
rule-based grapheme-to-SAMPA fallback, the syllabified pronunciation lexicon,
and alignment of a phoneme stream to the words of a sentence.

Every aligned phoneme ends up with a prosodic cell: where its word sits in the
sentence, where its syllable sits in the word, and whether it is an onset
consonant, the vowel nucleus, or a coda consonant.  Those cells are the keys
the emotion profiles are indexed by.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .errors import EmotifError
from .pho import PhoDocument

logger = logging.getLogger(__name__)

PAUSE_SYMBOL = "_"

VOWEL_LETTERS = frozenset("aeiou")

# Consonant digraphs written with two letters but spoken as one sound; they are
# never split across a syllable boundary.
DIGRAPHS = ("ng", "ny", "kh", "sy")

# Vowel pairs that stay one nucleus, but only word-finally ("pakai", "pulau");
# elsewhere adjacent vowels are hiatus and split ("di-am", "ber-du-a").
FINAL_DIPHTHONGS = ("ai", "au", "oi")

# Consonant clusters allowed to open a syllable (mostly loanword clusters).
ONSET_CLUSTERS = frozenset({
    "pr", "br", "tr", "dr", "kr", "gr", "fr", "sr",
    "pl", "bl", "kl", "gl", "fl", "sl",
    "sp", "st", "sk", "sm", "sn", "sw", "kw", "dw", "tw",
    "str", "spr", "skr", "skl",
})

# Letter/digraph to SAMPA, following the MBROLA Indonesian (id1) inventory.
SAMPA_MAP = {
    "a": "a", "b": "b", "c": "tS", "d": "d", "e": "e", "f": "f", "g": "g",
    "h": "h", "i": "i", "j": "dZ", "k": "k", "l": "l", "m": "m", "n": "n",
    "o": "o", "p": "p", "q": "k", "r": "r", "s": "s", "t": "t", "u": "u",
    "v": "f", "w": "w", "x": "s", "y": "j", "z": "z",
    "ng": "N", "ny": "J", "kh": "x", "sy": "S",
    "ai": "aI", "au": "aU", "oi": "OI",
}


class NoVowelError(EmotifError):
    """The word contains no vowel letter and cannot be syllabified."""


class UnmappableGraphemeError(EmotifError):
    """A grapheme has no SAMPA mapping."""


class LexiconFormatError(EmotifError):
    """A lexicon file entry is malformed."""


class UnknownWordError(EmotifError):
    """A word is absent from the lexicon and fallback is disabled."""


class AlignmentMismatchError(EmotifError):
    """The phoneme stream disagrees with a word's expected SAMPA sequence."""

    def __init__(self, message: str, stream_index: int, word: str):
        super().__init__(message)
        self.stream_index = stream_index
        self.word = word


class StreamExhaustedError(EmotifError):
    """The phoneme stream ended before all sentence words were matched."""


class WordPosition(Enum):
    FIRST = "first"
    LAST = "last"
    OTHER = "other"


class SyllablePosition(Enum):
    FIRST = "first"
    MIDDLE = "middle"
    LAST = "last"


class PhonemeRole(Enum):
    CONSONANT1 = "cons1"
    VOWEL = "vowel"
    CONSONANT2 = "cons2"


@dataclass(frozen=True)
class Syllable:
    """Ordered SAMPA tokens with the index of the vowel nucleus."""

    phonemes: tuple[str, ...]
    nucleus_index: int

    def __post_init__(self):
        if not 0 <= self.nucleus_index < len(self.phonemes):
            raise ValueError("nucleus index outside the syllable")


@dataclass(frozen=True)
class LexiconEntry:
    orthographic: str
    syllables: tuple[Syllable, ...]

    def __post_init__(self):
        if not self.syllables:
            raise ValueError("entry needs at least one syllable")

    @property
    def phonemes(self) -> tuple[str, ...]:
        return tuple(p for syl in self.syllables for p in syl.phonemes)


@dataclass(frozen=True)
class ProsodicContext:
    word_position: WordPosition
    syllable_position: SyllablePosition
    role: PhonemeRole


@dataclass(frozen=True)
class AlignedSyllable:
    """Positions (into the document's phoneme sequence) of one syllable."""

    indices: tuple[int, ...]
    nucleus: int  # offset within indices


@dataclass(frozen=True)
class AlignedWord:
    orthographic: str
    syllables: tuple[AlignedSyllable, ...]


@dataclass(frozen=True)
class AlignedUtterance:
    words: tuple[AlignedWord, ...]
    unaligned: tuple[int, ...]

    def aligned_indices(self) -> list[int]:
        return [i for w in self.words for s in w.syllables for i in s.indices]


def tokenize_sentence(text: str) -> list[str]:
    """Lowercased words of a sentence, punctuation stripped."""
    words = []
    for chunk in text.split():
        word = re.sub(r"[^a-z]", "", chunk.lower())
        if word:
            words.append(word)
    return words


def _letter_units(word: str) -> list[str]:
    """Split a word into single letters with digraphs kept whole (greedy
    left-to-right, so 'ngg' reads as 'ng' + 'g')."""
    units = []
    i = 0
    while i < len(word):
        pair = word[i:i + 2]
        if pair in DIGRAPHS:
            units.append(pair)
            i += 2
        else:
            units.append(word[i])
            i += 1
    return units


def syllabify_orthographic(word: str) -> list[str]:
    """Split an Indonesian word into orthographic syllables.

    Adjacent vowels are hiatus ("di-am") except a word-final diphthong
    ("pa-kai"); a single intervocalic consonant opens the next syllable
    (V-CV); of an intervocalic cluster, the longest valid onset opens the
    next syllable and the rest close the previous one (VC-CV).
    """
    word = word.lower()
    if not word or not word.isalpha():
        raise ValueError(f"expected a word of letters, got {word!r}")
    if not VOWEL_LETTERS & set(word):
        raise NoVowelError(f"{word!r} contains no vowel")

    units = _letter_units(word)

    # Nucleus units: each vowel on its own, except a word-final diphthong pair.
    is_nucleus_start = [False] * len(units)
    i = 0
    while i < len(units):
        if units[i] in VOWEL_LETTERS:
            if (i + 2 == len(units) and units[i + 1] in VOWEL_LETTERS
                    and units[i] + units[i + 1] in FINAL_DIPHTHONGS):
                is_nucleus_start[i] = True
                i += 2
                continue
            is_nucleus_start[i] = True
        i += 1

    nuclei = [i for i, flag in enumerate(is_nucleus_start) if flag]

    # Boundary before each nucleus after the first: give the following
    # syllable the longest valid onset out of the consonants in between.
    boundaries = []
    for prev, cur in zip(nuclei, nuclei[1:]):
        run_start = prev + 1
        while run_start < cur and units[run_start] in VOWEL_LETTERS:
            run_start += 1  # skip the tail of a diphthong nucleus
        run = units[run_start:cur]
        if not run:
            boundaries.append(cur)
            continue
        onset_len = 1
        for take in range(len(run), 1, -1):
            if "".join(run[-take:]) in ONSET_CLUSTERS:
                onset_len = take
                break
        boundaries.append(cur - onset_len)

    pieces = []
    starts = [0] + boundaries
    ends = boundaries + [len(units)]
    for a, b in zip(starts, ends):
        pieces.append("".join(units[a:b]))
    return pieces


def grapheme_to_sampa(syllables: list[str]) -> tuple[Syllable, ...]:
    """Map orthographic syllables to SAMPA syllables with nucleus indices.

    Deterministic letter mapping; ambiguity the orthography cannot express
    (such as 'e' versus schwa) resolves to the plain vowel, which is why a
    lexicon entry always wins over this fallback.
    """
    out = []
    for syl in syllables:
        units = _letter_units(syl)
        # Re-join a word-final diphthong the syllabifier kept as one nucleus.
        merged: list[str] = []
        for unit in units:
            if (merged and merged[-1] + unit in FINAL_DIPHTHONGS
                    and merged[-1] in VOWEL_LETTERS and unit in VOWEL_LETTERS):
                merged[-1] = merged[-1] + unit
            else:
                merged.append(unit)
        phonemes = []
        nucleus = None
        for unit in merged:
            if unit not in SAMPA_MAP:
                raise UnmappableGraphemeError(f"no SAMPA mapping for {unit!r} in {syl!r}")
            if nucleus is None and (unit in VOWEL_LETTERS or unit in FINAL_DIPHTHONGS):
                nucleus = len(phonemes)
            phonemes.append(SAMPA_MAP[unit])
        if nucleus is None:
            raise UnmappableGraphemeError(f"syllable {syl!r} has no vowel nucleus")
        out.append(Syllable(tuple(phonemes), nucleus))
    return tuple(out)


class Lexicon:
    """Immutable word -> syllabified-SAMPA store with optional G2P fallback."""

    def __init__(self, entries: dict[str, LexiconEntry] | None = None):
        self._entries = dict(entries or {})

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, word: str) -> LexiconEntry | None:
        return self._entries.get(word.lower())

    def resolve(self, word: str, g2p_fallback: bool = True) -> LexiconEntry:
        """Look the word up, falling back to rule-based G2P when allowed."""
        entry = self.get(word)
        if entry is not None:
            return entry
        if not g2p_fallback:
            raise UnknownWordError(f"word {word!r} is not in the lexicon")
        logger.warning("word %r not in lexicon; using G2P fallback", word)
        return LexiconEntry(word.lower(), grapheme_to_sampa(syllabify_orthographic(word)))


def _parse_syllable_field(field: str, line_no: int) -> Syllable:
    tokens = field.split()
    if not tokens:
        raise LexiconFormatError(f"line {line_no}: empty syllable")
    phonemes = []
    nucleus = None
    for tok in tokens:
        if tok.startswith("*"):
            if nucleus is not None:
                raise LexiconFormatError(f"line {line_no}: more than one nucleus in {field!r}")
            nucleus = len(phonemes)
            tok = tok[1:]
        if not tok:
            raise LexiconFormatError(f"line {line_no}: bare '*' in {field!r}")
        phonemes.append(tok)
    if nucleus is None:
        raise LexiconFormatError(f"line {line_no}: no '*' nucleus in {field!r}")
    return Syllable(tuple(phonemes), nucleus)


def parse_lexicon(text: str) -> Lexicon:
    """Parse lexicon text: ``word<TAB>syl1|syl2|...``, SAMPA tokens space
    separated inside each syllable, nucleus marked with a leading ``*``,
    ``#`` comments."""
    entries: dict[str, LexiconEntry] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "\t" not in line:
            raise LexiconFormatError(f"line {line_no}: expected 'word<TAB>syllables'")
        word, _, rhs = line.partition("\t")
        word = word.strip().lower()
        syllables = tuple(_parse_syllable_field(s, line_no) for s in rhs.split("|"))
        entries[word] = LexiconEntry(word, syllables)
    return Lexicon(entries)


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


def load_default_lexicon() -> Lexicon:
    """The packaged sample lexicon (covers the bundled demo sentences)."""
    text = resources.files("emotif").joinpath("data/lexicon_id.tsv").read_text("utf-8")
    return parse_lexicon(text)


def align(doc: PhoDocument, sentence: list[str], lexicon: Lexicon,
          g2p_fallback: bool = True) -> AlignedUtterance:
    """Match each sentence word's SAMPA sequence greedily against the stream.

    ``_`` pauses separate words and collect in ``unaligned``; a pause inside a
    word, a wrong symbol, or leftover non-pause phonemes raise
    :class:`AlignmentMismatchError`.
    """
    phonemes = doc.phonemes
    pos = 0
    unaligned: list[int] = []
    words: list[AlignedWord] = []

    for word in sentence:
        entry = lexicon.resolve(word, g2p_fallback=g2p_fallback)
        while pos < len(phonemes) and phonemes[pos].symbol == PAUSE_SYMBOL:
            unaligned.append(pos)
            pos += 1
        syllables = []
        for syl in entry.syllables:
            indices = []
            for expected in syl.phonemes:
                if pos >= len(phonemes):
                    raise StreamExhaustedError(
                        f"stream ended while matching {word!r} (expected {expected!r})")
                found = phonemes[pos].symbol
                if found != expected:
                    raise AlignmentMismatchError(
                        f"expected {expected!r} of word {word!r} at stream index {pos}, found {found!r}",
                        stream_index=pos, word=word)
                indices.append(pos)
                pos += 1
            syllables.append(AlignedSyllable(tuple(indices), syl.nucleus_index))
        words.append(AlignedWord(entry.orthographic, tuple(syllables)))

    for i in range(pos, len(phonemes)):
        if phonemes[i].symbol != PAUSE_SYMBOL:
            raise AlignmentMismatchError(
                f"unexpected phoneme {phonemes[i].symbol!r} at stream index {i} after the last word",
                stream_index=i, word="")
        unaligned.append(i)

    return AlignedUtterance(tuple(words), tuple(unaligned))


def _word_position(index: int, count: int) -> WordPosition:
    # A single word is final: final-lengthening dominates its prosody.
    if index == count - 1:
        return WordPosition.LAST
    if index == 0:
        return WordPosition.FIRST
    return WordPosition.OTHER


def _syllable_position(index: int, count: int) -> SyllablePosition:
    # Same rule for a single syllable: it counts as last.
    if index == count - 1:
        return SyllablePosition.LAST
    if index == 0:
        return SyllablePosition.FIRST
    return SyllablePosition.MIDDLE


def classify_context(aligned: AlignedUtterance) -> dict[int, ProsodicContext]:
    """One prosodic cell per aligned phoneme, keyed by stream index."""
    contexts: dict[int, ProsodicContext] = {}
    for wi, word in enumerate(aligned.words):
        wpos = _word_position(wi, len(aligned.words))
        for si, syl in enumerate(word.syllables):
            spos = _syllable_position(si, len(word.syllables))
            for offset, idx in enumerate(syl.indices):
                if offset < syl.nucleus:
                    role = PhonemeRole.CONSONANT1
                elif offset == syl.nucleus:
                    role = PhonemeRole.VOWEL
                else:
                    role = PhonemeRole.CONSONANT2
                contexts[idx] = ProsodicContext(wpos, spos, role)
    return contexts
