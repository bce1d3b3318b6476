"""Immutable multi-wordnet data model.

A :class:`MultiWordnet` is a set of multi-synsets (concepts lexicalized in
one or more languages) plus the inverse index from words to the synsets
that contain them.  Everything downstream works off the queries defined
here: S(w), translation sets of a sense, and the shared synsets of a
word pair.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, NamedTuple

POS_TAGS = ("n", "v", "a", "r")
POS_ALIASES = {
    "n": "n", "noun": "n",
    "v": "v", "verb": "v",
    "a": "a", "adj": "a", "adjective": "a",
    "r": "r", "adv": "r", "adverb": "r",
}

_LANG_RE = re.compile(r"[a-z]{2,3}")
_WS_RE = re.compile(r"\s+")


class ModelError(ValueError):
    """Violation of a data-model invariant.  ``code`` is a stable slug."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


def check_language(code: str) -> str:
    if not isinstance(code, str) or not _LANG_RE.fullmatch(code):
        raise ModelError("invalid-language", f"bad language code {code!r}")
    return code


def normalize_pos(pos: str) -> str:
    try:
        return POS_ALIASES[pos]
    except (KeyError, TypeError):
        raise ModelError("invalid-pos", f"bad part of speech {pos!r}") from None


def normalize_lemma(lemma: str) -> str:
    """NFC-normalize and encode internal whitespace as underscores."""
    if not isinstance(lemma, str):
        raise ModelError("empty-lemma", f"lemma must be a string, got {lemma!r}")
    lemma = _WS_RE.sub("_", unicodedata.normalize("NFC", lemma).strip())
    if not lemma:
        raise ModelError("empty-lemma", "lemma is empty")
    return lemma


class _WordKey(NamedTuple):
    language: str
    lemma: str
    pos: str


class WordKey(_WordKey):
    """(language, lemma, pos) identity of a lexical item.

    Construction normalizes the lemma and pos, so ``WordKey("en", "ice cream",
    "noun") == WordKey("en", "ice_cream", "n")``.
    """

    __slots__ = ()

    def __new__(cls, language: str, lemma: str, pos: str):
        return super().__new__(
            cls, check_language(language), normalize_lemma(lemma), normalize_pos(pos)
        )

    def __str__(self) -> str:
        return f"{self.language}:{self.lemma}:{self.pos}"

    @classmethod
    def trusted(cls, language: str, lemma: str, pos: str) -> "WordKey":
        """Skip normalization; for values already taken from a built wordnet."""
        return tuple.__new__(cls, (language, lemma, pos))

    @classmethod
    def parse(cls, text: str) -> "WordKey":
        """Parse ``lang:lemma:pos``."""
        lang, sep, rest = text.partition(":")
        lemma, sep2, pos = rest.rpartition(":")
        if not (sep and sep2):
            raise ModelError("bad-word", f"expected lang:lemma:pos, got {text!r}")
        return cls(lang, lemma, pos)


@dataclass(frozen=True, slots=True)
class MultiSynset:
    id: str
    pos: str
    words: tuple[WordKey, ...]
    gloss: str | None = None

    def languages(self) -> set[str]:
        return {w.language for w in self.words}

    def lemmas(self, language: str) -> tuple[str, ...]:
        """Lemmas of ``language`` in this synset; empty means a lexical gap."""
        return tuple(w.lemma for w in self.words if w.language == language)


def make_synset(id: str, pos: str, words: Iterable[WordKey], gloss: str | None = None) -> MultiSynset:
    """Validated constructor; words are sorted and checked for duplicates."""
    if not isinstance(id, str) or not id:
        raise ModelError("bad-synset-id", f"synset id must be a non-empty string, got {id!r}")
    pos = normalize_pos(pos)
    words = tuple(sorted(words))
    if not words:
        raise ModelError("empty-synset", f"synset {id} has no words")
    for prev, w in zip(words, words[1:]):
        if prev == w:
            raise ModelError("duplicate-word", f"{w} listed twice in synset {id}")
    for w in words:
        if w.pos != pos:
            raise ModelError("pos-mismatch", f"{w} in synset {id} of pos {pos}")
    return MultiSynset(id, pos, words, gloss)


@dataclass(frozen=True, slots=True)
class SenseRef:
    word: WordKey
    synset_id: str


class MultiWordnet:
    """Validated, indexed, read-only collection of multi-synsets.

    Use :func:`build` rather than the constructor.
    """

    __slots__ = ("synsets", "index", "languages")

    def __init__(self, synsets: dict[str, MultiSynset], index: dict[WordKey, tuple[str, ...]],
                 languages: frozenset[str]):
        self.synsets = synsets
        self.index = index
        self.languages = languages

    def __len__(self) -> int:
        return len(self.synsets)

    def __contains__(self, word: WordKey) -> bool:
        return word in self.index

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiWordnet):
            return NotImplemented
        return self.synsets == other.synsets and self.index == other.index

    def __repr__(self) -> str:
        return f"MultiWordnet({len(self.synsets)} synsets, languages={sorted(self.languages)})"

    def words(self, language: str | None = None) -> list[WordKey]:
        """Vocabulary, sorted; optionally restricted to one language."""
        if language is None:
            return sorted(self.index)
        return sorted(w for w in self.index if w.language == language)

    def synset(self, synset_id: str) -> MultiSynset:
        try:
            return self.synsets[synset_id]
        except KeyError:
            raise ModelError("unknown-synset", f"no synset {synset_id!r}") from None

    def sense(self, word: WordKey, synset_id: str) -> SenseRef:
        if word not in self.synset(synset_id).words:
            raise ModelError("bad-sense", f"{word} is not in synset {synset_id}")
        return SenseRef(word, synset_id)


def build(synsets: Iterable[MultiSynset]) -> MultiWordnet:
    table: dict[str, MultiSynset] = {}
    for s in synsets:
        if s.id in table:
            raise ModelError("duplicate-synset-id", f"synset id {s.id!r} used twice")
        if not s.words:
            raise ModelError("empty-synset", f"synset {s.id} has no words")
        seen = set()
        for w in s.words:
            if w.pos != s.pos:
                raise ModelError("pos-mismatch", f"{w} in synset {s.id} of pos {s.pos}")
            if w in seen:
                raise ModelError("duplicate-word", f"{w} listed twice in synset {s.id}")
            seen.add(w)
        ws = tuple(sorted(s.words))
        if ws != s.words:
            s = MultiSynset(s.id, s.pos, ws, s.gloss)
        table[s.id] = s

    ordered = {sid: table[sid] for sid in sorted(table)}
    index: dict[WordKey, list[str]] = {}
    for sid, s in ordered.items():
        for w in s.words:
            ids = index.get(w)
            if ids is None:
                index[w] = [sid]
            else:
                ids.append(sid)
    frozen = {w: tuple(index[w]) for w in sorted(index)}
    languages = frozenset(w.language for w in frozen)
    return MultiWordnet(ordered, frozen, languages)


# -- queries ---------------------------------------------------------------

def synsets_of(mw: MultiWordnet, w: WordKey) -> tuple[str, ...]:
    return mw.index.get(w, ())


def _known_synsets(mw: MultiWordnet, w: WordKey) -> tuple[str, ...]:
    ids = mw.index.get(w)
    if ids is None:
        raise ModelError("out-of-vocabulary", f"{w} is not in the wordnet")
    return ids


def is_polysemous(mw: MultiWordnet, w: WordKey) -> bool:
    return len(_known_synsets(mw, w)) >= 2


def is_monosemous(mw: MultiWordnet, w: WordKey) -> bool:
    return len(_known_synsets(mw, w)) == 1


def _same_language(w1: WordKey, w2: WordKey) -> None:
    if w1.language != w2.language:
        raise ModelError("cross-language", f"{w1} and {w2} differ in language; use shared_synsets")


def are_synonyms(mw: MultiWordnet, w1: WordKey, w2: WordKey) -> bool:
    _same_language(w1, w2)
    return not set(synsets_of(mw, w1)).isdisjoint(synsets_of(mw, w2))


def are_absolute_synonyms(mw: MultiWordnet, w1: WordKey, w2: WordKey) -> bool:
    _same_language(w1, w2)
    s1 = synsets_of(mw, w1)
    return bool(s1) and s1 == synsets_of(mw, w2)


def translations_of_sense(mw: MultiWordnet, synset_id: str, target: str) -> tuple[str, ...]:
    """T_F(s): sorted target-language lemmas of a synset."""
    return mw.synset(synset_id).lemmas(target)


def translations_of_word(mw: MultiWordnet, w: WordKey, target: str) -> tuple[str, ...]:
    out: set[str] = set()
    for sid in synsets_of(mw, w):
        out.update(mw.synsets[sid].lemmas(target))
    return tuple(sorted(out))


def shared_synsets(mw: MultiWordnet, e: WordKey, f: WordKey) -> tuple[str, ...]:
    """C(e, f): synsets containing both words of a cross-language pair."""
    if e.language == f.language:
        raise ModelError("same-language", f"{e} and {f} share a language")
    se = synsets_of(mw, e)
    sf = synsets_of(mw, f)
    if len(sf) < len(se):
        se, sf = sf, se
    other = set(sf)
    return tuple(s for s in se if s in other)


__all__ = [
    "POS_TAGS", "ModelError", "WordKey", "MultiSynset", "SenseRef", "MultiWordnet",
    "make_synset", "build", "synsets_of", "is_polysemous", "is_monosemous",
    "are_synonyms", "are_absolute_synonyms", "translations_of_sense",
    "translations_of_word", "shared_synsets", "normalize_lemma", "normalize_pos",
    "check_language",
]
