"""Parsers and serializers for the canonical JSON Lines / TSV formats.

Multi-wordnet, one synset per line::

    {"id": "duty-1", "pos": "n", "gloss": "a government tax",
     "words": [{"lang": "en", "lemma": "duty"}, {"lang": "fr", "lemma": "droit"}]}

Bitext, one aligned source token per line::

    {"sent": "s1", "tok": 0, "lang": "en", "lemma": "duty", "pos": "n",
     "tgt_lemma": "droit", "gold": "duty-1"}

``tgt_lang`` may be given per token to override the run's target language.

Cluster map: ``synset_id<TAB>cluster_label`` per line.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .model import (
    ModelError,
    MultiSynset,
    MultiWordnet,
    WordKey,
    build,
    check_language,
    normalize_lemma,
    normalize_pos,
)


class ParseError(ValueError):
    """Malformed or invalid input record.  ``line`` is 1-based."""

    def __init__(self, code: str, line: int, message: str):
        super().__init__(f"{code}: line {line}: {message}")
        self.code = code
        self.line = line
        self.message = message


def _lines(stream: IO[str] | Iterable[str]) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(stream, 1):
        if lineno == 1 and line.startswith("\ufeff"):
            raise ParseError("bom", 1, "byte-order mark not allowed")
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        yield lineno, line


def _json_object(lineno: int, line: str) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError("malformed-line", lineno, str(exc)) from None
    if not isinstance(obj, dict):
        raise ParseError("malformed-line", lineno, "expected a JSON object")
    return obj


def _field(obj: dict, key: str, lineno: int, kind=str):
    if key not in obj:
        raise ParseError("malformed-line", lineno, f"missing field {key!r}")
    value = obj[key]
    if kind is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    else:
        ok = isinstance(value, kind)
    if not ok:
        raise ParseError("malformed-line", lineno, f"field {key!r} has wrong type")
    return value


# -- multi-wordnet ------------------------------------------------------------

def _synset_record(lineno: int, obj: dict) -> MultiSynset:
    sid = _field(obj, "id", lineno)
    if not sid:
        raise ParseError("malformed-line", lineno, "empty synset id")
    gloss = obj.get("gloss")
    if gloss is not None and not isinstance(gloss, str):
        raise ParseError("malformed-line", lineno, "gloss must be a string")
    words = _field(obj, "words", lineno, list)
    if not words:
        raise ParseError("empty-synset", lineno, f"synset {sid} has no words")
    try:
        pos = normalize_pos(_field(obj, "pos", lineno))
        keys = []
        for item in words:
            if not isinstance(item, dict):
                raise ParseError("malformed-line", lineno, "word entries must be objects")
            wpos = item.get("pos", pos)
            if normalize_pos(wpos) != pos:
                raise ModelError("pos-mismatch", f"word pos {wpos!r} in synset {sid} of pos {pos}")
            keys.append(WordKey(_field(item, "lang", lineno), _field(item, "lemma", lineno), pos))
    except ModelError as exc:
        raise ParseError(exc.code, lineno, exc.message) from None
    if len(set(keys)) != len(keys):
        dup = next(k for k, n in Counter(keys).items() if n > 1)
        raise ParseError("duplicate-word", lineno, f"{dup} listed twice in synset {sid}")
    return MultiSynset(sid, pos, tuple(sorted(keys)), gloss)


def parse_multiwordnet(stream: IO[str] | Iterable[str]) -> MultiWordnet:
    synsets = []
    seen: dict[str, int] = {}
    for lineno, line in _lines(stream):
        s = _synset_record(lineno, _json_object(lineno, line))
        if s.id in seen:
            raise ParseError("duplicate-synset-id", lineno,
                             f"synset id {s.id!r} already defined on line {seen[s.id]}")
        seen[s.id] = lineno
        synsets.append(s)
    return build(synsets)


def synset_to_json(s: MultiSynset) -> str:
    obj = {"id": s.id, "pos": s.pos}
    if s.gloss is not None:
        obj["gloss"] = s.gloss
    obj["words"] = [{"lang": w.language, "lemma": w.lemma} for w in s.words]
    return json.dumps(obj, ensure_ascii=False)


def serialize_multiwordnet(mw: MultiWordnet, sink: IO[str]) -> int:
    """Write canonical JSON Lines (synsets sorted by id).  Returns line count."""
    n = 0
    for sid in sorted(mw.synsets):
        sink.write(synset_to_json(mw.synsets[sid]) + "\n")
        n += 1
    return n


def dumps_multiwordnet(mw: MultiWordnet) -> str:
    return "".join(synset_to_json(mw.synsets[sid]) + "\n" for sid in sorted(mw.synsets))


# -- bitext -------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class AlignedToken:
    sentence_id: str
    token_id: int
    source: WordKey
    target_lemma: str
    gold_synset_id: str | None = None
    target_language: str | None = None

    @property
    def key(self) -> tuple[str, int]:
        return (self.sentence_id, self.token_id)


def token_to_json(t: AlignedToken) -> str:
    obj = {
        "sent": t.sentence_id, "tok": t.token_id,
        "lang": t.source.language, "lemma": t.source.lemma, "pos": t.source.pos,
        "tgt_lemma": t.target_lemma,
    }
    if t.target_language is not None:
        obj["tgt_lang"] = t.target_language
    if t.gold_synset_id is not None:
        obj["gold"] = t.gold_synset_id
    return json.dumps(obj, ensure_ascii=False)


def parse_bitext(stream: IO[str] | Iterable[str]) -> list[AlignedToken]:
    tokens = []
    seen: set[tuple[str, int]] = set()
    for lineno, line in _lines(stream):
        obj = _json_object(lineno, line)
        sent = _field(obj, "sent", lineno)
        tok = _field(obj, "tok", lineno, int)
        if tok < 0:
            raise ParseError("malformed-line", lineno, "token id must be >= 0")
        gold = obj.get("gold")
        if gold is not None and not isinstance(gold, str):
            raise ParseError("malformed-line", lineno, "gold must be a string")
        tgt_lang = obj.get("tgt_lang")
        try:
            src = WordKey(_field(obj, "lang", lineno), _field(obj, "lemma", lineno),
                          _field(obj, "pos", lineno))
            tgt = normalize_lemma(_field(obj, "tgt_lemma", lineno))
            if tgt_lang is not None:
                check_language(tgt_lang)
        except ModelError as exc:
            raise ParseError(exc.code, lineno, exc.message) from None
        if (sent, tok) in seen:
            raise ParseError("duplicate-token", lineno, f"token ({sent}, {tok}) repeated")
        seen.add((sent, tok))
        tokens.append(AlignedToken(sent, tok, src, tgt, gold, tgt_lang))
    return tokens


def write_bitext(tokens: Iterable[AlignedToken], sink: IO[str]) -> int:
    n = 0
    for t in tokens:
        sink.write(token_to_json(t) + "\n")
        n += 1
    return n


# -- cluster map --------------------------------------------------------------

def parse_cluster_map(stream: IO[str] | Iterable[str]) -> dict[str, str]:
    clusters: dict[str, str] = {}
    for lineno, line in _lines(stream):
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError("malformed-line", lineno, "expected synset_id<TAB>label")
        sid, label = parts[0].strip(), parts[1].strip()
        if not sid:
            raise ParseError("malformed-line", lineno, "empty synset id")
        if not label:
            raise ParseError("blank-label", lineno, f"synset {sid} has a blank label")
        if sid in clusters:
            raise ParseError("duplicate-synset-id", lineno, f"synset {sid} mapped twice")
        clusters[sid] = label
    return clusters


# -- statistics -----------------------------------------------------------------

@dataclass
class LanguageStats:
    word_count: int = 0
    monosemous: int = 0
    polysemous: int = 0
    synsets_with_words: int = 0
    single_word_synsets: int = 0

    @property
    def single_word_synset_fraction(self) -> float | None:
        if not self.synsets_with_words:
            return None
        return self.single_word_synsets / self.synsets_with_words

    def as_dict(self) -> dict:
        return {
            "monosemous": self.monosemous,
            "polysemous": self.polysemous,
            "single_word_synset_fraction": self.single_word_synset_fraction,
            "single_word_synsets": self.single_word_synsets,
            "synsets_with_words": self.synsets_with_words,
            "word_count": self.word_count,
        }


@dataclass
class LexiconStats:
    synset_count: int = 0
    languages: dict[str, LanguageStats] = field(default_factory=dict)

    def language(self, code: str) -> LanguageStats:
        return self.languages.get(code, LanguageStats())

    def as_dict(self, only: str | None = None) -> dict:
        codes = [only] if only is not None else sorted(self.languages)
        return {
            "languages": {c: self.language(c).as_dict() for c in codes},
            "synset_count": self.synset_count,
        }


def lexicon_stats(mw: MultiWordnet) -> LexiconStats:
    stats = LexiconStats(synset_count=len(mw.synsets))
    for w, ids in mw.index.items():
        ls = stats.languages.setdefault(w.language, LanguageStats())
        ls.word_count += 1
        if len(ids) == 1:
            ls.monosemous += 1
        else:
            ls.polysemous += 1
    for s in mw.synsets.values():
        counts = Counter(w.language for w in s.words)
        for lang, n in counts.items():
            ls = stats.languages[lang]
            ls.synsets_with_words += 1
            if n == 1:
                ls.single_word_synsets += 1
    stats.languages = dict(sorted(stats.languages.items()))
    return stats
