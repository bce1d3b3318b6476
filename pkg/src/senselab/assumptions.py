"""Per-word truth values of the translation/sense assumptions.

Notation for a source word e and target language F:

* S(e)    synsets containing e
* T(s)    F-lemmas of synset s  (empty = lexical gap)
* T(e)    union of T(s) over S(e)
* C(e,f)  synsets of S(e) that contain the F-word f

Each predicate below is written directly from its set definition and
does not reuse the others; the equivalences between them (OSPT = PSA,
OTPS = SPA, ...) are checked in :mod:`senselab.theorem_lab`, so sharing
code here would make those checks vacuous.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .model import ModelError, MultiWordnet, WordKey, check_language, shared_synsets

FLAGS = ("OSPT", "PSA", "OTPS", "SPA", "SSA", "GSA", "GPA", "NoLG", "OCPW")


@dataclass(frozen=True, slots=True)
class Direction:
    source: str
    target: str

    def __post_init__(self):
        check_language(self.source)
        check_language(self.target)
        if self.source == self.target:
            raise ModelError("same-language", f"direction {self.source}->{self.target}")

    def reversed(self) -> "Direction":
        return Direction(self.target, self.source)

    def __str__(self) -> str:
        return f"{self.source}->{self.target}"


@dataclass(frozen=True, slots=True)
class AssumptionProfile:
    word: WordKey
    direction: Direction
    sense_count: int
    translation_count: int
    eligible: bool
    OSPT: bool
    PSA: bool
    OTPS: bool
    SPA: bool
    SSA: bool
    GSA: bool
    GPA: bool
    NoLG: bool
    OCPW: bool
    parallel_polysemy_partners: tuple[str, ...]

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in FLAGS}

    def as_dict(self) -> dict:
        return {
            "direction": {"source": self.direction.source, "target": self.direction.target},
            "eligible": self.eligible,
            "flags": self.flags(),
            "parallel_polysemy_partners": list(self.parallel_polysemy_partners),
            "sense_count": self.sense_count,
            "translation_count": self.translation_count,
            "word": {"language": self.word.language, "lemma": self.word.lemma,
                     "pos": self.word.pos},
        }


# -- the definitions -----------------------------------------------------------
# `senses` is S(e) as a tuple of ids, `trans` maps each id to the frozenset T(s),
# `shared` maps each f in T(e) to C(e,f).

def one_sense_per_translation(senses, trans) -> bool:
    return all(trans[a].isdisjoint(trans[b]) for a, b in combinations(senses, 2))


def pair_synonymy(shared) -> bool:
    return all(len(c) == 1 for c in shared.values())


def one_translation_per_sense(senses, trans) -> bool:
    return all(len(trans[s]) <= 1 for s in senses)


def strong_polysemy(shared) -> bool:
    return all(shared[f1].isdisjoint(shared[f2]) for f1, f2 in combinations(sorted(shared), 2))


def strong_synonymy(shared) -> bool:
    return all(len(shared[f1] | shared[f2]) == 1 for f1, f2 in combinations(sorted(shared), 2))


def general_synonymy(senses, trans) -> bool:
    return sum(1 for s in senses if trans[s]) <= 1


def general_polysemy(shared) -> bool:
    # f -> C(e,f) must be a function into single synsets, and injective
    images = []
    for c in shared.values():
        if len(c) != 1:
            return False
        images.append(next(iter(c)))
    return len(set(images)) == len(images)


def no_lexical_gaps(senses, trans) -> bool:
    return all(trans[s] for s in senses)


def one_concept_per_word(senses) -> bool:
    return len(senses) == 1


# -- per-word evaluation ---------------------------------------------------------

def _source_senses(mw: MultiWordnet, d: Direction, e: WordKey) -> tuple[str, ...]:
    if e.language != d.source:
        raise ModelError("language-mismatch", f"{e} is not a {d.source} word")
    senses = mw.index.get(e)
    if senses is None:
        raise ModelError("out-of-vocabulary", f"{e} is not in the wordnet")
    return senses


def translation_sets(mw: MultiWordnet, senses, target: str) -> dict[str, frozenset[str]]:
    return {sid: frozenset(mw.synsets[sid].lemmas(target)) for sid in senses}


def shared_map(mw: MultiWordnet, e: WordKey, target: str, lemmas) -> dict[str, frozenset[str]]:
    """f -> C(e,f) for each target lemma, looked up through f's own index entry."""
    return {f: frozenset(shared_synsets(mw, e, WordKey.trusted(target, f, e.pos)))
            for f in lemmas}


def profile(mw: MultiWordnet, d: Direction, e: WordKey) -> AssumptionProfile:
    senses = _source_senses(mw, d, e)
    trans = translation_sets(mw, senses, d.target)
    all_trans = frozenset().union(*trans.values())
    shared = shared_map(mw, e, d.target, all_trans)
    return AssumptionProfile(
        word=e,
        direction=d,
        sense_count=len(senses),
        translation_count=len(all_trans),
        eligible=len(senses) >= 2 and bool(all_trans),
        OSPT=one_sense_per_translation(senses, trans),
        PSA=pair_synonymy(shared),
        OTPS=one_translation_per_sense(senses, trans),
        SPA=strong_polysemy(shared),
        SSA=strong_synonymy(shared),
        GSA=general_synonymy(senses, trans),
        GPA=general_polysemy(shared),
        NoLG=no_lexical_gaps(senses, trans),
        OCPW=one_concept_per_word(senses),
        parallel_polysemy_partners=tuple(sorted(f for f, c in shared.items() if len(c) >= 2)),
    )


def parallel_polysemy(mw: MultiWordnet, d: Direction, e: WordKey, f_lemma: str) -> bool:
    _source_senses(mw, d, e)
    return len(shared_synsets(mw, e, WordKey(d.target, f_lemma, e.pos))) >= 2


def is_eligible(mw: MultiWordnet, d: Direction, e: WordKey) -> bool:
    senses = _source_senses(mw, d, e)
    return len(senses) >= 2 and any(mw.synsets[s].lemmas(d.target) for s in senses)


def profiles(mw: MultiWordnet, d: Direction, eligible_only: bool = False) -> list[AssumptionProfile]:
    """Profiles of every source-language word, sorted by (lemma, pos)."""
    words = sorted((w for w in mw.index if w.language == d.source),
                   key=lambda w: (w.lemma, w.pos))
    out = [profile(mw, d, w) for w in words]
    if eligible_only:
        out = [p for p in out if p.eligible]
    return out


# -- lexicon-level predicates ------------------------------------------------------

def owpc_violations(mw: MultiWordnet, language: str) -> tuple[str, ...]:
    return tuple(sid for sid, s in mw.synsets.items() if len(s.lemmas(language)) >= 2)


def owpc(mw: MultiWordnet, language: str) -> bool:
    return not owpc_violations(mw, language)


def gap_covered(mw: MultiWordnet, covered: str, by: str) -> bool:
    """Every synset holding a `covered`-language word also holds a `by`-language word."""
    for s in mw.synsets.values():
        langs = {w.language for w in s.words}
        if covered in langs and by not in langs:
            return False
    return True
