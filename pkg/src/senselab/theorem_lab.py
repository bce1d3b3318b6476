"""Random multi-wordnets and exhaustive checking of the sense/translation theorems.

Every implication between the assumptions holds on any structure that
satisfies the data-model invariants, so on instances built through
:func:`senselab.model.build` :func:`verify` must come back empty.  A
non-empty result means either a bug in :mod:`senselab.assumptions` or a
structure that bypassed the builder (reported as ``STRUCT``).
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field, replace
from importlib import resources
from itertools import combinations, permutations
from typing import Mapping, Sequence

from . import assumptions as A
from .assumptions import Direction
from .ingest import AlignedToken
from .model import MultiSynset, MultiWordnet, WordKey, build, check_language
from .rng import SplitMix64

THEOREMS = ("T1", "T2", "O1", "O2", "O3", "O4", "O5", "O6", "BIDIR", "S2W", "MONO", "STRUCT")


# -- generation ----------------------------------------------------------------

@dataclass(frozen=True)
class WordCountSpec:
    min: int = 0
    max: int = 3
    zero_probability: float = 0.2

    def __post_init__(self):
        if not (0 <= self.min <= self.max):
            raise ValueError(f"need 0 <= min <= max, got {self.min}, {self.max}")
        if not 0.0 <= self.zero_probability <= 1.0:
            raise ValueError(f"zero_probability {self.zero_probability} outside [0, 1]")

    @property
    def can_produce(self) -> bool:
        return self.max >= 1 and self.zero_probability < 1.0


@dataclass(frozen=True)
class GenParams:
    seed: int
    synset_count: int
    languages: tuple[str, ...] = ("en", "fr", "it")
    lemma_pool_size: Mapping[str, int] | int = 60
    words: Mapping[str, WordCountSpec] | WordCountSpec = WordCountSpec()
    reuse_bias: float = 0.5
    pos: str = "n"

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.synset_count < 0:
            raise ValueError("synset_count must be >= 0")
        if len(set(self.languages)) < 2 or len(set(self.languages)) != len(self.languages):
            raise ValueError("need at least two distinct languages")
        for lang in self.languages:
            check_language(lang)
            if self.pool(lang) < 1:
                raise ValueError(f"lemma pool for {lang} must be >= 1")
        if not 0.0 <= self.reuse_bias <= 1.0:
            raise ValueError("reuse_bias outside [0, 1]")
        if self.synset_count and not any(self.spec(l).can_produce for l in self.languages):
            raise ValueError("impossible constraints: no language can contribute a word")

    def pool(self, lang: str) -> int:
        p = self.lemma_pool_size
        return p if isinstance(p, int) else p[lang]

    def spec(self, lang: str) -> WordCountSpec:
        w = self.words
        return w if isinstance(w, WordCountSpec) else w[lang]


class _LemmaPool:
    __slots__ = ("keys", "unused", "used", "used_set")

    def __init__(self, lang: str, size: int, pos: str):
        self.keys = [WordKey.trusted(lang, f"{lang}{i}", pos) for i in range(size)]
        self.unused = list(range(size))
        self.used: list[int] = []
        self.used_set: set[int] = set()

    def _reuse(self, rng: SplitMix64, taken: set[int]) -> int | None:
        if len(self.used) <= len(taken) and self.used_set <= taken:
            return None
        while True:
            i = self.used[rng.below(len(self.used))]
            if i not in taken:
                return i

    def _fresh(self, rng: SplitMix64) -> int | None:
        if not self.unused:
            return None
        j = rng.below(len(self.unused))
        i = self.unused[j]
        self.unused[j] = self.unused[-1]
        self.unused.pop()
        self.used.append(i)
        self.used_set.add(i)
        return i

    def draw(self, rng: SplitMix64, reuse_bias: float, taken: set[int]) -> int | None:
        if rng.random() < reuse_bias:
            i = self._reuse(rng, taken)
            return i if i is not None else self._fresh(rng)
        i = self._fresh(rng)
        return i if i is not None else self._reuse(rng, taken)


def generate(params: GenParams) -> MultiWordnet:
    """Deterministic random multi-wordnet; see README for the algorithm."""
    rng = SplitMix64(params.seed)
    langs = params.languages
    pools = {l: _LemmaPool(l, params.pool(l), params.pos) for l in langs}
    specs = {l: params.spec(l) for l in langs}
    width = len(str(max(params.synset_count - 1, 0)))
    synsets = []
    for n in range(params.synset_count):
        while True:
            words = []
            for lang in langs:
                sp = specs[lang]
                if rng.random() < sp.zero_probability:
                    continue
                k = sp.min + rng.below(sp.max - sp.min + 1)
                pool = pools[lang]
                taken: set[int] = set()
                for _ in range(k):
                    i = pool.draw(rng, params.reuse_bias, taken)
                    if i is None:
                        break
                    taken.add(i)
                words.extend(pool.keys[i] for i in taken)
            if words:
                break
        synsets.append(MultiSynset(f"s{n:0{width}d}", params.pos, tuple(sorted(words))))
    return build(synsets)


def synthetic_bitext(mw: MultiWordnet, d: Direction, n_tokens: int, seed: int,
                     sentence_length: int = 10) -> list[AlignedToken]:
    """Bitext consistent with ``mw``: gold synset first, then a source word and
    an aligned target lemma both drawn from that synset."""
    rng = SplitMix64(seed)
    candidates = []
    for sid, s in mw.synsets.items():
        src = [w for w in s.words if w.language == d.source]
        tgt = s.lemmas(d.target)
        if src and tgt:
            candidates.append((sid, src, tgt))
    if not candidates and n_tokens:
        raise ValueError(f"no synset holds both {d.source} and {d.target} words")
    tokens = []
    for k in range(n_tokens):
        sid, src, tgt = candidates[rng.below(len(candidates))]
        e = src[rng.below(len(src))]
        f = tgt[rng.below(len(tgt))]
        tokens.append(AlignedToken(f"g{k // sentence_length}", k % sentence_length, e, f, sid))
    return tokens


# -- verification ------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    theorem: str
    witness: str
    direction: str
    details: str

    def as_dict(self) -> dict:
        return asdict(self)


def structural_violations(mw: MultiWordnet) -> list[Violation]:
    """Index/synset consistency: the data-model invariants the theorems rest on."""
    out = []
    rebuilt: dict[WordKey, list[str]] = {}
    for sid, s in mw.synsets.items():
        if s.id != sid:
            out.append(Violation("STRUCT", sid, "-", f"keyed as {sid} but has id {s.id}"))
        if len(set(s.words)) != len(s.words):
            out.append(Violation("STRUCT", sid, "-", "duplicate word in synset"))
        for w in s.words:
            rebuilt.setdefault(w, []).append(sid)
    for w in sorted(set(rebuilt) | set(mw.index)):
        have = tuple(mw.index.get(w, ()))
        want = tuple(sorted(rebuilt.get(w, ())))
        if have != want:
            out.append(Violation("STRUCT", str(w), "-",
                                 f"index lists {list(have)}, synsets contain it in {list(want)}"))
    return out


class _Checker:
    """Caches per-direction profiles so each ordered pair is profiled once."""

    def __init__(self, mw: MultiWordnet):
        self.mw = mw
        self._profiles: dict[Direction, list[A.AssumptionProfile]] = {}

    def profiles(self, d: Direction) -> list[A.AssumptionProfile]:
        if d not in self._profiles:
            words = sorted(w for w in self.mw.index if w.language == d.source)
            self._profiles[d] = [A.profile(self.mw, d, w) for w in words]
        return self._profiles[d]

    def verify(self, d: Direction) -> list[Violation]:
        mw = self.mw
        E, F = d.source, d.target
        ds = str(d)
        out: list[Violation] = []

        def fail(theorem, witness, details):
            out.append(Violation(theorem, str(witness), ds, details))

        ps = self.profiles(d)
        owpc_f = A.owpc(mw, F)
        for p in ps:
            e = p.word
            if p.OSPT != p.PSA:
                fail("T1", e, f"OSPT={p.OSPT} PSA={p.PSA}")
            if p.OTPS != p.SPA:
                fail("T2", e, f"OTPS={p.OTPS} SPA={p.SPA}")
            if p.GSA != (p.SSA and p.PSA):
                fail("O1", e, f"GSA={p.GSA} SSA={p.SSA} PSA={p.PSA}")
            if p.GPA != (p.SPA and p.PSA):
                fail("O2", e, f"GPA={p.GPA} SPA={p.SPA} PSA={p.PSA}")
            if p.OCPW and not p.GSA:
                fail("O3", e, "OCPW holds but GSA fails")
            if p.GSA and p.NoLG and not p.OCPW:
                fail("O4", e, "GSA and NoLG hold but OCPW fails")
            if owpc_f and not p.OTPS:
                fail("O5", e, f"OWPC({F}) holds but OTPS fails")
            if (p.GPA and not p.OTPS) or (p.GSA and not p.SSA):
                fail("MONO", e, f"GPA={p.GPA} OTPS={p.OTPS} GSA={p.GSA} SSA={p.SSA}")

            lemmas = sorted({f for sid in mw.index[e] for f in mw.synsets[sid].lemmas(F)})
            if p.translation_count >= 2:
                if p.SSA:
                    for f1, f2 in combinations(lemmas, 2):
                        k1, k2 = WordKey.trusted(F, f1, e.pos), WordKey.trusted(F, f2, e.pos)
                        if set(mw.index.get(k1, ())).isdisjoint(mw.index.get(k2, ())):
                            fail("S2W", e, f"SSA holds but {f1} and {f2} are not synonyms")
                if p.SPA and len(mw.index[e]) < 2:
                    fail("S2W", e, "SPA holds but the word is not polysemous")
            for f in lemmas:
                fk = WordKey.trusted(F, f, e.pos)
                forward = sum(1 for sid in mw.index[e] if fk in mw.synsets[sid].words)
                backward = sum(1 for sid in mw.index.get(fk, ()) if e in mw.synsets[sid].words)
                if forward != backward:
                    fail("BIDIR", e, f"|C(e,{f})| = {forward} but |C({f},e)| = {backward}")

        all_otps = all(p.OTPS for p in ps)
        if all_otps and A.gap_covered(mw, F, E) and not owpc_f:
            fail("O6", A.owpc_violations(mw, F)[0],
                 f"OTPS holds for all {E} words and {F} is gap-covered, but OWPC({F}) fails")

        all_fwd = all(p.OSPT for p in ps)
        all_bwd = all(p.OSPT for p in self.profiles(d.reversed()))
        if all_fwd != all_bwd:
            fail("BIDIR", f"{E}/{F}", f"OSPT everywhere: {E}->{F} {all_fwd}, {F}->{E} {all_bwd}")
        return out


def verify(mw: MultiWordnet, d: Direction) -> list[Violation]:
    """All theorem/observation violations for one ordered language pair."""
    return structural_violations(mw) + _Checker(mw).verify(d)


def verify_all(mw: MultiWordnet, languages: Sequence[str] | None = None) -> dict[Direction, list[Violation]]:
    langs = sorted(languages or mw.languages)
    checker = _Checker(mw)
    structural = structural_violations(mw)
    return {Direction(a, b): structural + checker.verify(Direction(a, b))
            for a, b in permutations(langs, 2)}


# -- fuzzing -------------------------------------------------------------------------

@dataclass(frozen=True)
class FuzzTemplate:
    name: str = "default"
    languages: tuple[str, ...] = ("en", "fr", "it")
    min_synset_count: int = 1
    max_synset_count: int = 200
    lemma_pool_size: int = 60
    words: WordCountSpec = WordCountSpec(0, 3, 0.2)
    reuse_bias: float = 0.5

    def params(self, seed: int) -> GenParams:
        """Per-case parameters; the synset count is drawn from the case seed."""
        seed &= (1 << 64) - 1
        span = self.max_synset_count - self.min_synset_count + 1
        count = self.min_synset_count + SplitMix64(seed ^ 0x5EED5EED5EED5EED).below(span)
        return GenParams(seed, count, tuple(self.languages), self.lemma_pool_size,
                         self.words, self.reuse_bias)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["languages"] = list(self.languages)
        return d

    @classmethod
    def from_dict(cls, obj: dict) -> "FuzzTemplate":
        obj = dict(obj)
        if "words" in obj:
            obj["words"] = WordCountSpec(**obj["words"])
        if "languages" in obj:
            obj["languages"] = tuple(obj["languages"])
        t = cls(**obj)
        if not 0 <= t.min_synset_count <= t.max_synset_count:
            raise ValueError("need 0 <= min_synset_count <= max_synset_count")
        return t


def default_template() -> FuzzTemplate:
    text = resources.files("senselab").joinpath("templates/default.json").read_text("utf-8")
    return FuzzTemplate.from_dict(json.loads(text))


def corrupt(mw: MultiWordnet) -> MultiWordnet:
    """Negative control: copy one sense into a second synset without touching the index."""
    synsets = dict(mw.synsets)
    for sid, s in synsets.items():
        for other_id, other in synsets.items():
            if other_id == sid:
                continue
            w = next((w for w in s.words if w not in other.words), None)
            if w is not None:
                synsets[other_id] = replace(other, words=tuple(sorted(other.words + (w,))))
                return MultiWordnet(synsets, mw.index, mw.languages)
    return mw


@dataclass
class FuzzReport:
    template: FuzzTemplate
    cases: int
    base_seed: int
    violations: Counter = field(default_factory=Counter)
    first_witness: dict | None = None
    witness_instance: MultiWordnet | None = None
    # direction -> population -> counter of flags (plus "words")
    satisfaction: dict[str, dict[str, Counter]] = field(default_factory=dict)

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())

    def frequencies(self) -> dict:
        from .reports import pct
        out = {}
        for ds in sorted(self.satisfaction):
            out[ds] = {}
            for population, c in sorted(self.satisfaction[ds].items()):
                n = c["words"]
                out[ds][population] = {"words": n, **{
                    flag: (pct(c[flag], n) if n else None) for flag in A.FLAGS}}
        return out

    def as_dict(self) -> dict:
        return {
            "base_seed": self.base_seed,
            "cases": self.cases,
            "first_witness": self.first_witness,
            "satisfaction": self.frequencies(),
            "template": self.template.as_dict(),
            "total_violations": self.total_violations,
            "violations": {t: self.violations.get(t, 0) for t in THEOREMS},
        }


def fuzz(template: FuzzTemplate, n_cases: int, base_seed: int,
         corrupt_instances: bool = False) -> FuzzReport:
    if n_cases < 1:
        raise ValueError("n_cases must be >= 1")
    report = FuzzReport(template, n_cases, base_seed)
    pairs = [Direction(a, b) for a, b in permutations(template.languages, 2)]
    for ds in map(str, pairs):
        report.satisfaction[ds] = {"all_words": Counter(), "eligible_words": Counter()}
    for i in range(n_cases):
        seed = (base_seed + i) & ((1 << 64) - 1)
        mw = generate(template.params(seed))
        if corrupt_instances:
            mw = corrupt(mw)
        checker = _Checker(mw)
        structural = structural_violations(mw)
        for d in pairs:
            found = structural + checker.verify(d)
            for v in found:
                report.violations[v.theorem] += 1
            if found and report.first_witness is None:
                report.first_witness = {"seed": seed, **found[0].as_dict()}
                report.witness_instance = mw
            sat = report.satisfaction[str(d)]
            for p in checker.profiles(d):
                pops = ("all_words", "eligible_words") if p.eligible else ("all_words",)
                for pop in pops:
                    c = sat[pop]
                    c["words"] += 1
                    for flag in A.FLAGS:
                        c[flag] += getattr(p, flag)
    return report


__all__ = [
    "THEOREMS", "WordCountSpec", "GenParams", "generate", "synthetic_bitext",
    "Violation", "structural_violations", "verify", "verify_all", "FuzzTemplate",
    "default_template", "corrupt", "FuzzReport", "fuzz",
]
