"""Translation-driven sense annotation of word-aligned bitexts.

A source token aligned to target lemma f is tagged with synset s exactly
when s is the only synset containing both the source word and f.  Every
other outcome is an explicit abstention, so coverage accounting is exact.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import IO, Iterable, Mapping, Sequence

from .assumptions import Direction
from .ingest import AlignedToken, ParseError, _field, _json_object, _lines
from .model import MultiWordnet, WordKey, check_language, normalize_lemma

TAGGED = "tagged"
ABSTAIN = "abstain"
ERROR = "error"

NO_SHARED = "no-shared-synset"
MULTIPLE = "multiple-shared-synsets"
SOURCE_OOV = "source-oov"


class ClusterMapError(KeyError):
    def __init__(self, synset_id: str):
        super().__init__(synset_id)
        self.synset_id = synset_id

    def __str__(self) -> str:
        return f"synset {self.synset_id} missing from cluster map"


@dataclass(frozen=True, slots=True)
class Decision:
    kind: str  # TAGGED | ABSTAIN | ERROR
    synset: str | None = None
    cluster: str | None = None
    reason: str | None = None

    @property
    def tagged(self) -> bool:
        return self.kind == TAGGED


@dataclass(frozen=True, slots=True)
class AnnotationResult:
    token: AlignedToken
    decision: Decision

    def as_json(self) -> str:
        obj = {"sent": self.token.sentence_id, "tok": self.token.token_id,
               "decision": self.decision.kind}
        if self.decision.synset is not None:
            obj["synset"] = self.decision.synset
        if self.decision.cluster is not None:
            obj["cluster"] = self.decision.cluster
        if self.decision.reason is not None:
            obj["reason"] = self.decision.reason
        return json.dumps(obj, ensure_ascii=False)


def _target_word(src: WordKey, target: str, tgt_lemma: str) -> WordKey:
    # alignments carry no target pos; multi-synsets are pos-homogeneous anyway
    return WordKey.trusted(target, normalize_lemma(tgt_lemma), src.pos)


def _shared(mw: MultiWordnet, src: WordKey, tgt: WordKey) -> tuple[str, ...] | None:
    senses = mw.index.get(src)
    if senses is None:
        return None
    return tuple(s for s in senses if tgt in mw.synsets[s].words)


def annotate_token(mw: MultiWordnet, d: Direction, src: WordKey, tgt_lemma: str,
                   target: str | None = None) -> Decision:
    """Sense-level decision for one aligned pair.  ``target`` overrides d.target."""
    shared = _shared(mw, src, _target_word(src, target or d.target, tgt_lemma))
    if shared is None:
        return Decision(ABSTAIN, reason=SOURCE_OOV)
    if not shared:
        return Decision(ABSTAIN, reason=NO_SHARED)
    if len(shared) > 1:
        return Decision(ABSTAIN, reason=MULTIPLE)
    return Decision(TAGGED, synset=shared[0])


def annotate_homonym_level(mw: MultiWordnet, d: Direction, src: WordKey, tgt_lemma: str,
                           clusters: Mapping[str, str], target: str | None = None) -> Decision:
    """Like annotate_token, but succeeds whenever all shared synsets share a cluster."""
    shared = _shared(mw, src, _target_word(src, target or d.target, tgt_lemma))
    if shared is None:
        return Decision(ABSTAIN, reason=SOURCE_OOV)
    if not shared:
        return Decision(ABSTAIN, reason=NO_SHARED)
    labels = set()
    for sid in shared:
        if sid not in clusters:
            raise ClusterMapError(sid)
        labels.add(clusters[sid])
    if len(labels) > 1:
        return Decision(ABSTAIN, reason=MULTIPLE)
    return Decision(TAGGED, synset=shared[0] if len(shared) == 1 else None, cluster=labels.pop())


def annotate_one(mw: MultiWordnet, d: Direction, token: AlignedToken,
                 clusters: Mapping[str, str] | None = None) -> AnnotationResult:
    if token.source.language != d.source:
        return AnnotationResult(token, Decision(
            ERROR, reason=f"language-mismatch: token is {token.source.language}, run is {d.source}"))
    target = token.target_language or d.target
    if target == d.source:
        return AnnotationResult(token, Decision(ERROR, reason="language-mismatch: target equals source"))
    if clusters is None:
        return AnnotationResult(token, annotate_token(mw, d, token.source, token.target_lemma, target))
    try:
        decision = annotate_homonym_level(mw, d, token.source, token.target_lemma, clusters, target)
    except ClusterMapError as exc:
        decision = Decision(ERROR, reason=f"cluster-missing: {exc.synset_id}")
    return AnnotationResult(token, decision)


def summarize(results: Iterable[AnnotationResult]) -> dict[str, int]:
    counts = Counter()
    for r in results:
        counts[r.decision.kind] += 1
        if r.decision.kind == ABSTAIN:
            counts[f"abstain:{r.decision.reason}"] += 1
    out = {TAGGED: 0, ABSTAIN: 0, ERROR: 0}
    out.update(counts)
    out["total"] = out[TAGGED] + out[ABSTAIN] + out[ERROR]
    return dict(sorted(out.items()))


def annotate_bitext(mw: MultiWordnet, d: Direction, tokens: Iterable[AlignedToken],
                    sink: IO[str] | None = None,
                    clusters: Mapping[str, str] | None = None) -> tuple[list[AnnotationResult], dict[str, int]]:
    """Annotate tokens in input order; each result is written to ``sink`` as it is made."""
    results = []
    for token in tokens:
        r = annotate_one(mw, d, token, clusters)
        if sink is not None:
            sink.write(r.as_json() + "\n")
        results.append(r)
    return results, summarize(results)


def parse_annotations(stream: IO[str] | Iterable[str],
                      tokens: Sequence[AlignedToken]) -> list[AnnotationResult]:
    """Re-attach annotation records to their bitext tokens.

    Tokens without a record count as abstentions; records naming unknown
    tokens raise ``ParseError``.
    """
    by_key = {t.key: t for t in tokens}
    decisions: dict[tuple[str, int], Decision] = {}
    for lineno, line in _lines(stream):
        obj = _json_object(lineno, line)
        key = (_field(obj, "sent", lineno), _field(obj, "tok", lineno, int))
        if key not in by_key:
            raise ParseError("unknown-token", lineno, f"no bitext token {key}")
        if key in decisions:
            raise ParseError("duplicate-token", lineno, f"token {key} annotated twice")
        kind = _field(obj, "decision", lineno)
        if kind not in (TAGGED, ABSTAIN, ERROR):
            raise ParseError("malformed-line", lineno, f"unknown decision {kind!r}")
        if kind == TAGGED and obj.get("synset") is None and obj.get("cluster") is None:
            raise ParseError("malformed-line", lineno, "tagged record without synset or cluster")
        decisions[key] = Decision(kind, obj.get("synset"), obj.get("cluster"), obj.get("reason"))
    missing = Decision(ABSTAIN, reason="not-annotated")
    return [AnnotationResult(t, decisions.get(t.key, missing)) for t in tokens]


# -- evaluation --------------------------------------------------------------------

@dataclass
class Slice:
    population: int = 0
    annotated: int = 0
    correct: int = 0

    @property
    def coverage(self) -> float | None:
        return self.annotated / self.population if self.population else None

    @property
    def precision(self) -> float | None:
        return self.correct / self.annotated if self.annotated else None

    def as_dict(self) -> dict:
        def num(x):
            return "undefined" if x is None else x
        return {"annotated": self.annotated, "correct": self.correct,
                "coverage": num(self.coverage), "population": self.population,
                "precision": num(self.precision)}


@dataclass
class EvaluationReport:
    all: Slice = field(default_factory=Slice)
    polysemous: Slice = field(default_factory=Slice)
    monosemous: Slice = field(default_factory=Slice)
    out_of_vocabulary: Slice = field(default_factory=Slice)
    excluded_without_gold: int = 0

    def as_dict(self) -> dict:
        return {"all": self.all.as_dict(), "excluded_without_gold": self.excluded_without_gold,
                "monosemous": self.monosemous.as_dict(),
                "out_of_vocabulary": self.out_of_vocabulary.as_dict(),
                "polysemous": self.polysemous.as_dict()}


def evaluate(results: Iterable[AnnotationResult], mw: MultiWordnet,
             clusters: Mapping[str, str] | None = None) -> EvaluationReport:
    """Score tagged decisions against gold synsets.

    With ``clusters``, a decision is correct when its cluster label equals the
    gold synset's label (homonym-level scoring).
    """
    report = EvaluationReport()
    for r in results:
        gold = r.token.gold_synset_id
        if gold is None:
            report.excluded_without_gold += 1
            continue
        n = len(mw.index.get(r.token.source, ()))
        part = report.polysemous if n >= 2 else report.monosemous if n == 1 else report.out_of_vocabulary
        d = r.decision
        if clusters is None:
            annotated = d.tagged and d.synset is not None
            correct = annotated and d.synset == gold
        else:
            label = d.cluster if d.cluster is not None else clusters.get(d.synset)
            annotated = d.tagged and label is not None
            correct = annotated and clusters.get(gold) == label
        for s in (report.all, part):
            s.population += 1
            s.annotated += annotated
            s.correct += correct
    return report


# -- weak assumption audit ---------------------------------------------------------

@dataclass
class AuditReport:
    instances: int = 0
    wsa_satisfied: int = 0
    wsa_violated: int = 0
    wpa_satisfied: int = 0
    wpa_violated: int = 0
    skipped_oov_source: int = 0
    violations: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"instances": self.instances, "skipped_oov_source": self.skipped_oov_source,
                "violations": self.violations, "wpa_satisfied": self.wpa_satisfied,
                "wpa_violated": self.wpa_violated, "wsa_satisfied": self.wsa_satisfied,
                "wsa_violated": self.wsa_violated}


def weak_assumption_audit(mw: MultiWordnet, d: Direction,
                          tokens: Iterable[AlignedToken]) -> AuditReport:
    """Check the weak synonymy/polysemy assumptions on every corpus instance.

    An instance is a source word e together with two distinct target lemmas
    (same target language) that e is aligned to somewhere in the corpus.
    """
    aligned: dict[WordKey, dict[str, set[str]]] = {}
    for t in tokens:
        if t.source.language != d.source:
            continue
        target = check_language(t.target_language or d.target)
        aligned.setdefault(t.source, {}).setdefault(target, set()).add(t.target_lemma)

    report = AuditReport()
    for e in sorted(aligned):
        for target, lemmas in sorted(aligned[e].items()):
            pairs = list(combinations(sorted(lemmas), 2))
            if not pairs:
                continue
            if e not in mw.index:
                report.skipped_oov_source += len(pairs)
                continue
            polysemous = len(mw.index[e]) >= 2
            for f1, f2 in pairs:
                k1 = WordKey.trusted(target, f1, e.pos)
                k2 = WordKey.trusted(target, f2, e.pos)
                synonyms = not set(mw.index.get(k1, ())).isdisjoint(mw.index.get(k2, ()))
                report.instances += 1
                report.wsa_satisfied += synonyms
                report.wsa_violated += not synonyms
                report.wpa_satisfied += polysemous
                report.wpa_violated += not polysemous
                if not (synonyms and polysemous):
                    report.violations.append({
                        "source": str(e), "targets": [str(k1), str(k2)],
                        "wsa": synonyms, "wpa": polysemous})
    return report


__all__ = [
    "Decision", "AnnotationResult", "ClusterMapError", "annotate_token",
    "annotate_homonym_level", "annotate_one", "annotate_bitext", "summarize",
    "parse_annotations", "Slice", "EvaluationReport", "evaluate", "AuditReport",
    "weak_assumption_audit",
]
