"""Lexicon-level assumption statistics: per-flag percentages (table 1) and the
OSPT/OTPS/NoLG combination breakdown (table 2)."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import IO, Sequence

from .assumptions import FLAGS, AssumptionProfile, Direction, profiles
from .model import MultiWordnet

TABLE1_ROWS = (
    ("OSPT/PSA", "OSPT"),
    ("OTPS/SPA", "OTPS"),
    ("GPA", "GPA"),
    ("SSA", "SSA"),
    ("GSA", "GSA"),
    ("NoLG", "NoLG"),
)
# (OSPT, OTPS, NoLG) triples, all-false first, all-true (bijection) last
TABLE2_CELLS = tuple(product((False, True), repeat=3))


class EmptyPopulationError(ValueError):
    def __init__(self, d: Direction):
        super().__init__(f"no eligible {d.source} words with {d.target} translations")
        self.direction = d


def tenths(count: int, total: int) -> int:
    """100*count/total in tenths of a percent, rounded half to even."""
    return round(Fraction(1000 * count, total))


def fmt_tenths(t: int) -> str:
    return f"{t // 10}.{t % 10}"


def pct(count: int, total: int) -> float:
    return tenths(count, total) / 10


def apportion(counts: Sequence[int], total: int) -> list[int]:
    """Percentages in tenths that sum to exactly 1000.

    Starts from half-even rounding and moves the cells nearest their rounding
    boundary by one tenth until the total is right, so no cell is off by
    more than 0.1 from its exact value.
    """
    exact = [Fraction(1000 * c, total) for c in counts]
    out = [round(x) for x in exact]
    deficit = 1000 - sum(out)
    step = 1 if deficit > 0 else -1
    # how far each cell would move away from its exact value if adjusted
    order = sorted(range(len(out)), key=lambda i: (step * (out[i] - exact[i]), i))
    for i in order[:abs(deficit)]:
        out[i] += step
    return out


@dataclass(frozen=True)
class Table1Report:
    direction: Direction
    eligible_word_count: int
    counts: dict[str, int]  # row label -> number of eligible words satisfying it

    def percentage(self, label: str) -> float:
        return pct(self.counts[label], self.eligible_word_count)

    def as_dict(self) -> dict:
        return {
            "direction": {"source": self.direction.source, "target": self.direction.target},
            "eligible_word_count": self.eligible_word_count,
            "percentages": {label: self.percentage(label) for label in sorted(self.counts)},
        }


def _cell_label(cell: tuple[bool, bool, bool]) -> str:
    return ",".join(f"{name}={'yes' if v else 'no'}" for name, v in zip(("OSPT", "OTPS", "NoLG"), cell))


@dataclass(frozen=True)
class Table2Report:
    direction: Direction
    eligible_word_count: int
    counts: dict[tuple[bool, bool, bool], int]

    def tenths(self) -> dict[tuple[bool, bool, bool], int]:
        values = apportion([self.counts[c] for c in TABLE2_CELLS], self.eligible_word_count)
        return dict(zip(TABLE2_CELLS, values))

    def percentage(self, cell: tuple[bool, bool, bool]) -> float:
        return self.tenths()[cell] / 10

    @property
    def bijection(self) -> float:
        return self.percentage((True, True, True))

    def as_dict(self) -> dict:
        return {
            "cells": {_cell_label(c): self.percentage(c) for c in sorted(TABLE2_CELLS, key=_cell_label)},
            "direction": {"source": self.direction.source, "target": self.direction.target},
            "eligible_word_count": self.eligible_word_count,
        }


def _eligible(mw: MultiWordnet, d: Direction) -> list[AssumptionProfile]:
    population = profiles(mw, d, eligible_only=True)
    if not population:
        raise EmptyPopulationError(d)
    return population


def table1(mw: MultiWordnet, d: Direction) -> Table1Report:
    population = _eligible(mw, d)
    counts = {label: sum(getattr(p, flag) for p in population) for label, flag in TABLE1_ROWS}
    return Table1Report(d, len(population), counts)


def table2(mw: MultiWordnet, d: Direction) -> Table2Report:
    population = _eligible(mw, d)
    counts = {cell: 0 for cell in TABLE2_CELLS}
    for p in population:
        counts[(p.OSPT, p.OTPS, p.NoLG)] += 1
    return Table2Report(d, len(population), counts)


# -- rendering ---------------------------------------------------------------------
# Several directions sharing a source render as one table, one column per target.

def _writer(buf):
    return csv.writer(buf, lineterminator="\n")


def table1_csv(reports: Sequence[Table1Report]) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["assumption"] + [r.direction.target for r in reports])
    for label, _ in TABLE1_ROWS:
        w.writerow([label] + [fmt_tenths(tenths(r.counts[label], r.eligible_word_count)) for r in reports])
    return buf.getvalue()


def table2_csv(reports: Sequence[Table2Report]) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["OSPT", "OTPS", "NoLG"] + [r.direction.target for r in reports])
    for cell in TABLE2_CELLS:
        marks = ["yes" if v else "no" for v in cell]
        w.writerow(marks + [fmt_tenths(r.tenths()[cell]) for r in reports])
    return buf.getvalue()


def reports_json(reports: Sequence[Table1Report | Table2Report]) -> str:
    body = [r.as_dict() for r in reports]
    return json.dumps(body[0] if len(body) == 1 else body, sort_keys=True,
                      ensure_ascii=False, indent=2) + "\n"


PROFILE_COLUMNS = ("language", "lemma", "pos", "source", "target", "sense_count",
                   "translation_count", "eligible") + FLAGS + ("parallel_polysemy_partners",)


def dump_profiles(mw: MultiWordnet, d: Direction, sink: IO[str]) -> int:
    """CSV, one row per eligible word sorted by lemma; returns the row count."""
    population = _eligible(mw, d)
    w = _writer(sink)
    w.writerow(PROFILE_COLUMNS)
    for p in population:
        w.writerow([
            p.word.language, p.word.lemma, p.word.pos, d.source, d.target,
            p.sense_count, p.translation_count, str(p.eligible).lower(),
            *(str(v).lower() for v in p.flags().values()),
            " ".join(p.parallel_polysemy_partners),
        ])
    return len(population)
