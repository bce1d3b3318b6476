from pathlib import Path

import pytest
from hypothesis import strategies as st

from senselab.ingest import parse_multiwordnet
from senselab.model import WordKey, build, make_synset

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
MW_PAPER = FIXTURES / "mw_paper.jsonl"
BITEXT_PAPER = FIXTURES / "bitext_paper.jsonl"


@pytest.fixture(scope="session")
def mw():
    with open(MW_PAPER, encoding="utf-8") as f:
        return parse_multiwordnet(f)


def W(text):
    return WordKey.parse(text)


LANGS = ("en", "fr", "it")


@st.composite
def raw_wordnets(draw, max_synsets=8, pool=4):
    """{synset_id: {(lang, lemma, 'n'), ...}} with small lemma pools, so that
    polysemy, synonymy, gaps and parallel polysemy are all common."""
    n = draw(st.integers(0, max_synsets))
    out = {}
    for i in range(n):
        words = draw(st.sets(
            st.tuples(st.sampled_from(LANGS), st.integers(0, pool - 1)), min_size=1, max_size=6))
        out[f"s{i}"] = {(lang, f"{lang}{k}", "n") for lang, k in words}
    return out


def to_model(raw):
    return build(make_synset(sid, "n", [WordKey(*w) for w in words]) for sid, words in raw.items())


# -- acceptance summary: one PASS/FAIL line per criterion -------------------------

_criteria: dict[int, tuple[str, str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    # setup failures count too; otherwise only the call phase decides
    if report.when == "call" or (report.when == "setup" and report.failed):
        number, title = mark.args
        status = "PASS" if report.passed else "FAIL"
        _criteria[number] = (status, title, getattr(item, "criterion_detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title, detail = _criteria[number]
        line = f"{status} criterion {number}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
