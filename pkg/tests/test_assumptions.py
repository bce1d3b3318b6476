import pytest
from hypothesis import given, settings

from senselab.assumptions import (
    FLAGS,
    Direction,
    gap_covered,
    owpc,
    owpc_violations,
    parallel_polysemy,
    profile,
)
from senselab.model import ModelError, build

from conftest import LANGS, MW_PAPER, W, raw_wordnets, to_model
import bruteforce

T, F = True, False
EN_FR, EN_IT = Direction("en", "fr"), Direction("en", "it")

# Frozen from tests/bruteforce.py run over fixtures/mw_paper.jsonl.
GOLDEN = {
    (EN_FR, "en:duty:n"): dict(OSPT=T, PSA=T, OTPS=T, SPA=T, SSA=F, GSA=F, GPA=T, NoLG=T, OCPW=F,
                               eligible=T, partners=()),
    (EN_FR, "en:bank:n"): dict(OSPT=T, PSA=T, OTPS=F, SPA=F, SSA=F, GSA=F, GPA=F, NoLG=T, OCPW=F,
                               eligible=T, partners=()),
    (EN_FR, "en:order:n"): dict(OSPT=F, PSA=F, OTPS=T, SPA=T, SSA=T, GSA=F, GPA=F, NoLG=T, OCPW=F,
                                eligible=T, partners=("ordre",)),
    (EN_FR, "en:interest:n"): dict(OSPT=F, PSA=F, OTPS=T, SPA=T, SSA=T, GSA=F, GPA=F, NoLG=T, OCPW=F,
                                   eligible=T, partners=("intérêt",)),
    (EN_FR, "en:performer:n"): dict(OSPT=T, PSA=T, OTPS=T, SPA=T, SSA=T, GSA=T, GPA=T, NoLG=F, OCPW=T,
                                    eligible=F, partners=()),
    (EN_IT, "en:memory:n"): dict(OSPT=F, PSA=F, OTPS=T, SPA=T, SSA=T, GSA=F, GPA=F, NoLG=T, OCPW=F,
                                 eligible=T, partners=("ricordo",)),
    (EN_IT, "en:overcome:v"): dict(OSPT=F, PSA=F, OTPS=F, SPA=F, SSA=F, GSA=F, GPA=F, NoLG=T, OCPW=F,
                                   eligible=T, partners=("battere", "vincere")),
}


@pytest.mark.parametrize("key", list(GOLDEN), ids=lambda k: f"{k[0]}:{k[1]}")
def test_fixture_profiles(mw, key):
    d, word = key
    expected = GOLDEN[key]
    p = profile(mw, d, W(word))
    assert p.flags() == {f: expected[f] for f in FLAGS}
    assert p.eligible == expected["eligible"]
    assert p.parallel_polysemy_partners == expected["partners"]


def test_golden_matches_oracle():
    raw = bruteforce.load(MW_PAPER)
    for (d, word), expected in GOLDEN.items():
        got = bruteforce.flags(raw, tuple(word.split(":")), d.target)
        assert {f: got[f] for f in FLAGS} == {f: expected[f] for f in FLAGS}
        assert tuple(got["partners"]) == expected["partners"]


def test_profile_errors(mw):
    with pytest.raises(ModelError, match="out-of-vocabulary"):
        profile(mw, EN_FR, W("en:zebra:n"))
    with pytest.raises(ModelError, match="language-mismatch"):
        profile(mw, EN_FR, W("fr:ordre:n"))
    with pytest.raises(ModelError, match="same-language"):
        Direction("en", "en")


def test_parallel_polysemy(mw):
    assert parallel_polysemy(mw, EN_FR, W("en:interest:n"), "intérêt")
    assert not parallel_polysemy(mw, EN_FR, W("en:duty:n"), "droit")
    assert not parallel_polysemy(mw, EN_FR, W("en:duty:n"), "banque")


def test_owpc(mw):
    assert not owpc(mw, "fr") and owpc_violations(mw, "fr") == ("bank-1",)
    assert owpc(mw, "pl")
    assert not owpc(mw, "it") and owpc_violations(mw, "it") == ("over-1", "over-2")


def test_gap_covered(mw):
    assert not gap_covered(mw, "fr", "en")  # gap-1
    assert not gap_covered(mw, "it", "en")  # prova-2
    assert gap_covered(build([]), "fr", "en")


@settings(max_examples=300)
@given(raw_wordnets())
def test_matches_bruteforce(raw):
    mw = to_model(raw)
    for E in LANGS:
        for Fl in LANGS:
            if E == Fl:
                continue
            d = Direction(E, Fl)
            for w in mw.words(E):
                p = profile(mw, d, w)
                o = bruteforce.flags(raw, tuple(w), Fl)
                assert p.flags() == {f: o[f] for f in FLAGS}
                assert p.eligible == o["eligible"]
                assert list(p.parallel_polysemy_partners) == o["partners"]
                assert (p.sense_count, p.translation_count) == (o["sense_count"], o["translation_count"])


@given(raw_wordnets())
def test_theorems_hold(raw):
    """The equivalences, as invariants of the profile record."""
    mw = to_model(raw)
    for E in LANGS:
        for Fl in LANGS:
            if E == Fl:
                continue
            ps = [profile(mw, Direction(E, Fl), w) for w in mw.words(E)]
            for p in ps:
                assert p.OSPT == p.PSA
                assert p.OTPS == p.SPA
                assert p.GSA == (p.SSA and p.PSA)
                assert p.GPA == (p.SPA and p.PSA)
                assert not p.OCPW or p.GSA
                assert not (p.GSA and p.NoLG) or p.OCPW
                if owpc(mw, Fl):
                    assert p.OTPS
            if all(p.OTPS for p in ps) and gap_covered(mw, Fl, E):
                assert owpc(mw, Fl)
            back = [profile(mw, Direction(Fl, E), w) for w in mw.words(Fl)]
            assert all(p.OSPT for p in ps) == all(p.OSPT for p in back)
