import json
import subprocess
import sys

import pytest

from senselab.cli import main

from conftest import BITEXT_PAPER, FIXTURES, MW_PAPER

WN = str(MW_PAPER)
BT = str(BITEXT_PAPER)


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return status, out, err


def assert_error(status, err, expected):
    assert status == expected
    lines = err.splitlines()
    assert len(lines) == 1 and ": " in lines[0]


def test_stats(capsys):
    status, out, _ = run(capsys, "stats", "--wordnet", WN)
    assert status == 0 and json.loads(out)["synset_count"] == 17


def test_stats_missing_file(capsys, tmp_path):
    status, _, err = run(capsys, "stats", "--wordnet", tmp_path / "nope.jsonl")
    assert_error(status, err, 1)
    assert err.startswith("io-error:")


def test_stats_absent_language(capsys):
    status, out, _ = run(capsys, "stats", "--wordnet", WN, "--lang", "pl")
    pl = json.loads(out)["languages"]["pl"]
    assert status == 0 and pl["word_count"] == 0 and pl["polysemous"] == 0


def test_stats_invalid_input(capsys, tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "x", "pos": "n", "words": []}\n', encoding="utf-8")
    status, _, err = run(capsys, "stats", "--wordnet", bad)
    assert_error(status, err, 1)
    bad.write_bytes(b"\xff\xfe\n")
    status, _, err = run(capsys, "stats", "--wordnet", bad)
    assert_error(status, err, 1)


def test_check(capsys):
    status, out, _ = run(capsys, "check", "--wordnet", WN, "--src", "en", "--tgt", "fr",
                         "--word", "order", "--pos", "n")
    p = json.loads(out)
    assert status == 0 and p["flags"]["OSPT"] is False and p["parallel_polysemy_partners"] == ["ordre"]


def test_check_errors(capsys):
    status, _, err = run(capsys, "check", "--wordnet", WN, "--src", "en", "--tgt", "fr",
                         "--word", "zebra", "--pos", "n")
    assert_error(status, err, 1)
    assert "out-of-vocabulary" in err
    status, _, err = run(capsys, "check", "--wordnet", WN, "--src", "en", "--tgt", "en",
                         "--word", "order", "--pos", "n")
    assert_error(status, err, 2)


def test_usage_errors(capsys):
    for argv in ([], ["bogus"], ["stats"], ["report", "--wordnet", WN, "--src", "en", "--tgt", "fr",
                                             "--table", "3"]):
        status, _, err = run(capsys, *argv)
        assert_error(status, err, 2)


def test_report_table1(capsys):
    status, out, _ = run(capsys, "report", "--wordnet", WN, "--src", "en", "--tgt", "fr", "--table", "1")
    assert status == 0
    assert out.splitlines()[:3] == ["assumption,fr", "OSPT/PSA,50.0", "OTPS/SPA,75.0"]
    status, out, _ = run(capsys, "report", "--wordnet", WN, "--src", "en", "--tgt", "fr",
                         "--table", "1", "--format", "json")
    assert json.loads(out)["percentages"]["OSPT/PSA"] == 50.0


def test_report_table2(capsys):
    status, out, _ = run(capsys, "report", "--wordnet", WN, "--src", "en", "--tgt", "fr",
                         "--table", "2", "--format", "json")
    assert status == 0 and json.loads(out)["cells"]["OSPT=yes,OTPS=yes,NoLG=yes"] == 25.0
    status, out, _ = run(capsys, "report", "--wordnet", WN, "--src", "en", "--tgt", "fr",
                         "--table", "2")
    assert "yes,yes,yes,25.0" in out.splitlines()


def test_report_empty_population(capsys):
    status, _, err = run(capsys, "report", "--wordnet", WN, "--src", "en", "--tgt", "pl", "--table", "1")
    assert_error(status, err, 3)


def test_report_dump(capsys, tmp_path):
    dump = tmp_path / "profiles.csv"
    status, _, _ = run(capsys, "report", "--wordnet", WN, "--src", "en", "--tgt", "fr",
                       "--table", "1", "--dump", dump)
    rows = dump.read_text(encoding="utf-8").splitlines()
    assert status == 0 and len(rows) == 5 and rows[0].startswith("language,lemma,pos")


def test_annotate(capsys, tmp_path):
    out = tmp_path / "ann.jsonl"
    status, stdout, _ = run(capsys, "annotate", "--wordnet", WN, "--bitext", BT,
                            "--src", "en", "--tgt", "fr", "--out", out)
    summary = json.loads(stdout)
    assert status == 0 and summary["tagged"] == 5 and summary["abstain"] == 3
    assert len(out.read_text(encoding="utf-8").splitlines()) == 8

    status, stdout, _ = run(capsys, "annotate", "--wordnet", WN, "--bitext", BT, "--src", "en",
                            "--tgt", "fr", "--clusters", FIXTURES / "clusters_coarse.tsv", "--out", out)
    assert status == 0 and json.loads(stdout)["tagged"] == 6
    records = [json.loads(l) for l in out.read_text(encoding="utf-8").splitlines()]
    assert records[2] == {"sent": "s2", "tok": 0, "decision": "tagged", "cluster": "ORD"}


def test_annotate_stdout_and_unreadable(capsys, tmp_path):
    status, stdout, _ = run(capsys, "annotate", "--wordnet", WN, "--bitext", BT,
                            "--src", "en", "--tgt", "fr", "--out", "-")
    assert status == 0 and len(stdout.splitlines()) == 8
    status, _, err = run(capsys, "annotate", "--wordnet", WN, "--bitext", tmp_path / "missing",
                         "--src", "en", "--tgt", "fr", "--out", "-")
    assert_error(status, err, 1)


def test_evaluate(capsys, tmp_path):
    ann = tmp_path / "ann.jsonl"
    run(capsys, "annotate", "--wordnet", WN, "--bitext", BT, "--src", "en", "--tgt", "fr", "--out", ann)
    status, out, _ = run(capsys, "evaluate", "--wordnet", WN, "--bitext", BT, "--annotations", ann)
    report = json.loads(out)
    assert status == 0 and report["all"]["precision"] == 1.0 and report["all"]["annotated"] == 5

    empty = tmp_path / "none.jsonl"
    empty.write_text("", encoding="utf-8")
    status, out, _ = run(capsys, "evaluate", "--wordnet", WN, "--bitext", BT, "--annotations", empty)
    assert status == 0 and json.loads(out)["all"]["precision"] == "undefined"

    unknown = tmp_path / "unknown.jsonl"
    unknown.write_text('{"sent": "nope", "tok": 9, "decision": "abstain"}\n', encoding="utf-8")
    status, _, err = run(capsys, "evaluate", "--wordnet", WN, "--bitext", BT, "--annotations", unknown)
    assert_error(status, err, 1)
    assert err.startswith("unknown-token:")


def test_audit(capsys):
    status, out, _ = run(capsys, "audit", "--wordnet", WN, "--bitext", BT, "--src", "en", "--tgt", "fr")
    r = json.loads(out)
    # duty -> droit/devoir and bank -> rive/banque
    assert status == 0 and r["instances"] == 2 and r["wsa_violated"] == 2


def test_verify(capsys, tmp_path):
    status, out, _ = run(capsys, "verify", "--wordnet", WN)
    assert status == 0 and all(v == [] for v in json.loads(out).values())


def test_fuzz(capsys, tmp_path):
    status, out, _ = run(capsys, "fuzz", "--cases", 3, "--seed", 42)
    assert status == 0 and json.loads(out)["total_violations"] == 0
    status, _, err = run(capsys, "fuzz", "--cases", 0)
    assert_error(status, err, 2)


def test_fuzz_self_test(capsys, tmp_path):
    witness = tmp_path / "w.jsonl"
    status, _, err = run(capsys, "fuzz", "--cases", 2, "--seed", 42, "--corrupt-self-test",
                         "--witness-out", witness)
    assert_error(status, err, 4)
    assert err.startswith("theorem-violation:") and witness.read_text(encoding="utf-8")


def test_fuzz_template(capsys, tmp_path):
    t = tmp_path / "t.json"
    t.write_text(json.dumps({"name": "tiny", "languages": ["en", "de"], "max_synset_count": 5}), encoding="utf-8")
    status, out, _ = run(capsys, "fuzz", "--cases", 2, "--template", t)
    assert status == 0 and set(json.loads(out)["satisfaction"]) == {"de->en", "en->de"}
    t.write_text('{"bogus": 1}', encoding="utf-8")
    status, _, err = run(capsys, "fuzz", "--cases", 2, "--template", t)
    assert_error(status, err, 1)


def test_generate(capsys, tmp_path):
    status, out, _ = run(capsys, "generate", "--seed", 3, "--synsets", 12)
    assert status == 0 and len(out.splitlines()) == 12


def test_stdin_dash():
    data = MW_PAPER.read_bytes()
    proc = subprocess.run([sys.executable, "-m", "senselab", "stats", "--wordnet", "-"],
                          input=data, capture_output=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["synset_count"] == 17
