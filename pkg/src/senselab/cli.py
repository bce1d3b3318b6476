"""senselab command line.

Exit codes: 0 ok, 1 validation/parse/IO error, 2 usage error,
3 empty population, 4 theorem violation.  Every failure prints exactly one
``error_code: message`` line on stderr.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import annotate as ann
from . import reports, theorem_lab
from .assumptions import Direction, profile
from .ingest import (
    ParseError,
    dumps_multiwordnet,
    lexicon_stats,
    parse_bitext,
    parse_cluster_map,
    parse_multiwordnet,
)
from .model import ModelError, WordKey

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_EMPTY, EXIT_VIOLATION = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_USAGE, "usage", message)


@contextlib.contextmanager
def _reading(path: str):
    if path == "-":
        yield sys.stdin
        return
    try:
        f = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise CliError(EXIT_INVALID, "io-error", f"{path}: {exc.strerror}") from None
    with f:
        yield f


@contextlib.contextmanager
def _writing(path: str):
    if path == "-":
        yield sys.stdout
        return
    try:
        f = open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CliError(EXIT_INVALID, "io-error", f"{path}: {exc.strerror}") from None
    with f:
        yield f


def _load(path: str, parser):
    with _reading(path) as f:
        try:
            return parser(f)
        except UnicodeDecodeError as exc:
            raise CliError(EXIT_INVALID, "encoding", f"{path}: not UTF-8 ({exc.reason})") from None


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n")


def _direction(src: str, tgt: str) -> Direction:
    try:
        return Direction(src, tgt)
    except ModelError as exc:
        raise CliError(EXIT_USAGE, "usage", exc.message) from None


# -- commands ------------------------------------------------------------------------

def cmd_stats(args) -> int:
    mw = _load(args.wordnet, parse_multiwordnet)
    _emit_json(lexicon_stats(mw).as_dict(only=args.lang))
    return EXIT_OK


def cmd_check(args) -> int:
    d = _direction(args.src, args.tgt)
    mw = _load(args.wordnet, parse_multiwordnet)
    _emit_json(profile(mw, d, WordKey(args.src, args.word, args.pos)).as_dict())
    return EXIT_OK


def cmd_report(args) -> int:
    targets = [t for t in args.tgt.split(",") if t]
    directions = [_direction(args.src, t) for t in targets]
    if not directions:
        raise CliError(EXIT_USAGE, "usage", "--tgt needs at least one language")
    if args.dump and len(directions) > 1:
        raise CliError(EXIT_USAGE, "usage", "--dump takes a single --tgt language")
    mw = _load(args.wordnet, parse_multiwordnet)
    make = reports.table1 if args.table == "1" else reports.table2
    rs = [make(mw, d) for d in directions]
    if args.format == "json":
        sys.stdout.write(reports.reports_json(rs))
    else:
        sys.stdout.write(reports.table1_csv(rs) if args.table == "1" else reports.table2_csv(rs))
    if args.dump:
        with _writing(args.dump) as sink:
            reports.dump_profiles(mw, directions[0], sink)
    return EXIT_OK


def cmd_annotate(args) -> int:
    d = _direction(args.src, args.tgt)
    mw = _load(args.wordnet, parse_multiwordnet)
    tokens = _load(args.bitext, parse_bitext)
    clusters = _load(args.clusters, parse_cluster_map) if args.clusters else None
    with _writing(args.out) as sink:
        _, summary = ann.annotate_bitext(mw, d, tokens, sink, clusters)
    if args.out != "-":
        _emit_json(summary)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    mw = _load(args.wordnet, parse_multiwordnet)
    tokens = _load(args.bitext, parse_bitext)
    clusters = _load(args.clusters, parse_cluster_map) if args.clusters else None
    results = _load(args.annotations, lambda f: ann.parse_annotations(f, tokens))
    _emit_json(ann.evaluate(results, mw, clusters).as_dict())
    return EXIT_OK


def cmd_audit(args) -> int:
    d = _direction(args.src, args.tgt)
    mw = _load(args.wordnet, parse_multiwordnet)
    tokens = _load(args.bitext, parse_bitext)
    _emit_json(ann.weak_assumption_audit(mw, d, tokens).as_dict())
    return EXIT_OK


def _template(path: str | None) -> theorem_lab.FuzzTemplate:
    if path is None:
        return theorem_lab.default_template()
    try:
        return _load(path, lambda f: theorem_lab.FuzzTemplate.from_dict(json.load(f)))
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_INVALID, "bad-template", str(exc).splitlines()[0]) from None


def cmd_fuzz(args) -> int:
    if args.cases < 1:
        raise CliError(EXIT_USAGE, "usage", "--cases must be >= 1")
    if not 0 <= args.seed < 2 ** 64:
        raise CliError(EXIT_USAGE, "usage", "--seed must be a 64-bit unsigned integer")
    report = theorem_lab.fuzz(_template(args.template), args.cases, args.seed,
                              corrupt_instances=args.corrupt_self_test)
    with _writing(args.out) as sink:
        sink.write(json.dumps(report.as_dict(), sort_keys=True, ensure_ascii=False, indent=2) + "\n")
    if report.total_violations:
        with _writing(args.witness_out) as sink:
            sink.write(dumps_multiwordnet(report.witness_instance))
        w = report.first_witness
        raise CliError(EXIT_VIOLATION, "theorem-violation",
                       f"{report.total_violations} violations; first {w['theorem']} at seed {w['seed']} "
                       f"({w['direction']}, {w['witness']}); instance written to {args.witness_out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    mw = _load(args.wordnet, parse_multiwordnet)
    found = theorem_lab.verify_all(mw)
    _emit_json({str(d): [v.as_dict() for v in vs] for d, vs in found.items()})
    total = sum(len(vs) for vs in found.values())
    if total:
        raise CliError(EXIT_VIOLATION, "theorem-violation", f"{total} violations")
    return EXIT_OK


def cmd_generate(args) -> int:
    t = _template(args.template)
    params = t.params(args.seed)
    if args.synsets is not None:
        params = theorem_lab.GenParams(args.seed, args.synsets, params.languages,
                                       params.lemma_pool_size, params.words, params.reuse_bias)
    mw = theorem_lab.generate(params)
    with _writing(args.out) as sink:
        sink.write(dumps_multiwordnet(mw))
    return EXIT_OK


# -- wiring --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="senselab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("stats", help="lexicon statistics as JSON")
    s.add_argument("--wordnet", required=True)
    s.add_argument("--lang")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("check", help="assumption profile of one word")
    s.add_argument("--wordnet", required=True)
    s.add_argument("--src", required=True)
    s.add_argument("--tgt", required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--pos", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("report", help="per-flag percentages (1) or OSPT/OTPS/NoLG breakdown (2)")
    s.add_argument("--wordnet", required=True)
    s.add_argument("--src", required=True)
    s.add_argument("--tgt", required=True, help="target language, or a comma-separated list")
    s.add_argument("--table", choices=("1", "2"), required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--dump", help="also write per-word profiles as CSV here")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("annotate", help="sense-annotate an aligned bitext")
    s.add_argument("--wordnet", required=True)
    s.add_argument("--bitext", required=True)
    s.add_argument("--src", required=True)
    s.add_argument("--tgt", required=True)
    s.add_argument("--clusters", help="synset->cluster TSV; switches to homonym-level tagging")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_annotate)

    s = sub.add_parser("evaluate", help="score annotations against gold tags")
    s.add_argument("--wordnet", required=True)
    s.add_argument("--bitext", required=True)
    s.add_argument("--annotations", required=True)
    s.add_argument("--clusters", help="score at cluster level")
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("audit", help="weak synonymy/polysemy audit over a bitext")
    s.add_argument("--wordnet", required=True)
    s.add_argument("--bitext", required=True)
    s.add_argument("--src", required=True)
    s.add_argument("--tgt", required=True)
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("fuzz", help="verify the theorems on random multi-wordnets")
    s.add_argument("--cases", type=int, default=1000)
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--template")
    s.add_argument("--out", default="-", help="report path (default stdout)")
    s.add_argument("--witness-out", default="fuzz_witness.jsonl")
    s.add_argument("--corrupt-self-test", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("verify", help="verify the theorems on one wordnet, all language pairs")
    s.add_argument("--wordnet", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("generate", help="write a random multi-wordnet")
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--template")
    s.add_argument("--synsets", type=int)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        status, code, message = exc.status, exc.code, exc.message
    except ParseError as exc:
        status, code, message = EXIT_INVALID, exc.code, f"line {exc.line}: {exc.message}"
    except reports.EmptyPopulationError as exc:
        status, code, message = EXIT_EMPTY, "empty-population", str(exc)
    except ModelError as exc:
        status, code, message = EXIT_INVALID, exc.code, exc.message
    except ValueError as exc:
        status, code, message = EXIT_INVALID, "invalid", str(exc)
    sys.stdout.flush()
    print(f"{code}: {' '.join(message.split())}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
