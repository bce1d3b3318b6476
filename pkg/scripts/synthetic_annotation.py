#!/usr/bin/env python3
"""Annotate a synthetic bitext drawn from a random multi-wordnet and score it.

The bitext is consistent with the wordnet by construction (gold synset first,
then aligned words from it), so precision must come out at exactly 1.0; the
interesting number is how coverage moves with lemma reuse.
"""
import argparse
import json

from senselab.annotate import annotate_bitext, evaluate
from senselab.assumptions import Direction
from senselab.theorem_lab import GenParams, WordCountSpec, generate, synthetic_bitext


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--synsets", type=int, default=2000)
    ap.add_argument("--tokens", type=int, default=10_000)
    ap.add_argument("--pool", type=int, default=600)
    ap.add_argument("--reuse", type=float, nargs="+", default=[0.0, 0.25, 0.5, 0.75, 1.0])
    ap.add_argument("--src", default="en")
    ap.add_argument("--tgt", default="fr")
    args = ap.parse_args()

    d = Direction(args.src, args.tgt)
    print(f"{'reuse':>6} {'coverage':>9} {'poly cov':>9} {'precision':>9}")
    for reuse in args.reuse:
        mw = generate(GenParams(args.seed, args.synsets, (d.source, d.target, "it"), args.pool,
                                WordCountSpec(0, 3, 0.2), reuse))
        tokens = synthetic_bitext(mw, d, args.tokens, args.seed + 1)
        results, _ = annotate_bitext(mw, d, tokens)
        r = evaluate(results, mw)
        poly = r.polysemous.coverage
        print(f"{reuse:>6.2f} {r.all.coverage:>9.4f} {poly if poly is None else round(poly, 4)!s:>9} "
              f"{r.all.precision!s:>9}")
        if r.all.correct != r.all.annotated:
            print(json.dumps(r.as_dict(), indent=2))
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
