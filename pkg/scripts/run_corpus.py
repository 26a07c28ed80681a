#!/usr/bin/env python3
"""Build and certify bases over random corpora, one JSON line per failure.

    python3 scripts/run_corpus.py --seeds 0 1 2 --n 400
"""
from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import dataclass, field

from bpk.corpus import CorpusConfig, random_corpus
from bpk.oracle import certify_basis
from bpk.pipeline import build_basis


@dataclass
class RunConfig:
    seeds: list[int] = field(default_factory=lambda: [0])
    n: int = 200
    corpus: CorpusConfig = field(default_factory=CorpusConfig)


def run(cfg: RunConfig) -> Counter:
    totals: Counter = Counter()
    for seed in cfg.seeds:
        t0 = time.perf_counter()
        verdicts: Counter = Counter()
        for i, spec in enumerate(random_corpus(cfg.n, seed, cfg.corpus)):
            res = build_basis(spec)
            v = certify_basis(res.paths, spec)
            verdicts[v.kind] += 1
            if not v.ok:
                print(json.dumps({"seed": seed, "index": i, "widths": list(spec.widths),
                                  "connections": [list(c) for c in spec.connections], **v.to_json()}))
        print(f"# seed {seed}: {dict(sorted(verdicts.items()))} in {time.perf_counter() - t0:.1f}s")
        totals += verdicts
    print(f"# total: {dict(sorted(totals.items()))}")
    return totals


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--max-L", type=int, default=6)
    ap.add_argument("--max-width", type=int, default=3)
    ap.add_argument("--max-skips", type=int, default=4)
    a = ap.parse_args()
    run(RunConfig(a.seeds, a.n, CorpusConfig(a.max_L, a.max_width, a.max_skips)))


if __name__ == "__main__":
    main()
