#!/usr/bin/env python3
"""Search small networks for instances where the per-substructure bases
overlap linearly, and for instances the elimination does not fix.

Prints the smallest hits (fewest paths) of each kind.
"""
from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from bpk.corpus import CorpusConfig, random_spec
from bpk.linalg import exact_rank
from bpk.network import NetworkSpec, edge_incidence
from bpk.oracle import certify_basis, count_paths
from bpk.pipeline import build_basis


@dataclass
class SearchConfig:
    trials: int = 2000
    seed: int = 0
    keep: int = 3
    corpus: CorpusConfig = CorpusConfig(max_L=5, max_width=2, max_skips=3, path_cap=500)


def describe(spec: NetworkSpec) -> str:
    skips = [c for c in spec.connections if c[1] > c[0] + 1]
    return f"widths={list(spec.widths)} skips={skips} |P|={count_paths(spec)}"


def search(cfg: SearchConfig) -> tuple[list, list]:
    rng = random.Random(cfg.seed)
    overlap, unresolved = {}, {}
    for _ in range(cfg.trials):
        spec = random_spec(rng, cfg.corpus)
        res = build_basis(spec)
        naive = res.naive_union()
        deficit = len(naive) - exact_rank([edge_incidence(p, spec) for p in naive])
        if deficit:
            overlap[spec] = deficit
            if not certify_basis(res.paths, spec).ok:
                unresolved[spec] = deficit
    rank = lambda d: sorted(d, key=lambda s: (count_paths(s), s.widths, s.connections))[:cfg.keep]
    return rank(overlap), rank(unresolved)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    overlap, unresolved = search(SearchConfig(a.trials, a.seed))
    print("naive union rank deficient:")
    for s in overlap:
        print("  " + describe(s))
    print("still dependent after elimination:")
    for s in unresolved or []:
        print("  " + describe(s))
    if not unresolved:
        print("  none found")


if __name__ == "__main__":
    main()
