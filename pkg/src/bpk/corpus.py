"""Random network specs for property checks and experiments."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .network import NetworkSpec, make_network
from .oracle import count_paths


@dataclass
class CorpusConfig:
    max_L: int = 6
    max_width: int = 3
    max_skips: int = 4
    path_cap: int = 10_000


def random_spec(rng: random.Random, cfg: CorpusConfig = CorpusConfig(), no_skip: bool = False) -> NetworkSpec:
    """One random spec: all consecutive pairs plus 0..max_skips skip pairs, |P| <= path_cap."""
    while True:
        L = rng.randint(1, cfg.max_L)
        widths = [rng.randint(1, cfg.max_width) for _ in range(L + 1)]
        skips = []
        if not no_skip:
            pool = [(j, l) for j in range(L + 1) for l in range(j + 2, L + 1)]
            skips = rng.sample(pool, min(len(pool), rng.randint(0, cfg.max_skips)))
        spec = make_network(widths, skips)
        if count_paths(spec) <= cfg.path_cap:
            return spec


def random_corpus(n: int, seed: int = 0, cfg: CorpusConfig = CorpusConfig(),
                  no_skip: bool = False) -> list[NetworkSpec]:
    rng = random.Random(seed)
    return [random_spec(rng, cfg, no_skip) for _ in range(n)]
