"""End-to-end basis construction: select substructures, build per-substructure
bases, then eliminate dependency along subdivision chains."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .chains import EliminationTrace, SubdivisionChain, build_chains, eliminate_dependencies
from .network import (NetworkSpec, Path, SubstructurePath, alpha_vector, beta_vector,
                      enumerate_substructure_paths, induce_subgraph, lift_path)
from .select import SelectionResult, SubdivisionSet, compute_subdivision_sets, select_independent_substructures
from .subroutine import BasisPathSet, subroutine_basis

DEFAULT_SUBSTRUCTURE_CAP = 10_000


@dataclass
class RunStats:
    R: int
    T: int
    chain_lengths: list[int]
    m: int
    W_max: int
    B_max: int
    B_size: int
    discards: dict[str, int]
    timings: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        # timings are kept out so that output files stay byte-stable
        return {"R": self.R, "T": self.T, "s_t": self.chain_lengths, "m": self.m,
                "W_max": self.W_max, "B_max": self.B_max, "B": self.B_size,
                "discards": self.discards}


@dataclass
class SubstructureReport:
    paths: list[SubstructurePath]
    alphas: list[tuple[int, ...]]
    betas: list[tuple[int, ...]]
    u_sets: list[SubdivisionSet]
    selection: SelectionResult


@dataclass
class BasisRun:
    spec: NetworkSpec
    substructures: SubstructureReport
    bases: dict[int, BasisPathSet]
    chains: list[SubdivisionChain]
    membership: dict[int, list[int]]
    shrunk: dict[int, list[Path]]
    trace: EliminationTrace
    paths: list[Path]
    stats: RunStats

    @property
    def underlying(self) -> int:
        return self.substructures.selection.selected[0]

    def naive_union(self) -> list[Path]:
        return sorted(p for b in self.bases.values() for p in b.paths)


def analyze_substructures(spec: NetworkSpec, cap: int = DEFAULT_SUBSTRUCTURE_CAP) -> SubstructureReport:
    subs = enumerate_substructure_paths(spec, cap)
    alphas = [alpha_vector(p, spec.L) for p in subs]
    betas = [beta_vector(p, spec.L) for p in subs]
    u_sets = compute_subdivision_sets(betas)
    selection = select_independent_substructures(alphas, betas, u_sets)
    return SubstructureReport(subs, alphas, betas, u_sets, selection)


def substructure_basis(spec: NetworkSpec, p: SubstructurePath, index: int | None = None) -> BasisPathSet:
    """Subroutine basis of the no-skip subgraph induced by ``p``, lifted back to ``spec``."""
    sub, relabel = induce_subgraph(spec, p)
    b = subroutine_basis(sub)
    b.paths = sorted(lift_path(q, relabel) for q in b.paths)
    b.provenance = index
    return b


def build_basis(spec: NetworkSpec, threads: int = 1, cap: int = DEFAULT_SUBSTRUCTURE_CAP) -> BasisRun:
    timings = {}
    t0 = time.perf_counter()
    rep = analyze_substructures(spec, cap)
    sel = rep.selection
    timings["select"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            built = list(pool.map(lambda r: substructure_basis(spec, rep.paths[r], r), sel.selected))
    else:
        built = [substructure_basis(spec, rep.paths[r], r) for r in sel.selected]
    bases = dict(zip(sel.selected, built))
    timings["subroutine"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    chains, membership = build_chains(sel.selected, rep.u_sets, rep.betas)
    final, shrunk, trace = eliminate_dependencies(
        chains, {r: b.paths for r, b in bases.items()}, sel.selected[0], rep.paths, sel.selected[1:])
    timings["eliminate"] = time.perf_counter() - t0

    discards = {"chain": sum(len(s.discarded) for s in trace.steps if s.kind == "chain"),
                "cross": sum(len(s.discarded) for s in trace.steps if s.kind == "cross"),
                "underlying": len(trace.discarded_underlying)}
    stats = RunStats(R=sel.R, T=len(chains), chain_lengths=[len(c) for c in chains], m=spec.m,
                     W_max=spec.max_width, B_max=max(len(b) for b in built), B_size=len(final),
                     discards=discards, timings=timings)
    return BasisRun(spec, rep, bases, chains, membership, shrunk, trace, final, stats)
