"""Subdivision chains and removal of cross-substructure path dependency.

Two substructures that share layer pairs can make the union of their basis
sets dependent: paths of the parent with a common unshared segment but
different shared segments, mirrored by child paths with a common unshared
segment, yield ``a1 - a2 = c1 - c2``.  :func:`sdv_step` drops the offending
child paths, keeping those whose shared segment is the parent's most
frequent one.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .network import Edge, Path, SubstructurePath, edge_sort_key, path_edges
from .select import Relation, SubdivisionSet, subdivision_relation

Pattern = tuple  # tuple[Edge, ...]


@dataclass
class SubdivisionChain:
    indices: list[int]
    underlying: int

    @property
    def head(self) -> int:
        return self.indices[0]

    def with_underlying(self) -> list[int]:
        return self.indices + [self.underlying]

    def __len__(self) -> int:
        return len(self.indices)


def build_chains(selected: Sequence[int], u_sets: Sequence[SubdivisionSet],
                 betas: Sequence[Sequence[int]]) -> tuple[list[SubdivisionChain], dict[int, list[int]]]:
    """Greedy chains ``U_{t1} > U_{t2} > ... > U_0`` over the selected substructures.

    ``selected[0]`` is the underlying path; the rest must be in descending
    |U| order.  Returns the chains and, per substructure, the chains it is in.
    """
    u0, order = selected[0], list(selected[1:])
    chains: list[SubdivisionChain] = []
    claimed: set[int] = set()
    for pos, r in enumerate(order):
        if r in claimed:
            continue
        idx = [r]
        for r2 in order[pos + 1:]:
            tail = idx[-1]
            if (u_sets[r2].members < u_sets[tail].members
                    and subdivision_relation(betas[tail], betas[r2]) is Relation.T_SUBDIVIDES_R):
                idx.append(r2)
        chains.append(SubdivisionChain(idx, u0))
        claimed.update(idx)
    membership: dict[int, list[int]] = {}
    for t, ch in enumerate(chains):
        for r in ch.indices:
            membership.setdefault(r, []).append(t)
    return chains, membership


def _partner(member: int, other: SubdivisionChain, pairs: set, subs: Sequence[SubstructurePath],
             pos: Mapping[int, int]) -> int | None:
    # deepest member of ``other`` placed before ``member`` that shares a layer pair
    for r in reversed(other.indices):
        if pos[r] < pos[member] and pairs & set(subs[r].layer_pairs()):
            return r
    return None


def cross_partners(chains: Sequence[SubdivisionChain], subs: Sequence[SubstructurePath],
                   order: Sequence[int] | None = None) -> dict[int, list[int]]:
    """Earlier substructures of other chains each chain member is reduced against.

    For member ``x`` and every chain not containing ``x``, the deepest member
    of that chain that shares a layer pair with ``x`` and precedes ``x`` in
    ``order`` (the selection order).  Looking only backwards keeps the
    "reduced against" relation acyclic.
    """
    if order is None:
        order = [r for ch in chains for r in ch.indices]
    pos = {r: i for i, r in enumerate(order)}
    owners: dict[int, set[int]] = {}
    for t, ch in enumerate(chains):
        for r in ch.indices:
            owners.setdefault(r, set()).add(t)
    out: dict[int, list[int]] = {}
    for ch in chains:
        for x in ch.indices:
            if x in out:
                continue
            pairs = set(subs[x].layer_pairs())
            q: list[int] = []
            for t2, other in enumerate(chains):
                if t2 in owners[x]:
                    continue
                r = _partner(x, other, pairs, subs, pos)
                if r is not None and r not in q:
                    q.append(r)
            out[x] = q
    return out


def compute_qt(chains: Sequence[SubdivisionChain], subs: Sequence[SubstructurePath],
               order: Sequence[int] | None = None) -> tuple[list[list[int]], list[list[int]]]:
    """Cross-chain partners of each chain head, and earlier chains sharing a pair with it.

    ``Q[t]`` is :func:`cross_partners` restricted to the head of chain ``t``.
    ``Sh[t]`` lists earlier chains whose heads share a layer pair with that
    head; it is reported only.
    """
    partners = cross_partners(chains, subs, order)
    Q, Sh = [], []
    for t, ch in enumerate(chains):
        head_pairs = set(subs[ch.head].layer_pairs())
        Q.append(list(partners[ch.head]))
        Sh.append([t2 for t2 in range(t) if head_pairs & set(subs[chains[t2].head].layer_pairs())])
    return Q, Sh


def decompose(path: Path, shared_pairs: set[tuple[int, int]]) -> tuple[Pattern, Pattern]:
    """Split a path's edges into (shared pattern, unshared pattern)."""
    shared, unshared = [], []
    for e in path_edges(path):
        (shared if (e.tail.layer, e.head.layer) in shared_pairs else unshared).append(e)
    return tuple(shared), tuple(unshared)


def _pattern_key(p: Pattern) -> tuple:
    return tuple(edge_sort_key(e) for e in p)


@dataclass
class PatternGroup:
    segment: list[tuple[int, int]]
    unshared: Pattern
    shared_counts: Counter
    best_shared: Pattern
    repeated_child_unshared: dict
    discarded: list[Path]


@dataclass
class StepRecord:
    kind: str  # "chain" | "cross"
    chain: int
    parent: int
    child: int
    shared_pairs: list[tuple[int, int]]
    groups: list[PatternGroup]
    discarded: list[Path]


def shared_segments(p_parent: SubstructurePath, p_child: SubstructurePath) -> list[list[tuple[int, int]]]:
    """Maximal runs of consecutive layer pairs common to both substructures."""
    shared = set(p_child.layer_pairs())
    segs: list[list[tuple[int, int]]] = []
    run: list[tuple[int, int]] = []
    for pair in p_parent.layer_pairs():
        if pair in shared:
            run.append(pair)
        elif run:
            segs.append(run)
            run = []
    if run:
        segs.append(run)
    return segs


def sdv_step(parent_basis: Sequence[Path], child_shrunk: Sequence[Path],
             p_parent: SubstructurePath, p_child: SubstructurePath) -> tuple[list[Path], list[tuple[int, int]], list[PatternGroup]]:
    """Child paths to discard so the child set adds no dependency on ``parent_basis``.

    Each shared segment is handled in turn: paths are split into the edges on
    that segment and the rest, parent paths are grouped by their rest, and
    child paths repeating a rest with a shared part seen in the group are cut
    down to the group's most frequent shared part.
    Returns ``(discarded, shared_pairs, groups)``.
    """
    segs = shared_segments(p_parent, p_child)
    if not segs:
        return [], [], []

    discard: set[Path] = set()
    groups = []
    for seg in segs:
        pairs = set(seg)
        by_rest: dict[Pattern, Counter] = {}
        for p in parent_basis:
            s, u = decompose(p, pairs)
            by_rest.setdefault(u, Counter())[s] += 1
        child = [(p, *decompose(p, pairs)) for p in child_shrunk if p not in discard]
        for u in sorted(by_rest, key=_pattern_key):
            ucp = by_rest[u]
            top = max(ucp.values())
            best = min((s for s, n in ucp.items() if n == top), key=_pattern_key)
            iep = Counter(cu for _, cs, cu in child if cs in ucp)
            iep = {cu: n for cu, n in iep.items() if n >= 2}
            dropped = []
            for cu in iep:
                hit = [(p, cs) for p, cs, pu in child if pu == cu and cs in ucp]
                # keep one child path per rest; prefer the parent's favourite shared part
                keep = best if any(cs == best for _, cs in hit) else min((cs for _, cs in hit), key=_pattern_key)
                dropped += [p for p, cs in hit if cs != keep]
            discard.update(dropped)
            groups.append(PatternGroup(seg, u, ucp, best, iep, sorted(dropped)))
    shared = sorted(pair for seg in segs for pair in seg)
    return sorted(discard), shared, groups


@dataclass
class EliminationTrace:
    steps: list[StepRecord] = field(default_factory=list)
    Q: list[list[int]] = field(default_factory=list)
    partners: dict[int, list[int]] = field(default_factory=dict)
    Sh: list[list[int]] = field(default_factory=list)
    discarded_underlying: list[Path] = field(default_factory=list)


def eliminate_dependencies(chains: Sequence[SubdivisionChain], bases: Mapping[int, Sequence[Path]],
                           underlying: int, subs: Sequence[SubstructurePath],
                           order: Sequence[int] | None = None) -> tuple[list[Path], dict[int, list[Path]], EliminationTrace]:
    """Shrink every selected basis set along its chains, then against earlier
    members of other chains.

    Parents always contribute their full subroutine basis.  Returns the final
    path set, the shrunk set per substructure and a trace.
    """
    partners = cross_partners(chains, subs, order)
    Q, Sh = compute_qt(chains, subs, order)
    shrunk = {r: list(ps) for r, ps in bases.items()}
    trace = EliminationTrace(Q=Q, partners=partners, Sh=Sh)

    def run(kind: str, t: int, parent: int, child: int) -> None:
        dropped, pairs, groups = sdv_step(bases[parent], shrunk[child], subs[parent], subs[child])
        if dropped:
            gone = set(dropped)
            shrunk[child] = [p for p in shrunk[child] if p not in gone]
            if child == underlying:
                trace.discarded_underlying.extend(dropped)
        trace.steps.append(StepRecord(kind, t, parent, child, pairs, groups, dropped))

    done: set[int] = set()
    for t, ch in enumerate(chains):
        seq = ch.with_underlying()
        for a, b in zip(seq, seq[1:]):
            run("chain", t, a, b)
        for x in ch.indices:
            if x in done:
                continue
            done.add(x)
            for k in partners[x]:
                run("cross", t, k, x)

    final = sorted(p for ps in shrunk.values() for p in ps)
    return final, shrunk, trace
