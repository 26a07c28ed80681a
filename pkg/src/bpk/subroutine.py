"""Basis paths of a no-skip fully connected layered network.

Stage ``k`` joins layer ``k`` to ``k+1``.  Each tail node owns exactly one
*direct* edge; the rest of the stage's edges are *cross* edges.  A direct
edge extends every path arriving at its tail, a cross edge extends a single
representative (the lexicographically smallest arriving path).  The same
representative rule is used everywhere, so shared sub-paths recur
identically across substructures.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidNetwork
from .network import Edge, NetworkSpec, NodeId, Path


@dataclass
class LayerStagePaths:
    stage: int
    direct_edges: list[Edge]
    cross_edges: list[Edge]
    per_node_paths: dict[NodeId, list[Path]]


@dataclass
class BasisPathSet:
    paths: list[Path]
    provenance: int | None = None
    direct_count: int = 0
    cross_count: int = 0
    stages: list[LayerStagePaths] = field(default_factory=list, repr=False)

    def __len__(self) -> int:
        return len(self.paths)


def match_direct_edges(width_k: int, width_k1: int, k: int = 0) -> tuple[list[Edge], list[Edge]]:
    """Split the complete bipartite stage ``k -> k+1`` into direct and cross edges.

    Node ``i`` is matched to node ``i``; when the tail layer is wider, each
    leftover tail is attached to node 0 of the head layer.
    """
    direct = []
    for i in range(width_k):
        j = i if i < width_k1 else 0
        direct.append(Edge(NodeId(k, i), NodeId(k + 1, j)))
    dset = set(direct)
    cross = [Edge(NodeId(k, i), NodeId(k + 1, j))
             for i in range(width_k) for j in range(width_k1)
             if Edge(NodeId(k, i), NodeId(k + 1, j)) not in dset]
    return direct, cross


def subroutine_basis(spec: NetworkSpec, keep_stages: bool = False) -> BasisPathSet:
    if not spec.is_no_skip():
        raise InvalidNetwork("subroutine_basis needs a network without skip connections")
    arriving: dict[NodeId, list[Path]] = {}
    stages = []
    n_dir = n_cross = 0
    for k in range(spec.L):
        direct, cross = match_direct_edges(spec.widths[k], spec.widths[k + 1], k)
        if k == 0:
            dir_paths = [(e.tail, e.head) for e in direct]
            cross_paths = [(e.tail, e.head) for e in cross]
        else:
            dir_paths = [p + (e.head,) for e in direct for p in arriving[e.tail]]
            rep = {v: min(ps) for v, ps in arriving.items()}
            cross_paths = [rep[e.tail] + (e.head,) for e in cross]
        n_dir, n_cross = len(dir_paths), len(cross_paths)
        arriving = {NodeId(k + 1, j): [] for j in range(spec.widths[k + 1])}
        for p in dir_paths + cross_paths:
            arriving[p[-1]].append(p)
        if keep_stages:
            stages.append(LayerStagePaths(k, direct, cross, {v: list(ps) for v, ps in arriving.items()}))
    paths = sorted(p for ps in arriving.values() for p in ps)
    return BasisPathSet(paths, None, n_dir, n_cross, stages)
