"""Layered DAG model of a fully connected network with skip connections.

A network is described by its layer widths and the set of layer pairs
``(j, l)`` that are fully bipartitely connected.  Nodes are ``(layer, index)``
pairs and a path is a tuple of nodes from layer 0 to layer ``L``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import BadPair, BadWidth, InvalidNetwork, MissingConsecutivePair, PathCountGuardExceeded


class NodeId(NamedTuple):
    layer: int
    index: int


class Edge(NamedTuple):
    tail: NodeId
    head: NodeId


Path = tuple  # tuple[NodeId, ...]


def edge_sort_key(e: Edge) -> tuple[int, int, int, int]:
    return (e.tail.layer, e.head.layer, e.tail.index, e.head.index)


@dataclass(frozen=True)
class NetworkSpec:
    widths: tuple[int, ...]
    connections: tuple[tuple[int, int], ...]
    weights: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def L(self) -> int:
        return len(self.widths) - 1

    @property
    def layer_count(self) -> int:
        return len(self.widths)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """All edges in canonical order (tail layer, head layer, tail index, head index)."""
        out = []
        for j, l in self.connections:
            for a in range(self.widths[j]):
                for b in range(self.widths[l]):
                    out.append(Edge(NodeId(j, a), NodeId(l, b)))
        out.sort(key=edge_sort_key)
        return tuple(out)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def hidden_count(self) -> int:
        return sum(self.widths[1:-1])

    @property
    def max_width(self) -> int:
        return max(self.widths)

    @cached_property
    def pair_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.connections)

    @cached_property
    def successors(self) -> dict[int, tuple[int, ...]]:
        succ: dict[int, list[int]] = {l: [] for l in range(self.layer_count)}
        for j, l in self.connections:
            succ[j].append(l)
        return {j: tuple(sorted(ls)) for j, ls in succ.items()}

    def is_no_skip(self) -> bool:
        return set(self.connections) == {(l, l + 1) for l in range(self.L)}

    def has_edge(self, e: Edge) -> bool:
        return e in self.edge_index

    def nodes(self) -> list[NodeId]:
        return [NodeId(l, i) for l, w in enumerate(self.widths) for i in range(w)]


@dataclass(frozen=True, order=True)
class SubstructurePath:
    """Layer-level path in the one-node-per-layer skeleton."""

    layers: tuple[int, ...]

    def layer_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.layers, self.layers[1:]))

    def __len__(self) -> int:
        return len(self.layers)


def _parse_weight_key(key: str) -> Edge:
    try:
        left, right = key.split("->")
        j, i = (int(x) for x in left.split("."))
        l, k = (int(x) for x in right.split("."))
    except ValueError:
        raise InvalidNetwork(f"malformed weight key {key!r}; expected 'j.i->l.k'") from None
    return Edge(NodeId(j, i), NodeId(l, k))


def validate_network(raw) -> NetworkSpec:
    """Build a validated :class:`NetworkSpec` from a parsed JSON object.

    ``raw`` may also be an existing ``NetworkSpec``, which is re-checked.
    """
    if isinstance(raw, NetworkSpec):
        raw = {"widths": list(raw.widths), "connections": [list(c) for c in raw.connections],
               "weights": {_weight_key(e): str(w) for e, w in raw.weights.items()}}
    if not isinstance(raw, dict):
        raise InvalidNetwork("network must be a JSON object")
    unknown = set(raw) - {"widths", "connections", "weights"}
    if unknown:
        raise InvalidNetwork(f"unknown keys: {sorted(unknown)}")

    widths = raw.get("widths")
    if not isinstance(widths, list) or len(widths) < 2:
        raise BadWidth("widths must be a list of at least 2 positive integers")
    for w in widths:
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise BadWidth(f"bad width {w!r}; widths must be positive integers")
    n_layers = len(widths)

    conns = raw.get("connections")
    if not isinstance(conns, list):
        raise BadPair("connections must be a list of [j, l] pairs")
    seen: set[tuple[int, int]] = set()
    for c in conns:
        if (not isinstance(c, (list, tuple)) or len(c) != 2
                or any(isinstance(x, bool) or not isinstance(x, int) for x in c)):
            raise BadPair(f"bad connection {c!r}; expected [j, l] with integers")
        j, l = c
        if not 0 <= j < l < n_layers:
            raise BadPair(f"bad connection {[j, l]}; need 0 <= j < l <= {n_layers - 1}")
        if (j, l) in seen:
            raise BadPair(f"duplicate connection {[j, l]}")
        seen.add((j, l))
    for l in range(n_layers - 1):
        if (l, l + 1) not in seen:
            raise MissingConsecutivePair(l)

    spec = NetworkSpec(tuple(widths), tuple(sorted(seen)))

    weights_raw = raw.get("weights") or {}
    if not isinstance(weights_raw, dict):
        raise InvalidNetwork("weights must be an object mapping 'j.i->l.k' to rationals")
    weights: dict[Edge, Fraction] = {}
    for key, val in weights_raw.items():
        e = _parse_weight_key(key)
        if not spec.has_edge(e):
            raise InvalidNetwork(f"weight for non-existent edge {key!r}")
        try:
            weights[e] = Fraction(str(val))
        except (ValueError, ZeroDivisionError):
            raise InvalidNetwork(f"weight {val!r} for {key!r} is not a rational number") from None
    object.__setattr__(spec, "weights", weights)
    return spec


def _weight_key(e: Edge) -> str:
    return f"{e.tail.layer}.{e.tail.index}->{e.head.layer}.{e.head.index}"


def network_to_json(spec: NetworkSpec) -> dict:
    out = {"widths": list(spec.widths), "connections": [list(c) for c in spec.connections]}
    if spec.weights:
        out["weights"] = {_weight_key(e): str(spec.weights[e])
                          for e in sorted(spec.weights, key=edge_sort_key)}
    return out


def load_network(path) -> NetworkSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InvalidNetwork(f"cannot read network file {path}: {exc}") from None
    return validate_network(raw)


def make_network(widths: Sequence[int], skips: Iterable[tuple[int, int]] = ()) -> NetworkSpec:
    """Shorthand: all consecutive pairs plus the given skip pairs."""
    conns = {(l, l + 1) for l in range(len(widths) - 1)} | {tuple(s) for s in skips}
    return validate_network({"widths": list(widths), "connections": [list(c) for c in sorted(conns)]})


def enumerate_substructure_paths(spec: NetworkSpec, cap: int | None = None) -> list[SubstructurePath]:
    """All layer sequences 0 = l_0 < ... < l_k = L along connected pairs, lexicographic."""
    out: list[SubstructurePath] = []
    stack: list[int] = [0]

    def walk(layer: int) -> None:
        if layer == spec.L:
            out.append(SubstructurePath(tuple(stack)))
            if cap is not None and len(out) > cap:
                raise PathCountGuardExceeded(cap, "substructure paths")
            return
        for nxt in spec.successors[layer]:
            stack.append(nxt)
            walk(nxt)
            stack.pop()

    walk(0)
    return out


def beta_vector(p: SubstructurePath, L: int) -> tuple[int, ...]:
    visited = set(p.layers)
    return tuple(1 if l in visited else 0 for l in range(L + 1))


def alpha_vector(p: SubstructurePath, L: int) -> tuple[int, ...]:
    """Row-major flattening of the (L+1)x(L+1) layer adjacency matrix of ``p``."""
    bits = [0] * (L + 1) ** 2
    for j, l in p.layer_pairs():
        bits[j * (L + 1) + l] = 1
    return tuple(bits)


def induce_subgraph(spec: NetworkSpec, p: SubstructurePath) -> tuple[NetworkSpec, tuple[int, ...]]:
    """No-skip network over the layers of ``p``, relabelled 0..k.

    Returns the induced spec and the relabel map ``relabel[k] = original layer``.
    """
    for pair in p.layer_pairs():
        if pair not in spec.pair_set:
            raise InvalidNetwork(f"layer pair {pair} of {p.layers} is not connected")
    widths = tuple(spec.widths[l] for l in p.layers)
    conns = tuple((k, k + 1) for k in range(len(widths) - 1))
    return NetworkSpec(widths, conns), tuple(p.layers)


def lift_path(path: Path, relabel: Sequence[int]) -> Path:
    return tuple(NodeId(relabel[n.layer], n.index) for n in path)


def path_edges(path: Path) -> list[Edge]:
    return [Edge(a, b) for a, b in zip(path, path[1:])]


def check_path(path: Path, spec: NetworkSpec) -> None:
    if len(path) < 2 or path[0].layer != 0 or path[-1].layer != spec.L:
        raise InvalidNetwork(f"path {path_str(path)} must run from layer 0 to layer {spec.L}")
    for n in path:
        if not 0 <= n.layer <= spec.L or not 0 <= n.index < spec.widths[n.layer]:
            raise InvalidNetwork(f"node {tuple(n)} does not exist")
    for e in path_edges(path):
        if not spec.has_edge(e):
            raise InvalidNetwork(f"edge {tuple(e.tail)}->{tuple(e.head)} does not exist")


def edge_incidence(path: Path, spec: NetworkSpec) -> tuple[int, ...]:
    check_path(path, spec)
    bits = [0] * spec.m
    for e in path_edges(path):
        bits[spec.edge_index[e]] = 1
    return tuple(bits)


def path_str(path: Path) -> str:
    return " ".join(f"({n[0]},{n[1]})" for n in path)


def path_to_json(path: Path) -> list[list[int]]:
    return [[n.layer, n.index] for n in path]


def path_from_json(raw) -> Path:
    if not isinstance(raw, list) or not all(
            isinstance(n, list) and len(n) == 2 and all(isinstance(x, int) for x in n) for n in raw):
        raise InvalidNetwork(f"bad path {raw!r}; expected [[layer, index], ...]")
    return tuple(NodeId(*n) for n in raw)
