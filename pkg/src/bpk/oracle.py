"""Brute-force verifier for basis path sets.

Path independence is checked as rational linear independence of edge
incidence vectors.  Ranks of full path spaces go through :class:`SpanBasis`,
an incremental Gauss-Jordan reduction over ``Fraction``; candidate sets are
additionally ranked with the Bareiss routine in :mod:`bpk.linalg`, so a
certificate needs both elimination routes to agree.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import Inconsistent, PathCountGuardExceeded
from .linalg import exact_rank
from .network import NetworkSpec, NodeId, Path, check_path, edge_incidence, path_edges

DEFAULT_PATH_CAP = 10_000


def default_cap() -> int:
    raw = os.environ.get("BPK_PATH_CAP")
    return int(raw) if raw else DEFAULT_PATH_CAP


class SpanBasis:
    """Reduced row echelon basis grown one vector at a time.

    Rows are sparse ``{column: Fraction}`` dicts with a unit pivot and zeros
    in every other pivot column.  With ``track=True`` each row also records
    its expression in terms of the inserted vectors.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, dict[int, Fraction]] = {}
        self.track = track
        self.origin: dict[int, dict[int, Fraction]] = {}
        self.n_inserted = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict[int, Fraction]) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        """Return ``(residual, combo)`` with ``vec = residual + sum(combo[i] * inserted[i])``."""
        res = dict(vec)
        combo: dict[int, Fraction] = {}
        for c in [c for c in vec if c in self.rows]:
            coef = res.get(c)
            if not coef:
                continue
            for k, v in self.rows[c].items():
                nv = res.get(k, 0) - coef * v
                if nv:
                    res[k] = nv
                else:
                    res.pop(k, None)
            if self.track:
                for i, v in self.origin[c].items():
                    combo[i] = combo.get(i, 0) + coef * v
        return res, {i: v for i, v in combo.items() if v}

    def add(self, vec: dict[int, Fraction]) -> tuple[bool, dict[int, Fraction]]:
        """Insert ``vec``.  Returns ``(grew, combo)``; ``combo`` expresses a
        dependent vector in terms of earlier insertions."""
        idx = self.n_inserted
        self.n_inserted += 1
        res, combo = self.reduce(vec)
        if not res:
            return False, combo
        p = min(res)
        scale = res[p]
        row = {k: Fraction(v) / scale for k, v in res.items()}
        org = {}
        if self.track:
            org = {i: -v / scale for i, v in combo.items()}
            org[idx] = org.get(idx, 0) + 1 / Fraction(scale)
        for c, other in self.rows.items():
            f = other.get(p)
            if not f:
                continue
            for k, v in row.items():
                nv = other.get(k, 0) - f * v
                if nv:
                    other[k] = nv
                else:
                    other.pop(k, None)
            if self.track:
                oo = self.origin[c]
                for i, v in org.items():
                    nv = oo.get(i, 0) - f * v
                    if nv:
                        oo[i] = nv
                    else:
                        oo.pop(i, None)
        self.rows[p] = row
        if self.track:
            self.origin[p] = org
        return True, {}


def sparse_incidence(path: Path, spec: NetworkSpec) -> dict[int, Fraction]:
    return {spec.edge_index[e]: Fraction(1) for e in path_edges(path)}


@dataclass
class PathSpace:
    spec: NetworkSpec
    all_paths: list[Path]
    _rank: int | None = field(default=None, repr=False)

    @property
    def incidence_matrix(self) -> list[tuple[int, ...]]:
        return [edge_incidence(p, self.spec) for p in self.all_paths]

    @property
    def rank(self) -> int:
        if self._rank is None:
            sb = SpanBasis()
            for p in self.all_paths:
                sb.add(sparse_incidence(p, self.spec))
            self._rank = sb.rank
        return self._rank


def enumerate_all_paths(spec: NetworkSpec, cap: int | None = None) -> PathSpace:
    """Every input-to-output path, depth first, in lexicographic node order."""
    cap = default_cap() if cap is None else cap
    succ = {l: [NodeId(nl, i) for nl in spec.successors[l] for i in range(spec.widths[nl])]
            for l in range(spec.layer_count)}
    out: list[Path] = []
    stack: list[NodeId] = []

    def walk(node: NodeId) -> None:
        stack.append(node)
        if node.layer == spec.L:
            out.append(tuple(stack))
            if len(out) > cap:
                raise PathCountGuardExceeded(cap)
        else:
            for nxt in succ[node.layer]:
                walk(nxt)
        stack.pop()

    for i in range(spec.widths[0]):
        walk(NodeId(0, i))
    return PathSpace(spec, out)


def count_paths(spec: NetworkSpec) -> int:
    """Number of input-to-output paths, by dynamic programming over layers."""
    ways = [0] * spec.layer_count
    ways[0] = spec.widths[0]
    for l in range(1, spec.layer_count):
        ways[l] = spec.widths[l] * sum(ways[j] for j, k in spec.connections if k == l)
    return ways[spec.L]


@dataclass
class Verdict:
    kind: str  # "IsBasis" | "NotIndependent" | "NotMaximal"
    size: int
    rank_B: int
    rank_P: int
    witness: list[tuple[Fraction, int]] = field(default_factory=list)
    gap: int = 0

    @property
    def ok(self) -> bool:
        return self.kind == "IsBasis"

    def to_json(self, paths: Sequence[Path] | None = None) -> dict:
        out = {"verdict": self.kind, "size": self.size, "rank_B": self.rank_B, "rank_P": self.rank_P}
        if self.kind == "NotIndependent":
            out["witness"] = [
                {"coefficient": str(c), "index": i,
                 **({"path": [[n[0], n[1]] for n in paths[i]]} if paths is not None else {})}
                for c, i in self.witness]
        if self.kind == "NotMaximal":
            out["gap"] = self.gap
        return out


def dependency_witness(B: Sequence[Path], spec: NetworkSpec) -> list[tuple[Fraction, int]]:
    """Rational coefficients ``c_i`` (not all zero) with ``sum c_i * incidence(B[i]) = 0``."""
    sb = SpanBasis(track=True)
    for idx, p in enumerate(B):
        grew, combo = sb.add(sparse_incidence(p, spec))
        if not grew:
            return [(Fraction(1), idx)] + sorted(((-v, i) for i, v in combo.items()), key=lambda t: t[1])
    return []


def certify_basis(B: Sequence[Path], spec: NetworkSpec, cap: int | None = None,
                  space: PathSpace | None = None) -> Verdict:
    for p in B:
        check_path(p, spec)
    space = space or enumerate_all_paths(spec, cap)
    rank_B = exact_rank([edge_incidence(p, spec) for p in B]) if B else 0
    rank_P = space.rank
    if rank_B < len(B):
        return Verdict("NotIndependent", len(B), rank_B, rank_P, witness=dependency_witness(B, spec))
    if rank_B < rank_P:
        return Verdict("NotMaximal", len(B), rank_B, rank_P, gap=rank_P - rank_B)
    return Verdict("IsBasis", len(B), rank_B, rank_P)


@dataclass
class Representation:
    coefficients: list[Fraction]
    integer_within_bound: bool
    bound: int

    def support(self) -> list[tuple[Fraction, int]]:
        return [(c, i) for i, c in enumerate(self.coefficients) if c]


class Representer:
    """Solves ``incidence(path) = sum c_i * incidence(B[i])`` exactly, reusing one reduction of ``B``."""

    def __init__(self, B: Sequence[Path], spec: NetworkSpec, bound: int = 3):
        self.B = list(B)
        self.spec = spec
        self.bound = bound
        self._sb = SpanBasis(track=True)
        self.independent = True
        for p in self.B:
            grew, _ = self._sb.add(sparse_incidence(p, spec))
            self.independent &= grew

    def __call__(self, path: Path) -> Representation:
        check_path(path, self.spec)
        res, combo = self._sb.reduce(sparse_incidence(path, self.spec))
        if res:
            raise Inconsistent(f"path is not in the span of the {len(self.B)} given paths")
        coeffs = [Fraction(combo.get(i, 0)) for i in range(len(self.B))]
        # coefficients are unique when B is independent, so the bounded integer
        # search reduces to inspecting them
        ok = self.independent and all(c.denominator == 1 and abs(c) <= self.bound for c in coeffs)
        return Representation(coeffs, ok, self.bound)


def represent(path: Path, B: Sequence[Path], spec: NetworkSpec, bound: int = 3) -> Representation:
    return Representer(B, spec, bound)(path)


@dataclass
class SignedPathExpression:
    terms: list[tuple[int, Path]]

    def value(self, spec: NetworkSpec) -> tuple[int, ...]:
        return evaluate_expression(self, spec)


def evaluate_expression(expr: SignedPathExpression | Iterable[tuple[int, Path]],
                        spec: NetworkSpec) -> tuple[int, ...]:
    """Signed multiset sum of edge incidences (path addition / removal)."""
    terms = expr.terms if isinstance(expr, SignedPathExpression) else list(expr)
    out = [0] * spec.m
    for sign, p in terms:
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign!r}")
        for i, b in enumerate(edge_incidence(p, spec)):
            out[i] += sign * b
    return tuple(out)
