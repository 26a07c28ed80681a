"""Subdivision sets and greedy choice of a maximal independent substructure set."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import RankShortfall
from .linalg import exact_rank


class Relation(enum.Enum):
    EQUAL = "Equal"
    T_SUBDIVIDES_R = "TSubdividesR"
    R_SUBDIVIDES_T = "RSubdividesT"
    INCOMPARABLE = "Incomparable"


def subdivision_relation(beta_r: Sequence[int], beta_t: Sequence[int]) -> Relation:
    """Classify two substructure paths by the sign pattern of ``beta_r - beta_t``.

    Only zeros and -1 means ``t`` visits every layer of ``r`` and more, i.e.
    ``t`` is a path subdivision of ``r``.
    """
    if len(beta_r) != len(beta_t):
        raise ValueError("beta vectors must have equal length")
    diff = {a - b for a, b in zip(beta_r, beta_t)}
    pos, neg = 1 in diff, -1 in diff
    if pos and neg:
        return Relation.INCOMPARABLE
    if neg:
        return Relation.T_SUBDIVIDES_R
    if pos:
        return Relation.R_SUBDIVIDES_T
    return Relation.EQUAL


@dataclass(frozen=True)
class SubdivisionSet:
    owner: int
    members: frozenset[int]

    def __len__(self) -> int:
        return len(self.members)


def compute_subdivision_sets(betas: Sequence[Sequence[int]]) -> list[SubdivisionSet]:
    out = []
    for r, br in enumerate(betas):
        members = frozenset(t for t, bt in enumerate(betas)
                            if subdivision_relation(br, bt) is Relation.T_SUBDIVIDES_R)
        out.append(SubdivisionSet(r, members))
    return out


def has_shared_swap_point(beta_a: Sequence[int], beta_b: Sequence[int]) -> bool:
    """True if ``beta_a - beta_b`` has a +1 and a -1 with a commonly visited layer between them."""
    x = [a - b for a, b in zip(beta_a, beta_b)]
    plus = [i for i, v in enumerate(x) if v == 1]
    minus = [i for i, v in enumerate(x) if v == -1]
    shared = [i for i in range(len(x)) if beta_a[i] == 1 and beta_b[i] == 1]
    for a in plus:
        for c in minus:
            lo, hi = min(a, c), max(a, c)
            if any(lo < b < hi for b in shared):
                return True
    return False


@dataclass
class SelectionResult:
    selected: list[int]
    R: int
    order: list[int]
    skipped: list[tuple[int, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def find_underlying(betas: Sequence[Sequence[int]]) -> int:
    full = [i for i, b in enumerate(betas) if all(b)]
    if len(full) != 1:
        raise ValueError(f"expected exactly one underlying substructure path, found {len(full)}")
    return full[0]


def candidate_order(betas: Sequence[Sequence[int]], u_sets: Sequence[SubdivisionSet]) -> list[int]:
    """Underlying path first, then descending |U|, ties broken by smaller beta."""
    u0 = find_underlying(betas)
    rest = sorted((r for r in range(len(betas)) if r != u0),
                  key=lambda r: (-len(u_sets[r]), tuple(betas[r])))
    return [u0] + rest


def select_independent_substructures(alphas: Sequence[Sequence[int]],
                                     betas: Sequence[Sequence[int]],
                                     u_sets: Sequence[SubdivisionSet]) -> SelectionResult:
    R = exact_rank(alphas)
    order = candidate_order(betas, u_sets)
    size = {r: len(u_sets[r]) for r in order}
    A = [alphas[order[0]]]
    selected = [order[0]]
    result = SelectionResult(selected, R, order)

    for i in range(1, len(order)):
        if len(selected) == R:
            break
        cur, prev = order[i], order[i - 1]
        if exact_rank(A + [alphas[cur]]) != len(A) + 1:
            continue
        if size[prev] == size[cur]:
            parents = [order[j] for j in range(i - 1)
                       if prev in u_sets[order[j]].members and cur in u_sets[order[j]].members]
            if parents and has_shared_swap_point(betas[prev], betas[cur]):
                result.skipped.append(
                    (cur, f"same |U| as {prev}, both subdivide {parents[0]}, "
                          "and they swap segments around a shared layer"))
                continue
        A.append(alphas[cur])
        selected.append(cur)

    if len(selected) < R:
        result.warnings.append(
            f"candidates exhausted at {len(selected)} of {R}; admitting skipped candidates")
        for cur, _ in result.skipped:
            if len(selected) == R:
                break
            if exact_rank(A + [alphas[cur]]) == len(A) + 1:
                A.append(alphas[cur])
                selected.append(cur)
    if len(selected) < R:
        raise RankShortfall(f"selected {len(selected)} independent substructures, rank is {R}")
    pos = {r: i for i, r in enumerate(order)}
    selected[1:] = sorted(selected[1:], key=pos.__getitem__)
    return result
