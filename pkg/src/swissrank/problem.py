"""Ranking problems: objects, matches matrix, results matrix.

A problem is the triplet (labels, M, R) where ``M[i, j]`` counts the
comparisons between objects i and j and ``R[i, j]`` holds their net outcome
from i's point of view.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    AsymmetricMatches,
    BoundViolation,
    DimensionMismatch,
    InadmissibleScale,
    NotSkewSymmetric,
    NotStrict,
)

TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RankingProblem:
    labels: tuple
    matches: np.ndarray
    results: np.ndarray

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        return self.labels.index(label)

    def __eq__(self, other):
        if not isinstance(other, RankingProblem):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.matches, other.matches)
            and np.array_equal(self.results, other.results)
        )

    def __hash__(self):
        return hash((self.labels, self.matches.tobytes(), self.results.tobytes()))


def validate_problem(labels: Sequence, results, matches) -> RankingProblem:
    """Check the problem invariants and build an immutable problem.

    ``matches`` must be a symmetric nonnegative integer matrix with a zero
    diagonal, ``results`` skew-symmetric with ``|r_ij| <= m_ij``.
    Comparisons use an absolute tolerance of 1e-12.
    """
    labels = tuple(labels)
    n = len(labels)
    if n < 2:
        raise DimensionMismatch(f"a ranking problem needs at least 2 objects, got {n}")
    if len(set(labels)) != n:
        raise DimensionMismatch("object labels must be unique")
    R = np.asarray(results, dtype=float)
    M_raw = np.asarray(matches)
    if R.shape != (n, n) or M_raw.shape != (n, n):
        raise DimensionMismatch(
            f"expected {n}x{n} matrices, got R{R.shape} and M{M_raw.shape}"
        )
    if not np.all(np.isfinite(R)):
        raise NotSkewSymmetric("results matrix has non-finite entries")
    M_float = np.asarray(M_raw, dtype=float)
    if np.any(M_float < 0) or not np.array_equal(M_float, np.round(M_float)):
        raise AsymmetricMatches("matches matrix must hold nonnegative integers")
    M = M_float.astype(np.int64)
    if not np.array_equal(M, M.T):
        raise AsymmetricMatches("matches matrix is not symmetric")
    if np.any(np.diag(M) != 0):
        raise AsymmetricMatches("matches matrix has a nonzero diagonal")
    if np.max(np.abs(R + R.T)) > TOL:
        raise NotSkewSymmetric("results matrix is not skew-symmetric")
    excess = np.abs(R) - M
    if np.max(excess) > TOL:
        i, j = np.unravel_index(np.argmax(excess), excess.shape)
        raise BoundViolation(
            f"|r[{labels[i]!r},{labels[j]!r}]| = {abs(R[i, j]):g} exceeds m = {M[i, j]}"
        )
    return RankingProblem(labels, _frozen(M), _frozen(R))


@dataclass(frozen=True)
class GraphSummary:
    degrees: tuple
    max_degree: int
    max_multiplicity: int
    connected: bool
    regular_bipartite: bool


def _components_and_coloring(adj: np.ndarray) -> tuple[int, bool]:
    """Number of connected components and whether the graph is 2-colorable."""
    n = adj.shape[0]
    color = [-1] * n
    components = 0
    bipartite = True
    for root in range(n):
        if color[root] >= 0:
            continue
        components += 1
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(adj[u]):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    bipartite = False
    return components, bipartite


def graph_summary(problem: RankingProblem) -> GraphSummary:
    M = problem.matches
    degrees = M.sum(axis=1)
    components, bipartite = _components_and_coloring(M > 0)
    regular = bool(np.all(degrees == degrees[0]))
    return GraphSummary(
        degrees=tuple(int(d) for d in degrees),
        max_degree=int(degrees.max()),
        max_multiplicity=int(M.max()),
        connected=components == 1,
        regular_bipartite=regular and bipartite,
    )


def laplacian(problem: RankingProblem) -> np.ndarray:
    M = problem.matches.astype(float)
    return np.diag(M.sum(axis=1)) - M


def scale_results(problem: RankingProblem, k: float) -> RankingProblem:
    """Admissible transformation: multiply every result by ``k > 0``."""
    if not k > 0:
        raise InadmissibleScale(f"scale factor must be positive, got {k}")
    scaled = k * problem.results
    if np.max(np.abs(scaled) - problem.matches) > TOL:
        raise InadmissibleScale(f"scaling by {k} pushes some |r_ij| above m_ij")
    return RankingProblem(problem.labels, problem.matches, _frozen(scaled))


@dataclass(frozen=True)
class Ranking:
    """Weak order over objects: tie-groups listed from best to worst."""

    groups: tuple

    def __post_init__(self):
        groups = tuple(frozenset(g) for g in self.groups)
        if any(not g for g in groups):
            raise ValueError("tie-groups must be nonempty")
        seen: set = set()
        for g in groups:
            if seen & g:
                raise ValueError("an object appears in more than one tie-group")
            seen |= g
        object.__setattr__(self, "groups", groups)

    @classmethod
    def from_order(cls, order: Iterable) -> "Ranking":
        return cls(tuple(frozenset([x]) for x in order))

    @property
    def objects(self) -> frozenset:
        return frozenset().union(*self.groups)

    @property
    def is_strict(self) -> bool:
        return all(len(g) == 1 for g in self.groups)

    def order(self) -> list:
        """Objects best to worst; only defined for strict rankings."""
        if not self.is_strict:
            raise NotStrict("ranking contains ties")
        return [next(iter(g)) for g in self.groups]

    def positions(self) -> dict:
        """Competition-style position (1-based) of every object."""
        pos = {}
        rank = 1
        for g in self.groups:
            for x in g:
                pos[x] = rank
            rank += len(g)
        return pos

    def reversed(self) -> "Ranking":
        return Ranking(self.groups[::-1])

    def __len__(self):
        return sum(len(g) for g in self.groups)
