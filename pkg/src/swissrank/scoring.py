"""Rating methods on ranking problems.

* row sum: ``s = R e``
* generalized row sum: ``(I + eps L) x = (1 + eps m n) s``
* least squares: ``L q = s`` with ``sum(q) == 0``

plus the iterative decomposition of least squares and the conversion of a
rating vector into a (weak) ranking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BipartiteOrDisconnected,
    DegenerateSize,
    DisconnectedProblem,
    NoRankConvergence,
    SolverFailure,
)
from .problem import Ranking, RankingProblem, graph_summary, laplacian

RESIDUAL_TOL = 1e-10
ZERO_SUM_TOL = 1e-9
DEFAULT_TIE_TOL = 1e-9
DEFAULT_STOP_TOL = 1e-10
DEFAULT_MAX_K = 10_000


@dataclass(frozen=True, eq=False)
class RatingVector:
    labels: tuple
    values: np.ndarray
    method: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if not np.all(np.isfinite(v)):
            raise SolverFailure(f"{self.method} produced non-finite ratings")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def as_dict(self) -> dict:
        return dict(zip(self.labels, self.values.tolist()))


def _check_residual(A, x, b, what):
    residual = np.max(np.abs(A @ x - b), initial=0.0)
    if residual > RESIDUAL_TOL * (1 + np.max(np.abs(b), initial=0.0)):
        raise SolverFailure(f"{what}: residual {residual:.3g} above tolerance")


def row_sum(problem: RankingProblem) -> RatingVector:
    return RatingVector(problem.labels, problem.results.sum(axis=1), "rowsum")


def generalized_row_sum(problem: RankingProblem, epsilon: float) -> RatingVector:
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    n = problem.n
    m = int(problem.matches.max())
    s = problem.results.sum(axis=1)
    A = np.eye(n) + epsilon * laplacian(problem)
    b = (1 + epsilon * m * n) * s
    x = np.linalg.solve(A, b)
    _check_residual(A, x, b, "generalized row sum")
    return RatingVector(problem.labels, x, "grs", {"epsilon": epsilon})


def reasonable_epsilon_bound(problem: RankingProblem) -> float:
    """Upper bound ``1 / (m (n - 2))`` for the generalized row sum parameter."""
    n = problem.n
    if n <= 2:
        raise DegenerateSize("the reasonable epsilon bound needs n >= 3")
    m = int(problem.matches.max())
    if m == 0:
        raise DegenerateSize("no comparisons: the reasonable epsilon bound is undefined")
    return 1.0 / (m * (n - 2))


def least_squares(problem: RankingProblem) -> RatingVector:
    """Least squares ratings, normalized to sum to zero.

    The singular system ``L q = s`` is solved as ``(L + J) q = s`` with ``J``
    the all-ones matrix; since ``e's = 0`` the solution satisfies ``e'q = 0``.
    Raises :class:`DisconnectedProblem` when the solution is not unique.
    """
    if not graph_summary(problem).connected:
        raise DisconnectedProblem(
            "least squares rating is not unique: comparison graph is disconnected"
        )
    L = laplacian(problem)
    s = problem.results.sum(axis=1)
    q = np.linalg.solve(L + 1.0, s)
    _check_residual(L, q, s, "least squares")
    if abs(q.sum()) > ZERO_SUM_TOL:
        raise SolverFailure(f"least squares ratings sum to {q.sum():.3g}, not 0")
    return RatingVector(problem.labels, q, "ls")


def ranking_from_ratings(
    ratings: RatingVector | Sequence[float],
    labels: Sequence | None = None,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> Ranking:
    """Sort by descending rating; ratings within ``tie_tol`` (chained) tie."""
    if isinstance(ratings, RatingVector):
        labels = ratings.labels if labels is None else labels
        values = ratings.values
    else:
        values = np.asarray(ratings, dtype=float)
        if labels is None:
            labels = range(len(values))
    labels = list(labels)
    # stable sort keeps input order inside tie-groups
    order = sorted(range(len(values)), key=lambda i: -values[i])
    groups: list[list] = []
    prev = None
    for i in order:
        if prev is not None and values[prev] - values[i] <= tie_tol:
            groups[-1].append(labels[i])
        else:
            groups.append([labels[i]])
        prev = i
    return Ranking(tuple(groups))


@dataclass(frozen=True, eq=False)
class DecompositionStep:
    k: int
    ratings: np.ndarray
    ranking: Ranking


@dataclass(frozen=True, eq=False)
class DecompositionTrace:
    labels: tuple
    steps: tuple
    converged_at: int
    limit: RatingVector

    @property
    def final(self) -> np.ndarray:
        return self.steps[-1].ratings


def ls_decomposition(
    problem: RankingProblem,
    max_k: int = DEFAULT_MAX_K,
    stop_tol: float = DEFAULT_STOP_TOL,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> DecompositionTrace:
    """Iterative decomposition of the least squares rating.

    ``q0 = s / d`` and ``q_k = q_{k-1} + (1/d) [(dI - L)/d]^k s`` where ``d``
    is the maximal degree. Iteration stops once the update falls below
    ``stop_tol`` in max norm or ``k == max_k``.

    ``converged_at`` is the first step from which every recorded ranking
    equals the least squares ranking.
    """
    summary = graph_summary(problem)
    if not summary.connected or summary.regular_bipartite:
        raise BipartiteOrDisconnected(
            "decomposition needs a connected, not regular bipartite comparison graph"
        )
    limit = least_squares(problem)
    limit_ranking = ranking_from_ratings(limit, tie_tol=tie_tol)

    d = float(summary.max_degree)
    A = (d * np.eye(problem.n) - laplacian(problem)) / d
    term = problem.results.sum(axis=1)
    q = term / d
    steps = [DecompositionStep(0, q, ranking_from_ratings(q, problem.labels, tie_tol))]
    for k in range(1, max_k + 1):
        term = A @ term
        update = term / d
        q = q + update
        steps.append(DecompositionStep(k, q, ranking_from_ratings(q, problem.labels, tie_tol)))
        if np.max(np.abs(update), initial=0.0) < stop_tol:
            break

    converged_at = None
    for step in reversed(steps):
        if step.ranking != limit_ranking:
            break
        converged_at = step.k
    if converged_at is None:
        raise NoRankConvergence(
            f"ranking has not reached the least squares ranking after {steps[-1].k} steps"
        )
    return DecompositionTrace(problem.labels, tuple(steps), converged_at, limit)
