"""Predictive, retrodictive and robustness evaluation; classical MDS."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .distances import METRICS, weighted_distance
from .errors import DegenerateSpectrum, DisconnectedAtRound, DisconnectedProblem, NotStrict
from .problem import Ranking
from .tournament import TournamentLog, match_points


@dataclass(frozen=True)
class PerformanceScore:
    upset_match_points: float
    upset_board_points: float
    matches_considered: int


def _upsets(ranking: Ranking, log: TournamentLog, first: int, last: int) -> PerformanceScore:
    if not ranking.is_strict:
        raise NotStrict("upset scoring needs a strict ranking")
    if ranking.objects != frozenset(log.teams):
        raise NotStrict("ranking does not cover the tournament's teams")
    place = {team: i for i, team in enumerate(ranking.order())}
    mp = bp = 0.0
    count = 0
    for r in range(first, last + 1):
        for match in log.rounds[r - 1]:
            bp_home = match.board_points_home
            if place[match.home] > place[match.away]:
                underdog_bp = bp_home
            else:
                underdog_bp = match.board_points_away(log.t)
            mp += match_points(underdog_bp, log.t)
            bp += underdog_bp
            count += 1
    return PerformanceScore(mp, bp, count)


def predictive_score(
    ranking: Ranking, log: TournamentLog, after_round: int, horizon: int | None = None
) -> PerformanceScore:
    """Points won by lower-ranked teams in rounds after ``after_round``.

    ``horizon`` limits the look-ahead to that many rounds (``1`` scores only
    the next round); by default every remaining round counts.
    """
    if not 0 <= after_round <= log.n_rounds:
        raise ValueError(f"after_round must lie in 0..{log.n_rounds}")
    last = log.n_rounds if horizon is None else min(log.n_rounds, after_round + horizon)
    return _upsets(ranking, log, after_round + 1, last)


def retrodictive_score(ranking: Ranking, log: TournamentLog, through_round: int) -> PerformanceScore:
    """Points won by lower-ranked teams in rounds ``1..through_round``."""
    if not 0 <= through_round <= log.n_rounds:
        raise ValueError(f"through_round must lie in 0..{log.n_rounds}")
    return _upsets(ranking, log, 1, through_round)


def _resolve_ranker(method) -> Callable[[TournamentLog, int], Ranking]:
    if hasattr(method, "rank"):
        return lambda log, r: method.rank(log, r)[0]
    return method


def robustness_series(
    method,
    log: TournamentLog,
    metric: str | Callable = "kemeny",
    weights: Sequence[float] | None = None,
    first_round: int = 3,
) -> list[tuple[int, float]]:
    """Distance between the rankings after rounds r and r+1, r = first_round..c-1.

    ``method`` is a :class:`~swissrank.battery.MethodSpec` or any callable
    ``(log, round) -> Ranking`` producing strict rankings.
    """
    ranker = _resolve_ranker(method)
    if isinstance(metric, str):
        metric = METRICS[metric]
    if metric is weighted_distance:
        dist = lambda a, b: weighted_distance(a, b, weights)  # noqa: E731
    else:
        dist = metric

    def at(r):
        try:
            return ranker(log, r)
        except DisconnectedAtRound:
            raise
        except DisconnectedProblem as exc:
            raise DisconnectedAtRound(r) from exc

    series = []
    if first_round >= log.n_rounds:
        return series
    previous = at(first_round)
    for r in range(first_round, log.n_rounds):
        current = at(r + 1)
        series.append((r, float(dist(previous, current))))
        previous = current
    return series


@dataclass(frozen=True, eq=False)
class Embedding:
    coordinates: np.ndarray
    stress: float
    rsq: float
    eigenvalues: np.ndarray
    degenerate: bool = False


def _pairwise(X: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - X[None, :, :]
    return np.sqrt((diff**2).sum(axis=-1))


def classical_mds(D, dims: int = 2, strict: bool = False) -> Embedding:
    """Torgerson scaling of a distance matrix.

    Double-centres ``-D**2 / 2``, keeps the ``dims`` largest positive
    eigenpairs and scales eigenvectors by the square roots of the
    eigenvalues. When fewer than ``dims`` eigenvalues are positive the
    missing axes are zero and ``degenerate`` is set (or, with ``strict``,
    :class:`DegenerateSpectrum` is raised).

    Stress is Kruskal's stress-1 against the input distances; ``rsq`` is the
    squared correlation between input and embedded distances.
    """
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    if D.shape != (n, n) or n < 3:
        raise ValueError("need a square distance matrix over at least 3 items")
    if not np.allclose(D, D.T, atol=1e-12) or np.any(D < 0) or np.any(np.diag(D) != 0):
        raise ValueError("distance matrix must be symmetric, nonnegative, zero-diagonal")

    C = np.eye(n) - 1.0 / n
    B = -0.5 * C @ (D**2) @ C
    B = (B + B.T) / 2
    vals, vecs = np.linalg.eigh(B)
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    tol = 1e-10 * max(1.0, float(np.abs(vals).max()))
    k = int(np.sum(vals[:dims] > tol))
    degenerate = k < dims
    if degenerate and strict:
        raise DegenerateSpectrum(f"only {k} positive eigenvalues, {dims} requested")

    X = np.zeros((n, dims))
    for a in range(k):
        v = vecs[:, a]
        # deterministic sign: largest-magnitude component positive
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        X[:, a] = v * np.sqrt(vals[a])

    iu = np.triu_indices(n, 1)
    d_in = D[iu]
    d_out = _pairwise(X)[iu]
    denom = float((d_in**2).sum())
    stress = float(np.sqrt(((d_in - d_out) ** 2).sum() / denom)) if denom > 0 else 0.0
    if d_in.std() > 1e-12 and d_out.std() > 1e-12:
        rsq = float(np.corrcoef(d_in, d_out)[0, 1] ** 2)
    else:
        # correlation undefined for constant distances: exact fit or nothing
        scale = 1.0 + float(np.abs(d_in).max(initial=0.0))
        rsq = 1.0 if np.max(np.abs(d_in - d_out), initial=0.0) <= 1e-9 * scale else 0.0
    return Embedding(X, stress, min(rsq, 1.0), vals, degenerate)
