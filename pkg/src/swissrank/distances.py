"""Distances between strict rankings.

``kemeny_distance`` counts discordant pairs. ``weighted_distance`` is the
minimum cost of turning one ranking into the other by adjacent swaps, where a
swap of positions k and k+1 costs ``weights[k-1]``; for non-increasing
weights it is computed by the winners' decomposition.
"""

from __future__ import annotations

import heapq
import math
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import NonMonotoneWeights, NotStrict, ObjectSetMismatch, TooLarge
from .problem import Ranking

BRUTE_FORCE_MAX_N = 7


def harmonic_weights(n: int) -> tuple[float, ...]:
    """``1, 1/2, ..., 1/(n-1)``"""
    return tuple(1.0 / i for i in range(1, n))


def _order(r) -> list:
    if isinstance(r, Ranking):
        if not r.is_strict:
            raise NotStrict("distances are defined on strict rankings only")
        return r.order()
    order = list(r)
    if len(set(order)) != len(order):
        raise NotStrict("ranking lists an object twice")
    return order


def _pair(r1, r2) -> tuple[list, list]:
    o1, o2 = _order(r1), _order(r2)
    if set(o1) != set(o2):
        raise ObjectSetMismatch("rankings are over different object sets")
    return o1, o2


def _check_weights(weights, n: int) -> tuple[float, ...]:
    w = tuple(float(x) for x in weights)
    if len(w) != n - 1:
        raise NonMonotoneWeights(f"need {n - 1} weights for {n} objects, got {len(w)}")
    if any(not x > 0 for x in w):
        raise NonMonotoneWeights("weights must be positive")
    if any(a < b for a, b in zip(w, w[1:])):
        raise NonMonotoneWeights("weights must be non-increasing")
    return w


def kemeny_distance(r1, r2) -> int:
    o1, o2 = _pair(r1, r2)
    pos = {x: i for i, x in enumerate(o2)}
    seq = [pos[x] for x in o1]
    n = len(seq)
    return sum(1 for i in range(n) for j in range(i + 1, n) if seq[i] > seq[j])


def weighted_distance(r1, r2, weights: Sequence[float] | None = None) -> float:
    """Winners' decomposition.

    For each position i of ``r2`` the object placed there is bubbled up in a
    working copy of ``r1`` from its current position j to i, paying
    ``weights[i] + ... + weights[j-1]`` (0-based).
    """
    o1, o2 = _pair(r1, r2)
    n = len(o1)
    w = harmonic_weights(n) if weights is None else _check_weights(weights, n)
    work = list(o1)
    costs = []
    for i, target in enumerate(o2):
        j = work.index(target, i)
        if j > i:
            costs.extend(w[i:j])
            work.insert(i, work.pop(j))
    return math.fsum(costs)


@lru_cache(maxsize=64)
def _distances_from_identity(n: int, weights: tuple[float, ...]) -> dict:
    """Uniform-cost search over all permutations of ``range(n)``."""
    start = tuple(range(n))
    dist = {start: 0.0}
    heap = [(0.0, start)]
    done = set()
    while heap:
        d, perm = heapq.heappop(heap)
        if perm in done:
            continue
        done.add(perm)
        for k in range(n - 1):
            nxt = list(perm)
            nxt[k], nxt[k + 1] = nxt[k + 1], nxt[k]
            nxt = tuple(nxt)
            nd = d + weights[k]
            if nd < dist.get(nxt, math.inf):
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    return dist


def brute_force_weighted(r1, r2, weights: Sequence[float] | None = None) -> float:
    """Exact shortest adjacent-swap path cost, by uniform-cost search.

    Objects are relabelled so that ``r1`` becomes the identity; the search
    over the permutation graph is cached per ``(n, weights)``.
    """
    o1, o2 = _pair(r1, r2)
    n = len(o1)
    if n > BRUTE_FORCE_MAX_N:
        raise TooLarge(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if weights is None:
        w = harmonic_weights(n)
    else:
        w = tuple(float(x) for x in weights)
        if len(w) != n - 1 or any(not x > 0 for x in w):
            raise NonMonotoneWeights(f"need {n - 1} positive weights")
    label = {x: i for i, x in enumerate(o1)}
    target = tuple(label[x] for x in o2)
    return _distances_from_identity(n, w)[target]


METRICS: dict[str, Callable] = {
    "kemeny": kemeny_distance,
    "weighted": weighted_distance,
}


def distance_matrix(
    rankings: Mapping[str, Ranking | Sequence],
    metric: str | Callable = "kemeny",
    weights: Sequence[float] | None = None,
) -> tuple[list[str], np.ndarray]:
    """Pairwise distances between named rankings, in the mapping's order."""
    if len(rankings) < 2:
        raise ValueError("need at least two rankings")
    if isinstance(metric, str):
        try:
            fn = METRICS[metric]
        except KeyError:
            raise ValueError(f"unknown metric {metric!r}") from None
    else:
        fn = metric
    if fn is weighted_distance or fn is brute_force_weighted:
        base = fn
        fn = lambda a, b: base(a, b, weights)  # noqa: E731
    names = list(rankings)
    D = np.zeros((len(names), len(names)))
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            D[a, b] = D[b, a] = fn(rankings[names[a]], rankings[names[b]])
    return names, D

