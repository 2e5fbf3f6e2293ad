"""Random instance generators and exact oracles shared by the tests."""

from __future__ import annotations

from fractions import Fraction
import itertools

import numpy as np

from swissrank.problem import graph_summary, validate_problem
from swissrank.tournament import MatchResult, TournamentLog


def labels(n):
    return [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"o{i}" for i in range(n)]


def random_problem(rng, n, max_m=2, density=0.6, connected=True, integer_results=False):
    """Random valid problem; retries until connected when requested."""
    while True:
        M = np.zeros((n, n), dtype=int)
        for i, j in itertools.combinations(range(n), 2):
            if rng.random() < density:
                M[i, j] = M[j, i] = rng.integers(1, max_m + 1)
        R = np.zeros((n, n))
        for i, j in itertools.combinations(range(n), 2):
            if M[i, j]:
                if integer_results:
                    r = float(rng.integers(-M[i, j], M[i, j] + 1))
                else:
                    r = rng.uniform(-M[i, j], M[i, j])
                R[i, j], R[j, i] = r, -r
        problem = validate_problem(labels(n), R, M)
        if not connected or graph_summary(problem).connected:
            return problem


def round_robin(rng, n):
    M = np.ones((n, n), dtype=int) - np.eye(n, dtype=int)
    U = np.triu(rng.uniform(-1, 1, size=(n, n)), 1)
    return validate_problem(labels(n), U - U.T, M)


def random_pairing(rng, teams, met):
    """Random perfect matching avoiding pairs in ``met`` (backtracking)."""
    teams = list(teams)
    rng.shuffle(teams)

    def solve(rest):
        if not rest:
            return []
        first, others = rest[0], rest[1:]
        candidates = list(others)
        rng.shuffle(candidates)
        for other in candidates:
            if frozenset((first, other)) in met:
                continue
            tail = solve([x for x in others if x != other])
            if tail is not None:
                return [(first, other)] + tail
        return None

    return solve(teams)


def random_log(rng, n, rounds, t=2, attempts=200):
    """No-bye log of ``rounds`` rounds with random board scores.

    Round-by-round pairing can get stuck; the whole schedule is redrawn then.
    """
    teams = [f"T{i:02d}" for i in range(n)]
    scores = np.arange(0, 4 * t + 1) / 2
    for _ in range(attempts):
        met: set = set()
        schedule = []
        for _ in range(rounds):
            pairs = random_pairing(rng, teams, met)
            if pairs is None:
                break
            met.update(frozenset(p) for p in pairs)
            schedule.append(pairs)
        else:
            all_rounds = [
                [MatchResult(home, away, float(rng.choice(scores))) for home, away in pairs]
                for pairs in schedule
            ]
            return TournamentLog(teams, t, all_rounds)
    raise ValueError(f"no rematch-free schedule of {rounds} rounds for {n} teams")


def solve_exact(A, b):
    """Gauss-Jordan elimination over the rationals."""
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[-1] for row in aug]


def ls_normal_equations(problems):
    """Least squares by minimising sum_{i<j} m_ij (h_ij - (q_i - q_j))^2.

    One weighted residual row per compared pair, solved with a dense
    pseudo-inverse of the normal equations, then shifted to zero sum.
    Accepts one problem or a list sharing the same matches matrix.
    """
    single = not isinstance(problems, (list, tuple))
    if single:
        problems = [problems]
    M = problems[0].matches
    n = problems[0].n
    pairs = [(i, j) for i, j in itertools.combinations(range(n), 2) if M[i, j] > 0]
    A = np.zeros((len(pairs), n))
    for row, (i, j) in enumerate(pairs):
        A[row, i], A[row, j] = 1.0, -1.0
    W = np.diag([M[i, j] for i, j in pairs])
    solver = np.linalg.pinv(A.T @ W @ A) @ A.T @ W
    out = []
    for problem in problems:
        if not np.array_equal(problem.matches, M):
            raise ValueError("problems must share the matches matrix")
        target = np.array([problem.results[i, j] / max(M[i, j], 1) for i, j in pairs])
        q = solver @ target
        out.append(q - q.mean())
    return out[0] if single else out
