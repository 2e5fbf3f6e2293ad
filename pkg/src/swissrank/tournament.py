"""Swiss-system team tournaments as ranking problems.

A match is played on ``2t`` boards; the team scoring more than ``t`` board
points takes 2 match points, a drawn match gives 1 each.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import LambdaOutOfRange, TournamentError
from .problem import Ranking, RankingProblem, validate_problem

MATCH_POINTS = "match_points"
BOARD_POINTS = "board_points"


@dataclass(frozen=True)
class MatchResult:
    home: str
    away: str
    board_points_home: float

    def board_points_away(self, t: int) -> float:
        return 2 * t - self.board_points_home


def match_points(board_points: float, t: int) -> int:
    if board_points > t:
        return 2
    if board_points == t:
        return 1
    return 0


@dataclass(frozen=True)
class TournamentLog:
    teams: tuple
    t: int
    rounds: tuple
    exogenous_rankings: Mapping[str, tuple] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "teams", tuple(self.teams))
        object.__setattr__(self, "rounds", tuple(tuple(r) for r in self.rounds))
        object.__setattr__(
            self,
            "exogenous_rankings",
            {name: tuple(order) for name, order in self.exogenous_rankings.items()},
        )
        self._validate()

    def _validate(self):
        teams = self.teams
        if len(set(teams)) != len(teams):
            raise TournamentError("team names must be unique")
        if len(teams) < 2:
            raise TournamentError("a tournament needs at least two teams")
        if len(teams) % 2:
            raise TournamentError(
                f"odd number of teams ({len(teams)}): byes are not supported"
            )
        if not isinstance(self.t, int) or self.t < 1:
            raise TournamentError(f"t must be a positive integer, got {self.t!r}")
        known = set(teams)
        met: set = set()
        for r, matches in enumerate(self.rounds, start=1):
            seen: set = set()
            for match in matches:
                if match.home not in known or match.away not in known:
                    raise TournamentError(f"round {r}: unknown team in {match.home} - {match.away}")
                if match.home == match.away:
                    raise TournamentError(f"round {r}: {match.home} cannot play itself")
                bp = match.board_points_home
                if not (0 <= bp <= 2 * self.t) or bp * 2 != int(bp * 2):
                    raise TournamentError(
                        f"round {r}: board points {bp} not in 0, 0.5, ..., {2 * self.t}"
                    )
                for team in (match.home, match.away):
                    if team in seen:
                        raise TournamentError(f"round {r}: {team} plays more than once")
                    seen.add(team)
                pair = frozenset((match.home, match.away))
                if pair in met:
                    raise TournamentError(
                        f"round {r}: {match.home} and {match.away} already met"
                    )
                met.add(pair)
            if seen != known:
                missing = sorted(known - seen)
                raise TournamentError(f"round {r}: byes are not supported ({missing[0]} idle)")
        for name, order in self.exogenous_rankings.items():
            if sorted(order) != sorted(teams) or len(order) != len(teams):
                raise TournamentError(f"exogenous ranking {name!r} is not a permutation of the teams")

    @property
    def n_rounds(self) -> int:
        return len(self.rounds)

    def index(self) -> dict:
        return {team: i for i, team in enumerate(self.teams)}

    def matches_through(self, through_round: int | None = None, start: int = 1):
        """Yield ``(round_no, match)`` for rounds ``start..through_round``."""
        stop = self.n_rounds if through_round is None else through_round
        for r in range(start, stop + 1):
            for match in self.rounds[r - 1]:
                yield r, match

    def _check_round(self, through_round):
        if through_round is None:
            return self.n_rounds
        if not 1 <= through_round <= self.n_rounds:
            raise TournamentError(
                f"round {through_round} out of range 1..{self.n_rounds}"
            )
        return through_round


@dataclass(frozen=True, eq=False)
class PointsTally:
    teams: tuple
    mp: np.ndarray
    bp: np.ndarray
    buchholz: np.ndarray


def tally(log: TournamentLog, through_round: int | None = None) -> PointsTally:
    """Match points, board points and Buchholz (opponents' board points)."""
    through_round = log._check_round(through_round)
    idx = log.index()
    n = len(log.teams)
    mp = np.zeros(n)
    bp = np.zeros(n)
    opponents: list[list[int]] = [[] for _ in range(n)]
    for _, match in log.matches_through(through_round):
        i, j = idx[match.home], idx[match.away]
        bp_i = match.board_points_home
        bp_j = match.board_points_away(log.t)
        bp[i] += bp_i
        bp[j] += bp_j
        mp[i] += match_points(bp_i, log.t)
        mp[j] += match_points(bp_j, log.t)
        opponents[i].append(j)
        opponents[j].append(i)
    buchholz = np.array([bp[opp].sum() if opp else 0.0 for opp in opponents])
    return PointsTally(log.teams, mp, bp, buchholz)


def results_matrix(
    log: TournamentLog, through_round: int | None = None, lam: float = 0.0
) -> RankingProblem:
    """Blend of match-point and normalized board-point results.

    ``r_ij = (1 - lam) (MP_ij - 1) + lam (BP_ij - t) / t`` for teams that met,
    0 otherwise. ``lam = 0`` is the match-points matrix, ``lam = 1`` the
    board-points one (divided by ``t``).
    """
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange(f"lambda must lie in [0, 1], got {lam}")
    through_round = log._check_round(through_round)
    idx = log.index()
    n = len(log.teams)
    t = log.t
    M = np.zeros((n, n), dtype=np.int64)
    R = np.zeros((n, n))
    for _, match in log.matches_through(through_round):
        i, j = idx[match.home], idx[match.away]
        bp = match.board_points_home
        r = (1 - lam) * (match_points(bp, t) - 1) + lam * (bp - t) / t
        M[i, j] = M[j, i] = 1
        R[i, j] = r
        R[j, i] = -r
    return validate_problem(log.teams, R, M)


def _weak_order(teams: Sequence, keys: Sequence[tuple]) -> Ranking:
    order = sorted(range(len(teams)), key=lambda i: keys[i], reverse=True)
    groups: list[list] = []
    prev = None
    for i in order:
        if prev is not None and keys[i] == keys[prev]:
            groups[-1].append(teams[i])
        else:
            groups.append([teams[i]])
        prev = i
    return Ranking(tuple(groups))


def points_ranking(
    log: TournamentLog, through_round: int | None = None, basis: str = MATCH_POINTS
) -> Ranking:
    """Weak order by match points or board points, without tie-breaks."""
    tal = tally(log, through_round)
    if basis == MATCH_POINTS:
        vec = tal.mp
    elif basis == BOARD_POINTS:
        vec = tal.bp
    else:
        raise ValueError(f"unknown basis {basis!r}")
    return _weak_order(log.teams, [(float(v),) for v in vec])


def official_style_keys(log: TournamentLog, through_round: int | None = None) -> list[tuple]:
    tal = tally(log, through_round)
    return [
        (float(tal.mp[i]), float(tal.bp[i]), float(tal.buchholz[i]))
        for i in range(len(log.teams))
    ]


def official_style_ranking(log: TournamentLog, through_round: int | None = None) -> Ranking:
    """Lexicographic order by match points, board points, then Buchholz."""
    return _weak_order(log.teams, official_style_keys(log, through_round))


def break_ties(
    ranking: Ranking, log: TournamentLog, through_round: int | None = None
) -> tuple[Ranking, frozenset]:
    """Make ``ranking`` strict.

    Tie-groups are ordered by the official-style chain (match points, board
    points, Buchholz) and finally by the team's position in the log. Returns
    the strict ranking and the set of teams whose place was decided
    artificially.
    """
    keys = dict(zip(log.teams, official_style_keys(log, through_round)))
    position = log.index()
    order = []
    flagged = set()
    for group in ranking.groups:
        members = sorted(group, key=lambda team: (tuple(-k for k in keys[team]), position[team]))
        if len(members) > 1:
            flagged.update(members)
        order.extend(members)
    return Ranking.from_order(order), frozenset(flagged)
