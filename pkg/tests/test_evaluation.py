import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swissrank.battery import MethodSpec
from swissrank.errors import DisconnectedAtRound, NotStrict
from swissrank.evaluation import (
    classical_mds,
    predictive_score,
    retrodictive_score,
    robustness_series,
)
from swissrank.problem import Ranking
from swissrank.tournament import MatchResult, TournamentLog

from helpers import random_log


def two_rounds(second_bp):
    # round 1: A-C, B-D; round 2: A-B with A scoring second_bp
    return TournamentLog(
        ["A", "B", "C", "D"],
        2,
        [
            [MatchResult("A", "C", 2.0), MatchResult("B", "D", 2.0)],
            [MatchResult("A", "B", second_bp), MatchResult("C", "D", 2.0)],
        ],
    )


def transitive_round_robin():
    # A > B > C > D, every stronger team wins 2.5 : 1.5
    return TournamentLog(
        ["A", "B", "C", "D"],
        2,
        [
            [MatchResult("A", "B", 2.5), MatchResult("C", "D", 2.5)],
            [MatchResult("A", "C", 2.5), MatchResult("B", "D", 2.5)],
            [MatchResult("A", "D", 2.5), MatchResult("B", "C", 2.5)],
        ],
    )


ABCD = Ranking.from_order("ABCD")


class TestUpsets:
    def test_favourite_wins(self):
        # A beats B 3:1 after round 1; underdog B collects 0 mp and 1 bp,
        # the drawn C-D adds 1 mp and 2 bp for D
        s = predictive_score(ABCD, two_rounds(3.0), 1)
        assert (s.upset_match_points, s.upset_board_points, s.matches_considered) == (1, 3.0, 2)

    def test_underdog_wins(self):
        s = predictive_score(ABCD, two_rounds(1.5), 1)
        # B wins 2.5:1.5 -> 2 mp, 2.5 bp; D draws -> 1 mp, 2 bp
        assert (s.upset_match_points, s.upset_board_points) == (3, 4.5)

    def test_no_future_rounds(self):
        s = predictive_score(ABCD, two_rounds(3.0), 2)
        assert (s.upset_match_points, s.upset_board_points, s.matches_considered) == (0, 0, 0)

    def test_horizon(self):
        log = transitive_round_robin()
        assert predictive_score(ABCD, log, 1, horizon=1).matches_considered == 2
        assert predictive_score(ABCD, log, 1).matches_considered == 4

    def test_retrodictive_dominance_order(self):
        s = retrodictive_score(ABCD, transitive_round_robin(), 3)
        # every underdog loses 1.5 : 2.5
        assert (s.upset_match_points, s.upset_board_points, s.matches_considered) == (0, 9.0, 6)

    def test_retrodictive_reversed(self):
        s = retrodictive_score(ABCD.reversed(), transitive_round_robin(), 3)
        assert (s.upset_match_points, s.upset_board_points) == (12, 15.0)

    def test_draw_counts_for_underdog(self):
        log = TournamentLog(["A", "B"], 2, [[MatchResult("A", "B", 2.0)]])
        for r in (Ranking.from_order("AB"), Ranking.from_order("BA")):
            assert retrodictive_score(r, log, 1).upset_match_points == 1

    def test_needs_strict(self):
        with pytest.raises(NotStrict):
            retrodictive_score(Ranking([{"A", "B"}, {"C", "D"}]), transitive_round_robin(), 1)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([4, 6, 8]))
    def test_ranking_plus_reversal_is_all_points(self, seed, n):
        rng = np.random.default_rng(seed)
        log = random_log(rng, n, 3)
        order = list(log.teams)
        rng.shuffle(order)
        r = Ranking.from_order(order)
        for a, b in ((retrodictive_score(r, log, 3), retrodictive_score(r.reversed(), log, 3)),
                     (predictive_score(r, log, 1), predictive_score(r.reversed(), log, 1))):
            assert a.upset_match_points + b.upset_match_points == 2 * a.matches_considered
            assert a.upset_board_points + b.upset_board_points == 2 * log.t * a.matches_considered
            assert 0 <= a.upset_match_points <= 2 * a.matches_considered


class TestRobustness:
    def test_constant_ranking(self):
        log = random_log(np.random.default_rng(1), 8, 6)
        const = Ranking.from_order(log.teams)
        series = robustness_series(lambda lg, r: const, log)
        assert [r for r, _ in series] == [3, 4, 5]
        assert all(d == 0 for _, d in series)

    def test_kemeny_bound(self):
        log = random_log(np.random.default_rng(2), 8, 6)
        for r, d in robustness_series(MethodSpec("ls"), log):
            assert 0 <= d <= 8 * 7 / 2

    def test_disconnected_reported(self):
        log = random_log(np.random.default_rng(3), 8, 4)
        with pytest.raises(DisconnectedAtRound) as err:
            robustness_series(MethodSpec("ls"), log, first_round=1)
        assert err.value.round_no == 1

    def test_relabeling_equivariance(self):
        log = random_log(np.random.default_rng(4), 8, 6)
        rename = {team: f"X{7 - i}" for i, team in enumerate(log.teams)}
        relabeled = TournamentLog(
            [rename[t] for t in reversed(log.teams)],
            log.t,
            [[MatchResult(rename[m.home], rename[m.away], m.board_points_home) for m in rnd] for rnd in log.rounds],
        )
        spec = MethodSpec("ls", 0.25)
        for metric in ("kemeny", "weighted"):
            a = robustness_series(spec, log, metric)
            b = robustness_series(spec, relabeled, metric)
            np.testing.assert_allclose([d for _, d in a], [d for _, d in b], atol=1e-12)


class TestMDS:
    def test_planar_points_recovered(self):
        rng = np.random.default_rng(0)
        P = rng.normal(size=(4, 2))
        D = np.linalg.norm(P[:, None] - P[None], axis=-1)
        emb = classical_mds(D)
        E = np.linalg.norm(emb.coordinates[:, None] - emb.coordinates[None], axis=-1)
        np.testing.assert_allclose(E, D, atol=1e-6)
        assert emb.rsq >= 1 - 1e-9

    def test_equilateral(self):
        D = np.ones((3, 3)) - np.eye(3)
        emb = classical_mds(D)
        E = np.linalg.norm(emb.coordinates[:, None] - emb.coordinates[None], axis=-1)
        iu = np.triu_indices(3, 1)
        np.testing.assert_allclose(E[iu], 1.0, atol=1e-9)
        assert emb.rsq == 1.0

    def test_all_zero(self):
        emb = classical_mds(np.zeros((4, 4)))
        assert np.all(emb.coordinates == 0)
        assert emb.degenerate and emb.stress == 0

    def test_collinear_is_degenerate(self):
        x = np.array([0.0, 1.0, 3.0, 7.0])
        D = np.abs(x[:, None] - x[None])
        emb = classical_mds(D)
        assert emb.degenerate
        assert np.all(emb.coordinates[:, 1] == 0)
        assert emb.stress < 1e-9

    def test_permutation_invariance(self):
        rng = np.random.default_rng(7)
        P = rng.normal(size=(6, 3))
        D = np.linalg.norm(P[:, None] - P[None], axis=-1)
        perm = rng.permutation(6)
        e1 = classical_mds(D).coordinates
        e2 = classical_mds(D[np.ix_(perm, perm)]).coordinates
        d1 = np.linalg.norm(e1[:, None] - e1[None], axis=-1)
        d2 = np.linalg.norm(e2[:, None] - e2[None], axis=-1)
        np.testing.assert_allclose(d1[np.ix_(perm, perm)], d2, atol=1e-9)

    def test_orthogonal_eigenvectors(self):
        rng = np.random.default_rng(8)
        P = rng.normal(size=(7, 4))
        D = np.linalg.norm(P[:, None] - P[None], axis=-1)
        X = classical_mds(D, dims=3).coordinates
        G = X.T @ X
        assert np.max(np.abs(G - np.diag(np.diag(G)))) <= 1e-9

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            classical_mds(np.array([[0, 1], [1, 0]]))
        with pytest.raises(ValueError):
            classical_mds(np.array([[0, 1, 2], [1, 0, 1], [3, 1, 0]]))
