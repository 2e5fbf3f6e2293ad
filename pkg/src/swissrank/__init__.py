"""Paired-comparison rankings for Swiss-system team tournaments."""

__version__ = "0.1.0"

from .battery import MethodSpec, default_battery
from .distances import (
    brute_force_weighted,
    distance_matrix,
    harmonic_weights,
    kemeny_distance,
    weighted_distance,
)
from .evaluation import (
    Embedding,
    PerformanceScore,
    classical_mds,
    predictive_score,
    retrodictive_score,
    robustness_series,
)
from .problem import (
    GraphSummary,
    Ranking,
    RankingProblem,
    graph_summary,
    laplacian,
    scale_results,
    validate_problem,
)
from .scoring import (
    DecompositionTrace,
    RatingVector,
    generalized_row_sum,
    least_squares,
    ls_decomposition,
    ranking_from_ratings,
    reasonable_epsilon_bound,
    row_sum,
)
from .tournament import (
    MatchResult,
    PointsTally,
    TournamentLog,
    official_style_ranking,
    points_ranking,
    results_matrix,
    tally,
)
