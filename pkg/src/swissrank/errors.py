"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line
can emit a single parsable diagnostic line.
"""


class RankingError(ValueError):
    code = "RANKING_ERROR"


# problem construction
class DimensionMismatch(RankingError):
    code = "DIMENSION_MISMATCH"


class AsymmetricMatches(RankingError):
    code = "ASYMMETRIC_MATCHES"


class NotSkewSymmetric(RankingError):
    code = "NOT_SKEW_SYMMETRIC"


class BoundViolation(RankingError):
    code = "BOUND_VIOLATION"


class InadmissibleScale(RankingError):
    code = "INADMISSIBLE_SCALE"


# solvers
class SolverFailure(RankingError):
    code = "SOLVER_FAILURE"


class DegenerateSize(RankingError):
    code = "DEGENERATE_SIZE"


class DisconnectedProblem(RankingError):
    code = "DISCONNECTED"


class BipartiteOrDisconnected(RankingError):
    code = "BIPARTITE_OR_DISCONNECTED"


class NoRankConvergence(RankingError):
    code = "NO_RANK_CONVERGENCE"


# tournaments
class TournamentError(RankingError):
    code = "BAD_TOURNAMENT"


class LambdaOutOfRange(RankingError):
    code = "LAMBDA_OUT_OF_RANGE"


class DisconnectedAtRound(DisconnectedProblem):
    code = "DISCONNECTED_AT_ROUND"

    def __init__(self, round_no: int, message: str = ""):
        self.round_no = round_no
        super().__init__(message or f"comparison graph is disconnected after round {round_no}")


# distances
class NotStrict(RankingError):
    code = "NOT_STRICT"


class ObjectSetMismatch(RankingError):
    code = "OBJECT_SET_MISMATCH"


class NonMonotoneWeights(RankingError):
    code = "NON_MONOTONE_WEIGHTS"


class TooLarge(RankingError):
    code = "TOO_LARGE"


# embedding
class DegenerateSpectrum(RankingError):
    code = "DEGENERATE_SPECTRUM"


# files / command line
class FormatError(RankingError):
    code = "BAD_FILE"


class MethodSpecError(RankingError):
    code = "BAD_METHOD"
