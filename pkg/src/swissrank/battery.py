"""Method specifications and the standard battery of rankings.

A :class:`MethodSpec` names a scoring method (row sum, generalized row sum or
least squares) together with the results-matrix blend ``lam`` and, for the
generalized row sum, ``epsilon``. Specs parse from and render to strings such
as ``"grs:epsilon=1/324,lambda=1/4"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DisconnectedAtRound, LambdaOutOfRange, MethodSpecError
from .problem import Ranking, graph_summary
from .scoring import (
    DEFAULT_TIE_TOL,
    RatingVector,
    generalized_row_sum,
    least_squares,
    ranking_from_ratings,
    row_sum,
)
from .tournament import TournamentLog, break_ties, results_matrix

METHODS = ("rowsum", "grs", "ls")

EPSILON_SMALL = Fraction(1, 324)
EPSILON_LARGE = Fraction(1, 6)
LAMBDAS = (Fraction(0), Fraction(1, 4), Fraction(2, 3), Fraction(1))


def _number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise MethodSpecError(f"not a number: {text!r}") from None


def _fmt(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class MethodSpec:
    method: str
    lam: Fraction = Fraction(0)
    epsilon: Fraction | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise MethodSpecError(f"unknown method {self.method!r}; expected one of {METHODS}")
        lam = Fraction(self.lam)
        if not 0 <= lam <= 1:
            raise LambdaOutOfRange(f"lambda must lie in [0, 1], got {lam}")
        object.__setattr__(self, "lam", lam)
        if self.method == "grs":
            if self.epsilon is None or not Fraction(self.epsilon) > 0:
                raise MethodSpecError("grs needs a positive epsilon")
            object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        elif self.epsilon is not None:
            raise MethodSpecError(f"epsilon only applies to grs, not {self.method}")

    @classmethod
    def parse(cls, text: str) -> "MethodSpec":
        """Parse ``method[:key=value,...]``; keys are ``lambda`` and ``epsilon``."""
        method, _, rest = text.strip().partition(":")
        kwargs: dict = {}
        for item in filter(None, (p.strip() for p in rest.split(","))):
            key, sep, value = item.partition("=")
            key = key.strip().lower()
            if not sep:
                raise MethodSpecError(f"expected key=value in {text!r}")
            if key in ("lambda", "lam"):
                kwargs["lam"] = _number(value)
            elif key in ("epsilon", "eps"):
                kwargs["epsilon"] = _number(value)
            else:
                raise MethodSpecError(f"unknown parameter {key!r} in {text!r}")
        return cls(method.strip().lower(), **kwargs)

    @property
    def name(self) -> str:
        parts = [f"lambda={_fmt(self.lam)}"]
        if self.epsilon is not None:
            parts.append(f"epsilon={_fmt(self.epsilon)}")
        return f"{self.method}:" + ",".join(parts)

    def __str__(self):
        return self.name

    def ratings(self, log: TournamentLog, through_round: int | None = None) -> RatingVector:
        """Ratings after ``through_round``.

        ``grs`` and ``ls`` demand a connected comparison graph; otherwise
        :class:`DisconnectedAtRound` is raised.
        """
        r = log.n_rounds if through_round is None else through_round
        problem = results_matrix(log, r, float(self.lam))
        if self.method == "rowsum":
            return row_sum(problem)
        if not graph_summary(problem).connected:
            raise DisconnectedAtRound(r)
        if self.method == "grs":
            return generalized_row_sum(problem, float(self.epsilon))
        return least_squares(problem)

    def rank(
        self,
        log: TournamentLog,
        through_round: int | None = None,
        tie_tol: float = DEFAULT_TIE_TOL,
    ) -> tuple[Ranking, RatingVector, frozenset]:
        """Strict ranking, its ratings, and the teams placed by a tie-break."""
        ratings = self.ratings(log, through_round)
        weak = ranking_from_ratings(ratings, tie_tol=tie_tol)
        strict, flagged = break_ties(weak, log, through_round)
        return strict, ratings, flagged


def default_battery() -> list[MethodSpec]:
    """Generalized row sum with both default epsilons and least squares, each
    on the four default results matrices."""
    specs = []
    for method, eps in (("grs", EPSILON_SMALL), ("grs", EPSILON_LARGE), ("ls", None)):
        for lam in LAMBDAS:
            specs.append(MethodSpec(method, lam, eps))
    return specs


def dedupe(specs: Iterable[MethodSpec]) -> tuple[list[MethodSpec], list[MethodSpec]]:
    """Drop repeated specs, keeping first occurrences; returns (kept, dropped)."""
    kept: list[MethodSpec] = []
    dropped: list[MethodSpec] = []
    for spec in specs:
        (dropped if spec in kept else kept).append(spec)
    return kept, dropped
