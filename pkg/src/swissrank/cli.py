"""Command line: ``swissrank {rank,battery,distances,decompose,evaluate}``.

All tables are comma-separated text with reals fixed at six decimals, so
identical inputs give byte-identical output. Failures print one line
``error[CODE]: message`` to standard error and exit nonzero.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .battery import MethodSpec, dedupe, default_battery
from .distances import distance_matrix, harmonic_weights
from .errors import FormatError, LambdaOutOfRange, MethodSpecError, RankingError
from .evaluation import classical_mds, predictive_score, retrodictive_score, robustness_series
from .fileformat import dump_bundle, load_tournament, parse_bundle
from .problem import Ranking
from .scoring import ls_decomposition, ranking_from_ratings
from .tournament import TournamentLog, break_ties, results_matrix

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_PARTIAL = 3


def real(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _table(header: Sequence, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _one_line(text: str) -> str:
    return " ".join(str(text).split())


def _warn(message: str) -> None:
    print(f"warning: {_one_line(message)}", file=sys.stderr)


def _report(exc: RankingError, prefix: str = "") -> None:
    print(f"error[{exc.code}]: {prefix}{_one_line(exc)}", file=sys.stderr)


def _round(log: TournamentLog, value: int | None) -> int:
    r = log.n_rounds if value is None else value
    if not 1 <= r <= log.n_rounds:
        raise FormatError(f"--round {r} out of range 1..{log.n_rounds}")
    return r


def parse_weights(text: str, n: int) -> tuple[float, ...]:
    if text == "harmonic":
        return harmonic_weights(n)
    if text == "uniform":
        return (1.0,) * (n - 1)
    try:
        return tuple(float(Fraction(x)) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise MethodSpecError(f"--weights: expected 'harmonic', 'uniform' or a list, got {text!r}") from None


# -- command bodies (return text) -------------------------------------------

def cmd_rank(log: TournamentLog, spec: MethodSpec, through_round: int | None = None) -> str:
    r = _round(log, through_round)
    ranking, ratings, flagged = spec.rank(log, r)
    value = ratings.as_dict()
    rows = [
        [pos, team, real(value[team]), int(team in flagged)]
        for pos, team in enumerate(ranking.order(), start=1)
    ]
    return _table(["rank", "team", "rating", "tiebreak"], rows)


def run_battery(
    log: TournamentLog, specs: Sequence[MethodSpec], through_round: int | None = None
) -> tuple[dict[str, Ranking], list[tuple[MethodSpec, RankingError]]]:
    """Rankings for every spec plus the file's exogenous rankings."""
    if not specs:
        raise MethodSpecError("empty list of method specs")
    r = _round(log, through_round)
    bundle: dict[str, Ranking] = {}
    failures = []
    for name, order in log.exogenous_rankings.items():
        bundle[name] = Ranking.from_order(order)
    for spec in specs:
        try:
            bundle[spec.name] = spec.rank(log, r)[0]
        except RankingError as exc:
            failures.append((spec, exc))
    return bundle, failures


def cmd_battery(log: TournamentLog, specs: Sequence[MethodSpec], through_round: int | None = None):
    bundle, failures = run_battery(log, specs, through_round)
    return dump_bundle(bundle) if bundle else "", failures


def cmd_distances(bundle: dict[str, Ranking], metric: str = "kemeny", weights=None) -> str:
    names, D = distance_matrix(bundle, metric, weights)
    if metric == "kemeny":
        cell = lambda x: str(int(round(x)))  # noqa: E731
    else:
        cell = real
    rows = [[name, *(cell(x) for x in D[i])] for i, name in enumerate(names)]
    return _table(["", *names], rows)


def cmd_decompose(
    log: TournamentLog,
    lam: float = 0.0,
    through_round: int | None = None,
    max_k: int = 10_000,
    stop_tol: float = 1e-10,
) -> str:
    """Positional change of every team at each decomposition step.

    Positions are strict (ties broken like the official ranking); a change
    is ``previous position - new position``, so positive numbers mean the
    team moved up. Only steps with at least one change are listed.
    """
    r = _round(log, through_round)
    problem = results_matrix(log, r, lam)
    trace = ls_decomposition(problem, max_k=max_k, stop_tol=stop_tol)

    def positions(ranking):
        strict, _ = break_ties(ranking, log, r)
        return {team: i for i, team in enumerate(strict.order(), start=1)}

    steps = [s for s in trace.steps if s.k <= trace.converged_at]
    pos = [positions(s.ranking) for s in steps]
    limit = positions(ranking_from_ratings(trace.limit))
    changed = [
        k for k in range(1, len(pos))
        if any(pos[k - 1][team] != pos[k][team] for team in log.teams)
    ]
    start = pos[0]
    teams = sorted(log.teams, key=start.get)
    rows = []
    for team in teams:
        moves = [pos[k - 1][team] - pos[k][team] for k in changed]
        rows.append([team, start[team], *moves, start[team] - limit[team], limit[team]])
    return _table(["team", "start", *(f"k={k}" for k in changed), "cumulated", "limit"], rows)


def cmd_evaluate(
    log: TournamentLog,
    specs: Sequence[MethodSpec],
    metric: str = "kemeny",
    weights=None,
    first_round: int = 3,
    horizon: int | None = None,
) -> str:
    """Predictive, retrodictive and robustness tables plus an MDS map."""
    if not specs:
        raise MethodSpecError("empty list of method specs")
    c = log.n_rounds
    first = min(first_round, c)
    rankers = {spec.name: spec for spec in specs}
    exogenous = {name: Ranking.from_order(o) for name, o in log.exogenous_rankings.items()}

    def ranking_at(name, r):
        if name in exogenous:
            return exogenous[name]
        return rankers[name].rank(log, r)[0]

    names = [*exogenous, *rankers]
    out = io.StringIO()

    pred_rows, retro_rows = [], []
    for name in names:
        for r in range(first, c + 1):
            ranking = ranking_at(name, r)
            if r < c:
                p = predictive_score(ranking, log, r, horizon)
                pred_rows.append([name, r, real(p.upset_match_points), real(p.upset_board_points), p.matches_considered])
            q = retrodictive_score(ranking, log, r)
            retro_rows.append([name, r, real(q.upset_match_points), real(q.upset_board_points), q.matches_considered])
    header = ["ranking", "round", "upset_mp", "upset_bp", "matches"]
    out.write("# predictive\n" + _table(header, pred_rows))
    out.write("# retrodictive\n" + _table(header, retro_rows))

    rob_rows = []
    for name, spec in rankers.items():
        for r, d in robustness_series(spec, log, metric, weights, first):
            rob_rows.append([name, r, real(d)])
    out.write("# robustness\n" + _table(["ranking", "round", "distance"], rob_rows))

    final = {name: ranking_at(name, c) for name in names}
    if len(final) >= 3:
        _, D = distance_matrix(final, metric, weights)
        emb = classical_mds(D)
        out.write("# mds\n" + _table(
            ["ranking", "x", "y"],
            [[name, real(emb.coordinates[i, 0]), real(emb.coordinates[i, 1])] for i, name in enumerate(names)],
        ))
        out.write("# mds_fit\n" + _table(
            ["stress", "rsq", "degenerate"], [[real(emb.stress), real(emb.rsq), int(emb.degenerate)]]
        ))
    return out.getvalue()


# -- argument handling --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error[USAGE]: {_one_line(message)}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _specs_from_args(args, log: TournamentLog | None, default_many: bool) -> list[MethodSpec]:
    raw = args.method or []
    if not raw:
        return default_battery() if default_many else []
    specs = []
    for text in raw:
        if ":" in text:
            specs.append(MethodSpec.parse(text))
            continue
        method = text.strip().lower()
        lam = Fraction(args.lam) if args.lam is not None else Fraction(0)
        eps = None
        if method == "grs":
            if args.epsilon is not None:
                eps = Fraction(args.epsilon)
            elif log is not None and len(log.teams) > 2:
                eps = Fraction(1, len(log.teams) - 2)
            else:
                raise MethodSpecError("grs needs --epsilon")
        specs.append(MethodSpec(method, lam, eps))
    return specs


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="swissrank", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, file_required=True):
        p.add_argument("--file", required=file_required, help="tournament JSON file")
        p.add_argument("--round", type=int, default=None, help="use rounds 1..ROUND (default: all)")
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    def method_opts(p, many):
        p.add_argument(
            "--method", action="append" if many else None,
            help="rowsum, grs or ls, or a full spec such as 'grs:lambda=1/4,epsilon=1/324'"
            + (" (repeatable; default: the 12-method battery)" if many else ""),
        )
        p.add_argument("--epsilon", type=_fraction, default=None)
        p.add_argument("--lambda", dest="lam", type=_fraction, default=None)

    def metric_opts(p):
        p.add_argument("--metric", choices=("kemeny", "weighted"), default="kemeny")
        p.add_argument("--weights", default="harmonic", help="'harmonic' (1/i), 'uniform' or comma list")

    p = sub.add_parser("rank", help="rank teams with one method")
    common(p)
    method_opts(p, many=False)

    p = sub.add_parser("battery", help="rank teams with several methods side by side")
    common(p)
    method_opts(p, many=True)

    p = sub.add_parser("distances", help="pairwise distances between rankings")
    common(p, file_required=False)
    p.add_argument("--bundle", default=None, help="ranking bundle CSV (instead of --file)")
    method_opts(p, many=True)
    metric_opts(p)

    p = sub.add_parser("decompose", help="positional changes along the least squares decomposition")
    common(p)
    p.add_argument("--lambda", dest="lam", type=_fraction, default=Fraction(0))
    p.add_argument("--max-k", type=int, default=10_000)
    p.add_argument("--stop-tol", type=float, default=1e-10)

    p = sub.add_parser("evaluate", help="predictive, retrodictive and robustness report")
    common(p)
    method_opts(p, many=True)
    metric_opts(p)
    p.add_argument("--from-round", type=int, default=3)
    p.add_argument("--horizon", type=int, default=None, help="rounds ahead for prediction (default: all)")
    return parser


def _weights_for(args, n: int):
    return parse_weights(args.weights, n) if args.metric == "weighted" else None


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    status = EXIT_OK
    try:
        if args.command == "rank":
            log = load_tournament(args.file)
            method = args.method or "ls"
            args.method = [method]
            spec, = _specs_from_args(args, log, default_many=False)
            text = cmd_rank(log, spec, args.round)
        elif args.command == "battery":
            log = load_tournament(args.file)
            specs, dropped = dedupe(_specs_from_args(args, log, default_many=True))
            for spec in dropped:
                _warn(f"duplicate method spec {spec.name} ignored")
            text, failures = cmd_battery(log, specs, args.round)
            for spec, exc in failures:
                _report(exc, f"{spec.name}: ")
            if failures:
                status = EXIT_PARTIAL if text else EXIT_ERROR
        elif args.command == "distances":
            if (args.file is None) == (args.bundle is None):
                raise FormatError("give exactly one of --file and --bundle")
            if args.bundle is not None:
                try:
                    with open(args.bundle, encoding="utf-8") as fh:
                        bundle = parse_bundle(fh.read())
                except OSError as exc:
                    raise FormatError(f"cannot read {args.bundle}: {exc.strerror}") from None
            else:
                log = load_tournament(args.file)
                specs, _ = dedupe(_specs_from_args(args, log, default_many=True))
                bundle, failures = run_battery(log, specs, args.round)
                if failures:
                    spec, exc = failures[0]
                    raise type(exc)(f"{spec.name}: {exc}")
            n = len(next(iter(bundle.values()))) if bundle else 0
            text = cmd_distances(bundle, args.metric, _weights_for(args, n))
        elif args.command == "decompose":
            log = load_tournament(args.file)
            if not 0 <= args.lam <= 1:
                raise LambdaOutOfRange(f"lambda must lie in [0, 1], got {args.lam}")
            text = cmd_decompose(log, float(args.lam), args.round, args.max_k, args.stop_tol)
        else:
            log = load_tournament(args.file)
            specs, dropped = dedupe(_specs_from_args(args, log, default_many=True))
            for spec in dropped:
                _warn(f"duplicate method spec {spec.name} ignored")
            text = cmd_evaluate(
                log, specs, args.metric, _weights_for(args, len(log.teams)),
                args.from_round, args.horizon,
            )
    except RankingError as exc:
        _report(exc)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error[INVALID]: {_one_line(exc)}", file=sys.stderr)
        return EXIT_ERROR

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    raise SystemExit(run())
