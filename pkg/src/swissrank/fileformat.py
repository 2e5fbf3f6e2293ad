"""Tournament files (JSON) and ranking bundles (CSV).

Tournament file::

    {
      "format_version": 1,
      "teams": ["A", "B", "C", "D"],
      "t": 2,
      "rounds": [
        [{"home": "A", "away": "B", "bp_home": 2.5},
         {"home": "C", "away": "D", "bp_home": 2.0}],
        ...
      ],
      "exogenous_rankings": {"Start": ["A", "C", "B", "D"]}
    }

Ranking bundle: a CSV table whose first column is the position (1-based)
and every further column, headed by the ranking's name, lists the team in
that position.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Mapping

from .errors import FormatError, TournamentError
from .problem import Ranking
from .tournament import MatchResult, TournamentLog

FORMAT_VERSION = 1


def tournament_from_dict(data: Mapping) -> TournamentLog:
    if not isinstance(data, Mapping):
        raise FormatError("tournament file must hold a JSON object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r}; expected {FORMAT_VERSION}")
    try:
        teams = [str(x) for x in data["teams"]]
        t = data["t"]
        raw_rounds = data["rounds"]
    except KeyError as exc:
        raise FormatError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(t, int) or isinstance(t, bool):
        raise FormatError(f"t must be an integer, got {t!r}")
    rounds = []
    for r, raw in enumerate(raw_rounds, start=1):
        matches = []
        for rec in raw:
            try:
                bp = rec["bp_home"]
                if isinstance(bp, bool) or not isinstance(bp, (int, float)):
                    raise FormatError(f"round {r}: bp_home must be a number, got {bp!r}")
                matches.append(MatchResult(str(rec["home"]), str(rec["away"]), float(bp)))
            except (KeyError, TypeError):
                raise FormatError(f"round {r}: match records need home, away and bp_home") from None
        rounds.append(matches)
    exogenous = data.get("exogenous_rankings") or {}
    if not isinstance(exogenous, Mapping):
        raise FormatError("exogenous_rankings must map names to team lists")
    try:
        return TournamentLog(
            teams, t, rounds, {str(k): [str(x) for x in v] for k, v in exogenous.items()}
        )
    except TournamentError as exc:
        raise FormatError(str(exc)) from None


def tournament_to_dict(log: TournamentLog) -> dict:
    data = {
        "format_version": FORMAT_VERSION,
        "teams": list(log.teams),
        "t": log.t,
        "rounds": [
            [{"home": m.home, "away": m.away, "bp_home": m.board_points_home} for m in rnd]
            for rnd in log.rounds
        ],
    }
    if log.exogenous_rankings:
        data["exogenous_rankings"] = {k: list(v) for k, v in log.exogenous_rankings.items()}
    return data


def parse_tournament(text: str) -> TournamentLog:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    return tournament_from_dict(data)


def dump_tournament(log: TournamentLog) -> str:
    return json.dumps(tournament_to_dict(log), indent=2) + "\n"


def load_tournament(path) -> TournamentLog:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_tournament(text)


def dump_bundle(rankings: Mapping[str, Ranking]) -> str:
    names = list(rankings)
    orders = [rankings[name].order() for name in names]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["position", *names])
    for pos in range(len(orders[0]) if orders else 0):
        writer.writerow([pos + 1, *(o[pos] for o in orders)])
    return buf.getvalue()


def parse_bundle(text: str) -> dict[str, Ranking]:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if len(rows) < 2 or rows[0][0] != "position":
        raise FormatError("bundle must start with a 'position' header row")
    names = rows[0][1:]
    if len(set(names)) != len(names):
        raise FormatError("duplicate ranking names in bundle")
    columns: list[list[str]] = [[] for _ in names]
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != len(names) + 1:
            raise FormatError(f"bundle line {line}: expected {len(names) + 1} fields")
        if row[0] != str(line - 1):
            raise FormatError(f"bundle line {line}: positions must run 1, 2, ...")
        for col, team in zip(columns, row[1:]):
            col.append(team)
    out = {}
    for name, col in zip(names, columns):
        if len(set(col)) != len(col):
            raise FormatError(f"ranking {name!r} lists a team twice")
        out[name] = Ranking.from_order(col)
    return out
