"""Scoring rule checkers against expert opinion.

Domain experts rate whole workbooks good or poor and may log the cells
where they found actual errors. Crossing those ratings with which
checkers fired per workbook yields a confusion matrix per rule, and a
rule that separates good from poor workbooks without false positives or
false negatives is flagged "perfect": it captures a practice worth
enforcing.

Correlation is workbook-level (a rule "fires" on a workbook when it has
at least one finding there); expert error logs feed a separate
cell-level matching channel.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Any

from .engine import AnalysisRun, scenario_to_json
from .errors import (
    DuplicateWorkbookId,
    EvaluationInputError,
    MalformedAddress,
    MalformedErrorCell,
    MissingErrorCells,
    RatingWithoutRun,
    ScenarioMismatch,
    UnratedWorkbook,
)
from .findings import Finding, LocationKind
from .model import CellAddress, parse_a1_address

__all__ = [
    "Rating",
    "ExpertRating",
    "Consensus",
    "RuleMetrics",
    "CellMatchStats",
    "EvaluationResult",
    "aggregate_experts",
    "evaluate_rules",
    "match_error_cells",
    "parse_ratings",
    "ratings_to_json",
    "evaluation_to_json",
    "evaluation_from_json",
]

#: Ratio fields are quantized to this exponent so they survive the trip
#: through JSON floats unchanged.
_RATIO_EXP = Decimal("1E-12")

_ZERO = Decimal(0)


class Rating(Enum):
    GOOD = "good"
    POOR = "poor"


@dataclass(frozen=True)
class ExpertRating:
    """One expert's verdict on one workbook."""

    workbook_id: str
    rating: Rating
    expert_id: str
    error_cells: tuple[tuple[str, str], ...] = ()  # (sheet name, A1 address)
    notes: str = ""


@dataclass(frozen=True)
class Consensus:
    """Majority verdict for a workbook; rating None means undecided."""

    workbook_id: str
    rating: Rating | None
    good_votes: int
    poor_votes: int


@dataclass(frozen=True)
class RuleMetrics:
    checker_id: str
    tp: int
    fp: int
    fn: int
    tn: int
    precision: Decimal
    recall: Decimal
    accuracy: Decimal
    mcc: Decimal
    undefined: frozenset[str]
    perfect: bool


@dataclass(frozen=True)
class CellMatchStats:
    checker_id: str
    hits: int
    misses: int
    spurious: int


@dataclass(frozen=True)
class EvaluationResult:
    rules: tuple[RuleMetrics, ...]  # ordered by checker id
    cell_matching: tuple[CellMatchStats, ...]  # empty when no error logs
    ranking: tuple[str, ...]  # checker ids, best mcc first, ties by id
    consensus: tuple[Consensus, ...]  # ordered by workbook id


def aggregate_experts(ratings: list[ExpertRating]) -> dict[str, Consensus]:
    """Strict-majority verdict per workbook; ties come out undecided."""
    votes: dict[str, list[Rating]] = {}
    for rating in ratings:
        votes.setdefault(rating.workbook_id, []).append(rating.rating)
    consensus: dict[str, Consensus] = {}
    for workbook_id, cast in votes.items():
        good = sum(1 for r in cast if r is Rating.GOOD)
        poor = len(cast) - good
        if poor > good:
            verdict: Rating | None = Rating.POOR
        elif good > poor:
            verdict = Rating.GOOD
        else:
            verdict = None
        consensus[workbook_id] = Consensus(
            workbook_id=workbook_id, rating=verdict, good_votes=good, poor_votes=poor
        )
    return consensus


def evaluate_rules(
    runs: list[AnalysisRun], ratings: list[ExpertRating]
) -> EvaluationResult:
    """Confusion matrices, ranking and (when logged) cell matching."""
    if not ratings:
        raise EvaluationInputError("at least one expert rating is required")
    if not runs:
        raise EvaluationInputError("at least one analysis run is required")

    reference = json.dumps(scenario_to_json(runs[0].scenario), sort_keys=True)
    for run in runs[1:]:
        if json.dumps(scenario_to_json(run.scenario), sort_keys=True) != reference:
            raise ScenarioMismatch(
                "runs under evaluation must share one scenario; "
                f"{run.run_id} was produced by {run.scenario.name!r}"
            )

    workbook_run: dict[str, AnalysisRun] = {}
    for run in runs:
        for workbook_id in run.workbook_ids:
            if workbook_id in workbook_run:
                raise DuplicateWorkbookId(
                    f"workbook {workbook_id!r} appears in more than one run"
                )
            workbook_run[workbook_id] = run

    for rating in ratings:
        if rating.workbook_id not in workbook_run:
            raise RatingWithoutRun(
                f"rating by {rating.expert_id!r} references workbook "
                f"{rating.workbook_id!r}, which no run analyzed"
            )
    rated = {r.workbook_id for r in ratings}
    for workbook_id in workbook_run:
        if workbook_id not in rated:
            raise UnratedWorkbook(f"workbook {workbook_id!r} has no expert rating")

    consensus = aggregate_experts(ratings)
    decided = {
        wb: c.rating for wb, c in consensus.items() if c.rating is not None
    }

    checker_ids = sorted(
        {c.checker_id for c in runs[0].scenario.checkers if c.enabled}
    )
    fires: dict[str, set[str]] = {cid: set() for cid in checker_ids}
    for run in runs:
        for finding in run.findings:
            if finding.checker_id in fires:
                fires[finding.checker_id].add(finding.workbook_id)

    rules = tuple(
        _metrics(cid, fires[cid], decided) for cid in checker_ids
    )
    ranking = tuple(
        m.checker_id
        for m in sorted(rules, key=lambda m: (-m.mcc, m.checker_id))
    )

    cell_stats: dict[str, list[int]] = {cid: [0, 0, 0] for cid in checker_ids}
    any_logs = False
    for run in runs:
        per_run = _match_error_cells(run, ratings, checker_ids)
        if per_run is None:
            continue
        any_logs = True
        for stats in per_run:
            totals = cell_stats[stats.checker_id]
            totals[0] += stats.hits
            totals[1] += stats.misses
            totals[2] += stats.spurious
    cell_matching = (
        tuple(
            CellMatchStats(cid, *cell_stats[cid]) for cid in checker_ids
        )
        if any_logs
        else ()
    )

    return EvaluationResult(
        rules=rules,
        cell_matching=cell_matching,
        ranking=ranking,
        consensus=tuple(
            consensus[wb] for wb in sorted(consensus)
        ),
    )


def _metrics(
    checker_id: str, fired_on: set[str], decided: dict[str, Rating]
) -> RuleMetrics:
    tp = fp = fn = tn = 0
    for workbook_id, verdict in decided.items():
        fired = workbook_id in fired_on
        if fired and verdict is Rating.POOR:
            tp += 1
        elif fired and verdict is Rating.GOOD:
            fp += 1
        elif not fired and verdict is Rating.POOR:
            fn += 1
        else:
            tn += 1

    undefined: set[str] = set()
    precision = _ratio(tp, tp + fp, "precision", undefined)
    recall = _ratio(tp, tp + fn, "recall", undefined)
    accuracy = _ratio(tp + tn, tp + fp + fn + tn, "accuracy", undefined)
    mcc = _mcc(tp, fp, fn, tn, undefined)
    return RuleMetrics(
        checker_id=checker_id,
        tp=tp,
        fp=fp,
        fn=fn,
        tn=tn,
        precision=precision,
        recall=recall,
        accuracy=accuracy,
        mcc=mcc,
        undefined=frozenset(undefined),
        perfect=fp == 0 and fn == 0 and (tp + tn) > 0,
    )


def _ratio(numerator: int, denominator: int, name: str, undefined: set[str]) -> Decimal:
    if denominator == 0:
        undefined.add(name)
        return _ZERO
    return (Decimal(numerator) / Decimal(denominator)).quantize(_RATIO_EXP)


def _mcc(tp: int, fp: int, fn: int, tn: int, undefined: set[str]) -> Decimal:
    denominator_sq = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denominator_sq == 0:
        undefined.add("mcc")
        return _ZERO
    numerator = Decimal(tp * tn - fp * fn)
    return (numerator / Decimal(denominator_sq).sqrt()).quantize(_RATIO_EXP)


# --- cell-level matching ----------------------------------------------------

def match_error_cells(
    run: AnalysisRun, ratings: list[ExpertRating]
) -> list[CellMatchStats]:
    """Compare one run's findings against expert-logged error cells.

    A finding hits an expert cell when its location cell or any related
    cell equals it. Per checker: hits = expert cells some finding
    matched, misses = expert cells no finding matched, spurious =
    findings matching no expert cell. Only workbooks with a non-empty
    error log take part.
    """
    checker_ids = sorted(
        {c.checker_id for c in run.scenario.checkers if c.enabled}
    )
    stats = _match_error_cells(run, ratings, checker_ids)
    if stats is None:
        raise MissingErrorCells(
            "no rating for this run's workbooks carries error cells"
        )
    return stats


def _match_error_cells(
    run: AnalysisRun, ratings: list[ExpertRating], checker_ids: list[str]
) -> list[CellMatchStats] | None:
    in_run = set(run.workbook_ids)
    logs: dict[str, set[CellAddress]] = {}
    for rating in ratings:
        if rating.workbook_id not in in_run or not rating.error_cells:
            continue
        resolved = logs.setdefault(rating.workbook_id, set())
        for sheet_name, a1 in rating.error_cells:
            resolved.add(_resolve_error_cell(run, rating.workbook_id, sheet_name, a1))
    if not logs:
        return None

    stats = []
    for checker_id in checker_ids:
        hits = misses = spurious = 0
        for workbook_id, expert_cells in sorted(logs.items()):
            relevant = [
                f
                for f in run.findings
                if f.checker_id == checker_id and f.workbook_id == workbook_id
            ]
            matched: set[CellAddress] = set()
            for finding in relevant:
                touched = _finding_cells(finding)
                overlap = touched & expert_cells
                if overlap:
                    matched.update(overlap)
                else:
                    spurious += 1
            hits += len(matched)
            misses += len(expert_cells - matched)
        stats.append(
            CellMatchStats(
                checker_id=checker_id, hits=hits, misses=misses, spurious=spurious
            )
        )
    return stats


def _finding_cells(finding: Finding) -> set[CellAddress]:
    cells = set(finding.related_cells)
    if finding.location.kind is LocationKind.CELL and finding.location.address:
        cells.add(finding.location.address)
    return cells


def _resolve_error_cell(
    run: AnalysisRun, workbook_id: str, sheet_name: str, a1: str
) -> CellAddress:
    sheets = run.workbook_sheets.get(workbook_id, ())
    if sheet_name == "":
        sheet_index = 0
    else:
        try:
            sheet_index = sheets.index(sheet_name)
        except ValueError:
            raise MalformedErrorCell(
                f"workbook {workbook_id!r} has no sheet {sheet_name!r}"
            ) from None
    try:
        column, row, _, _ = parse_a1_address(a1)
    except MalformedAddress as exc:
        raise MalformedErrorCell(
            f"bad error cell {a1!r} for workbook {workbook_id!r}: {exc}"
        ) from exc
    return CellAddress(sheet_index=sheet_index, column=column, row=row)


# --- ratings file -----------------------------------------------------------

_QUOTED_CELL_RE = re.compile(r"^'((?:[^']|'')+)'!(.+)$")


def parse_error_cell_text(text: str) -> tuple[str, str]:
    """Split "Sheet1!B4" / "'My Sheet'!B4" / "B4" into (sheet, a1)."""
    quoted = _QUOTED_CELL_RE.match(text)
    if quoted:
        sheet, a1 = quoted.group(1).replace("''", "'"), quoted.group(2)
    elif "!" in text:
        sheet, a1 = text.rsplit("!", 1)
    else:
        sheet, a1 = "", text
    try:
        parse_a1_address(a1)
    except MalformedAddress as exc:
        raise MalformedErrorCell(f"bad error cell reference {text!r}: {exc}") from exc
    return sheet, a1


_RATING_KEYS = {"workbook_id", "expert_id", "rating", "error_cells", "notes"}


def parse_ratings(text: str) -> list[ExpertRating]:
    """Parse a ratings file: a JSON array of expert rating objects."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EvaluationInputError(f"ratings file is not valid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise EvaluationInputError("ratings file must be a JSON array")
    ratings = []
    for i, entry in enumerate(doc):
        ratings.append(_rating_from_json(entry, f"ratings[{i}]"))
    return ratings


def _rating_from_json(entry: Any, where: str) -> ExpertRating:
    if not isinstance(entry, dict):
        raise EvaluationInputError(f"{where} must be an object")
    unknown = set(entry) - _RATING_KEYS
    if unknown:
        raise EvaluationInputError(f"{where}: unknown keys {sorted(unknown)}")
    workbook_id = entry.get("workbook_id")
    if not isinstance(workbook_id, str) or not workbook_id:
        raise EvaluationInputError(f"{where}: workbook_id must be a non-empty string")
    expert_id = entry.get("expert_id")
    if not isinstance(expert_id, str) or not expert_id:
        raise EvaluationInputError(f"{where}: expert_id must be a non-empty string")
    rating_text = entry.get("rating")
    try:
        rating = Rating(rating_text)
    except ValueError:
        raise EvaluationInputError(
            f'{where}: rating must be "good" or "poor", got {rating_text!r}'
        ) from None
    raw_cells = entry.get("error_cells", [])
    if not isinstance(raw_cells, list) or not all(
        isinstance(c, str) for c in raw_cells
    ):
        raise EvaluationInputError(f"{where}: error_cells must be a string array")
    notes = entry.get("notes", "")
    if not isinstance(notes, str):
        raise EvaluationInputError(f"{where}: notes must be a string")
    return ExpertRating(
        workbook_id=workbook_id,
        rating=rating,
        expert_id=expert_id,
        error_cells=tuple(parse_error_cell_text(c) for c in raw_cells),
        notes=notes,
    )


def ratings_to_json(ratings: list[ExpertRating]) -> list[dict[str, Any]]:
    out = []
    for rating in ratings:
        cells = []
        for sheet, a1 in rating.error_cells:
            if sheet == "":
                cells.append(a1)
            elif re.fullmatch(r"[A-Za-z_][A-Za-z0-9_.]*", sheet):
                cells.append(f"{sheet}!{a1}")
            else:
                cells.append("'" + sheet.replace("'", "''") + f"'!{a1}")
        out.append(
            {
                "workbook_id": rating.workbook_id,
                "expert_id": rating.expert_id,
                "rating": rating.rating.value,
                "error_cells": cells,
                "notes": rating.notes,
            }
        )
    return out


# --- JSON form of results ----------------------------------------------------

def evaluation_to_json(result: EvaluationResult) -> dict[str, Any]:
    return {
        "rules": [
            {
                "checker_id": m.checker_id,
                "tp": m.tp,
                "fp": m.fp,
                "fn": m.fn,
                "tn": m.tn,
                "precision": _decimal_out(m.precision),
                "recall": _decimal_out(m.recall),
                "accuracy": _decimal_out(m.accuracy),
                "mcc": _decimal_out(m.mcc),
                "undefined": sorted(m.undefined),
                "perfect": m.perfect,
            }
            for m in result.rules
        ],
        "cell_matching": [
            {
                "checker_id": s.checker_id,
                "hits": s.hits,
                "misses": s.misses,
                "spurious": s.spurious,
            }
            for s in result.cell_matching
        ],
        "ranking": list(result.ranking),
        "consensus": [
            {
                "workbook_id": c.workbook_id,
                "rating": c.rating.value if c.rating else "undecided",
                "good_votes": c.good_votes,
                "poor_votes": c.poor_votes,
            }
            for c in result.consensus
        ],
    }


def evaluation_from_json(doc: Any) -> EvaluationResult:
    if not isinstance(doc, dict):
        raise EvaluationInputError("evaluation must be a JSON object")
    rules = tuple(
        RuleMetrics(
            checker_id=entry["checker_id"],
            tp=entry["tp"],
            fp=entry["fp"],
            fn=entry["fn"],
            tn=entry["tn"],
            precision=_decimal_in(entry["precision"]),
            recall=_decimal_in(entry["recall"]),
            accuracy=_decimal_in(entry["accuracy"]),
            mcc=_decimal_in(entry["mcc"]),
            undefined=frozenset(entry.get("undefined", [])),
            perfect=bool(entry["perfect"]),
        )
        for entry in doc.get("rules", [])
    )
    cell_matching = tuple(
        CellMatchStats(
            checker_id=entry["checker_id"],
            hits=entry["hits"],
            misses=entry["misses"],
            spurious=entry["spurious"],
        )
        for entry in doc.get("cell_matching", [])
    )
    consensus = tuple(
        Consensus(
            workbook_id=entry["workbook_id"],
            rating=(
                None
                if entry.get("rating") == "undecided"
                else Rating(entry["rating"])
            ),
            good_votes=entry.get("good_votes", 0),
            poor_votes=entry.get("poor_votes", 0),
        )
        for entry in doc.get("consensus", [])
    )
    return EvaluationResult(
        rules=rules,
        cell_matching=cell_matching,
        ranking=tuple(doc.get("ranking", [])),
        consensus=consensus,
    )


def _decimal_out(value: Decimal) -> int | float:
    if value == value.to_integral_value():
        return int(value)
    return float(value)


def _decimal_in(value: Any) -> Decimal:
    return Decimal(str(value)).quantize(_RATIO_EXP)
