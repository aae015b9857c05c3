"""Sum-vector evaluation: win rate, max-diff and per-algorithm means."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algorithms import CandidateSet, MmrParams, Query, SelectionResult, cosine_topk, mmr_select, vrsd_select
from .errors import EmptyInput, MissingTag, QueryFailed

TIE_TOL = 1e-12


@dataclass(frozen=True)
class AlgorithmSpec:
    """One configured algorithm, e.g. ``AlgorithmSpec("mmr", 0.5)``."""

    name: str
    lam: float | None = None
    fix_first: bool = True

    def __post_init__(self):
        if self.name not in ("cosine", "mmr", "vrsd", "exact"):
            raise ValueError(f"unknown algorithm {self.name!r}")
        if self.name == "mmr":
            if self.lam is None:
                raise ValueError("mmr needs a lambda")
            MmrParams(self.lam)

    @property
    def tag(self) -> str:
        if self.name == "mmr":
            return f"mmr({self.lam:g})"
        return self.name

    def run(self, cands: CandidateSet, q: Query, k: int) -> SelectionResult:
        if self.name == "vrsd":
            return vrsd_select(cands, q, k)
        if self.name == "mmr":
            return mmr_select(cands, q, k, MmrParams(self.lam))
        if self.name == "cosine":
            return cosine_topk(cands, q, k)
        from .oracle import OracleMode, exact_select

        return exact_select(cands, q, k, OracleMode(self.fix_first))


@dataclass(frozen=True)
class QueryOutcome:
    query_id: str
    scores: dict[str, float]

    def __post_init__(self):
        for tag, s in self.scores.items():
            if not -1.0 <= s <= 1.0:
                raise ValueError(f"score {s} for {tag!r} outside [-1, 1]")


@dataclass(frozen=True)
class EvaluationReport:
    baseline_tag: str
    challenger_tag: str
    win_rate: float
    tie_rate: float
    max_diff: float
    mean_by_algorithm: dict[str, float] = field(default_factory=dict)
    num_queries: int = 0


def compare(outcomes: Sequence[QueryOutcome], challenger: str, baseline: str) -> EvaluationReport:
    """Strict wins and ties (within 1e-12) of ``challenger`` over ``baseline``.

    ``max_diff`` is signed: the largest ``challenger - baseline`` over queries.
    """
    if not outcomes:
        raise EmptyInput("no query outcomes to compare")
    for o in outcomes:
        for tag in (challenger, baseline):
            if tag not in o.scores:
                raise MissingTag(f"query {o.query_id!r} has no score for {tag!r}")
    wins = ties = 0
    max_diff = -math.inf
    for o in outcomes:
        c, b = o.scores[challenger], o.scores[baseline]
        diff = c - b
        if abs(diff) <= TIE_TOL:
            ties += 1
        elif diff > 0:
            wins += 1
        max_diff = max(max_diff, diff)
    m = len(outcomes)
    means = {tag: math.fsum(o.scores[tag] for o in outcomes) / m for tag in dict.fromkeys((challenger, baseline))}
    return EvaluationReport(baseline, challenger, wins / m, ties / m, max_diff, means, m)


def run_suite(cands_per_query: Mapping[Query, CandidateSet], algorithms: Sequence[AlgorithmSpec],
              k: int, workers: int = 1) -> list[QueryOutcome]:
    """Score every algorithm on every query; output order follows the mapping."""
    if not cands_per_query:
        raise EmptyInput("no queries to evaluate")
    items = list(cands_per_query.items())

    def one(item):
        q, cands = item
        try:
            return QueryOutcome(q.id, {a.tag: a.run(cands, q, k).score for a in algorithms})
        except Exception as exc:
            raise QueryFailed(q.id, exc) from exc

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(one, items))
    return [one(item) for item in items]


# -- presentation ------------------------------------------------------------


def format_percent(x: float) -> str:
    return f"{100 * x:.1f}%"


def format_real(x: float) -> str:
    return f"{x:.3f}"


def format_row(report: EvaluationReport) -> tuple[str, str, str]:
    """Win rate, max-diff and baseline mean as in a results-table row."""
    return (
        format_percent(report.win_rate),
        format_real(report.max_diff),
        format_real(report.mean_by_algorithm[report.baseline_tag]),
    )


def format_table(reports: Sequence[EvaluationReport]) -> str:
    """Aligned plain-text table: challenger row first, then one row per baseline."""
    if not reports:
        return ""
    challenger = reports[0].challenger_tag
    rows = [("Algorithm", "win rate", "max-diff", "mean")]
    rows.append((challenger, "-", "-", format_real(reports[0].mean_by_algorithm[challenger])))
    rows.extend((r.baseline_tag, *format_row(r)) for r in reports)
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = [
        "  ".join(cell.ljust(w) if i == 0 else cell.rjust(w) for i, (cell, w) in enumerate(zip(row, widths)))
        for row in rows
    ]
    return "\n".join(lines)
