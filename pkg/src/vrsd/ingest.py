"""File formats, run configuration and the seeded synthetic generator.

Embeddings and queries are JSON Lines, one object per line::

    {"id": "a", "vector": [3, 1], "text": "optional payload"}

Selections and reports are single JSON documents whose keys follow the
dataclass field order.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import veccore
from .algorithms import CandidateSet, EmbeddingRecord, Query, SelectionResult, StepTrace, top_n_filter
from .errors import DimensionMismatch, DuplicateId, EmptyInput, IoError, ParseError, ZeroNorm
from .metrics import AlgorithmSpec, EvaluationReport

DEFAULT_POOL_SIZE = 20


# -- configuration -----------------------------------------------------------


@dataclass(frozen=True)
class SyntheticSpec:
    seed: int = 0
    num_records: int = 1000
    dimension: int = 32
    pool_size: int = DEFAULT_POOL_SIZE
    cluster_spread: float = 0.3
    distractor_fraction: float = 0.5

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.num_records < 1:
            raise ValueError("num_records must be positive")
        if self.dimension < 2:
            raise ValueError("dimension must be at least 2")
        if not 1 <= self.pool_size <= self.num_records:
            raise ValueError("pool_size must lie in [1, num_records]")
        if not (math.isfinite(self.cluster_spread) and self.cluster_spread > 0):
            raise ValueError("cluster_spread must be positive")
        if not 0.0 <= self.distractor_fraction <= 1.0:
            raise ValueError("distractor_fraction must lie in [0, 1]")


@dataclass(frozen=True)
class RunConfig:
    k: int
    n: int = DEFAULT_POOL_SIZE
    algorithms: tuple[AlgorithmSpec, ...] = (
        AlgorithmSpec("vrsd"),
        AlgorithmSpec("mmr", 0.0),
        AlgorithmSpec("mmr", 0.5),
        AlgorithmSpec("mmr", 1.0),
    )
    normalize_on_load: bool = False
    input_path: str | None = None
    output_path: str | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.k > self.n:
            raise ValueError(f"k={self.k} exceeds pool size n={self.n}")


# -- JSONL input -------------------------------------------------------------


def _parse_line(raw: str, lineno: int) -> tuple[str, list[float], str | None]:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc.msg})", lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", lineno)
    if "id" not in obj or not isinstance(obj["id"], str) or not obj["id"]:
        raise ParseError('missing or invalid "id"', lineno)
    vec = obj.get("vector")
    if not isinstance(vec, list) or not vec:
        raise ParseError('missing or invalid "vector"', lineno)
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in vec):
        raise ParseError('"vector" must contain only numbers', lineno)
    if not all(math.isfinite(x) for x in vec):
        raise ParseError('"vector" contains a non-finite value', lineno)
    text = obj.get("text")
    if text is not None and not isinstance(text, str):
        raise ParseError('"text" must be a string', lineno)
    return obj["id"], vec, text


def _read_jsonl(path) -> list[tuple[int, str, list[float], str | None]]:
    rows = []
    first_line = first_dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            rid, vec, text = _parse_line(raw, lineno)
            if first_dim is None:
                first_line, first_dim = lineno, len(vec)
            elif len(vec) != first_dim:
                raise DimensionMismatch(
                    f"line {lineno} has dimension {len(vec)} but line {first_line} has dimension {first_dim}"
                )
            rows.append((lineno, rid, vec, text))
    if not rows:
        raise EmptyInput(f"{path} contains no records")
    return rows


def load_embeddings(path, normalize: bool = False) -> CandidateSet:
    records, seen = [], {}
    for lineno, rid, vec, text in _read_jsonl(path):
        if rid in seen:
            raise DuplicateId(f"line {lineno}: id {rid!r} already used on line {seen[rid]}")
        seen[rid] = lineno
        v = veccore.as_vector(vec)
        if veccore.norm(v) == 0.0:
            raise ZeroNorm(f"line {lineno}: record {rid!r} has a zero vector")
        if normalize:
            v = veccore.normalize(v)
        records.append(EmbeddingRecord(rid, v, text))
    return CandidateSet.from_records(records)


def load_queries(path, normalize: bool = False) -> list[Query]:
    queries = []
    for lineno, rid, vec, _ in _read_jsonl(path):
        v = veccore.as_vector(vec)
        if veccore.norm(v) == 0.0:
            raise ZeroNorm(f"line {lineno}: query {rid!r} has a zero vector")
        queries.append(Query(rid, veccore.normalize(v) if normalize else v))
    return queries


def write_jsonl(path, items: Sequence[EmbeddingRecord | Query]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for item in items:
            obj = {"id": item.id, "vector": [float(x) for x in item.vector]}
            payload = getattr(item, "payload", None)
            if payload is not None:
                obj["text"] = payload
            fh.write(json.dumps(obj) + "\n")


# -- synthetic data ----------------------------------------------------------


def _unit_rows(m: np.ndarray) -> np.ndarray:
    return m / np.linalg.norm(m, axis=1, keepdims=True)


def _generate(rng: np.random.Generator, spec: SyntheticSpec, query_id: str) -> tuple[CandidateSet, Query]:
    d = spec.dimension
    q = _unit_rows(rng.standard_normal((1, d)))[0]
    num_distractors = int(round(spec.distractor_fraction * spec.num_records))
    num_cluster = spec.num_records - num_distractors
    # tangent-space Gaussian with per-axis stddev cluster_spread, then renormalised
    noise = rng.standard_normal((num_cluster, d)) * spec.cluster_spread
    noise -= np.outer(noise @ q, q)
    clustered = _unit_rows(q[None, :] + noise)
    distractors = _unit_rows(rng.standard_normal((num_distractors, d)))
    vectors = np.concatenate([clustered, distractors]) if num_distractors else clustered
    records = [EmbeddingRecord(f"r{i:04d}", v) for i, v in enumerate(vectors)]
    return CandidateSet(tuple(records), d), Query(query_id, q)


def generate_synthetic(spec: SyntheticSpec) -> tuple[CandidateSet, Query]:
    """Deterministic corpus of ``num_records`` unit vectors and one unit query."""
    return _generate(np.random.default_rng(spec.seed), spec, "q0000")


def synthetic_suite(spec: SyntheticSpec, num_queries: int) -> dict[Query, CandidateSet]:
    """One independent corpus per query, each filtered to ``pool_size``."""
    children = np.random.SeedSequence(spec.seed).spawn(num_queries)
    suite = {}
    for i, child in enumerate(children):
        full, q = _generate(np.random.default_rng(child), spec, f"q{i:04d}")
        suite[q] = top_n_filter(full, q, spec.pool_size)
    return suite


# -- JSON documents ----------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False, default=_jsonable) + "\n"


def selection_to_dict(result: SelectionResult) -> dict:
    return asdict(result)


def selection_from_dict(d: dict) -> SelectionResult:
    try:
        return SelectionResult(
            algorithm=d["algorithm"],
            selected_ids=tuple(d["selected_ids"]),
            sum_vector=tuple(float(x) for x in d["sum_vector"]),
            score=float(d["score"]),
            steps=tuple(StepTrace(**s) for s in d["steps"]),
            candidate_evaluations=int(d["candidate_evaluations"]),
            pair_similarity_evaluations=int(d["pair_similarity_evaluations"]),
            degenerate=bool(d.get("degenerate", False)),
            lam=d.get("lam"),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"not a selection document: {exc}") from None


def report_to_dict(report: EvaluationReport) -> dict:
    return asdict(report)


def report_from_dict(d: dict) -> EvaluationReport:
    try:
        return EvaluationReport(**d)
    except TypeError as exc:
        raise ParseError(f"not a report document: {exc}") from None


def _write(path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def save_selection(result: SelectionResult, path) -> None:
    _write(path, dumps(selection_to_dict(result)))


def load_selection(path) -> SelectionResult:
    return selection_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def save_report(report: EvaluationReport, path) -> None:
    _write(path, dumps(report_to_dict(report)))


def load_report(path) -> EvaluationReport:
    return report_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
