"""Selection algorithms over a candidate pool: cosine top-k, MMR and VRSD.

All three share the same conventions:

* the first pick is the candidate with the highest cosine to the query;
* ties on exactly equal floating-point scores go to the lowest input index;
* the reported ``score`` is the cosine between the sum of the selected
  vectors and the query.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import veccore
from .errors import (
    DimensionMismatch,
    DuplicateId,
    EmptyInput,
    InvalidLambda,
    InvalidScenario,
    KTooLarge,
    ZeroNorm,
)

NEG_INF = float("-inf")


@dataclass(frozen=True, eq=False)
class EmbeddingRecord:
    id: str
    vector: np.ndarray
    payload: str | None = None

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("record id must be a non-empty string")
        v = veccore.as_vector(self.vector)
        if veccore.norm(v) == 0.0:
            raise ZeroNorm(f"record {self.id!r} has a zero vector")
        object.__setattr__(self, "vector", v)


@dataclass(frozen=True, eq=False)
class Query:
    id: str
    vector: np.ndarray

    def __post_init__(self):
        v = veccore.as_vector(self.vector)
        if veccore.norm(v) == 0.0:
            raise ZeroNorm(f"query {self.id!r} has a zero vector")
        object.__setattr__(self, "vector", v)

    def scaled(self, c: float) -> "Query":
        return Query(self.id, self.vector * c)


@dataclass(frozen=True, eq=False)
class CandidateSet:
    """Dimension-uniform, id-unique ordered collection of records."""

    records: tuple[EmbeddingRecord, ...]
    dimension: int

    def __post_init__(self):
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be positive")
        seen = set()
        for r in records:
            if r.vector.shape[0] != self.dimension:
                raise DimensionMismatch(
                    f"record {r.id!r} has dimension {r.vector.shape[0]}, expected {self.dimension}"
                )
            if r.id in seen:
                raise DuplicateId(f"duplicate record id {r.id!r}")
            seen.add(r.id)

    @classmethod
    def from_records(cls, records: Iterable[EmbeddingRecord]) -> "CandidateSet":
        records = tuple(records)
        if not records:
            raise EmptyInput("a candidate set needs at least one record")
        return cls(records, records[0].vector.shape[0])

    @classmethod
    def from_vectors(cls, vectors, ids: Sequence[str] | None = None) -> "CandidateSet":
        vectors = list(vectors)
        if ids is None:
            ids = [f"d{i}" for i in range(len(vectors))]
        return cls.from_records(EmbeddingRecord(i, v) for i, v in zip(ids, vectors, strict=True))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i: int) -> EmbeddingRecord:
        return self.records[i]

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.records]

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.stack([r.vector for r in self.records])
        m.setflags(write=False)
        return m

    def subset(self, indices: Iterable[int]) -> "CandidateSet":
        return CandidateSet(tuple(self.records[i] for i in indices), self.dimension)

    def transformed(self, fn) -> "CandidateSet":
        """Apply ``fn`` to every vector, keeping ids and payloads."""
        return CandidateSet(
            tuple(EmbeddingRecord(r.id, fn(r.vector), r.payload) for r in self.records),
            self.dimension,
        )


@dataclass(frozen=True)
class MmrParams:
    lam: float = 0.5

    def __post_init__(self):
        if not (isinstance(self.lam, (int, float)) and 0.0 <= self.lam <= 1.0):
            raise InvalidLambda(f"lambda must lie in [0, 1], got {self.lam!r}")


@dataclass(frozen=True)
class StepTrace:
    step_index: int
    chosen_id: str
    objective_value: float
    candidates_scanned: int
    degenerate: bool = False


@dataclass(frozen=True)
class SelectionResult:
    algorithm: str
    selected_ids: tuple[str, ...]
    sum_vector: tuple[float, ...]
    score: float
    steps: tuple[StepTrace, ...]
    candidate_evaluations: int
    pair_similarity_evaluations: int
    degenerate: bool = False
    lam: float | None = None

    @property
    def k(self) -> int:
        return len(self.selected_ids)


def _check_k(cands: CandidateSet, q: Query, k: int) -> None:
    if q.vector.shape[0] != cands.dimension:
        raise DimensionMismatch(
            f"query dimension {q.vector.shape[0]} != candidate dimension {cands.dimension}"
        )
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if k > len(cands):
        raise KTooLarge(f"k={k} exceeds the {len(cands)} available candidates")


def query_cosines(cands: CandidateSet, q: Query) -> list[float]:
    return [veccore.cosine(r.vector, q.vector) for r in cands.records]


def argmax_first(values: Sequence[float]) -> int:
    """Index of the maximum; the lowest index wins exact ties."""
    best, best_i = NEG_INF, 0
    for i, v in enumerate(values):
        if v > best:
            best, best_i = v, i
    return best_i


def _finish(algorithm, cands, q, order, steps, cand_evals, pair_evals, lam=None):
    vectors = [cands.records[i].vector for i in order]
    total = veccore.sum_vectors(vectors)
    degenerate = any(s.degenerate for s in steps)
    try:
        score = veccore.cosine(total, q.vector)
    except ZeroNorm:
        score, degenerate = 0.0, True
    return SelectionResult(
        algorithm=algorithm,
        selected_ids=tuple(cands.records[i].id for i in order),
        sum_vector=tuple(float(x) for x in total),
        score=score,
        steps=tuple(steps),
        candidate_evaluations=cand_evals,
        pair_similarity_evaluations=pair_evals,
        degenerate=degenerate,
        lam=lam,
    )


def top_n_filter(all_cands: CandidateSet, q: Query, n: int) -> CandidateSet:
    """Keep the ``n`` records most similar to ``q``, in descending-cosine order."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if q.vector.shape[0] != all_cands.dimension:
        raise DimensionMismatch(
            f"query dimension {q.vector.shape[0]} != candidate dimension {all_cands.dimension}"
        )
    cos = veccore.cosine_many(all_cands.matrix, q.vector)
    order = np.argsort(-cos, kind="stable")[:n]
    return all_cands.subset(int(i) for i in order)


def cosine_topk(cands: CandidateSet, q: Query, k: int) -> SelectionResult:
    _check_k(cands, q, k)
    cos = query_cosines(cands, q)
    order = sorted(range(len(cands)), key=lambda i: -cos[i])[:k]
    n = len(cands)
    steps = [
        StepTrace(step, cands.records[i].id, cos[i], n - step) for step, i in enumerate(order)
    ]
    return _finish("cosine", cands, q, order, steps, n, 0)


def mmr_select(cands: CandidateSet, q: Query, k: int, params: MmrParams | float = 0.5) -> SelectionResult:
    """Maximal Marginal Relevance with cosine for both similarity terms.

    Pair similarities are recomputed at every step (no caching), so
    ``pair_similarity_evaluations`` is exactly ``sum(i * (n - i))`` over
    steps ``i = 1 .. k-1``.
    """
    if not isinstance(params, MmrParams):
        params = MmrParams(params)
    lam = float(params.lam)
    _check_k(cands, q, k)
    vecs = [r.vector for r in cands.records]
    rel = query_cosines(cands, q)
    first = argmax_first(rel)
    selected = [first]
    remaining = [i for i in range(len(cands)) if i != first]
    steps = [StepTrace(0, cands.records[first].id, lam * rel[first], len(cands))]
    cand_evals = pair_evals = 0

    for step in range(1, k):
        best, best_pos = NEG_INF, 0
        for pos, i in enumerate(remaining):
            redundancy = max(veccore.cosine(vecs[i], vecs[j]) for j in selected)
            pair_evals += len(selected)
            cand_evals += 1
            value = lam * rel[i] - (1.0 - lam) * redundancy
            if value > best:
                best, best_pos = value, pos
        steps.append(StepTrace(step, cands.records[remaining[best_pos]].id, best, len(remaining)))
        selected.append(remaining.pop(best_pos))

    return _finish("mmr", cands, q, selected, steps, cand_evals, pair_evals, lam=lam)


def vrsd_select(cands: CandidateSet, q: Query, k: int) -> SelectionResult:
    """Greedy sum-vector selection.

    Starting from the most query-similar candidate, repeatedly add the
    remaining candidate ``v`` that maximises ``cos(s + v, q)`` where ``s`` is
    the running sum. A candidate whose addition cancels the sum to zero scores
    ``-inf``; if every remaining candidate cancels, the lowest index is taken
    and the step is flagged degenerate with objective 0.
    """
    _check_k(cands, q, k)
    vecs = [r.vector for r in cands.records]
    rel = query_cosines(cands, q)
    first = argmax_first(rel)
    selected = [first]
    remaining = [i for i in range(len(cands)) if i != first]
    running = np.array(vecs[first], dtype=np.float64)
    steps = [StepTrace(0, cands.records[first].id, rel[first], len(cands))]
    cand_evals = 0

    for step in range(1, k):
        best, best_pos = NEG_INF, None
        for pos, i in enumerate(remaining):
            cand_evals += 1
            try:
                value = veccore.cosine(running + vecs[i], q.vector)
            except ZeroNorm:
                value = NEG_INF
            if value > best:
                best, best_pos = value, pos
        degenerate = best_pos is None
        if degenerate:
            best_pos, best = 0, 0.0
        chosen = remaining.pop(best_pos)
        steps.append(
            StepTrace(step, cands.records[chosen].id, best, len(remaining) + 1, degenerate)
        )
        selected.append(chosen)
        running = running + vecs[chosen]

    return _finish("vrsd", cands, q, selected, steps, cand_evals, 0)


# -- same-side scenario ------------------------------------------------------


@dataclass(frozen=True)
class SameSideScenario:
    """2-D configuration with every candidate on one side of the query.

    ``theta`` is the angle of the most query-similar vector; the other
    candidates sit at the strictly larger ``candidate_angles``. All angles are
    radians measured from the query and must lie in (0, pi/2).
    """

    theta: float
    candidate_angles: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        angles = tuple(float(a) for a in self.candidate_angles)
        object.__setattr__(self, "candidate_angles", angles)
        everything = (self.theta,) + angles
        if not all(math.isfinite(a) and 0.0 < a < math.pi / 2 for a in everything):
            raise InvalidScenario("all angles must lie strictly inside (0, pi/2)")
        if any(b <= a for a, b in zip(everything, everything[1:])):
            raise InvalidScenario("angles must be strictly ascending and exceed theta")

    @property
    def angles(self) -> tuple[float, ...]:
        return (self.theta,) + self.candidate_angles


def build_same_side_scenario(s: SameSideScenario) -> tuple[CandidateSet, Query]:
    vectors = [(math.cos(a), math.sin(a)) for a in s.angles]
    return CandidateSet.from_vectors(vectors), Query("q", [1.0, 0.0])


def random_same_side_scenario(rng: np.random.Generator, num_candidates: int = 3,
                              min_gap: float = 1e-3) -> SameSideScenario:
    """Draw a valid scenario with angles at least ``min_gap`` apart."""
    upper = math.pi / 2 - min_gap
    while True:
        angles = np.sort(rng.uniform(min_gap, upper, size=num_candidates + 1))
        if np.all(np.diff(angles) >= min_gap):
            return SameSideScenario(float(angles[0]), tuple(float(a) for a in angles[1:]))
