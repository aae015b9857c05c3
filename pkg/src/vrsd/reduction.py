"""k-subset-sum to vector-retrieval reduction and its certificate lifting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algorithms import CandidateSet, Query
from .errors import NotACertificate
from .oracle import decision_check
from .veccore import IntVector


@dataclass(frozen=True)
class SubsetSumInstance:
    values: tuple[int, ...]
    target: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.values:
            raise ValueError("T must contain at least one integer")
        if not 1 <= self.k <= len(self.values):
            raise ValueError(f"k={self.k} must lie in [1, {len(self.values)}]")


@dataclass(frozen=True)
class ReducedInstance:
    candidates: tuple[IntVector, ...]
    query: IntVector
    k: int
    id_map: tuple[int, ...]

    def ids(self) -> list[str]:
        return [f"t{p}" for p in self.id_map]

    def to_float(self) -> tuple[CandidateSet, Query]:
        """The same instance as a floating-point candidate pool and query."""
        cands = CandidateSet.from_vectors([list(c) for c in self.candidates], self.ids())
        return cands, Query("q", list(self.query))


def reduce(inst: SubsetSumInstance) -> ReducedInstance:
    """Map ``(T, t, k)`` to ``R = {[t_i, 1]}``, ``q = [t, k]``."""
    return ReducedInstance(
        candidates=tuple((v, 1) for v in inst.values),
        query=(inst.target, inst.k),
        k=inst.k,
        id_map=tuple(range(len(inst.values))),
    )


def lift_certificate(red: ReducedInstance, selected_indices: Sequence[int]) -> tuple[int, ...]:
    """Turn a yes-certificate of the reduced instance into positions of T.

    Because every candidate's second component is 1, a parallel sum forces
    ``alpha == 1`` and the selected values sum to the target.
    """
    indices = tuple(int(i) for i in selected_indices)
    if len(set(indices)) != len(indices) or len(indices) != red.k:
        raise NotACertificate(f"need {red.k} distinct indices, got {indices}")
    if any(not 0 <= i < len(red.candidates) for i in indices):
        raise NotACertificate(f"index out of range in {indices}")
    outcome = decision_check([red.candidates[i] for i in indices], red.query)
    if not outcome.is_yes:
        raise NotACertificate(f"indices {indices} do not sum to a positive multiple of {red.query}")
    assert outcome.alpha == 1, outcome.alpha
    return tuple(sorted(red.id_map[i] for i in indices))


def expand_to_k_instances(values: Sequence[int], target: int) -> list[SubsetSumInstance]:
    return [SubsetSumInstance(tuple(values), target, k) for k in range(1, len(values) + 1)]


def indices_of(red: ReducedInstance, ids: Sequence[str]) -> list[int]:
    lookup = {name: i for i, name in enumerate(red.ids())}
    return [lookup[i] for i in ids]
