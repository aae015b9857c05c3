"""Exact ground truth at desk scale.

``exact_select`` enumerates every admissible k-subset of a candidate pool,
``decision_check`` certifies "sum is a positive multiple of the query" with
integer arithmetic only, and ``subset_sum_bruteforce`` answers k-subset-sum
by exhaustive scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import veccore
from .algorithms import (
    NEG_INF,
    CandidateSet,
    Query,
    SelectionResult,
    StepTrace,
    _check_k,
    argmax_first,
    query_cosines,
)
from .errors import EnumerationCapExceeded, InstanceTooLarge, NotACertificate, ZeroNorm, ZeroQuery
from .veccore import IntVector

DEFAULT_CAP = 5_000_000
MAX_SUBSET_SUM_SIZE = 30


@dataclass(frozen=True)
class OracleMode:
    fix_first: bool = True


@dataclass(frozen=True)
class DecisionOutcome:
    is_yes: bool
    alpha: Fraction | None = None
    witness_ids: tuple[str, ...] | None = None


def enumeration_size(n: int, k: int, fix_first: bool) -> int:
    return math.comb(n - 1, k - 1) if fix_first else math.comb(n, k)


def exact_select(cands: CandidateSet, q: Query, k: int, mode: OracleMode | None = None,
                 cap: int = DEFAULT_CAP) -> SelectionResult:
    """Maximise ``cos(sum(S), q)`` over all admissible k-subsets ``S``.

    With ``mode.fix_first`` the most query-similar record is forced into
    every subset. Ties keep the lexicographically smallest index tuple and
    the selection is reported in input-index order.
    """
    mode = mode or OracleMode()
    _check_k(cands, q, k)
    n = len(cands)
    required = enumeration_size(n, k, mode.fix_first)
    if required > cap:
        raise EnumerationCapExceeded(required, cap)

    vecs = [r.vector for r in cands.records]
    if mode.fix_first:
        first = argmax_first(query_cosines(cands, q))
        rest = [i for i in range(n) if i != first]
        subsets = (tuple(sorted((first,) + c)) for c in combinations(rest, k - 1))
    else:
        subsets = combinations(range(n), k)

    best, best_tuple, evaluated = NEG_INF, None, 0
    for idx in subsets:
        evaluated += 1
        try:
            value = veccore.cosine(veccore.sum_vectors([vecs[i] for i in idx]), q.vector)
        except ZeroNorm:
            value = NEG_INF
        if value > best or (value == best and best_tuple is not None and idx < best_tuple):
            best, best_tuple = value, idx
    degenerate = best_tuple is None
    if degenerate:
        # every admissible subset sums to zero
        best_tuple = tuple(sorted((first,) + tuple(rest[: k - 1]))) if mode.fix_first else tuple(range(k))
        best = 0.0

    total = veccore.sum_vectors([vecs[i] for i in best_tuple])
    try:
        score = veccore.cosine(total, q.vector)
    except ZeroNorm:
        score = 0.0
    ids = tuple(cands.records[i].id for i in best_tuple)
    return SelectionResult(
        algorithm="exact",
        selected_ids=ids,
        sum_vector=tuple(float(x) for x in total),
        score=score,
        steps=(StepTrace(0, ",".join(ids), best, evaluated, degenerate),),
        candidate_evaluations=evaluated,
        pair_similarity_evaluations=0,
        degenerate=degenerate,
    )


def decision_check(selected: Sequence[IntVector], q: IntVector,
                   ids: Sequence[str] | None = None) -> DecisionOutcome:
    """Exact test of whether ``sum(selected) == alpha * q`` for some ``alpha > 0``."""
    q = veccore.int_vector(q)
    if q == (0, 0):
        raise ZeroQuery("query vector must be nonzero")
    s = veccore.int_sum([veccore.int_vector(v) for v in selected])
    if veccore.int_cross(s, q) != 0 or veccore.int_dot(s, q) <= 0:
        return DecisionOutcome(False)
    alpha = Fraction(veccore.int_dot(s, q), veccore.int_dot(q, q))
    if ids is None:
        ids = [str(i) for i in range(len(selected))]
    return DecisionOutcome(True, alpha, tuple(ids))


def subset_sum_bruteforce(inst) -> tuple[int, ...] | None:
    """Lexicographically smallest size-k set of positions of ``inst.values``
    summing to ``inst.target``, or ``None``."""
    values = inst.values
    if len(values) > MAX_SUBSET_SUM_SIZE:
        raise InstanceTooLarge(f"|T|={len(values)} exceeds {MAX_SUBSET_SUM_SIZE}")
    for positions in combinations(range(len(values)), inst.k):
        if sum(values[i] for i in positions) == inst.target:
            return positions
    return None


def require_certificate(selected: Sequence[IntVector], q: IntVector) -> DecisionOutcome:
    outcome = decision_check(selected, q)
    if not outcome.is_yes:
        raise NotACertificate(f"sum {veccore.int_sum(list(selected))} is not a positive multiple of {q}")
    return outcome
