"""Sum-vector retrieval: VRSD, MMR, cosine top-k, an exact oracle and the
k-subset-sum reduction."""

from .algorithms import (
    CandidateSet,
    EmbeddingRecord,
    MmrParams,
    Query,
    SameSideScenario,
    SelectionResult,
    StepTrace,
    build_same_side_scenario,
    cosine_topk,
    mmr_select,
    top_n_filter,
    vrsd_select,
)
from .metrics import AlgorithmSpec, EvaluationReport, QueryOutcome, compare, run_suite
from .oracle import DecisionOutcome, OracleMode, decision_check, exact_select, subset_sum_bruteforce
from .reduction import ReducedInstance, SubsetSumInstance, expand_to_k_instances, lift_certificate, reduce

__version__ = "0.1.0"
