"""Command-line interface: ``vrsd {retrieve,evaluate,reduce,oracle,gen}``.

Exit codes: 0 success, 1 data error, 2 usage error, 3 enumeration cap hit.
"""

from __future__ import annotations

import argparse
import sys

from . import ingest
from .algorithms import CandidateSet, Query, top_n_filter
from .errors import EnumerationCapExceeded, VRSDError
from .metrics import AlgorithmSpec, compare, format_table, run_suite
from .oracle import DEFAULT_CAP, OracleMode, decision_check, exact_select
from .reduction import SubsetSumInstance, indices_of, lift_certificate, reduce

EXIT_DATA, EXIT_USAGE, EXIT_CAP = 1, 2, 3


class DataError(VRSDError):
    pass


def _int_csv(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty integer list")
    return values


def _float_csv(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values or any(not 0.0 <= v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError("lambdas must be a non-empty list of values in [0, 1]")
    return values


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _emit(doc: dict, out: str | None) -> None:
    text = ingest.dumps(doc)
    if out:
        ingest._write(out, text)
    else:
        sys.stdout.write(text)


def _load_single_query(path, normalize: bool) -> Query:
    queries = ingest.load_queries(path, normalize)
    if len(queries) != 1:
        raise DataError(f"{path} must contain exactly one query, found {len(queries)}")
    return queries[0]


def _pool(cands: CandidateSet, q: Query, k: int, n: int | None) -> CandidateSet:
    n = min(ingest.DEFAULT_POOL_SIZE, len(cands)) if n is None else n
    if n > len(cands):
        raise DataError(f"--n {n} exceeds the {len(cands)} records available")
    if k > n:
        raise DataError(f"--k {k} exceeds pool size {n}")
    return top_n_filter(cands, q, n)


def _steps_table(result) -> str:
    lines = [f"{result.algorithm}  score={result.score:.6f}  ids={','.join(result.selected_ids)}"]
    for s in result.steps:
        lines.append(f"  step {s.step_index:>3}  {s.chosen_id:<12} objective={s.objective_value:.6f}"
                     f"  scanned={s.candidates_scanned}")
    return "\n".join(lines)


# -- subcommands -------------------------------------------------------------


def cmd_retrieve(args) -> int:
    cands = ingest.load_embeddings(args.embeddings, args.normalize)
    q = _load_single_query(args.query, args.normalize)
    pool = _pool(cands, q, args.k, args.n)
    if args.algo == "exact":
        result = exact_select(pool, q, args.k, OracleMode(fix_first=True), cap=args.cap)
    else:
        result = AlgorithmSpec(args.algo, args.lam).run(pool, q, args.k)
    _emit(ingest.selection_to_dict(result), args.out)
    if args.pretty:
        print(_steps_table(result))
    return 0


def cmd_evaluate(args) -> int:
    cands = ingest.load_embeddings(args.embeddings, args.normalize)
    queries = ingest.load_queries(args.queries, args.normalize)
    suite = {q: _pool(cands, q, args.k, args.n) for q in queries}
    algorithms = [AlgorithmSpec("vrsd")] + [AlgorithmSpec("mmr", lam) for lam in args.lambdas]
    outcomes = run_suite(suite, algorithms, args.k, workers=args.workers)
    reports = [compare(outcomes, "vrsd", a.tag) for a in algorithms[1:]]
    table = format_table(reports)
    _emit({"k": args.k, "reports": [ingest.report_to_dict(r) for r in reports], "table": table}, args.out)
    if args.pretty:
        print(table)
    return 0


def cmd_reduce(args) -> int:
    inst = SubsetSumInstance(tuple(args.set), args.target, args.k)
    red = reduce(inst)
    doc = {
        "values": list(inst.values),
        "target": inst.target,
        "k": inst.k,
        "candidates": [list(c) for c in red.candidates],
        "query": list(red.query),
    }
    if args.solve:
        cands, q = red.to_float()
        sel = exact_select(cands, q, red.k, OracleMode(fix_first=False), cap=args.cap)
        idx = indices_of(red, sel.selected_ids)
        outcome = decision_check([red.candidates[i] for i in idx], red.query, sel.selected_ids)
        doc["answer"] = "YES" if outcome.is_yes else "NO"
        doc["score"] = sel.score
        doc["selected_ids"] = list(sel.selected_ids)
        if outcome.is_yes:
            positions = lift_certificate(red, idx)
            doc["alpha"] = outcome.alpha
            doc["subset_positions"] = list(positions)
            doc["subset_values"] = [inst.values[p] for p in positions]
    _emit(doc, None)
    if args.pretty:
        print(f"R = {[list(c) for c in red.candidates]}")
        print(f"q = {list(red.query)}  k = {red.k}")
        if args.solve:
            if doc["answer"] == "YES":
                print(f"YES  subset = {{{', '.join(map(str, doc['subset_values']))}}}")
            else:
                print("NO")
    return 0


def cmd_oracle(args) -> int:
    cands = ingest.load_embeddings(args.embeddings, args.normalize)
    q = _load_single_query(args.query, args.normalize)
    if args.k > len(cands):
        raise DataError(f"--k {args.k} exceeds the {len(cands)} records available")
    result = exact_select(cands, q, args.k, OracleMode(args.fix_first), cap=args.cap)
    doc = {"selection": ingest.selection_to_dict(result)}
    if args.compare:
        other = ingest.load_selection(args.compare)
        doc["compared_algorithm"] = other.algorithm
        doc["compared_score"] = other.score
        doc["gap"] = result.score - other.score
    _emit(doc, args.out)
    if args.pretty:
        print(_steps_table(result))
        if "gap" in doc:
            print(f"gap vs {doc['compared_algorithm']}: {doc['gap']:.3e}")
    return 0


def cmd_gen(args) -> int:
    spec = ingest.SyntheticSpec(
        seed=args.seed,
        num_records=args.num,
        dimension=args.dim,
        pool_size=min(ingest.DEFAULT_POOL_SIZE, args.num),
        cluster_spread=args.spread,
        distractor_fraction=args.distractors,
    )
    cands, q = ingest.generate_synthetic(spec)
    emb_path = f"{args.out_prefix}.embeddings.jsonl"
    query_path = f"{args.out_prefix}.queries.jsonl"
    ingest.write_jsonl(emb_path, cands.records)
    ingest.write_jsonl(query_path, [q])
    if args.pretty:
        print(f"wrote {len(cands)} records to {emb_path} and 1 query to {query_path}")
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vrsd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--pretty", action="store_true", help="also print a human-readable summary")
        if out:
            p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("retrieve", help="select k records for one query")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--algo", required=True, choices=["cosine", "mmr", "vrsd", "exact"])
    p.add_argument("--k", required=True, type=_positive)
    p.add_argument("--n", type=_positive, help="candidate pool size (default: min(20, #records))")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP)
    p.add_argument("--normalize", action="store_true", help="unit-normalise vectors on load")
    common(p)
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("evaluate", help="vrsd vs mmr(lambda) over a query file")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--queries", required=True)
    p.add_argument("--k", required=True, type=_positive)
    p.add_argument("--n", type=_positive)
    p.add_argument("--lambdas", type=_float_csv, default=[0.0, 0.5, 1.0])
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--normalize", action="store_true")
    common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("reduce", help="build the vector instance of a k-subset-sum instance")
    p.add_argument("--set", required=True, type=_int_csv, help="e.g. 3,5,2 (use --set=-3,5 for negatives)")
    p.add_argument("--target", required=True, type=int)
    p.add_argument("--k", required=True, type=_positive)
    p.add_argument("--solve", action="store_true")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP)
    common(p, out=False)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("oracle", help="exact optimum by exhaustive enumeration")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--k", required=True, type=_positive)
    p.add_argument("--fix-first", action="store_true")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP)
    p.add_argument("--compare", help="selection JSON whose score is compared to the optimum")
    p.add_argument("--normalize", action="store_true")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a seeded synthetic corpus and query")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--num", type=_positive, default=1000)
    p.add_argument("--dim", type=_positive, default=32)
    p.add_argument("--spread", type=float, default=0.3)
    p.add_argument("--distractors", type=float, default=0.5)
    p.add_argument("--out-prefix", required=True)
    common(p, out=False)
    p.set_defaults(func=cmd_gen)
    return parser


def _validate(parser, args) -> None:
    if args.command == "retrieve":
        if (args.algo == "mmr") != (args.lam is not None):
            parser.error("--lambda is required with --algo mmr and only allowed with it")
        if args.lam is not None and not 0.0 <= args.lam <= 1.0:
            parser.error("--lambda must lie in [0, 1]")
    if args.command in ("retrieve", "evaluate") and args.n is not None and args.k > args.n:
        parser.error("--k must not exceed --n")
    if args.command == "reduce" and args.k > len(args.set):
        parser.error("--k must not exceed the size of --set")
    if args.command == "gen":
        if args.dim < 2:
            parser.error("--dim must be at least 2")
        if not args.spread > 0:
            parser.error("--spread must be positive")
        if not 0.0 <= args.distractors <= 1.0:
            parser.error("--distractors must lie in [0, 1]")
        if not 0 <= args.seed < 2**64:
            parser.error("--seed must be an unsigned 64-bit integer")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.func(args)
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}; rerun with --cap {exc.required}", file=sys.stderr)
        return EXIT_CAP
    except (VRSDError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
