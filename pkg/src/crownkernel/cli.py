"""Command-line frontend: kernelize, solve, verify, replay, gen and bench.

Exit codes: 0 success (or a yes answer), 1 a no answer or failed check, 2 usage,
parse or internal errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from .graph import GraphFormatError, WeightedGraph, generate_instance, is_claw_free, parse_graph, render_graph
from .kernels import (
    Instance,
    KernelError,
    KernelOutcome,
    ReductionRecord,
    apply_record,
    ceil_sqrt,
    kernelize_coc2,
    kernelize_coc_fpt,
    kernelize_vi,
    kernelize_wcoc,
    kernelize_wvi,
)
from .oracle import OracleCapExceeded, check_equivalence, solve_instance

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2

MODES = ("auto", "fpt", "poly-w1", "poly-clawfree", "poly")


class UsageError(Exception):
    pass


# instance plumbing


def build_instance(problem: str, graph: WeightedGraph, p: int | None, k: int | None, W: int | None) -> Instance:
    if problem in ("vi", "wvi"):
        if p is None:
            raise UsageError(f"--problem {problem} requires -p")
        return Instance(problem, graph, p=p)
    if k is None:
        raise UsageError(f"--problem {problem} requires -k")
    if W is None:
        raise UsageError(f"--problem {problem} requires -W")
    if W < 1:
        raise UsageError("-W must be positive")
    return Instance(problem, graph, k=k, W=W)


def normalise_for_problem(inst: Instance) -> Instance:
    """Unweighted problems see every vertex with weight 1."""
    if inst.weighted:
        return inst
    return inst.with_graph(inst.graph.with_unit_weights(), inst.budget)


def resolve_mode(inst: Instance, mode: str) -> str:
    """Pick the concrete algorithm for a coc instance."""
    if mode in ("fpt", "poly-w1", "poly-clawfree"):
        return mode
    if inst.W == 1:
        return "poly-w1"
    if is_claw_free(inst.graph):
        return "poly-clawfree"
    if mode == "poly":
        raise UsageError("--mode poly needs W=1 or a claw-free graph")
    return "fpt"


def run_kernel(inst: Instance, mode: str, max_iterations: int | None) -> tuple[KernelOutcome, str]:
    if inst.problem == "vi":
        return kernelize_vi(inst, max_iterations), "vi"
    if inst.problem == "wvi":
        return kernelize_wvi(inst, max_iterations), "wvi"
    if inst.problem == "wcoc":
        return kernelize_wcoc(inst, max_iterations), "wcoc"
    chosen = resolve_mode(inst, mode)
    if chosen == "fpt":
        return kernelize_coc_fpt(inst, max_iterations), chosen
    if chosen == "poly-w1":
        if inst.W != 1:
            raise UsageError("--mode poly-w1 requires -W 1")
        return kernelize_coc2(inst, "matching-seeded", max_iterations), chosen
    if not is_claw_free(inst.graph):
        raise UsageError("--mode poly-clawfree requires a claw-free graph")
    return kernelize_coc2(inst, "clawfree", max_iterations), chosen


def record_to_json(record: ReductionRecord) -> dict[str, Any]:
    return {
        "head": sorted(record.head),
        "crown": sorted(record.crown),
        "decrement": record.decrement,
        "gadget": list(record.gadget),
        "gadget_weight": record.gadget_weight,
    }


def record_from_json(data: dict[str, Any]) -> ReductionRecord:
    return ReductionRecord(
        frozenset(data["head"]),
        frozenset(data["crown"]),
        int(data["decrement"]),
        tuple(data.get("gadget", ())),
        int(data.get("gadget_weight", 1)),
    )


def replay_certificate(inst: Instance, records: Sequence[ReductionRecord]) -> Instance:
    current = normalise_for_problem(inst)
    for record in records:
        current = apply_record(current, record)
    return current


def size_bound(inst: Instance) -> int:
    """Kernel-size bound for a non-no verdict (vertices, or weight for weighted problems).

    For wvi the unknown p_ell is replaced by its trivial upper bound p.
    """
    if inst.problem == "vi":
        return 3 * inst.p * inst.p
    if inst.problem == "wvi":
        p = max(inst.p, 0)
        # 3(p^2 + p^1.5 * p) rounded up
        return 3 * (p * p + ceil_sqrt(p**5))
    if inst.problem == "wcoc":
        mu = max(inst.k, inst.W)
        return 3 * mu * (inst.k + ceil_sqrt(mu) * inst.W)
    return 2 * max(inst.k, 0) * inst.W


# reports and files


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_input(path: str | None) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def load_graph(path: str | None) -> tuple[WeightedGraph, bytes]:
    raw = read_input(path)
    return parse_graph(raw), raw


def kernelize_report(
    inst: Instance,
    raw: bytes,
    mode: str,
    max_iterations: int | None,
    seed: int | None,
    parse_seconds: float = 0.0,
) -> tuple[dict[str, Any], str]:
    """Run a kernelization; returns the report and the rendered kernel."""
    start = time.perf_counter()
    outcome, chosen = run_kernel(inst, mode, max_iterations)
    kernel_seconds = time.perf_counter() - start
    start = time.perf_counter()
    reduced = outcome.reduced_instance
    kernel_text = render_graph(reduced.graph)
    render_seconds = time.perf_counter() - start
    report = {
        "problem": inst.problem,
        "input_sha256": hashlib.sha256(raw).hexdigest(),
        "parameters": {
            "p": inst.p,
            "k": inst.k,
            "W": inst.W,
            "mode": chosen,
            "max_iterations": max_iterations,
        },
        "verdict": outcome.verdict,
        "note": outcome.note,
        "kernel": {
            "vertices": reduced.graph.n,
            "total_weight": reduced.graph.total_weight(),
            "budget": reduced.budget,
            "size_bound": size_bound(inst),
        },
        "certificate": [record_to_json(r) for r in outcome.certificate],
        "lambda_lb": outcome.lambda_lb,
        "witness": sorted(outcome.witness) if outcome.witness is not None else None,
        "stats": outcome.stats,
        "timings": {
            "parse": round(parse_seconds, 6),
            "kernelize": round(kernel_seconds, 6),
            "render": round(render_seconds, 6),
        },
        "seed": seed,
    }
    return report, kernel_text


def verdict_exit(verdict: str) -> int:
    return EXIT_NO if verdict == "decided-no" else EXIT_OK


# commands


def cmd_kernelize(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    graph, raw = load_graph(args.input)
    parse_seconds = time.perf_counter() - start
    inst = build_instance(args.problem, graph, args.p, args.k, args.W)
    report, kernel_text = kernelize_report(inst, raw, args.mode, args.max_iterations, args.seed, parse_seconds)
    if args.output:
        write_atomic(args.output, kernel_text)
    else:
        sys.stdout.write(kernel_text)
    if args.report:
        write_atomic(args.report, canonical_json(report))
    elif args.output:
        sys.stdout.write(canonical_json(report))
    print(f"verdict: {report['verdict']}", file=sys.stderr)
    return verdict_exit(report["verdict"])


def cmd_solve(args: argparse.Namespace) -> int:
    graph, _ = load_graph(args.input)
    inst = normalise_for_problem(build_instance(args.problem, graph, args.p, args.k, args.W))
    result = solve_instance(inst, args.cap)
    out = {
        "answer": "yes" if result.answer else "no",
        "optimum": result.optimum,
        "witness": sorted(result.witness) if result.witness is not None else None,
        "p_ell": result.p_ell,
    }
    sys.stdout.write(canonical_json(out))
    return EXIT_OK if result.answer else EXIT_NO


def cmd_verify(args: argparse.Namespace) -> int:
    graph, _ = load_graph(args.input)
    original = normalise_for_problem(build_instance(args.problem, graph, args.p, args.k, args.W))
    report = None
    if args.report:
        with open(args.report, encoding="utf-8") as handle:
            report = json.load(handle)
    if report is not None and report["verdict"] in ("decided-yes", "decided-no"):
        answer = solve_instance(original, args.cap).answer
        ok = answer == (report["verdict"] == "decided-yes")
    else:
        if args.kernel is None:
            raise UsageError("verify needs --kernel (or a --report with a decided verdict)")
        budget = args.kernel_budget
        if budget is None and report is not None:
            budget = report["kernel"]["budget"]
        if budget is None:
            raise UsageError("verify needs --kernel-budget or --report")
        kernel_graph, _ = load_graph(args.kernel)
        kernel = normalise_for_problem(original.with_graph(kernel_graph, budget))
        ok = check_equivalence(original, kernel, args.problem, args.cap)
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_NO


def cmd_replay(args: argparse.Namespace) -> int:
    graph, raw = load_graph(args.input)
    with open(args.report, encoding="utf-8") as handle:
        report = json.load(handle)
    if report["input_sha256"] != hashlib.sha256(raw).hexdigest():
        raise UsageError("input does not match the report's input hash")
    params = report["parameters"]
    inst = build_instance(report["problem"], graph, params["p"], params["k"], params["W"])
    replayed = replay_certificate(inst, [record_from_json(r) for r in report["certificate"]])
    text = render_graph(replayed.graph)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def gen_params(args: argparse.Namespace) -> dict[str, Any]:
    names = ("n", "edge_p", "max_weight", "base_n", "count", "size")
    params = {name: getattr(args, name) for name in names if getattr(args, name) is not None}
    if "edge_p" in params:
        params["p"] = params.pop("edge_p")
    return params


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        graph = generate_instance(args.kind, gen_params(args), args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = f"c generated kind={args.kind} seed={args.seed}\n" + render_graph(graph)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def parse_int_list(text: str) -> list[int]:
    """'1,2,5-7' -> [1, 2, 5, 6, 7]."""
    values: list[int] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "-" in item:
            low, high = item.split("-", 1)
            values.extend(range(int(low), int(high) + 1))
        else:
            values.append(int(item))
    return values


def parse_float_list(text: str) -> list[float]:
    return [float(item) for item in text.split(",") if item.strip()]


def _bench_cell(task: dict[str, Any]) -> dict[str, Any]:
    params = {"n": task["n"], "p": task["edge_p"], "max_weight": task["max_weight"]}
    graph = generate_instance("random-gnp", params, task["seed"])
    raw = render_graph(graph).encode("utf-8")
    budget = task["budget"]
    if task["problem"] in ("vi", "wvi"):
        inst = Instance(task["problem"], graph, p=budget)
    else:
        inst = Instance(task["problem"], graph, k=budget, W=task["W"])
    report, _ = kernelize_report(inst, raw, task["mode"], task["max_iterations"], task["seed"])
    report["grid"] = {key: task[key] for key in ("n", "edge_p", "budget", "W", "repeat")}
    return report


def bench_tasks(args: argparse.Namespace) -> list[dict[str, Any]]:
    ns = parse_int_list(args.n)
    budgets = parse_int_list(args.budget)
    edge_ps = parse_float_list(args.edge_p)
    Ws = parse_int_list(args.W) if args.problem in ("coc", "wcoc") else [None]
    if not ns or not budgets or not edge_ps or not Ws or args.repeats < 1:
        raise UsageError("empty benchmark grid")
    tasks = []
    index = 0
    for n in ns:
        for edge_p in edge_ps:
            for budget in budgets:
                for W in Ws:
                    for repeat in range(args.repeats):
                        tasks.append(
                            {
                                "problem": args.problem,
                                "mode": args.mode,
                                "n": n,
                                "edge_p": edge_p,
                                "budget": budget,
                                "W": W,
                                "repeat": repeat,
                                "max_weight": args.max_weight,
                                "max_iterations": args.max_iterations,
                                "seed": args.seed * 1_000_003 + index,
                            }
                        )
                        index += 1
    return tasks


def aggregate(reports: list[dict[str, Any]]) -> list[dict[str, Any]]:
    """One row per (n, edge_p, budget, W): counts and the largest non-no kernel."""
    rows: dict[tuple, dict[str, Any]] = {}
    for report in reports:
        grid = report["grid"]
        key = (grid["n"], grid["edge_p"], grid["budget"], grid["W"])
        row = rows.setdefault(
            key,
            {
                "n": key[0],
                "edge_p": key[1],
                "budget": key[2],
                "W": key[3],
                "runs": 0,
                "decided_no": 0,
                "max_kernel": 0,
                "bound": report["kernel"]["size_bound"],
                "max_seconds": 0.0,
            },
        )
        row["runs"] += 1
        row["max_seconds"] = max(row["max_seconds"], report["timings"]["kernelize"])
        if report["verdict"] == "decided-no":
            row["decided_no"] += 1
            continue
        weighted = report["problem"] in ("wvi", "wcoc")
        size = report["kernel"]["total_weight" if weighted else "vertices"]
        row["max_kernel"] = max(row["max_kernel"], size)
    result = []
    for key in sorted(rows, key=lambda k: tuple((x is None, x) for x in k)):
        row = rows[key]
        row["within_bound"] = row["max_kernel"] <= row["bound"]
        result.append(row)
    return result


def format_table(rows: list[dict[str, Any]]) -> str:
    columns = ["n", "edge_p", "budget", "W", "runs", "decided_no", "max_kernel", "bound", "within_bound", "max_seconds"]
    lines = ["\t".join(columns)]
    for row in rows:
        cells = []
        for column in columns:
            value = row[column]
            cells.append(f"{value:.4f}" if isinstance(value, float) and column == "max_seconds" else str(value))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def cmd_bench(args: argparse.Namespace) -> int:
    if args.problem in ("coc", "wcoc") and args.W is None:
        raise UsageError(f"--problem {args.problem} requires -W")
    tasks = bench_tasks(args)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_bench_cell, tasks))
    else:
        reports = [_bench_cell(task) for task in tasks]
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for i, report in enumerate(reports):
            write_atomic(os.path.join(args.out_dir, f"run-{i:05d}.json"), canonical_json(report))
    rows = aggregate(reports)
    table = format_table(rows)
    if args.out_dir:
        write_atomic(os.path.join(args.out_dir, "aggregate.tsv"), table)
    sys.stdout.write(table)
    return EXIT_OK


# argument parsing


def add_instance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--problem", required=True, choices=("vi", "wvi", "coc", "wcoc"))
    parser.add_argument("-p", type=int, help="vertex integrity budget")
    parser.add_argument("-k", type=int, help="separator budget")
    parser.add_argument("-W", type=int, help="component size bound")
    parser.add_argument("-i", "--input", help="graph file (default: stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crownkernel", description="Crown-decomposition kernels for VI and COC.")
    sub = parser.add_subparsers(dest="command", required=True)

    kern = sub.add_parser("kernelize", help="reduce an instance to a kernel")
    add_instance_flags(kern)
    kern.add_argument("--mode", choices=MODES, default="auto", help="coc algorithm")
    kern.add_argument("-o", "--output", help="kernel graph file (default: stdout)")
    kern.add_argument("--report", help="run report file")
    kern.add_argument("--max-iterations", type=int)
    kern.add_argument("--seed", type=int, help="recorded in the report")
    kern.set_defaults(handler=cmd_kernelize)

    solve = sub.add_parser("solve", help="solve exactly by exhaustive search")
    add_instance_flags(solve)
    solve.add_argument("--cap", type=int, help="largest vertex count accepted")
    solve.set_defaults(handler=cmd_solve)

    verify = sub.add_parser("verify", help="check that a kernel is equivalent to its input")
    add_instance_flags(verify)
    verify.add_argument("--kernel", help="kernel graph file")
    verify.add_argument("--kernel-budget", type=int)
    verify.add_argument("--report", help="report produced by kernelize")
    verify.add_argument("--cap", type=int)
    verify.set_defaults(handler=cmd_verify)

    replay = sub.add_parser("replay", help="apply a report's certificate to its input")
    replay.add_argument("-i", "--input", required=True)
    replay.add_argument("--report", required=True)
    replay.add_argument("-o", "--output")
    replay.set_defaults(handler=cmd_replay)

    gen = sub.add_parser("gen", help="generate an instance")
    gen.add_argument("--kind", required=True, choices=("random-gnp", "clawfree-linegraph", "disjoint-cliques"))
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--n", type=int)
    gen.add_argument("--edge-p", type=float)
    gen.add_argument("--max-weight", type=int)
    gen.add_argument("--base-n", type=int)
    gen.add_argument("--count", type=int)
    gen.add_argument("--size", type=int)
    gen.add_argument("-o", "--output")
    gen.set_defaults(handler=cmd_gen)

    bench = sub.add_parser("bench", help="sweep a grid of random instances")
    bench.add_argument("--problem", required=True, choices=("vi", "wvi", "coc", "wcoc"))
    bench.add_argument("--mode", choices=MODES, default="auto")
    bench.add_argument("--n", required=True, help="vertex counts, e.g. 20,50")
    bench.add_argument("--edge-p", default="0.1", help="edge probabilities, e.g. 0.05,0.1")
    bench.add_argument("--budget", required=True, help="p or k values, e.g. 1-4")
    bench.add_argument("-W", help="W values, e.g. 1,2")
    bench.add_argument("--repeats", type=int, default=3)
    bench.add_argument("--max-weight", type=int, default=1)
    bench.add_argument("--max-iterations", type=int)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--out-dir")
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        return args.handler(args)
    except (UsageError, GraphFormatError, OracleCapExceeded, KernelError, ValueError, OSError) as exc:
        print(f"crownkernel: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
