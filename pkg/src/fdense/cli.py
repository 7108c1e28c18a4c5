"""``fdense`` command-line front end.

Exit codes: 0 success, 2 input error, 3 contract or guard error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .convex import solve_convex
from .errors import ContractError, FdsError, GuardError, ParseError
from .flow import solve_unweighted_exact, solve_weighted_approx
from .graph import (G_FIG1_TEXT, Graph, gen_gnp, gen_planted, gen_random_edges, load_graph,
                    parse_edge_list, to_edge_list)
from .lp import dense_frontier, solve_concave_exact_lp
from .numeric import fmt
from .oracle import enumerate_subsets
from .peeling import best_suffix, peel
from .sizefn import parse_size_function

CSV_HEADER = ["instance", "n", "m", "family", "solver", "value", "oracle", "ratio", "ms"]
DEFAULT_EPSILON = 1e-6
ORACLE_LIMIT = 14
BUILTIN_INPUTS = {"fig1": G_FIG1_TEXT}


def _read_input(path: str) -> tuple[Graph, str]:
    if path in BUILTIN_INPUTS:
        text = BUILTIN_INPUTS[path]
        return parse_edge_list(text), hashlib.sha256(text.encode()).hexdigest()
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return load_graph(path), hashlib.sha256(raw).hexdigest()


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    return fmt(x)


def _emit(args, record: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(_jsonable(record), indent=2))
    else:
        print(text)


# -- solve ---------------------------------------------------------------------

def choose_solver(g: Graph, f, case: str, algo: str, epsilon: float, k: int):
    """Dispatch to a solver; returns the Solution."""
    n = g.n
    if algo == "peel":
        return best_suffix(peel(g), f)
    shape = f.shape(n)
    if case == "auto":
        if shape.is_concave:
            case = "concave"
        elif shape.is_convex:
            case = "convex"
        else:
            raise ContractError(f"{f.name} is neither convex nor concave on [0, {n}]; "
                                "pass --algo peel, or --algo lp for a concave f")
    if algo == "lp":
        return solve_concave_exact_lp(g, f)
    if case == "convex" or algo == "brute":
        return solve_convex(g, f, k=k)
    if not shape.is_concave:
        raise ContractError(f"{f.name} is not concave on [0, {n}]")
    if g.is_unweighted and algo in ("auto", "flow"):
        return solve_unweighted_exact(g, f)
    return solve_weighted_approx(g, f, epsilon)


def cmd_solve(args) -> int:
    g, digest = _read_input(args.input)
    f = parse_size_function(args.f, g)
    t0 = time.perf_counter()
    sol = choose_solver(g, f, args.case, args.algo, args.epsilon, args.k)
    ms = (time.perf_counter() - t0) * 1000
    sol.validate(g, f)
    record = {
        "command": sys.argv[1:] if args.argv is None else args.argv,
        "input_digest": digest,
        "f": f.name,
        "solver": sol.solver,
        "solution": sol.to_dict(g),
        "certificate": sol.certificate.to_dict() if sol.certificate else None,
        "wall_ms": round(ms, 3),
    }
    if args.trace:
        record["trace"] = list(sol.trace)
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["density", "weight", "size", "solver", "subset"])
        w.writerow([fmt(sol.density), fmt(sol.weight), sol.size, sol.solver, " ".join(sol.labels(g))])
        return 0
    _emit(args, record, f"{fmt(sol.density)}\t{' '.join(sol.labels(g))}")
    return 0


# -- peel / frontier / oracle ---------------------------------------------------

def cmd_peel(args) -> int:
    g, digest = _read_input(args.input)
    p = peel(g)
    if args.emit_order:
        print(" ".join(g.labels[v] for v in p.order))
        return 0
    f = parse_size_function(args.f, g)
    sol = best_suffix(p, f)
    sol.validate(g, f)
    record = {"input_digest": digest, "f": f.name, "solver": sol.solver, "solution": sol.to_dict(g)}
    _emit(args, record, f"{fmt(sol.density)}\t{' '.join(sol.labels(g))}")
    return 0


def cmd_frontier(args) -> int:
    g, _ = _read_input(args.input)
    pts = dense_frontier(g)
    doc = [{"size": p.size, "weight": fmt(p.weight), "witness": [g.labels[v] for v in p.witness]} for p in pts]
    if args.json:
        print(json.dumps(doc))
    else:
        for d in doc:
            print(f"{d['size']}\t{d['weight']}\t{' '.join(d['witness'])}")
    return 0


def cmd_oracle(args) -> int:
    g, digest = _read_input(args.input)
    f = parse_size_function(args.f, g) if args.f else None
    rep = enumerate_subsets(g, f)
    doc = {
        "input_digest": digest,
        "n": rep.n,
        "best_weight": [fmt(w) for w in rep.best_weight],
        "best_witness": [[g.labels[v] for v in s] for s in rep.best_witness],
        "frontier": [[i, fmt(w)] for i, w in rep.frontier],
    }
    if f is not None:
        doc.update(f=f.name, value=fmt(rep.fds_value), sizes=list(rep.fds_sizes),
                   witness=[g.labels[v] for v in rep.fds_witness])
    print(json.dumps(doc, indent=2))
    return 0


# -- gen -----------------------------------------------------------------------

def _generate(kind: str, args) -> Graph:
    if kind == "gnp":
        return gen_gnp(args.n, args.p, args.seed)
    if kind == "planted":
        return gen_planted(args.n, args.k, args.p_in, args.p_out, args.seed)
    return gen_random_edges(args.n, args.m, args.seed, args.max_weight)


def cmd_gen(args) -> int:
    text = to_edge_list(_generate(args.kind, args))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- bench ---------------------------------------------------------------------

def parse_seeds(text: str) -> list[int]:
    """``"0-9"``, ``"1,5,7"`` or a mix; empty string gives no seeds."""
    seeds: list[int] = []
    for part in filter(None, (t.strip() for t in text.split(","))):
        lo, sep, hi = part.partition("-")
        try:
            seeds.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError:
            raise ParseError(f"bad seed list {text!r}") from None
    return seeds


def _run_solver(name: str, g: Graph, f, epsilon: float, k: int):
    if name == "peel":
        return best_suffix(peel(g), f)
    if name == "flow":
        return solve_unweighted_exact(g, f) if g.is_unweighted else solve_weighted_approx(g, f, epsilon)
    if name == "lp":
        return solve_concave_exact_lp(g, f)
    if name == "convex":
        return solve_convex(g, f, k=k)
    if name == "auto":
        return choose_solver(g, f, "auto", "auto", epsilon, k)
    raise ParseError(f"unknown solver {name!r}")


def _bench_task(task) -> list[list]:
    instance, g, f_specs, solvers, epsilon, k = task
    rows = []
    for spec in f_specs:
        f = parse_size_function(spec, g)
        oracle = enumerate_subsets(g, f).fds_value if g.n <= ORACLE_LIMIT else None
        for name in solvers:
            t0 = time.perf_counter()
            sol = _run_solver(name, g, f, epsilon, k)
            ms = (time.perf_counter() - t0) * 1000
            sol.validate(g, f)
            ratio = "" if oracle is None else f"{float(oracle) / float(sol.density):.12g}"
            rows.append([instance, g.n, g.m, f.name, name, fmt(sol.density),
                         "" if oracle is None else fmt(oracle), ratio, f"{ms:.3f}"])
    return rows


def cmd_bench(args) -> int:
    seeds = parse_seeds(args.seeds)
    tasks = []
    for seed in seeds:
        args.seed = seed
        g = _generate(args.kind, args)
        tasks.append((f"{args.kind}-{args.n}-{seed}", g, args.f or ["linear"],
                      args.solver or ["peel"], args.epsilon, args.k))
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        if args.workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(args.workers) as pool:
                results = pool.map(_bench_task, tasks)
                for rows in results:
                    w.writerows(rows)
        else:
            for task in tasks:
                w.writerows(_bench_task(task))
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# -- parser ----------------------------------------------------------------------

def _add_gen_args(p: argparse.ArgumentParser, with_seed: bool = True) -> None:
    p.add_argument("kind", choices=["gnp", "planted", "random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--k", type=int, default=2, help="planted block size (gen) or brute-force size (bench)")
    p.add_argument("--p-in", type=float, default=0.9)
    p.add_argument("--p-out", type=float, default=0.1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--max-weight", type=int, default=None)
    if with_seed:
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fdense", description="Densest subgraphs under size functions f.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve f-DS on one graph")
    p.add_argument("--input", required=True, help="edge list, JSON graph, or 'fig1'")
    p.add_argument("--f", required=True, help="linear, power:A, combo:L, ratio:L, damks:K, table:..., sqrt, log1p, plateau")
    p.add_argument("--case", choices=["auto", "convex", "concave"], default="auto")
    p.add_argument("--algo", choices=["auto", "peel", "brute", "flow", "lp"], default="auto")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0, help="recorded only; solvers are deterministic")
    fmt_group = p.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", action="store_true")
    fmt_group.add_argument("--csv", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("peel", help="greedy peeling")
    p.add_argument("--input", required=True)
    p.add_argument("--f", default="linear")
    p.add_argument("--emit-order", action="store_true", help="print the removal order and exit")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_peel)

    p = sub.add_parser("frontier", help="dense frontier points with witnesses")
    p.add_argument("--input", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("oracle", help="exhaustive search (n <= 24)")
    p.add_argument("--input", required=True)
    p.add_argument("--f", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a random graph as an edge list")
    _add_gen_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="CSV benchmark over generated instances")
    _add_gen_args(p, with_seed=False)
    p.add_argument("--seeds", default="0-9", help="e.g. 0-99 or 1,4,9")
    p.add_argument("--f", action="append", help="size function; repeatable")
    p.add_argument("--solver", action="append", choices=["peel", "flow", "lp", "convex", "auto"])
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"fdense: input error: {exc}", file=sys.stderr)
        return 2
    except (ContractError, GuardError) as exc:
        print(f"fdense: {exc}", file=sys.stderr)
        return 3
    except FdsError as exc:
        print(f"fdense: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
