"""``cocolat`` command-line interface.

Exit status: 0 on success or a true verdict, 1 on a false verdict (the
witness is printed), 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .chainclique import (
    chain_index,
    chainclique,
    maximal_chordal_subgraph,
    maximal_interval_subgraph,
    parse_chain,
    simplicial_vertices_from_cocomp,
)
from .graph import (
    GraphFormatError,
    VertexOrdering,
    format_graph,
    format_ordering,
    load_graph,
    load_ordering,
    random_cocomp_instance,
    random_sparse_cocomp_instance,
)
from .oracles import (
    brute_force_simplicial,
    is_chordal,
    is_cocomparability_bruteforce,
    is_interval_graph,
    verify_maximal_chain,
    verify_maximal_subgraph_exhaustive,
)
from .poset import ImplicitPoset, build_lattice, check_lattice_conditions, is_cocomp_ordering
from .report import CapExceededError, PreconditionError, VerificationReport
from .searches import SEARCHES, cocomp_order_multisweep, flipping_check, local_mns_audit, run_search

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


def default_seed() -> int:
    return int(os.environ.get("COCOLAT_SEED", "0"))


def _write(path: str | None, text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(args):
    g = load_graph(sys.stdin if args.graph == "-" else args.graph, fmt=args.format, strict=args.strict)
    order = load_ordering(g, args.order) if getattr(args, "order", None) else None
    return g, order


def _require_order(g, order, args):
    if order is None:
        raise UsageError(f"{args.verb} needs --order")
    return order


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ verbs


def cmd_gen(args, out) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    if args.sparse:
        inst = random_sparse_cocomp_instance(args.n, args.window, seed=seed)
    else:
        inst = random_cocomp_instance(args.n, args.density, seed)
    _write(args.emit, format_graph(inst.graph, args.out_format), out)
    if args.emit_order:
        _write(args.emit_order, format_ordering(inst.graph, inst.witness), out)
    return EXIT_OK


def cmd_check_cocomp(args, out) -> int:
    g, order = _load(args)
    if order is not None:
        report = is_cocomp_ordering(g, order)
        out.write(report.tap(g.label) + "\n")
        return EXIT_OK if report else EXIT_FALSE
    sigma, ok = cocomp_order_multisweep(g)
    if not ok and g.n <= 10:
        report = is_cocomparability_bruteforce(g)
        if report:
            sigma, ok = report.certificate, True
        else:
            out.write(report.tap(g.label) + "\n")
            return EXIT_FALSE
    if not ok:
        out.write("not ok cocomp-ordering multisweep did not converge\n")
        return EXIT_FALSE
    out.write("ok cocomp-ordering\n")
    out.write(format_ordering(g, sigma))
    return EXIT_OK


def cmd_search(args, out) -> int:
    g = load_graph(sys.stdin if args.graph == "-" else args.graph, fmt=args.format, strict=args.strict)
    tau = load_ordering(g, args.ref) if args.ref else None
    if args.name.endswith("+") and tau is None:
        raise UsageError(f"search {args.name} needs --ref")
    out.write(format_ordering(g, run_search(args.name, g, tau)))
    return EXIT_OK


def _emit_chain(chain, g, args, out) -> None:
    out.write(chain.to_text(g))
    if args.dot:
        _write(args.dot, chain.to_dot(g), out)
    if args.index:
        _write(args.index, chain_index(chain, g).to_tsv(g), out)


def cmd_chainclique(args, out) -> int:
    g, order = _load(args)
    _emit_chain(chainclique(g, _require_order(g, order, args)), g, args, out)
    return EXIT_OK


def cmd_max(args, out) -> int:
    g, order = _load(args)
    tau = _require_order(g, order, args)
    fn = maximal_chordal_subgraph if args.verb == "max-chordal" else maximal_interval_subgraph
    _emit_chain(fn(g, tau, trust=args.trust), g, args, out)
    return EXIT_OK


def cmd_simplicial(args, out) -> int:
    g, order = _load(args)
    tau = _require_order(g, order, args)
    found = simplicial_vertices_from_cocomp(g, tau, trust=args.trust)
    out.write(" ".join(g.label(v) for v in sorted(found)) + "\n")
    return EXIT_OK


def cmd_lattice(args, out) -> int:
    g, order = _load(args)
    p = ImplicitPoset(g, _require_order(g, order, args), trust=args.trust)
    lat = build_lattice(p, cap=args.cap)
    out.write(lat.to_text(g))
    if args.dot:
        _write(args.dot, lat.to_dot(g), out)
    if args.conditions:
        reports = list(check_lattice_conditions(g, lat))
        for r in reports:
            out.write(r.tap() + "\n")
        if not all(reports):
            return EXIT_FALSE
    return EXIT_OK


def suite(g, tau, chain=None, exhaustive_cap: int = 20) -> list[VerificationReport]:
    """Oracle suite on one instance; stops after a failed precondition."""
    reports = [is_cocomp_ordering(g, tau)]
    if not reports[0]:
        return reports
    if chain is None:
        chain = maximal_interval_subgraph(g, tau, trust=True)
    sigma = chain.source_ordering
    sub = chain.subgraph(g)
    reports.append(is_interval_graph(sub, cross_check=g.n <= 12))
    reports.append(is_chordal(sub))
    if sigma is not None:
        reports.append(is_cocomp_ordering(g, sigma))
        reports.append(flipping_check(g, sigma, tau))
        reports.append(local_mns_audit(g, sigma))
        p = ImplicitPoset(g, sigma, trust=True)
    else:
        p = ImplicitPoset(g, tau, trust=True)
    if g.n <= 4096:
        reports.append(verify_maximal_chain(p, chain))
    for kind in ("interval", "chordal"):
        try:
            reports.append(verify_maximal_subgraph_exhaustive(g, chain, kind, cap=exhaustive_cap))
        except CapExceededError:
            pass
    if g.n <= 200:
        got = simplicial_vertices_from_cocomp(g, tau, trust=True)
        want = brute_force_simplicial(g)
        reports.append(VerificationReport(got == want, "simplicial", None if got == want else got ^ want))
    return reports


def _suite_job(job):
    n, density, seed = job
    inst = random_cocomp_instance(n, density, seed)
    return seed, suite(inst.graph, inst.witness)


def cmd_verify(args, out) -> int:
    ok = True
    if args.random:
        base = args.seed if args.seed is not None else default_seed()
        jobs = [(args.n, args.density, base + i) for i in range(args.random)]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_suite_job, jobs))
        else:
            results = [_suite_job(j) for j in jobs]
        for seed, reports in results:
            for r in reports:
                out.write(f"{r.tap()} seed={seed}\n")
                ok &= bool(r)
        return EXIT_OK if ok else EXIT_FALSE
    if args.graph is None:
        raise UsageError("verify needs a graph file or --random")
    g, order = _load(args)
    tau = _require_order(g, order, args)
    chain = None
    if args.chain:
        with open(args.chain, encoding="utf-8") as fh:
            chain = parse_chain(fh.read(), g)
    reports = suite(g, tau, chain)
    if not args.all:
        reports = reports[:1] + [r for r in reports[1:] if r.checked.startswith("maximal")]
    for r in reports:
        out.write(r.tap(g.label) + "\n")
        ok &= bool(r)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_bench(args, out) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    seed = args.seed if args.seed is not None else default_seed()
    rows = []
    out.write("n,m,millis\n")
    for n in sizes:
        inst = random_sparse_cocomp_instance(n, args.window, seed=seed)
        best = float("inf")
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            maximal_interval_subgraph(inst.graph, inst.witness, trust=args.trust)
            best = min(best, (time.perf_counter() - t0) * 1000)
        rows.append((n, inst.graph.m, best))
        out.write(f"{n},{inst.graph.m},{best:.3f}\n")
        out.flush()
    if args.plot:
        from .plotting import plot_bench

        plot_bench(rows, args.plot)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cocolat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def graph_args(p, graph_required=True):
        if graph_required:
            p.add_argument("graph", help="graph file, or - for stdin")
        else:
            p.add_argument("graph", nargs="?")
        p.add_argument("--format", choices=["auto", "edgelist", "dimacs"], default="auto")
        p.add_argument("--strict", action="store_true", help="reject duplicate edges")

    def order_args(p):
        p.add_argument("--order", help="file with a whitespace-separated vertex ordering")
        p.add_argument("--trust", action="store_true", help="skip precondition checks")

    p = sub.add_parser("gen", help="random cocomparability graph with a witness ordering")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--sparse", action="store_true", help="use the sparse point-dominance generator")
    p.add_argument("--window", type=float, default=30.0)
    p.add_argument("--seed", type=int)
    p.add_argument("--emit", help="graph output path (default stdout)")
    p.add_argument("--emit-order", help="witness ordering output path")
    p.add_argument("--out-format", choices=["edgelist", "dimacs"], default="edgelist")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check-cocomp", help="umbrella check, or search for a cocomp ordering")
    graph_args(p)
    order_args(p)
    p.set_defaults(func=cmd_check_cocomp)

    p = sub.add_parser("search", help="run a graph search")
    p.add_argument("name", choices=sorted(SEARCHES))
    graph_args(p)
    p.add_argument("--ref", help="reference ordering for plus variants")
    p.set_defaults(func=cmd_search)

    for verb, func, text in [
        ("chainclique", cmd_chainclique, "greedy clique chain of an ordering"),
        ("max-interval", cmd_max, "maximal interval subgraph from a cocomp ordering"),
        ("max-chordal", cmd_max, "maximal chordal subgraph from a cocomp ordering"),
    ]:
        p = sub.add_parser(verb, help=text)
        graph_args(p)
        order_args(p)
        p.add_argument("--dot", help="write G with discarded edges dashed")
        p.add_argument("--index", help="write the first/last/forward/backward table")
        p.set_defaults(func=func)

    p = sub.add_parser("simplicial", help="simplicial vertices from a cocomp ordering")
    graph_args(p)
    order_args(p)
    p.set_defaults(func=cmd_simplicial)

    p = sub.add_parser("lattice", help="maximal antichain lattice of the ordering's poset")
    graph_args(p)
    order_args(p)
    p.add_argument("--dot", help="write the Hasse diagram")
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--conditions", action="store_true", help="also check the three clique-lattice conditions")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("verify", help="run the oracle suite (TAP output)")
    graph_args(p, graph_required=False)
    order_args(p)
    p.add_argument("--all", action="store_true", help="every oracle, not only the maximality checks")
    p.add_argument("--chain", help="verify this chain instead of recomputing it")
    p.add_argument("--random", type=int, default=0, help="check this many random instances instead")
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the pipeline on growing sparse instances (CSV)")
    p.add_argument("--sizes", default="1000,3000,10000,30000,100000")
    p.add_argument("--window", type=float, default=30.0)
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--trust", action="store_true")
    p.add_argument("--plot", help="PNG path for a scaling plot")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (GraphFormatError, UsageError, OSError, ValueError, KeyError, CapExceededError) as exc:
        if isinstance(exc, PreconditionError):
            return _precondition(exc, args, out)
        print(f"cocolat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        return _precondition(exc, args, out)


def _precondition(exc: PreconditionError, args, out) -> int:
    witness = exc.witness
    try:
        g = load_graph(args.graph, fmt=args.format) if args.graph not in (None, "-") else None
    except Exception:
        g = None
    label = g.label if g is not None else None
    report = VerificationReport(False, "precondition", witness if witness is not None else str(exc))
    out.write(report.tap(label) + "\n")
    print(f"cocolat: {exc}", file=sys.stderr)
    return EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
