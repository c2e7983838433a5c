"""Command-line interface.

Exit codes: 0 success or verified, 1 verified false (or a produced layout
misses its bound), 2 input error, 3 class error, 4 solver error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .generators import FAMILIES, generate
from .graph import (
    Dag,
    GraphError,
    LinearOrder,
    StackLayout,
    is_linear_extension,
    max_twist,
    validate_dag,
    validate_layout,
)
from .io import format_graph, format_layout, parse_layout, read_graph
from .layouts import (
    AnnotatedOrder,
    InvariantViolation,
    order_monotone,
    order_outerpath,
    order_single_source,
    order_up3tree,
    stacks_single_source,
)
from .pages import greedy_first_fit
from .recognition import (
    RecognitionError,
    augment_outerplanar,
    classify,
    find_base,
    peel_3tree,
    peel_outerplanar,
)
from .sat.dimacs import SolverError, export_dimacs
from .sat.encoding import encode
from .sat.exact import certify_at_least, default_solver, stack_number, stack_number_fixed_order
from .search import SEARCH_CLASSES, search_witness

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_CLASS, EXIT_SOLVER = 0, 1, 2, 3, 4

LAYOUT_CLASSES = ("auto", "single-source", "monotone", "outerpath", "up3tree")


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _read_graph(path: str) -> Dag:
    try:
        g = read_graph(path)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from exc
    except GraphError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from exc
    bad = validate_dag(g)
    if bad is not None:
        raise CliError(EXIT_INPUT, f"{path}: {bad}")
    return g


def _read_order(path: str, g: Dag) -> LinearOrder:
    try:
        order, _ = parse_layout(Path(path).read_text())
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from exc
    except GraphError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from exc
    if len(order) != g.n or not is_linear_extension(g, order):
        raise CliError(EXIT_INPUT, f"{path}: order is not a linear extension of the graph")
    return order


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# analyze


def cmd_analyze(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    print(f"vertices: {g.n}")
    print(f"edges: {g.m}")
    print("valid: yes")
    print(f"sources: {len(g.sources())}")
    print(f"sinks: {len(g.sinks())}")
    tags = classify(g)
    print("classes: " + (" ".join(tags.names()) or "none"))
    if args.order:
        order = _read_order(args.order, g)
        cert = max_twist(g, order)
        print(f"max twist: {cert.k}")
        print("certificate: " + " ".join(f"{u}->{v}" for u, v in cert.edges))
    return EXIT_OK


# --------------------------------------------------------------------------
# layout


def _outerplanar_order(g: Dag, cls: str, check: bool) -> tuple[Dag, object, AnnotatedOrder]:
    """Returns the (possibly augmented) graph, its construction and the order."""
    host = g
    base = find_base(g, cls)
    if base is None and cls in ("single-source", "outerpath"):
        try:
            host = augment_outerplanar(g, cls)
        except RecognitionError as exc:
            raise CliError(EXIT_CLASS, f"{cls} recognition failed: {exc}") from exc
        base = find_base(host, cls)
    if base is None:
        raise CliError(EXIT_CLASS, f"{cls} recognition failed: no base edge builds the graph")
    seq = peel_outerplanar(host, base)
    build = {
        "single-source": order_single_source,
        "monotone": order_monotone,
        "outerpath": order_outerpath,
    }[cls]
    return host, seq, build(seq, check_frames=check)


def _auto_class(g: Dag) -> str:
    tags = classify(g)
    if "single-source" in tags.bases:
        return "single-source"
    if tags.monotone:
        return "monotone"
    if tags.outerpath:
        return "outerpath"
    if tags.face_consistent_3tree:
        return "up3tree"
    for cls in ("single-source", "outerpath"):
        try:
            augment_outerplanar(g, cls)
            return cls
        except RecognitionError:
            continue
    raise CliError(EXIT_CLASS, "auto: graph matches none of the supported classes")


def cmd_layout(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    cls = _auto_class(g) if args.cls == "auto" else args.cls
    try:
        if cls == "up3tree":
            try:
                dec = peel_3tree(g)
            except RecognitionError as exc:
                raise CliError(EXIT_CLASS, f"up3tree recognition failed: {exc}") from exc
            annotated = order_up3tree(dec, check_frames=args.check_frames)
            host, seq = g, None
        else:
            host, seq, annotated = _outerplanar_order(g, cls, args.check_frames)
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except RecognitionError as exc:
        raise CliError(EXIT_CLASS, f"{cls} recognition failed: {exc}") from exc

    order = annotated.linear_order
    page_of = None
    ok = is_linear_extension(g, order)
    if args.stacks:
        if cls == "single-source":
            full = stacks_single_source(seq)
            layout = StackLayout(order, {e: full.page_of[e] for e in g.edges}, full.k)
        else:
            layout = greedy_first_fit(g, order)
        page_of = dict(layout.page_of)
        bad = validate_layout(g, layout)
        if bad is not None:
            print(f"error: {bad}", file=sys.stderr)
            ok = False
        print(f"pages: {layout.k}", file=sys.stderr)
    twist = max_twist(g, order).k
    print(f"class: {cls}", file=sys.stderr)
    if host is not g:
        print(f"augmented with {host.m - g.m} edges", file=sys.stderr)
    print(f"twist: {twist} (bound {annotated.bound})", file=sys.stderr)
    parts = annotated.order if args.parts else None
    _emit(format_layout(g, order, page_of, parts), args.out)
    return EXIT_OK if ok and twist <= annotated.bound else EXIT_FALSE


# --------------------------------------------------------------------------
# exact, verify


def _solver(args: argparse.Namespace) -> str:
    solver = args.solver or default_solver()
    if solver != "builtin" and not solver.startswith("external:"):
        raise CliError(EXIT_INPUT, f"--solver must be 'builtin' or 'external:<cmd>', got {solver!r}")
    return solver


def cmd_exact(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    solver = _solver(args)
    order = _read_order(args.fixed_order, g) if args.fixed_order else None
    if args.dimacs_out:
        out = Path(args.dimacs_out)
        out.mkdir(parents=True, exist_ok=True)
        for k in range(1, args.max_k + 1):
            export_dimacs(encode(g, k, fixed_order=order), out / f"k{k}.cnf")
    if order is None:
        res = stack_number(g, args.max_k, budget=args.budget, solver=solver)
    else:
        res = stack_number_fixed_order(g, order, args.max_k, budget=args.budget, solver=solver)
    if res.exceeded:
        print(f">{args.max_k}")
        return EXIT_OK
    print(res.k)
    sys.stdout.write(format_layout(g, res.layout.order, dict(res.layout.page_of)))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    verdict, witness = certify_at_least(g, args.at_least, budget=args.budget, solver=_solver(args))
    if verdict:
        print(f"verified: stack number >= {args.at_least}")
    else:
        print(f"refuted: a {args.at_least - 1}-stack layout exists")
    if witness is not None:
        print(f"witness with {args.at_least} stacks:")
        sys.stdout.write(format_layout(g, witness.order, dict(witness.page_of)))
    return EXIT_OK if verdict else EXIT_FALSE


# --------------------------------------------------------------------------
# generate, search


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        g = generate(args.family, args.n, args.seed)
    except GraphError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    _emit(format_graph(g), args.out)
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    res = search_witness(args.cls, args.n_max, args.target_k, budget=args.budget, seed=args.seed)
    if res.witness is None:
        why = "budget exhausted" if res.exhausted_budget else "search space exhausted"
        print(f"no witness ({why}; {res.candidates} candidates)", file=sys.stderr)
        return EXIT_FALSE
    print(f"witness after {res.candidates} candidates", file=sys.stderr)
    _emit(format_graph(res.witness), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stacklayout", description="Stack layouts and stack numbers of DAGs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="validate a graph, list its classes and twist")
    p.add_argument("graph")
    p.add_argument("--order", help="layout file whose order is analysed")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("layout", help="constructive vertex order (and pages)")
    p.add_argument("graph")
    p.add_argument("--class", dest="cls", choices=LAYOUT_CLASSES, default="auto")
    p.add_argument("--stacks", action="store_true", help="also assign pages")
    p.add_argument("--parts", action="store_true", help="emit part boundaries")
    p.add_argument("--check-frames", action="store_true",
                   help="assert the twist invariants at every recursion frame")
    p.add_argument("--out")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("exact", help="exact stack number via SAT")
    p.add_argument("graph")
    p.add_argument("--max-k", type=int, default=8)
    p.add_argument("--fixed-order", help="layout file fixing the vertex order")
    p.add_argument("--dimacs-out", help="directory for k<i>.cnf encodings")
    p.add_argument("--solver", help="builtin or external:<cmd> (default: $STACKLAYOUT_SOLVER)")
    p.add_argument("--budget", type=int, help="conflict limit for the built-in solver")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="certify stack number >= K by unsatisfiability at K-1")
    p.add_argument("graph")
    p.add_argument("--at-least", type=int, required=True)
    p.add_argument("--solver")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="seeded graph generators")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True, help="vertex count (gadget: k)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("search", help="search small graphs for stack-number witnesses")
    p.add_argument("--class", dest="cls", choices=SEARCH_CLASSES, required=True)
    p.add_argument("--target-k", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except RecognitionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
