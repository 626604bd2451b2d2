"""Command-line interface.

Every subcommand produces a status, a JSON payload and a list of
diagnostics. ``--json`` prints them as a single JSON document; otherwise a
plain-text rendering goes to stdout and diagnostics to stderr. Exit status is
0 for ``ok`` and ``inapplicable`` and nonzero otherwise.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cayley, graphs, oracle
from .errors import (
    CapExceeded,
    DimensionError,
    FormatError,
    InvalidSwitchingSet,
    NotCospectral,
    NotOrthogonal,
    NotSkewSymmetric,
    PreconditionViolated,
    SearchExhausted,
    SingularWalkMatrix,
)
from .exact import Matrix, charpoly, format_matrix, is_permutation_matrix, parse_matrix
from .fixtures import FIXTURES

EXIT_CODES = {
    "ok": 0,
    "inapplicable": 0,
    "precondition-failed": 2,
    "search-exhausted": 3,
    "unknown": 4,
}


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    text: str | None = None

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


def _matrix_rows(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.rows]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _read_graph(path: str, fmt: str) -> graphs.Graph:
    return graphs.parse_graph(_read(path), fmt)


# --------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> CommandResult:
    q, s, p = cayley.sample_regular_orthogonal(args.n, seed=args.seed, height=args.height)
    payload = {"n": args.n, "Q": _matrix_rows(q)}
    text = format_matrix(q)
    if args.emit_s:
        # Q = cayley(S) P_sigma = cayley(S) P_(sigma^-1)^T
        provenance = cayley.RegularCayleyDecomposition(s, p.inverse()).to_json()
        payload["provenance"] = provenance
        text += "# provenance: " + json.dumps(provenance) + "\n"
    return CommandResult("ok", payload, text=text)


def cmd_decompose(args) -> CommandResult:
    q = parse_matrix(_read(args.matrix))
    dec = cayley.decompose_regular(q, seed=args.seed, budget=args.budget)
    if dec.reconstruct() != q:
        raise AssertionError("reconstruction mismatch")
    payload = dec.to_json()
    return CommandResult("ok", payload, text=json.dumps(payload, indent=2) + "\n")


VERIFIERS = {
    "sum0": lambda a: oracle.verify_sum0(a.n, cap=a.cap),
    "enmen": lambda a: oracle.verify_enmen(a.n, a.trials, a.seed, a.height, cap=a.cap),
    "mij": lambda a: oracle.verify_mij(a.n, a.trials, a.seed, a.height, cap=a.cap),
    "thm5": lambda a: oracle.fuzz_theorem5(a.n, a.trials, a.seed, a.height, cap=a.cap),
}


def cmd_verify(args) -> CommandResult:
    report = VERIFIERS[args.lemma](args)
    payload = {"lemma": args.lemma, **report.to_json()}
    text = (f"{args.lemma} n={report.n}: {report.identities_checked} identities checked, "
            f"{len(report.violations)} violations\n")
    if report.ok:
        return CommandResult("ok", payload, text=text)
    return CommandResult("precondition-failed", payload, ["identity violated"], text=text)


def cmd_walk(args) -> CommandResult:
    w = graphs.walk_matrix(_read_graph(args.graph, args.format))
    return CommandResult("ok", {"W": _matrix_rows(w)}, text=format_matrix(w))


def cmd_dgs(args) -> CommandResult:
    report = graphs.dgs_check(_read_graph(args.graph, args.format), budget=args.budget)
    payload = report.to_json()
    lines = [f"detW: {report.detW}", f"reduced: {report.reduced}"]
    if report.status == "inapplicable":
        lines.append("criterion: inapplicable")
    else:
        lines.append(f"odd: {report.reduced_odd}")
        lines.append(f"square-free: {report.reduced_squarefree}")
        lines.append(f"dgs_sufficient: {report.dgs_sufficient}")
    return CommandResult(report.status, payload, list(report.notes), "\n".join(lines) + "\n")


def _parse_set(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise FormatError(f"bad vertex set {text!r}") from None


def cmd_gm_switch(args) -> CommandResult:
    g = _read_graph(args.graph, args.format)
    h = graphs.gm_switch(g, graphs.GMSwitchingSet(_parse_set(args.set)))
    payload = {"n": h.n, "adjacency": [list(r) for r in h.adj], "changed": h != g}
    return CommandResult("ok", payload, text=graphs.format_graph(h))


def cmd_gm_find(args) -> CommandResult:
    g = _read_graph(args.graph, args.format)
    sets = graphs.find_gm_sets(g, args.max_size)
    payload = {"sets": [list(s.C) for s in sets]}
    text = "".join(" ".join(map(str, s.C)) + "\n" for s in sets)
    return CommandResult("ok", payload, text=text)


def cmd_cospectral(args) -> CommandResult:
    g, h = _read_graph(args.g, args.format), _read_graph(args.h, args.format)
    if g.n != h.n:
        raise DimensionError("graphs have different vertex counts")
    spec = charpoly(g.adjacency) == charpoly(h.adjacency)
    comp = charpoly(graphs.complement(g).adjacency) == charpoly(graphs.complement(h).adjacency)
    payload = {"spectrum": spec, "complement_spectrum": comp, "generalized_cospectral": spec and comp}
    text = f"spectrum: {str(spec).lower()}\ncomplement_spectrum: {str(comp).lower()}\n"
    return CommandResult("ok", payload, text=text)


def cmd_recover_q(args) -> CommandResult:
    g, h = _read_graph(args.g, args.format), _read_graph(args.h, args.format)
    q = graphs.recover_transition_matrix(g, h)
    payload = {"Q": _matrix_rows(q), "is_permutation": is_permutation_matrix(q)}
    return CommandResult("ok", payload, text=format_matrix(q))


def cmd_examples(args) -> CommandResult:
    if args.name not in FIXTURES:
        return CommandResult(
            "precondition-failed", {"available": sorted(FIXTURES)},
            [f"unknown fixture {args.name!r}; available: {', '.join(sorted(FIXTURES))}"],
        )
    m = FIXTURES[args.name]()
    text = f"# {args.name}\n" + format_matrix(m)
    if args.output:
        Path(args.output).write_text(text)
    return CommandResult("ok", {"name": args.name, "matrix": _matrix_rows(m)}, text=text)


# --------------------------------------------------------------------------
# parser


def _global_flags(parser: argparse.ArgumentParser, defaults: bool) -> None:
    def default(value):
        return value if defaults else argparse.SUPPRESS

    parser.add_argument("--json", action="store_true", default=default(False),
                        help="emit one JSON document on stdout")
    parser.add_argument("--seed", type=int, default=default(0))
    parser.add_argument("--cap", type=int, default=default(oracle.DEFAULT_CAP),
                        help="largest n for exhaustive permutation scans")
    parser.add_argument("--budget", type=int, default=default(cayley.DEFAULT_BUDGET),
                        help="random-search trials and factoring iterations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regortho", description="Exact regular rational orthogonal matrix toolkit.")
    _global_flags(parser, defaults=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, defaults=False)
    graph_fmt = argparse.ArgumentParser(add_help=False)
    graph_fmt.add_argument("--format", choices=["auto", "adjacency", "edges"], default="auto")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="random regular rational orthogonal matrix")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--height", type=int, default=3)
    p.add_argument("--emit-s", action="store_true", help="include the (S, P) provenance")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", parents=[common], help="Q = (I+S)^-1 (I-S) P^T")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="brute-force identity checks")
    p.add_argument("lemma", choices=sorted(VERIFIERS))
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--height", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    for name, func, help_ in (
        ("walk", cmd_walk, "walk matrix W(G)"),
        ("dgs", cmd_dgs, "walk-determinant DGS criterion"),
    ):
        p = sub.add_parser(name, parents=[common, graph_fmt], help=help_)
        p.add_argument("graph")
        p.set_defaults(func=func)

    p = sub.add_parser("gm-switch", parents=[common, graph_fmt], help="apply GM switching")
    p.add_argument("graph")
    p.add_argument("--set", required=True, help="switching set, e.g. 1,2,3,4")
    p.set_defaults(func=cmd_gm_switch)

    p = sub.add_parser("gm-find", parents=[common, graph_fmt], help="list GM switching sets")
    p.add_argument("graph")
    p.add_argument("--max-size", type=int, default=4)
    p.set_defaults(func=cmd_gm_find)

    for name, func, help_ in (
        ("cospectral", cmd_cospectral, "compare spectra and complement spectra"),
        ("recover-q", cmd_recover_q, "Q = W(G) W(H)^-1"),
    ):
        p = sub.add_parser(name, parents=[common, graph_fmt], help=help_)
        p.add_argument("g")
        p.add_argument("h")
        p.set_defaults(func=func)

    p = sub.add_parser("examples", parents=[common], help="write a built-in fixture matrix")
    p.add_argument("name")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_examples)
    return parser


def run(args) -> CommandResult:
    try:
        return args.func(args)
    except SearchExhausted as exc:
        return CommandResult("search-exhausted", {}, [str(exc)])
    except (FormatError, DimensionError, NotOrthogonal, NotSkewSymmetric, PreconditionViolated,
            InvalidSwitchingSet, NotCospectral, SingularWalkMatrix, CapExceeded,
            OSError, ValueError) as exc:
        return CommandResult("precondition-failed", {}, [f"{type(exc).__name__}: {exc}"])


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    result = run(args)
    if args.json:
        sys.stdout.write(json.dumps(result.to_json()) + "\n")
    else:
        if result.text:
            sys.stdout.write(result.text)
        for note in result.diagnostics:
            print(note, file=sys.stderr)
    return EXIT_CODES[result.status]


if __name__ == "__main__":
    sys.exit(main())
