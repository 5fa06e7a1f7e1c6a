"""Command-line front end.

Four subcommands cover the workflows the library supports:

* ``curvature`` sweeps every edge of one Cayley graph and reports the
  curvature of each generator class (optionally a single named edge).
* ``table`` recomputes a golden table and compares cell by cell.
* ``scan`` runs the (k, n) grid and flags cells where a closed-form zero
  prediction disagrees with the exact computation.
* ``verify`` replays a transport-plan file (and optionally a potential
  file) against a graph without invoking the flow solver, so the two
  files certify a W1 value by weak duality alone.

Exit codes: 0 on success (and, for table/scan, full agreement), 1 when a
computation disagrees with a golden value or a certificate fails to
verify, 2 for usage errors.  Usage diagnostics go to stderr; the data
stream only ever carries the requested report.  Every rational is
serialized as ``num/den``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .cayley import build_cayley, edge_type, parse_gens
from .certificates import parse_plan_file, parse_potential_file
from .curvature import (
    DEFAULT_ALPHA_DEPTH,
    StabilizationFailureError,
    curvature_sweep,
    ricci_lly,
)
from .groups import element_label, parse_element, parse_group
from .metric import all_pairs
from .tables import reproduce_table, scan_zm, table_spec
from .transport import (
    MarginalMismatchError,
    NotLipschitzError,
    dual_bound,
    format_rational,
    mu_alpha,
    parse_rational,
    verify_lipschitz,
    verify_plan,
)

OUTPUT_FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; exactly one command."""

    command: str
    group: str | None = None
    gens: str | None = None
    edge: tuple[str, str] | None = None
    table_id: int | None = None
    k_min: int = 2
    k_max: int = 8
    n_max: int = 40
    alpha: str = "1/2"
    plan: str | None = None
    potential: str | None = None
    output: str = "text"
    alpha_depth: int = DEFAULT_ALPHA_DEPTH
    parallelism: int = 1


def default_parallelism() -> int:
    value = os.environ.get("RICCI_PARALLELISM", "").strip()
    if not value:
        return 1
    if value == "auto":
        return os.cpu_count() or 1
    return max(1, int(value))


def _parallelism_arg(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    return max(1, int(text))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayley-ricci",
        description="Exact edge curvature of dihedral, quaternion, and cyclic Cayley graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", choices=OUTPUT_FORMATS, default="text")
        p.add_argument("--alpha-depth", type=int, default=DEFAULT_ALPHA_DEPTH)
        p.add_argument("--parallelism", type=_parallelism_arg, default=None)

    p = sub.add_parser("curvature", help="sweep one Cayley graph")
    p.add_argument("--group", required=True, help="D:<n>, Q:<4m>, or Z:<n>")
    p.add_argument("--gens", required=True, help="sigma-tau, s1, s1k:<k>, complete, or list:...")
    p.add_argument("--edge", nargs=2, metavar=("X", "Y"), help="two vertex labels; sweep only this edge")
    add_common(p)

    p = sub.add_parser("table", help="recompute a golden table")
    p.add_argument("--id", type=int, required=True, dest="table_id")
    add_common(p)

    p = sub.add_parser("scan", help="grid-scan the closed-form zero conditions")
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--n-max", type=int, default=40)
    add_common(p)

    p = sub.add_parser("verify", help="check plan/potential files against a graph")
    p.add_argument("--group", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--alpha", default="1/2", help="idleness, e.g. 1/2")
    p.add_argument("--plan", help="transport plan file")
    p.add_argument("--potential", help="integer potential file")
    add_common(p)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    parallelism = args.parallelism if args.parallelism is not None else default_parallelism()
    fields = dict(
        command=args.command,
        output=args.output,
        alpha_depth=args.alpha_depth,
        parallelism=parallelism,
    )
    if args.command == "curvature":
        fields.update(group=args.group, gens=args.gens, edge=tuple(args.edge) if args.edge else None)
    elif args.command == "table":
        fields.update(table_id=args.table_id)
    elif args.command == "scan":
        fields.update(k_min=args.k_min, k_max=args.k_max, n_max=args.n_max)
    elif args.command == "verify":
        fields.update(group=args.group, gens=args.gens, alpha=args.alpha, plan=args.plan, potential=args.potential)
    return RunConfig(**fields)


def _emit(text: str, stream=None) -> None:
    print(text, file=stream or sys.stdout)


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _graph_of(config: RunConfig):
    spec = parse_group(config.group)
    return build_cayley(spec, parse_gens(spec, config.gens))


def _kappa_cell(values) -> str:
    """One CSV/JSON cell: empty when absent, ;-joined when non-uniform."""
    if values is None:
        return ""
    if isinstance(values, Fraction):
        return format_rational(values)
    return ";".join(format_rational(v) for v in values)


def _run_curvature(config: RunConfig) -> int:
    graph = _graph_of(config)
    if config.edge is not None:
        dist = all_pairs(graph)
        x = graph.vertex(parse_element(graph.spec, config.edge[0]))
        y = graph.vertex(parse_element(graph.spec, config.edge[1]))
        kappa = ricci_lly(graph, dist, x, y, config.alpha_depth)
        kind = edge_type(graph, x, y)
        if config.output == "json":
            _emit(json.dumps({"group": config.group, "gens": config.gens,
                              "edge": list(config.edge), "type": kind,
                              "kappa": format_rational(kappa)}, sort_keys=True))
        elif config.output == "csv":
            _emit(_csv_text([["x", "y", "type", "kappa"],
                             [config.edge[0], config.edge[1], kind, format_rational(kappa)]]))
        else:
            _emit(f"{config.edge[0]} {config.edge[1]} {kind} {format_rational(kappa)}")
        return 0
    _, summary = curvature_sweep(graph, max_depth=config.alpha_depth, parallelism=config.parallelism)
    if config.output == "json":
        doc = {"group": config.group, "gens": config.gens}
        for kind, values in sorted(summary.items()):
            doc[kind] = _kappa_cell(values[0] if len(values) == 1 else values)
        _emit(json.dumps(doc, sort_keys=True))
    elif config.output == "csv":
        rows = [["type", "kappa"]]
        rows += [[kind, _kappa_cell(values)] for kind, values in sorted(summary.items())]
        _emit(_csv_text(rows))
    else:
        for kind, values in sorted(summary.items()):
            _emit(f"{kind} {_kappa_cell(values)}")
    return 0


def _descriptor_columns(group: str, gens: str) -> dict[str, str]:
    cols = {"n": group.split(":", 1)[1]}
    if gens.startswith("s1k:"):
        cols["k"] = gens.split(":", 1)[1]
    return cols


def _run_table(config: RunConfig) -> int:
    spec = table_spec(config.table_id)  # raises NotInTableError on bad id
    report = reproduce_table(config.table_id, config.alpha_depth, config.parallelism)
    by_descriptor: dict[tuple[str, str], dict[str, object]] = {}
    for cell in report.cells:
        by_descriptor.setdefault((cell.group, cell.gens), {})[cell.edge_kind] = cell
    wide = config.table_id == 10  # the scan-sample table carries k and n
    mismatches = [
        {"group": c.group, "gens": c.gens, "type": c.edge_kind,
         "expected": format_rational(c.expected),
         "computed": None if c.computed is None else format_rational(c.computed)}
        for c in report.mismatches
    ]
    if config.output == "json":
        rows = []
        for (group, gens) in spec.descriptors:
            row: dict[str, object] = {"group": group, "gens": gens}
            for kind, cell in sorted(by_descriptor[(group, gens)].items()):
                row[kind] = _kappa_cell(cell.computed)
            rows.append(row)
        _emit(json.dumps({"table": config.table_id, "rows": rows,
                          "mismatches": mismatches}, sort_keys=True))
    elif config.output == "csv":
        header = ["k", "n"] if wide else ["n"]
        rows = [header + ["typeA", "typeB"]]
        for (group, gens) in spec.descriptors:
            cols = _descriptor_columns(group, gens)
            cells = by_descriptor[(group, gens)]
            lead = [cols.get("k", ""), cols["n"]] if wide else [cols["n"]]
            rows.append(lead + [
                _kappa_cell(cells["A"].computed) if "A" in cells else "",
                _kappa_cell(cells["B"].computed) if "B" in cells else "",
            ])
        _emit(_csv_text(rows))
    else:
        for (group, gens) in spec.descriptors:
            cells = by_descriptor[(group, gens)]
            parts = [f"{kind}={_kappa_cell(cell.computed)}" for kind, cell in sorted(cells.items())]
            flag = "" if all(c.match for c in cells.values()) else "  MISMATCH"
            _emit(f"{group} {gens} {' '.join(parts)}{flag}")
    if mismatches:
        if config.output != "json":
            _emit(json.dumps(mismatches, sort_keys=True), stream=sys.stderr)
        return 1
    return 0


def _run_scan(config: RunConfig) -> int:
    cells = scan_zm(config.k_min, config.k_max, config.n_max,
                    config.alpha_depth, config.parallelism)
    disagreements = [
        {"k": c.k, "n": c.n,
         "predicted_a_zero": c.conditions.type_a_zero,
         "predicted_b_zero": c.conditions.type_b_zero,
         "condition": c.conditions.type_b_condition,
         "A": _kappa_cell(c.kappa_a) or None,
         "B": _kappa_cell(c.kappa_b) or None}
        for c in cells if not c.agrees
    ]
    if config.output == "json":
        rows = [
            {"k": c.k, "n": c.n, "A": _kappa_cell(c.kappa_a) or None,
             "B": _kappa_cell(c.kappa_b) or None,
             "AB": _kappa_cell(c.kappa_ab) or None,
             "condition": c.conditions.type_b_condition,
             "agrees": c.agrees}
            for c in cells
        ]
        _emit(json.dumps({"cells": rows, "disagreements": disagreements}, sort_keys=True))
    elif config.output == "csv":
        rows = [["k", "n", "typeA", "typeB", "typeAB", "condition", "agrees"]]
        for c in cells:
            rows.append([str(c.k), str(c.n), _kappa_cell(c.kappa_a),
                         _kappa_cell(c.kappa_b), _kappa_cell(c.kappa_ab),
                         "" if c.conditions.type_b_condition is None else str(c.conditions.type_b_condition),
                         "yes" if c.agrees else "no"])
        _emit(_csv_text(rows))
    else:
        for c in cells:
            parts = [f"k={c.k}", f"n={c.n}"]
            if c.kappa_a is not None:
                parts.append(f"A={_kappa_cell(c.kappa_a)}")
            if c.kappa_b is not None:
                parts.append(f"B={_kappa_cell(c.kappa_b)}")
            if c.kappa_ab is not None:
                parts.append(f"AB={_kappa_cell(c.kappa_ab)}")
            parts.append("ok" if c.agrees else "DISAGREES")
            _emit(" ".join(parts))
    if disagreements:
        if config.output != "json":
            _emit(json.dumps(disagreements, sort_keys=True), stream=sys.stderr)
        return 1
    return 0


def _run_verify(config: RunConfig) -> int:
    if not config.plan and not config.potential:
        raise UsageError("verify needs --plan and/or --potential")
    graph = _graph_of(config)
    dist = all_pairs(graph)
    alpha = parse_rational(config.alpha)
    results: dict[str, str] = {"alpha": format_rational(alpha)}
    edge = None
    cost = bound = None
    try:
        if config.plan:
            with open(config.plan) as handle:
                edge, plan = parse_plan_file(handle.read(), graph)
            mu = mu_alpha(graph, edge[0], alpha)
            nu = mu_alpha(graph, edge[1], alpha)
            cost = verify_plan(dist, plan, mu, nu)
            results["cost"] = format_rational(cost)
            results["marginals"] = "ok"
        if config.potential:
            with open(config.potential) as handle:
                pot_edge, f = parse_potential_file(handle.read(), graph)
            if edge is None:
                if pot_edge is None:
                    raise UsageError("potential file has no edge header and no --plan was given")
                edge = pot_edge
            verify_lipschitz(dist, f)
            mu = mu_alpha(graph, edge[0], alpha)
            nu = mu_alpha(graph, edge[1], alpha)
            bound = dual_bound(f, mu, nu, dist)
            results["bound"] = format_rational(bound)
            results["lipschitz"] = "ok"
    except (MarginalMismatchError, NotLipschitzError) as err:
        _emit(json.dumps({"error": type(err).__name__, "detail": str(err)},
                         sort_keys=True), stream=sys.stderr)
        return 1
    spec = graph.spec
    results["edge"] = " ".join(
        element_label(spec, graph.vertices[v]) for v in edge
    )
    certified = cost is not None and bound is not None and cost == bound
    if certified:
        results["certified"] = "ok"
    if config.output == "json":
        _emit(json.dumps(results, sort_keys=True))
    elif config.output == "csv":
        rows = [["field", "value"]] + [[k, v] for k, v in sorted(results.items())]
        _emit(_csv_text(rows))
    else:
        for key in ("edge", "alpha", "cost", "marginals", "bound", "lipschitz", "certified"):
            if key in results:
                _emit(f"{key} {results[key]}")
    if cost is not None and bound is not None and cost != bound:
        _emit(json.dumps({"error": "plan cost and dual bound differ",
                          "cost": format_rational(cost),
                          "bound": format_rational(bound)}, sort_keys=True), stream=sys.stderr)
        return 1
    return 0


class UsageError(ValueError):
    """Bad invocation beyond what argparse can see."""


_RUNNERS = {
    "curvature": _run_curvature,
    "table": _run_table,
    "scan": _run_scan,
    "verify": _run_verify,
}


def run(config: RunConfig) -> int:
    """Execute one parsed invocation; returns the process exit code."""
    try:
        return _RUNNERS[config.command](config)
    except UsageError as err:
        _emit(f"usage error: {err}", stream=sys.stderr)
        return 2
    except StabilizationFailureError as err:
        _emit(json.dumps({
            "error": "curvature did not stabilize",
            "samples": [[format_rational(a), format_rational(k)] for a, k in err.samples],
        }, sort_keys=True), stream=sys.stderr)
        return 1
    except (ValueError, KeyError) as err:
        _emit(f"usage error: {err}", stream=sys.stderr)
        return 2
    except OSError as err:
        _emit(f"usage error: {err}", stream=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    return run(config_from_args(args))


if __name__ == "__main__":
    raise SystemExit(main())
