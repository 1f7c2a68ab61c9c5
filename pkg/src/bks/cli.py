"""``bks`` command line: check, bases, lift, compose, critical, parity, catalog, table1."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import catalog
from .colouring import (
    BudgetExceeded,
    Colouring,
    Mode,
    parity_certificate,
    solve,
)
from .construct import DimensionOutOfRange, compose_zp, lift
from .critical import (
    DEFAULT_NODE_BUDGET,
    NotAProof,
    ResourceBudgetExceeded,
    enumerate_minimal,
    is_critical,
)
from .ortho import build_graph, enumerate_bases, incidence_stats, to_dot, to_json
from .rays import RayError, RaySet, format_set, parse_set

EXIT_OK, EXIT_EXPECT, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("bks")


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    mode: Mode
    budget_nodes: int
    budget_seconds: float | None
    as_json: bool
    output: str | None
    threads: int
    expect: str | None
    max_size: int | None


def load(spec: str) -> tuple[str, RaySet]:
    """A path to a ray-set file, ``-`` for stdin, or a catalog name."""
    if spec == "-":
        return "<stdin>", parse_set(sys.stdin.read())
    path = Path(spec)
    if path.is_file():
        return path.name, parse_set(path.read_text())
    try:
        entry = catalog.get(spec)
    except catalog.UnknownName:
        raise InputError(f"{spec}: no such file or catalog set") from None
    return entry.name, entry.rays


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def cmd_check(cfg: RunConfig) -> int:
    name, rays = load(cfg.inputs[0])
    result = solve(rays, cfg.mode, node_budget=cfg.budget_nodes)
    colourable = isinstance(result, Colouring)
    if cfg.as_json:
        if colourable:
            doc = result.to_json()
        elif result.certificate is not None and cfg.mode is Mode.BASIS:
            doc = result.certificate.to_json()
        else:
            doc = result.to_json()
        _emit(cfg, _dump(doc))
    else:
        if colourable:
            line = f"COLOURABLE (witness: {''.join(map(str, result.values))})"
        elif result.certificate is not None and cfg.mode is Mode.BASIS:
            line = f"NON-COLOURABLE (parity certificate: {len(result.certificate.bases)} bases)"
        else:
            line = f"NON-COLOURABLE (exhaustive search: {result.stats.nodes} nodes, mode {cfg.mode.value})"
        _emit(cfg, f"{name}: {line}\n")
    return _expectation(cfg, colourable)


def _expectation(cfg: RunConfig, colourable: bool) -> int:
    if cfg.expect is None:
        return EXIT_OK
    wanted = cfg.expect == "colourable"
    if wanted != colourable:
        log.error("expected %s, got %s", cfg.expect, "colourable" if colourable else "noncolourable")
        return EXIT_EXPECT
    return EXIT_OK


def cmd_bases(cfg: RunConfig, dot: bool = False) -> int:
    name, rays = load(cfg.inputs[0])
    graph = build_graph(rays)
    bases = enumerate_bases(rays, graph)
    if dot:
        _emit(cfg, to_dot(rays, graph))
    elif cfg.as_json:
        _emit(cfg, to_json(rays, bases) + "\n")
    else:
        counts = incidence_stats(rays, bases)
        lines = [f"{name}: {len(rays)} rays, dimension {rays.dimension}, {len(bases)} bases"]
        lines.append(f"degrees: {_histogram(graph.degrees())}")
        lines.append(f"bases per ray: {_histogram(counts)}")
        lines.extend(" ".join(map(str, b)) for b in bases)
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def _histogram(values: list[int]) -> str:
    hist: dict[int, int] = {}
    for v in values:
        hist[v] = hist.get(v, 0) + 1
    return ", ".join(f"{k} (x{hist[k]})" for k in sorted(hist))


def cmd_lift(cfg: RunConfig, n: int, sidecar: str | None) -> int:
    name, rays = load(cfg.inputs[0])
    result = lift(rays, n)
    if sidecar:
        Path(sidecar).write_text(_dump(result.sidecar()))
    if cfg.as_json:
        _emit(cfg, _dump(result.sidecar()))
    else:
        header = f"lift of {name} to dimension {n}: {len(result.D)} rays (bound {result.size_bound})"
        _emit(cfg, format_set(result.D, header))
    return EXIT_OK


def cmd_compose(cfg: RunConfig) -> int:
    name_a, a = load(cfg.inputs[0])
    name_b, b = load(cfg.inputs[1])
    out = compose_zp(a, b)
    if cfg.as_json:
        _emit(cfg, _dump({"dimension": out.dimension, "rays": out.rows()}))
    else:
        _emit(cfg, format_set(out, f"direct sum of {name_a} and {name_b}: {len(out)} rays"))
    return EXIT_OK


def cmd_critical(cfg: RunConfig, enumerate_: bool, minimum: bool) -> int:
    name, rays = load(cfg.inputs[0])
    if enumerate_ or minimum or cfg.max_size is not None:
        report = enumerate_minimal(
            rays,
            cfg.mode,
            cfg.max_size,
            minimum_only=minimum,
            node_budget=cfg.budget_nodes,
            time_budget=cfg.budget_seconds,
            name=name,
        )
    else:
        report = is_critical(rays, cfg.mode, name=name, threads=cfg.threads)
    if cfg.as_json:
        _emit(cfg, _dump(report.to_json()))
        return EXIT_OK
    lines = [f"{name}: {'CRITICAL' if report.critical else 'NOT CRITICAL'} ({len(rays)} rays)"]
    if report.removable:
        lines.append(f"removable rays: {' '.join(map(str, report.removable))}")
    if report.minimal_subsets:
        sizes = ", ".join(f"{k}: {c}" for k, c in report.sizes().items())
        lines.append(f"minimal non-colourable subsets by size: {sizes}")
        lines.append(f"minimum size {report.minimum_size}, {report.count_at_minimum} subset(s)")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_parity(cfg: RunConfig) -> int:
    name, rays = load(cfg.inputs[0])
    bases = enumerate_bases(rays)
    cert = parity_certificate(rays, bases)
    if cfg.as_json:
        _emit(cfg, _dump(cert.to_json() if cert else {"kind": "parity", "bases": None}))
    elif cert is None:
        _emit(cfg, f"{name}: no parity certificate\n")
    else:
        _emit(cfg, f"{name}: parity certificate with {len(cert.bases)} of {len(bases)} bases: "
                   f"{' '.join(map(str, cert.bases))}\n")
    return EXIT_OK


def cmd_catalog(cfg: RunConfig, name: str | None, list_: bool, verify: bool = False) -> int:
    if verify:
        checks = catalog.verify_catalog()
        if cfg.as_json:
            _emit(cfg, _dump([{"name": c.name, "fact": c.fact, "expected": repr(c.expected),
                               "actual": repr(c.actual), "ok": c.ok} for c in checks]))
        else:
            _emit(cfg, "".join(f"{'ok  ' if c.ok else 'FAIL'} {c.name}: {c.fact} = {c.actual!r}"
                               f"{'' if c.ok else f' (expected {c.expected!r})'}\n" for c in checks))
        return EXIT_OK if all(c.ok for c in checks) else EXIT_EXPECT
    if list_ or name is None:
        rows = []
        for key in catalog.NAMES:
            e = catalog.get(key)
            if cfg.as_json:
                rows.append({"name": key, "size": e.size, "bases": e.bases,
                             "colourable": e.colourable, "critical": e.critical,
                             "dimension": e.rays.dimension, "provenance": e.provenance})
            else:
                rows.append(f"{key}\tdim {e.rays.dimension}\t{e.size} rays\t{e.bases} bases\t"
                            f"{'critical' if e.critical else 'not critical'}\t{e.provenance}")
        _emit(cfg, _dump(rows) if cfg.as_json else "\n".join(rows) + "\n")
        return EXIT_OK
    try:
        entry = catalog.get(name)
    except catalog.UnknownName as exc:
        raise InputError(str(exc.args[0])) from None
    if cfg.as_json:
        _emit(cfg, _dump({"dimension": entry.rays.dimension, "rays": entry.rays.rows()}))
    else:
        _emit(cfg, format_set(entry.rays, f"{entry.name}: {entry.provenance}"))
    return EXIT_OK


def cmd_table1(cfg: RunConfig, with_minimum: bool) -> int:
    from .table1 import compute_table1

    table = compute_table1(
        with_minimum=with_minimum,
        mode=cfg.mode,
        node_budget=cfg.budget_nodes,
        time_budget=cfg.budget_seconds,
    )
    _emit(cfg, _dump(table.to_json()) if cfg.as_json else table.render())
    return EXIT_OK if table.all_match else EXIT_EXPECT


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", default="basis", choices=[m.value for m in Mode])
    common.add_argument("--json", action="store_true", dest="as_json")
    common.add_argument("--max-size", type=int)
    common.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    common.add_argument("--budget-seconds", type=float)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--expect", choices=["colourable", "noncolourable"])
    common.add_argument("-o", "--output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="bks", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="decide colourability")
    p.add_argument("input")
    p = sub.add_parser("bases", parents=[common], help="enumerate bases")
    p.add_argument("input")
    p.add_argument("--dot", action="store_true", help="print the orthogonality graph as DOT")
    p = sub.add_parser("lift", parents=[common], help="lift to dimension n")
    p.add_argument("input")
    p.add_argument("n", type=int)
    p.add_argument("--sidecar", help="write ray origins as JSON to this path")
    p = sub.add_parser("compose", parents=[common], help="direct sum of two sets")
    p.add_argument("input")
    p.add_argument("second")
    p = sub.add_parser("critical", parents=[common], help="criticality and minimal subsets")
    p.add_argument("input")
    p.add_argument("--enumerate", action="store_true", dest="enumerate_")
    p.add_argument("--minimum", action="store_true", help="only the smallest subsets")
    p = sub.add_parser("parity", parents=[common], help="GF(2) parity certificate")
    p.add_argument("input")
    p = sub.add_parser("catalog", parents=[common], help="built-in ray sets")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true", dest="list_")
    p.add_argument("--verify", action="store_true", help="recompute every stored fact")
    p = sub.add_parser("table1", parents=[common], help="recompute the size table")
    p.add_argument("--minimum", action="store_true", help="also compute smallest critical subsets")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.budget_nodes <= 0 or args.threads <= 0:
        log.error("budgets and thread counts must be positive")
        return EXIT_INPUT
    inputs = tuple(x for x in (getattr(args, "input", None), getattr(args, "second", None)) if x)
    cfg = RunConfig(
        command=args.command,
        inputs=inputs,
        mode=Mode.parse(args.mode),
        budget_nodes=args.budget_nodes,
        budget_seconds=args.budget_seconds,
        as_json=args.as_json,
        output=args.output,
        threads=args.threads,
        expect=args.expect,
        max_size=args.max_size,
    )
    try:
        if cfg.command == "check":
            return cmd_check(cfg)
        if cfg.command == "bases":
            return cmd_bases(cfg, dot=args.dot)
        if cfg.command == "lift":
            return cmd_lift(cfg, args.n, args.sidecar)
        if cfg.command == "compose":
            return cmd_compose(cfg)
        if cfg.command == "critical":
            return cmd_critical(cfg, args.enumerate_, args.minimum)
        if cfg.command == "parity":
            return cmd_parity(cfg)
        if cfg.command == "catalog":
            return cmd_catalog(cfg, args.name, args.list_, args.verify)
        return cmd_table1(cfg, args.minimum)
    except (InputError, RayError, DimensionOutOfRange, NotAProof) as exc:
        print(f"bks: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceBudgetExceeded, BudgetExceeded) as exc:
        partial = getattr(exc, "partial", None)
        if partial is not None and cfg.as_json:
            _emit(cfg, _dump(partial.to_json()))
        print(f"bks: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())
