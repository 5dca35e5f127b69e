"""Command-line frontend: completion, reduction, counting, order sweeps.

Exit codes: 0 for success (``complete`` additionally requires a confirmed
basis), 1 for usage or input errors, 2 when completion stopped at a cap.
Identical invocations produce byte-identical output; the sweep may run
its completions in parallel (``OPERAD_GSB_THREADS``) without affecting
the result.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .completion import (
    STATUS_CONFIRMED,
    CompletionConfig,
    CompletionReport,
    complete,
)
from .enumeration import (
    DIMENSION_TABLE_HEADER,
    ORACLE_GUARD,
    DimensionReport,
    catalan,
    count_normal,
    count_tree_monomials,
    dimension_by_linear_algebra,
    quadri_dim,
)
from .ordering import OperationOrder
from .polynomials import format_polynomial, parse_polynomial
from .presets import Presentation, dendriform, parse_presentation, quadri
from .rewriting import RewriteRule, normal_form
from .trees import TreeError

__all__ = ["main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="operad-gsb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: _Parser, need_order: bool = True) -> None:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--preset", choices=["dendriform", "quadri"])
        src.add_argument("--relations", type=Path, metavar="PATH")
        if need_order:
            p.add_argument("--order", help='e.g. "prec<succ" or "c<b<d<a"')
        p.add_argument("--max-iterations", type=int, default=2)
        p.add_argument("--max-arity", type=int, default=12)
        p.add_argument("--step-limit", type=int, default=10**6)
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--out", type=Path, default=None)

    p_complete = sub.add_parser("complete", help="run completion, print the basis")
    add_common(p_complete)

    p_reduce = sub.add_parser("reduce", help="normal form of a polynomial")
    add_common(p_reduce)
    p_reduce.add_argument("polynomial", help="polynomial text to reduce")
    p_reduce.add_argument("--trace", action="store_true", help="emit reduction steps")

    p_count = sub.add_parser("count", help="normal-monomial dimension table")
    add_common(p_count)
    p_count.add_argument("--n-max", type=int, default=5)
    p_count.add_argument("--oracle-max", type=int, default=5,
                         help="largest arity for the linear-algebra oracle")

    p_table = sub.add_parser("table1", help="sweep all total orders of operations")
    add_common(p_table, need_order=False)
    return parser


def _load_presentation(args) -> Presentation:
    if args.preset == "dendriform":
        return dendriform()
    if args.preset == "quadri":
        return quadri()
    path: Path = args.relations
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return parse_presentation(text, name=path.stem)


def _resolve_order(args, pres: Presentation) -> OperationOrder:
    if getattr(args, "order", None):
        return OperationOrder.from_string(args.order, pres.signature)
    if pres.preferred_order is not None:
        return pres.preferred_order
    raise UsageError("no --order given and the presentation declares none")


def _config(args) -> CompletionConfig:
    return CompletionConfig(
        max_iterations=args.max_iterations,
        max_arity=args.max_arity,
        step_limit=args.step_limit,
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _report_text(report: CompletionReport, ord: OperationOrder) -> str:
    lines = [f"order: {report.order}"]
    for k, rec in enumerate(report.iterations, start=1):
        lines.append(
            f"iteration {k}: {rec.compositions} compositions, "
            f"{rec.nonzero} nonzero"
        )
        for poly in rec.added:
            lines.append(f"  added: {format_polynomial(poly, ord)}")
    lines.append(f"status: {report.status}")
    lines.append(f"basis ({report.basis_size} elements):")
    for poly in report.basis:
        lines.append(f"  {format_polynomial(poly, ord)}")
    return "\n".join(lines)


def _cmd_complete(args) -> int:
    pres = _load_presentation(args)
    ord = _resolve_order(args, pres)
    _, report = complete(pres.relations, ord, _config(args))
    if args.format == "json":
        _emit(json.dumps(report.to_json_dict(ord), indent=2), args.out)
    else:
        _emit(_report_text(report, ord), args.out)
    return 0 if report.status == STATUS_CONFIRMED else 2


def _cmd_reduce(args) -> int:
    pres = _load_presentation(args)
    ord = _resolve_order(args, pres)
    poly = parse_polynomial(args.polynomial, pres.signature)
    if args.relations is not None:
        # a relation file is taken as the rewriting system itself,
        # oriented but not completed
        rules = tuple(RewriteRule.from_polynomial(r, ord) for r in pres.relations)
    else:
        basis, report = complete(pres.relations, ord, _config(args))
        if report.status != STATUS_CONFIRMED:
            sys.stderr.write(
                f"warning: basis not confirmed ({report.status}); "
                "normal forms may not be canonical\n"
            )
        rules = basis.rules
    trace: list | None = [] if args.trace else None
    nf = normal_form(poly, rules, ord, args.step_limit, trace=trace)
    body = format_polynomial(nf, ord)
    if args.format == "json":
        doc = {"input": args.polynomial, "normal_form": body}
        if trace is not None:
            doc["trace"] = [[idx, list(vertex)] for idx, vertex in trace]
        _emit(json.dumps(doc, indent=2), args.out)
    else:
        lines = [body]
        if trace is not None:
            lines.append(json.dumps([[idx, list(vertex)] for idx, vertex in trace]))
        _emit("\n".join(lines), args.out)
    return 0


def _formula_for(pres: Presentation):
    if pres.name == "dendriform":
        return catalan
    if pres.name == "quadri":
        return quadri_dim
    return None


def _cmd_count(args) -> int:
    pres = _load_presentation(args)
    ord = _resolve_order(args, pres)
    basis, report = complete(pres.relations, ord, _config(args))
    if report.status != STATUS_CONFIRMED:
        sys.stderr.write(f"warning: basis not confirmed ({report.status})\n")
    formula = _formula_for(pres)
    reports = []
    for n in range(1, args.n_max + 1):
        oracle = None
        if n <= args.oracle_max and count_tree_monomials(pres.signature, n) <= ORACLE_GUARD:
            oracle = dimension_by_linear_algebra(pres, n)
        reports.append(
            DimensionReport(
                arity=n,
                normal_count=count_normal(basis, n),
                formula_value=formula(n) if formula else None,
                oracle_value=oracle,
            )
        )
    if args.format == "json":
        _emit(json.dumps([r.to_json_dict() for r in reports], indent=2), args.out)
    else:
        lines = [DIMENSION_TABLE_HEADER] + [r.text_row() for r in reports]
        _emit("\n".join(lines), args.out)
    return 0


def _sweep_orders(pres: Presentation) -> list[str]:
    names = sorted(s.name for s in pres.signature.symbols)
    return ["<".join(p) for p in itertools.permutations(names)]


def _sweep_one(payload: tuple) -> dict:
    preset_name, file_text, order_text, caps = payload
    if preset_name == "dendriform":
        pres = dendriform()
    elif preset_name == "quadri":
        pres = quadri()
    else:
        pres = parse_presentation(file_text)
    ord = OperationOrder.from_string(order_text, pres.signature)
    cfg = CompletionConfig(*caps)
    _, report = complete(pres.relations, ord, cfg)
    return report.to_json_dict(ord)


def _gsb_marker(row: dict) -> str:
    if row["status"] == STATUS_CONFIRMED:
        return f"GSB at iteration {len(row['iterations'])}"
    return f"stopped: {row['status']}"


def _cmd_table1(args) -> int:
    pres = _load_presentation(args)
    if not pres.signature.is_binary:
        raise UsageError("order sweep needs a binary presentation")
    orders = _sweep_orders(pres)
    caps = (args.max_iterations, args.max_arity, args.step_limit)
    file_text = None
    if args.preset is None:
        file_text = args.relations.read_text(encoding="utf-8")
    payloads = [(args.preset, file_text, order, caps) for order in orders]
    threads = int(os.environ.get("OPERAD_GSB_THREADS", "1"))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_one, payloads))
    else:
        rows = [_sweep_one(p) for p in payloads]
    doc = {"presentation": pres.name, "rows": rows}
    if args.format == "json":
        _emit(json.dumps(doc, indent=2), args.out)
        return 0
    width = max(len(o) for o in orders)
    max_iter = max(len(r["iterations"]) for r in rows)
    header = f"{'order':<{width}}"
    for k in range(1, max_iter + 1):
        header += f"  {'comp' + str(k):>7} {'red' + str(k):>6}"
    header += "  result"
    lines = [header]
    for order, row in zip(orders, rows):
        line = f"{order:<{width}}"
        for k in range(max_iter):
            if k < len(row["iterations"]):
                it = row["iterations"][k]
                line += f"  {it['compositions']:>7} {it['nonzero']:>6}"
            else:
                line += f"  {'--':>7} {'--':>6}"
        line += f"  {_gsb_marker(row)}"
        lines.append(line)
    text = "\n".join(lines)
    if args.out is not None:
        # text table to stdout, machine-readable JSON to the output path
        args.out.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    sys.stdout.write(text + "\n")
    return 0


_COMMANDS = {
    "complete": _cmd_complete,
    "reduce": _cmd_reduce,
    "count": _cmd_count,
    "table1": _cmd_table1,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except TreeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
