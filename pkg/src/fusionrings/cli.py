"""Command-line surface.

Exit codes: 0 success / valid / pass / isomorphic; 1 invalid / obstructed /
not isomorphic; 2 usage or parse error; 3 undecided (an exactness fallback
triggered).  Ring arguments accept a file path or a built-in catalog name.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import catalog
from .center import ObstructionReport, obstruct
from .codegrees import CodegreeSpectrum, formal_codegrees
from .exactnum import QuadNum, RealInterval
from .rings import (
    FusionRing,
    ValidationError,
    axiom_violations,
    deligne_product,
    fpdim,
    isomorphic,
    universal_grading,
)
from .ringfile import ParseError, parse, serialize
from .search import BudgetExceeded, DEFAULT_NODE_BUDGET, SearchSpec, enumerate_rings

BUDGET_ENV = "FUSIONRINGS_NODE_BUDGET"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3


def _load_ring(arg: str) -> FusionRing:
    path = Path(arg)
    if path.exists():
        return parse(path.read_text(encoding="utf-8"))
    try:
        return catalog.get(arg)
    except KeyError:
        raise ParseError(
            f"{arg!r} is neither a readable file nor a catalog name "
            f"(catalog: {', '.join(catalog.catalog_names())})"
        ) from None


def _value_str(value) -> str:
    return str(value)


def _spectrum_str(spectrum: CodegreeSpectrum) -> str:
    parts = []
    for value, mult in spectrum.values:
        parts.append(f"{value} (x{mult})" if mult > 1 else f"{value}")
    return ", ".join(parts)


def _emit(args, human_lines, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _cmd_check(args) -> int:
    try:
        ring = _load_ring(args.ring)
    except ValidationError as exc:
        lines = [f"invalid: {len(exc.violations)} violation(s)"]
        lines += [f"  {v.identity} at {v.indices}" for v in exc.violations[:20]]
        _emit(args, lines, {
            "valid": False,
            "violations": [
                {"identity": v.identity, "indices": list(v.indices)}
                for v in exc.violations
            ],
        })
        return EXIT_NEGATIVE
    _emit(args, [f"valid: ring {ring.name or '?'} (rank {ring.rank})"], {
        "valid": True,
        "ring": ring.name,
        "rank": ring.rank,
    })
    return EXIT_OK


def _cmd_fpdim(args) -> int:
    ring = _load_ring(args.ring)
    fp = fpdim(ring)
    lines = [f"ring {ring.name or '?'} (rank {ring.rank})"]
    for name, dim in zip(ring.names, fp.dims):
        lines.append(f"  FPdim({name}) = {_value_str(dim)}")
    lines.append(f"total: {_value_str(fp.total)}")
    if not fp.exact:
        lines.append("numeric: interval fallback was used")
    _emit(args, lines, {
        "ring": ring.name,
        "dims": {name: _value_str(d) for name, d in zip(ring.names, fp.dims)},
        "total": _value_str(fp.total),
        "exact": fp.exact,
    })
    return EXIT_OK if fp.exact else EXIT_UNDECIDED


def _cmd_grading(args) -> int:
    ring = _load_ring(args.ring)
    grading = universal_grading(ring)
    lines = [
        f"ring {ring.name or '?'} (rank {ring.rank})",
        f"universal grading group order: {grading.order}",
        "adjoint support: " + " ".join(ring.names[i] for i in grading.adjoint_support),
    ]
    for gi, members in enumerate(grading.components):
        lines.append(f"  component {gi}: " + " ".join(ring.names[i] for i in members))
    lines.append("table: " + "; ".join(
        " ".join(str(v) for v in row) for row in grading.table
    ))
    _emit(args, lines, {
        "ring": ring.name,
        "order": grading.order,
        "adjoint_support": list(grading.adjoint_support),
        "components": [list(c) for c in grading.components],
        "table": [list(r) for r in grading.table],
    })
    return EXIT_OK


def _cmd_codegrees(args) -> int:
    ring = _load_ring(args.ring)
    spectrum = formal_codegrees(ring)
    lines = [
        f"ring {ring.name or '?'} (rank {ring.rank})",
        f"formal codegrees: {_spectrum_str(spectrum)}",
    ]
    if not spectrum.exact:
        lines.append("numeric: interval fallback was used")
    _emit(args, lines, {
        "ring": ring.name,
        "codegrees": [
            {"value": _value_str(v), "multiplicity": m} for v, m in spectrum.values
        ],
        "exact": spectrum.exact,
    })
    return EXIT_OK if spectrum.exact else EXIT_UNDECIDED


def _render_obstruction(ring: FusionRing, report: ObstructionReport) -> list[str]:
    lines = [
        f"ring {report.ring_name} (rank {ring.rank})",
        "assumptions: " + "; ".join(report.assumptions),
    ]
    if report.spectrum is not None:
        lines.append(f"formal codegrees: {_spectrum_str(report.spectrum)}")
    if report.fp_total is not None:
        lines.append(f"FPdim: {_value_str(report.fp_total)}")
    for diag in report.diagnostics:
        lines.append(f"diagnostic: {diag}")
    lines.append(f"branches explored: {len(report.branches)}")
    for bn, branch in enumerate(report.branches, 1):
        lines.append(f"branch {bn}: {branch.status}")
        for step in branch.steps:
            lines.append(f"  {step.describe(ring)}")
            for summand in step.new_summands:
                lines.append(f"    {summand.describe(ring)}")
            if step.equation is not None:
                lines.append(f"    equation: {step.equation.render()}")
            if step.outcome is not None and step.outcome.verdict != "feasible":
                lines.append(f"    {step.outcome.verdict}: {step.outcome.witness}")
        if branch.witness:
            lines.append(f"  witness: {branch.witness}")
    lines.append(f"verdict: {report.verdict}")
    if report.verdict == "pass":
        dims = ", ".join(
            f"{_value_str(d)} (x{m})" if m > 1 else _value_str(d)
            for d, m in report.center_dims
        )
        count = sum(m for _, m in report.center_dims)
        lines.append(f"center summands: {count}")
        lines.append(f"center dims: {dims}")
        lines.append(
            f"sum of squared center dims: {_value_str(report.dim_square_total)}"
            f" = FPdim^2"
        )
    return lines


def _obstruction_payload(report: ObstructionReport) -> dict:
    return {
        "ring": report.ring_name,
        "verdict": report.verdict,
        "assumptions": list(report.assumptions),
        "diagnostics": list(report.diagnostics),
        "fpdim": None if report.fp_total is None else _value_str(report.fp_total),
        "codegrees": None
        if report.spectrum is None
        else [
            {"value": _value_str(v), "multiplicity": m}
            for v, m in report.spectrum.values
        ],
        "branches": [
            {
                "status": b.status,
                "witness": b.witness,
                "steps": [
                    {
                        "x": s.x,
                        "decomposition": [list(d) for d in s.decomposition],
                        "equation": None if s.equation is None else s.equation.render(),
                        "outcome": None if s.outcome is None else s.outcome.verdict,
                        "summands": [
                            {
                                "id": cs.sid,
                                "image": list(cs.image),
                                "dim": _value_str(cs.fdim),
                            }
                            for cs in s.new_summands
                        ],
                    }
                    for s in b.steps
                ],
            }
            for b in report.branches
        ],
        "center_dims": None
        if report.center_dims is None
        else [{"value": _value_str(d), "multiplicity": m} for d, m in report.center_dims],
        "dim_square_total": None
        if report.dim_square_total is None
        else _value_str(report.dim_square_total),
    }


def _cmd_obstruct(args) -> int:
    ring = _load_ring(args.ring)
    report = obstruct(ring)
    _emit(args, _render_obstruction(ring, report), _obstruction_payload(report))
    if report.verdict == "pass":
        return EXIT_OK
    if report.verdict == "obstructed":
        return EXIT_NEGATIVE
    return EXIT_UNDECIDED


def _cmd_product(args) -> int:
    a = _load_ring(args.ring_a)
    b = _load_ring(args.ring_b)
    prod = deligne_product(a, b)
    doc = serialize(prod)
    if args.output:
        Path(args.output).write_text(doc, encoding="utf-8")
        _emit(args, [f"wrote {args.output} (rank {prod.rank})"], {
            "output": args.output,
            "rank": prod.rank,
        })
    else:
        _emit(args, [doc.rstrip("\n")], {"document": doc, "rank": prod.rank})
    return EXIT_OK


def _cmd_iso(args) -> int:
    a = _load_ring(args.ring_a)
    b = _load_ring(args.ring_b)
    sigma = isomorphic(a, b)
    if sigma is None:
        _emit(args, ["not isomorphic"], {"isomorphic": False})
        return EXIT_NEGATIVE
    mapping = ", ".join(
        f"{a.names[i]} -> {b.names[sigma[i]]}" for i in range(a.rank)
    )
    _emit(args, [f"isomorphic via {mapping}"], {
        "isomorphic": True,
        "permutation": list(sigma),
    })
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    budget = args.node_budget
    if budget is None:
        budget = int(os.environ.get(BUDGET_ENV, DEFAULT_NODE_BUDGET))
    spec = SearchSpec(
        rank=args.rank,
        max_coeff=args.max_coeff,
        self_dual=args.self_dual,
        nontrivial_grading=args.nontrivial_grading,
        non_pointed=args.non_pointed,
        node_budget=budget,
    )
    try:
        result = enumerate_rings(spec)
    except BudgetExceeded as exc:
        _emit(args, [f"budget exceeded: {exc}"], {"error": str(exc)})
        return EXIT_NEGATIVE
    entries = []
    for ring in result.rings:
        doc = serialize(ring)
        digest = hashlib.sha256(doc.encode()).hexdigest()[:16]
        fp = fpdim(ring)
        entries.append((digest, ring, doc, fp))
    lines = [
        f"enumerate rank={spec.rank} max-coeff={spec.max_coeff}"
        + (" self-dual" if spec.self_dual else "")
        + (" nontrivial-grading" if spec.nontrivial_grading else "")
        + (" non-pointed" if spec.non_pointed else ""),
        f"complete within coefficient bound {spec.max_coeff}",
        f"nodes explored: {result.nodes}; rings before dedup: {result.raw_count}",
        f"found {len(entries)} ring(s)",
    ]
    for digest, ring, _doc, fp in entries:
        dims = ", ".join(_value_str(d) for d in fp.dims)
        lines.append(f"  {digest}  dims [{dims}]  total {_value_str(fp.total)}")
    if args.output:
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
        index_lines = []
        for digest, ring, doc, fp in entries:
            (outdir / f"{digest}.ring").write_text(doc, encoding="utf-8")
            dims = " ".join(_value_str(d) for d in fp.dims)
            index_lines.append(f"{digest} rank={ring.rank} dims {dims} total {_value_str(fp.total)}")
        (outdir / "index.txt").write_text(
            "\n".join(index_lines) + ("\n" if index_lines else ""), encoding="utf-8"
        )
        lines.append(f"wrote {len(entries)} file(s) to {outdir}")
    _emit(args, lines, {
        "rank": spec.rank,
        "max_coeff": spec.max_coeff,
        "complete_within_bound": True,
        "nodes": result.nodes,
        "raw_count": result.raw_count,
        "rings": [
            {
                "hash": digest,
                "dims": [_value_str(d) for d in fp.dims],
                "total": _value_str(fp.total),
            }
            for digest, _ring, _doc, fp in entries
        ],
    })
    return EXIT_OK


def _cmd_catalog(args) -> int:
    try:
        ring = catalog.get(args.name, n=args.n)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    doc = serialize(ring)
    if args.output:
        Path(args.output).write_text(doc, encoding="utf-8")
        _emit(args, [f"wrote {args.output}"], {"output": args.output, "ring": ring.name})
    else:
        _emit(args, [doc.rstrip("\n")], {"document": doc, "ring": ring.name})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionrings",
        description="Exact fusion-ring computations: axioms, dimensions, "
        "gradings, codegrees, center obstructions, enumeration.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate the fusion-ring axioms")
    p.add_argument("ring")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("fpdim", help="Frobenius-Perron dimensions")
    p.add_argument("ring")
    p.set_defaults(func=_cmd_fpdim)

    p = sub.add_parser("grading", help="universal grading")
    p.add_argument("ring")
    p.set_defaults(func=_cmd_grading)

    p = sub.add_parser("codegrees", help="formal codegrees")
    p.add_argument("ring")
    p.set_defaults(func=_cmd_codegrees)

    p = sub.add_parser("obstruct", help="center induction/twist obstruction")
    p.add_argument("ring")
    p.set_defaults(func=_cmd_obstruct)

    p = sub.add_parser("product", help="Deligne product of two rings")
    p.add_argument("ring_a")
    p.add_argument("ring_b")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("iso", help="based-ring isomorphism test")
    p.add_argument("ring_a")
    p.add_argument("ring_b")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("enumerate", help="enumerate rings within a bound")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--max-coeff", type=int, required=True)
    p.add_argument("--self-dual", action="store_true")
    p.add_argument("--nontrivial-grading", action="store_true")
    p.add_argument("--non-pointed", action="store_true")
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("catalog", help="emit a built-in ring")
    p.add_argument("name")
    p.add_argument("--n", type=int, default=None, help="parameter for k_n")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
