"""Command-line front end.

    khk kh FILE        Khovanov homology of a link diagram
    khk jones FILE     Jones polynomial by the bracket state sum
    khk family FILE    Kauffman family T(G) of a graph diagram
    khk kkh FILE       Khovanov-Kauffman homology of a graph diagram

Exit codes: 0 ok, 2 parse/validation error, 3 crossing cap exceeded,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path
from typing import Mapping

from . import __version__
from .cube import DEFAULT_CAP, build_complex
from .diagram import LinkDiagram, parse_pd
from .errors import (
    CapExceededError,
    DiagramSyntaxError,
    InvalidChoiceError,
    InvariantViolation,
    MalformedDiagramError,
)
from .homology import GradedDims, homology_dims, poincare_polynomial
from .kauffman import choice_count, family_members, parse_graph
from .kkh import kkh
from .oracle import euler_characteristic, state_sum_jones

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_INVARIANT = 0, 2, 3, 4
CAP_ENV = "KHK_CAP"

CONVENTIONS = {
    "pd": "X(a,b,c,d) counterclockwise from the incoming under-strand",
    "orientation": "each component traced along its least arc label, into that arc's first endpoint slot",
    "member_orientation": "family members take the relative orientation with the most negative crossings",
    "smoothing": "0-resolution joins a-b and c-d; 1-resolution joins a-d and b-c",
    "grading": "i = |alpha| - n_minus; j = deg(v) + i + n_plus - n_minus",
    "coefficients": "Q",
    "normalization": "unreduced: Kh(unknot) = Q(0,1) + Q(0,-1), J(unknot) = q + q^-1",
}


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def _header(command: str, path: str, text: str, **extra) -> dict:
    conventions = dict(CONVENTIONS)
    conventions.update(extra)
    return {
        "command": command,
        "input": os.path.basename(path),
        "input_digest": _digest(text),
        "conventions": conventions,
        "version": __version__,
    }


def _link_payload(d: LinkDiagram, dims: GradedDims, cap: int) -> dict:
    euler = euler_characteristic(dims)
    jones = state_sum_jones(d, cap)
    return {
        "crossings": d.n_crossings,
        "components": d.n_components,
        "n_plus": d.n_plus,
        "n_minus": d.n_minus,
        "dims": dims.to_json(),
        "poincare": str(poincare_polynomial(dims)),
        "euler": euler.to_json(),
        "euler_str": str(euler),
        "jones": jones.to_json(),
        "jones_str": str(jones),
        "euler_equals_jones": euler == jones,
    }


def cmd_kh(path: str, cap: int = DEFAULT_CAP, check_d2: bool = False) -> dict:
    text = Path(path).read_text()
    d = parse_pd(text)
    complex_ = build_complex(d, cap)
    if check_d2:
        complex_.check_d_squared()
    dims = homology_dims(complex_)
    report = _header("kh", path, text)
    report["diagram"] = d.to_pd()
    report.update(_link_payload(d, dims, cap))
    if not report["euler_equals_jones"]:
        raise InvariantViolation("graded Euler characteristic differs from the state-sum Jones polynomial")
    return report


def cmd_jones(path: str, cap: int = DEFAULT_CAP) -> dict:
    text = Path(path).read_text()
    d = parse_pd(text)
    jones = state_sum_jones(d, cap)
    report = _header("jones", path, text)
    report.update(
        diagram=d.to_pd(),
        crossings=d.n_crossings,
        components=d.n_components,
        n_plus=d.n_plus,
        n_minus=d.n_minus,
        jones=jones.to_json(),
        jones_str=str(jones),
    )
    return report


def cmd_family(path: str, dedupe: bool = True, adjacent_only: bool = False,
               invariants: bool = False, cap: int = DEFAULT_CAP) -> dict:
    text = Path(path).read_text()
    g = parse_graph(text)
    members = family_members(g, dedupe=dedupe, adjacent_only=adjacent_only, cap=cap,
                             compute_dims=dedupe or invariants)
    report = _header("family", path, text, dedupe=dedupe, adjacent_only=adjacent_only)
    report["graph"] = g.to_pd()
    report["choices"] = choice_count(g, adjacent_only)
    listing = []
    for m in members:
        entry = {
            "id": m.id,
            "pd": m.diagram.to_pd(),
            "components": m.diagram.n_components,
            "crossings": m.diagram.n_crossings,
            "choices": [str(c) for c in m.choices],
        }
        if invariants and m.dims is not None:
            entry["dims_digest"] = m.dims.digest()
            entry["dims"] = m.dims.to_json()
        listing.append(entry)
    report["members"] = listing
    return report


def cmd_kkh(path: str, dedupe: bool = True, adjacent_only: bool = False,
            cap: int = DEFAULT_CAP, check_d2: bool = False) -> dict:
    text = Path(path).read_text()
    g = parse_graph(text)
    result = kkh(g, dedupe=dedupe, adjacent_only=adjacent_only, cap=cap)
    if check_d2:
        for m in result.members:
            build_complex(parse_pd(m.pd), cap).check_d_squared()
    for m in result.members:
        if m.euler != state_sum_jones(parse_pd(m.pd), cap):
            raise InvariantViolation(f"Euler characteristic of member {m.id} differs from its Jones polynomial")
    report = _header("kkh", path, text, dedupe=dedupe, adjacent_only=adjacent_only)
    report["graph"] = g.to_pd()
    report["members"] = [
        {
            "id": m.id,
            "pd": m.pd,
            "choices": list(m.choices),
            "dims": m.dims.to_json(),
            "euler": m.euler.to_json(),
            "euler_str": str(m.euler),
        }
        for m in result.members
    ]
    report["total"] = {
        "dims": result.total.to_json(),
        "poincare": str(poincare_polynomial(result.total)),
        "euler": result.total_euler.to_json(),
        "euler_str": str(result.total_euler),
    }
    return report


# ----------------------------------------------------------------------------
# text rendering

def _cell(dim: int) -> str:
    if dim == 0:
        return ""
    return "Q" if dim == 1 else f"Q^{dim}"


def format_table(dims: Mapping[tuple[int, int], int]) -> str:
    """Rows j descending, columns i ascending (the usual Khovanov table layout)."""
    if not dims:
        return "(zero)"
    is_ = sorted({i for i, _ in dims})
    js = range(max(j for _, j in dims), min(j for _, j in dims) - 1, -1)
    cols = list(range(is_[0], is_[-1] + 1))
    width = max(4, *(len(_cell(v)) + 1 for v in dims.values()), *(len(str(i)) + 1 for i in cols))
    head = "j\\i".ljust(5) + "|" + "|".join(str(i).center(width) for i in cols) + "|"
    rule = "-" * len(head)
    lines = [rule, head, rule]
    for j in js:
        row = str(j).ljust(5) + "|" + "|".join(_cell(dims.get((i, j), 0)).center(width) for i in cols) + "|"
        lines.append(row)
    lines.append(rule)
    return "\n".join(lines)


def _dims_of(rows) -> GradedDims:
    return GradedDims.from_json(rows)


def render_text(report: dict) -> str:
    out = [f"# {report['command']} {report['input']}  ({report['input_digest'][:19]})"]
    for key, val in report["conventions"].items():
        out.append(f"# {key}: {val}")
    cmd = report["command"]
    if cmd in ("kh", "jones"):
        out.append(f"diagram: {report['diagram'] or '(empty)'}")
        out.append(
            f"crossings: {report['crossings']}  components: {report['components']}  "
            f"n+: {report['n_plus']}  n-: {report['n_minus']}"
        )
    if cmd == "kh":
        out.append(format_table(_dims_of(report["dims"])))
        out.append(f"Poincare: {report['poincare']}")
        out.append(f"Euler:    {report['euler_str']}")
        out.append(f"Jones:    {report['jones_str']}")
        out.append("Euler=Jones: " + ("OK" if report["euler_equals_jones"] else "MISMATCH"))
    elif cmd == "jones":
        out.append(f"Jones: {report['jones_str']}")
    elif cmd == "family":
        out.append(f"graph: {report['graph']}")
        out.append(f"choices: {report['choices']}  members: {len(report['members'])}")
        for k, m in enumerate(report["members"], 1):
            line = f"[{k}] {m['id']}  {m['pd'] or '(empty)'}  components={m['components']}  choices={', '.join(m['choices'])}"
            if "dims_digest" in m:
                line += f"  dims={m['dims_digest']}"
            out.append(line)
    elif cmd == "kkh":
        out.append(f"graph: {report['graph']}")
        for k, m in enumerate(report["members"], 1):
            out.append(f"member [{k}] {m['id']}  {m['pd']}  (choices: {', '.join(m['choices'])})")
            out.append(format_table(_dims_of(m["dims"])))
        out.append("total:")
        out.append(format_table(_dims_of(report["total"]["dims"])))
        out.append(f"Poincare: {report['total']['poincare']}")
        out.append(f"Euler:    {report['total']['euler_str']}")
    if "elapsed_s" in report:
        out.append(f"elapsed: {report['elapsed_s']:.3f} s")
    return "\n".join(out)


def _default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{CAP_ENV} must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="khk", description="Khovanov and Khovanov-Kauffman homology calculator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--cap", type=int, default=None, help=f"crossing cap (default ${CAP_ENV} or {DEFAULT_CAP})")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    graph = argparse.ArgumentParser(add_help=False)
    mode = graph.add_mutually_exclusive_group()
    mode.add_argument("--dedupe", dest="dedupe", action="store_true", default=True)
    mode.add_argument("--multiset", dest="dedupe", action="store_false")
    graph.add_argument("--adjacent-only", action="store_true", help="only join cyclically adjacent half-edges")

    p = sub.add_parser("kh", parents=[common], help="Khovanov homology of a PD link diagram")
    p.add_argument("--check-d2", action="store_true")
    sub.add_parser("jones", parents=[common], help="Jones polynomial by state sum")
    p = sub.add_parser("family", parents=[common, graph], help="Kauffman family of a graph diagram")
    p.add_argument("--invariants", action="store_true", help="attach Khovanov dims to each member")
    p = sub.add_parser("kkh", parents=[common, graph], help="Khovanov-Kauffman homology of a graph diagram")
    p.add_argument("--check-d2", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cap = args.cap if args.cap is not None else _default_cap()
    start = time.perf_counter()
    try:
        if args.command == "kh":
            report = cmd_kh(args.file, cap=cap, check_d2=args.check_d2)
        elif args.command == "jones":
            report = cmd_jones(args.file, cap=cap)
        elif args.command == "family":
            report = cmd_family(args.file, dedupe=args.dedupe, adjacent_only=args.adjacent_only,
                                invariants=args.invariants, cap=cap)
        else:
            report = cmd_kkh(args.file, dedupe=args.dedupe, adjacent_only=args.adjacent_only,
                             cap=cap, check_d2=args.check_d2)
    except (DiagramSyntaxError, MalformedDiagramError, InvalidChoiceError, OSError) as err:
        print(f"khk: error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceededError as err:
        print(f"khk: error: {err}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as err:
        print(f"khk: internal invariant violated: {err}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.timing:
        report["elapsed_s"] = time.perf_counter() - start
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(render_text(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
