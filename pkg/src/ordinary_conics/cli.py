"""``ordinary-conics`` command line.

Reports are JSON (sorted keys) written to ``--output`` or stdout; timings go
to stderr so that report bytes depend only on the input and the options.

Exit codes: 0 success, 1 usage, 2 parse, 3 precondition, 4 internal invariant.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Optional

from .conics import enumerate_ordinary_conics, is_coconic
from .constructions import (EpsilonPolicy, enumerate_ordinary_conics_float, gen_acnodal_subgroup,
                            gen_conic_line, gen_elliptic_subgroup, gen_line_plus)
from .errors import InternalInvariantError, PrecisionError, PreconditionError, RetryExhaustedError
from .groupcount import count_conic_line, count_cyclic
from .incidence import check_line_theorems, enumerate_lines, line_profile, ordinary_lines
from .plotting import render_svg
from .pointio import ParseError, PointFile, dumps, format_rational, parse_rational, read_points
from .veronese import find_ordinary_conic_traced

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    format: Optional[str] = None
    seed: int = 0
    tolerance: Optional[float] = None
    precision_bits: Optional[int] = None
    threads: int = 1
    filter_irreducible: bool = False

    def __post_init__(self):
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(v):
    if isinstance(v, Enum):
        return v.value
    if isinstance(v, bool) or v is None or isinstance(v, (str, int)):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else format_rational(v)
    if isinstance(v, float):
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    ctx = getattr(v, "context", None)
    if ctx is not None:
        return ctx.nstr(v, 17)
    return str(v)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg: RunConfig, report: dict) -> None:
    if cfg.format == "csv":
        raise UsageError(f"{cfg.command} writes JSON reports only")
    _emit(cfg, json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n")


def _emit_table(cfg: RunConfig, report: dict, header: list[str], rows: list[list]) -> None:
    if cfg.format == "csv" or (cfg.format is None and cfg.output and cfg.output.endswith(".csv")):
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_jsonable(x) for x in r])
        _emit(cfg, out.getvalue())
    else:
        _emit(cfg, json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n")


def _stats(**kw) -> None:
    print("stats: " + " ".join(f"{k}={v}" for k, v in kw.items()), file=sys.stderr)


def _load(cfg: RunConfig) -> PointFile:
    if not cfg.input:
        raise UsageError(f"{cfg.command} needs --input")
    path = Path(cfg.input)
    if not path.is_file():
        raise UsageError(f"cannot read {cfg.input}")
    return read_points(path)


def _exact(cfg: RunConfig, pf: PointFile):
    if pf.numeric:
        raise UsageError(f"{cfg.command} needs an exact (p/q) point file")
    return pf.point_set()


def _policy(cfg: RunConfig, pf: Optional[PointFile] = None) -> EpsilonPolicy:
    bits = cfg.precision_bits
    if bits is None and pf is not None:
        bits = int(pf.metadata.get("precision_bits", 128))
    kw = {"precision_bits": bits or 128}
    if cfg.tolerance is not None:
        kw["residual_tolerance"] = cfg.tolerance
    return EpsilonPolicy(**kw)


def _line_row(rec):
    return {"line": list(rec.line), "members": list(rec.member_indices)}


def _conic_row(rec):
    return {"members": list(rec.member_indices), "coefficients": list(rec.conic.coefficients),
            "kind": rec.conic.kind}


def cmd_analyze(cfg: RunConfig) -> int:
    s = _exact(cfg, _load(cfg))
    lines = enumerate_lines(s)
    prof = line_profile(s, lines)
    checks = check_line_theorems(s)
    report = {
        "n": len(s),
        "collinear": prof.collinear,
        "profile": {"total_lines": prof.total_lines,
                    "multiplicity_counts": dict(sorted(prof.multiplicity_counts.items())),
                    "melchior_slack": prof.melchior_slack},
        "ordinary_lines": [_line_row(r) for r in lines if r.size == 2],
        "checks": checks.results,
        "values": checks.values,
        "all_pass": checks.all_pass,
    }
    _emit_json(cfg, report)
    return EXIT_OK


def cmd_ordinary_lines(cfg: RunConfig) -> int:
    s = _exact(cfg, _load(cfg))
    recs = ordinary_lines(s)
    report = {"n": len(s), "count": len(recs), "ordinary_lines": [_line_row(r) for r in recs]}
    rows = [[*r.member_indices, *r.line] for r in recs]
    _emit_table(cfg, report, ["i", "j", "a", "b", "c"], rows)
    return EXIT_OK


def cmd_ordinary_conics(cfg: RunConfig) -> int:
    pf = _load(cfg)
    if len(pf.points) < 5:
        raise UsageError("ordinary-conics needs at least five points")
    t0 = time.perf_counter()
    if pf.numeric:
        policy = _policy(cfg, pf)
        recs, diag = enumerate_ordinary_conics_float(pf.points, policy)
        report = {"n": len(pf.points), "mode": "float", "count": len(recs),
                  "tolerance": policy.residual_tolerance, "precision_bits": policy.precision_bits,
                  "diagnostics": diag,
                  "records": [{"members": list(r.member_indices), "coefficients": list(r.coefficients)}
                              for r in recs]}
        rows = [[*r.member_indices, *r.coefficients] for r in recs]
        header = ["i1", "i2", "i3", "i4", "i5", "a0", "a1", "a2", "a3", "a4", "a5"]
        if cfg.filter_irreducible:
            raise UsageError("--irreducible-only needs an exact point file")
    else:
        recs = enumerate_ordinary_conics(pf.point_set(), irreducible_only=cfg.filter_irreducible,
                                         workers=cfg.threads)
        report = {"n": len(pf.points), "mode": "exact", "count": len(recs),
                  "irreducible_only": cfg.filter_irreducible,
                  "records": [_conic_row(r) for r in recs]}
        rows = [[*r.member_indices, *r.conic.coefficients, r.conic.kind] for r in recs]
        header = ["i1", "i2", "i3", "i4", "i5", "a0", "a1", "a2", "a3", "a4", "a5", "kind"]
    _stats(elapsed_s=f"{time.perf_counter() - t0:.3f}", subsets=comb(len(pf.points), 5),
           threads=cfg.threads)
    _emit_table(cfg, report, header, rows)
    return EXIT_OK


def cmd_find_one(cfg: RunConfig) -> int:
    s = _exact(cfg, _load(cfg))
    rec, trace = find_ordinary_conic_traced(s, cfg.seed)
    branch = next((e["event"] for e in reversed(trace) if e["event"] in ("step1", "step2_found",
                                                                         "step3_found")), None)
    report = {"seed": cfg.seed, "record": _conic_row(rec), "branch": branch, "trace": trace}
    _emit_json(cfg, report)
    return EXIT_OK


def cmd_generate(cfg: RunConfig, args) -> int:
    kind = args.kind
    bits = cfg.precision_bits or 128
    if kind == "line_plus":
        if args.total is None or args.k is None:
            raise UsageError("line_plus needs --total and --k")
        s = gen_line_plus(args.total, args.k, cfg.seed)
        m, k = args.total - args.k, args.k
        meta = {"kind": "line_plus", "total": args.total, "k": k, "seed": cfg.seed,
                "count_bound": comb(m, 2) * comb(k, 3) + m * comb(k, 4) + comb(k, 5)}
        points, labels = s.points, list(s.labels)
    else:
        if args.n is None:
            raise UsageError(f"{kind} needs --n")
        if kind == "acnodal":
            c = gen_acnodal_subgroup(args.n, cfg.seed, bits)
        elif kind == "elliptic":
            a = parse_rational(args.a) if args.a else Fraction(-2)
            b = parse_rational(args.b) if args.b else Fraction(4)
            c = gen_elliptic_subgroup(args.n, a, b, bits, cfg.seed)
        else:
            c = gen_conic_line(args.n, cfg.seed, bits)
        meta = {**c.metadata(), "numeric": True, "chart_seed": cfg.seed}
        if kind == "elliptic":
            meta["curve"] = {"a": format_rational(a), "b": format_rational(b)}
        points = [(p.x, p.y) for p in c.points]
        labels = [comp for comp, _ in c.indices]
    fmt = cfg.format or ("csv" if cfg.output and cfg.output.endswith(".csv") else "json")
    if fmt == "csv" and meta.get("numeric"):
        raise UsageError("numeric constructions need JSON output to keep their metadata")
    _emit(cfg, dumps(points, labels, meta, fmt))
    return EXIT_OK


def cmd_group_count(cfg: RunConfig, args) -> int:
    if args.n is None:
        raise UsageError("group-count needs --n")
    t0 = time.perf_counter()
    if args.kind == "cyclic":
        rep = count_cyclic(args.n, args.method, cfg.threads)
        ratio = rep.ratio()
        report = {"kind": "cyclic", "n": rep.n, "count": rep.count, "method": rep.method,
                  "coefficient": "1/24", "leading_term": Fraction(rep.n ** 4, 24),
                  "ratio": ratio, "ratio_float": float(ratio), "deviation": abs(float(ratio) - 1)}
    else:
        rep = count_conic_line(args.n, args.method, cfg.threads)
        h = 2 * rep.n
        r1 = Fraction(384 * rep.type1, h ** 4)
        r2 = Fraction(64 * rep.type2, h ** 4)
        ratio = rep.ratio()
        report = {"kind": "conic_line", "n": rep.n, "H": h, "method": rep.method,
                  "type1": rep.type1, "type2": rep.type2, "total": rep.total,
                  "degenerate": rep.degenerate, "complete_total": rep.complete_total,
                  "coefficient": "7/384", "ratio": ratio, "ratio_float": float(ratio),
                  "type1_ratio": r1, "type1_ratio_float": float(r1),
                  "type2_ratio": r2, "type2_ratio_float": float(r2)}
    method = rep.method
    _stats(elapsed_s=f"{time.perf_counter() - t0:.3f}", method=method, threads=cfg.threads)
    _emit_json(cfg, report)
    return EXIT_OK


def cmd_verify_bounds(cfg: RunConfig) -> int:
    pf = _load(cfg)
    s = _exact(cfg, pf)
    checks = check_line_theorems(s)
    results = dict(checks.results)
    values = dict(checks.values)
    conics = None
    if len(s) >= 6:
        if is_coconic(s) is None:
            conics = enumerate_ordinary_conics(s, workers=cfg.threads)
            results["existence"] = bool(conics)
            values["ordinary_conics"] = len(conics)
        else:
            results["existence"] = None
    labels = s.labels or ()
    if labels and set(labels) == {"line", "off"}:
        k = labels.count("off")
        m = len(s) - k
        bound = comb(m, 2) * comb(k, 3) + m * comb(k, 4) + comb(k, 5)
        if conics is None:
            conics = enumerate_ordinary_conics(s, workers=cfg.threads)
        values["line_plus_bound"] = bound
        values["ordinary_conics"] = len(conics)
        results["line_plus_bound"] = len(conics) <= bound
    ok = all(v is not False for v in results.values())
    _emit_json(cfg, {"n": len(s), "collinear": checks.collinear, "results": results,
                     "values": values, "all_pass": ok})
    return EXIT_OK if ok else EXIT_INTERNAL


def cmd_plot(cfg: RunConfig) -> int:
    if not cfg.output:
        raise UsageError("plot needs --output")
    pf = _load(cfg)
    if pf.numeric:
        pts = [(float(x), float(y)) for x, y in pf.points]
        lines = []
        conics = []
        if len(pts) >= 5:
            recs, _ = enumerate_ordinary_conics_float(pf.points, _policy(cfg, pf))
            conics = [tuple(float(c) for c in r.coefficients) for r in recs]
    else:
        s = pf.point_set()
        pts = list(s.points)
        lines = [r.line for r in ordinary_lines(s)]
        conics = []
        if len(s) >= 5:
            conics = [r.conic.coefficients for r in
                      enumerate_ordinary_conics(s, irreducible_only=cfg.filter_irreducible,
                                                workers=cfg.threads)]
    title = f"{len(pts)} points, {len(lines)} ordinary lines, {len(conics)} ordinary conics"
    Path(cfg.output).write_text(render_svg(pts, lines, conics, title))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", help="point file (.json or .csv)")
    common.add_argument("--output", help="output path (default: stdout)")
    common.add_argument("--format", choices=["json", "csv"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerance", type=float, help="float-mode residual tolerance")
    common.add_argument("--precision-bits", type=int, help="float-mode working precision")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--irreducible-only", action="store_true")

    p = _Parser(prog="ordinary-conics", description="Ordinary lines and conics of planar point sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("analyze", parents=[common], help="line profile and classical line theorems")
    sub.add_parser("ordinary-lines", parents=[common], help="list ordinary lines")
    sub.add_parser("ordinary-conics", parents=[common], help="list ordinary conics")
    sub.add_parser("find-one", parents=[common], help="constructive ordinary conic with trace")
    g = sub.add_parser("generate", parents=[common], help="write a construction as a point file")
    g.add_argument("kind", choices=["acnodal", "elliptic", "conic_line", "line_plus"])
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--total", type=int)
    g.add_argument("--a", help="elliptic coefficient a (p/q)")
    g.add_argument("--b", help="elliptic coefficient b (p/q)")
    c = sub.add_parser("group-count", parents=[common], help="exact counts via index arithmetic")
    c.add_argument("kind", choices=["cyclic", "conic_line"])
    c.add_argument("--n", type=int)
    c.add_argument("--method", choices=["auto", "exhaustive", "dp"], default="auto")
    sub.add_parser("verify-bounds", parents=[common], help="check line theorems and conic bounds")
    sub.add_parser("plot", parents=[common], help="static SVG of points, lines and conics")
    return p


_COMMANDS = {
    "analyze": cmd_analyze,
    "ordinary-lines": cmd_ordinary_lines,
    "ordinary-conics": cmd_ordinary_conics,
    "find-one": cmd_find_one,
    "verify-bounds": cmd_verify_bounds,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(args.command, args.input, args.output, args.format, args.seed,
                        args.tolerance, args.precision_bits, args.threads, args.irreducible_only)
        if args.command == "generate":
            return cmd_generate(cfg, args)
        if args.command == "group-count":
            return cmd_group_count(cfg, args)
        return _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InternalInvariantError, RetryExhaustedError, PrecisionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
