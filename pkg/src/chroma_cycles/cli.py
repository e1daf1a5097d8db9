"""Command-line interface: ``chroma-cycles <subcommand> ...``.

Exit codes: 0 success, 2 precondition failure, 3 parse error,
4 theorem violation (should never happen on valid input).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .certs import CycleCert, PreconditionError, TheoremViolation, check_cycle, validate_cert
from .circular import extract_circular_bonus, extract_circular_cycle
from .coloring import CircularSpec, chromatic_number, find_k_coloring, find_kd_coloring, is_edge_critical
from .graph import MAX_N, Edge, Graph, edge_deleted, parse_named
from .graph6 import GraphFormatError, iter_graph_file, parse_line, write_graph6
from .oracle import (
    BudgetExhausted,
    default_budget,
    edge_length_histograms,
    enumerate_cycles,
    length_histogram,
    profile_from_lengths,
    random_orientation_search,
    residue_profile,
)
from .tuza import counts_by_support, extract_one_mod_r_cycles, extract_zero_mod_r_cycles, one_mod_r_bound, zero_mod_r_bound

log = logging.getLogger("chroma_cycles")

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_PARSE = 3
EXIT_VIOLATION = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    max_n: int = MAX_N
    budget: int = 10**7
    seed: int = 0
    fmt: str = "jsonl"
    workers: int = 1


# -- argument helpers -----------------------------------------------------


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got {text!r}") from None
    return a, b


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def load_graph(args, cfg: RunConfig) -> tuple[str, Graph]:
    if args.named:
        try:
            g = parse_named(args.named)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_PRECONDITION) from None
        if g.n > cfg.max_n:
            raise CliError(f"graph has {g.n} vertices, limit is {cfg.max_n}", EXIT_PRECONDITION)
        return args.named, g
    try:
        if args.graph6:
            return args.graph6, parse_line(args.graph6, cfg.max_n)
        if args.file:
            for i, (lineno, line) in enumerate(iter_graph_file(args.file), 1):
                if i == args.index:
                    return f"{args.file}:{lineno}", parse_line(line, cfg.max_n)
            raise CliError(f"{args.file} has fewer than {args.index} graphs", EXIT_PARSE)
    except GraphFormatError as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE) from None
    except OSError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    raise CliError("no graph given; use --named, --graph6 or --file", EXIT_PRECONDITION)


def _edge(g: Graph, pair) -> Edge:
    if pair is None:
        raise CliError("--edge u,v is required", EXIT_PRECONDITION)
    try:
        e = Edge(*pair)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    if not g.has_edge(e.u, e.v):
        raise CliError(f"({e.u},{e.v}) is not an edge of the graph", EXIT_PRECONDITION)
    return e


def _spec(pair) -> CircularSpec:
    if pair is None:
        raise CliError("--kd k,d is required", EXIT_PRECONDITION)
    try:
        return CircularSpec(*pair)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None


def _revalidate(g: Graph, certs: list[CycleCert], avoid: Edge | None = None) -> list[str]:
    """Re-check certificates against ``g`` independently of the extractors."""
    problems = []
    for n, cert in enumerate(certs):
        found = validate_cert(g, cert)
        if avoid is not None:
            found += check_cycle(g, cert.vertices, avoid=avoid)
        problems.extend(f"certificate {n}: {p}" for p in found)
    forms = [cert.canonical for cert in certs]
    if len(set(forms)) != len(forms):
        problems.append("duplicate certificates")
    return problems


# -- subcommands ----------------------------------------------------------


def cmd_color(args, cfg: RunConfig) -> dict:
    name, g = load_graph(args, cfg)
    out = {"graph": name, "n": g.n, "m": g.m}
    if args.k is not None:
        phi = find_k_coloring(g, args.k)
        out.update(k=args.k, feasible=phi is not None, coloring=None if phi is None else list(phi.colors))
    if args.chromatic or args.k is None:
        out["chromatic_number"] = chromatic_number(g) if g.n else 0
    return out


def cmd_circ(args, cfg: RunConfig) -> dict:
    name, g = load_graph(args, cfg)
    spec = _spec(args.kd)
    phi = find_kd_coloring(g, spec)
    return {"graph": name, "k": spec.k, "d": spec.d, "s": spec.s, "feasible": phi is not None,
            "coloring": None if phi is None else list(phi.colors)}


def cmd_critical(args, cfg: RunConfig) -> dict:
    name, g = load_graph(args, cfg)
    return {"graph": name, "k": args.k, "chromatic_number": chromatic_number(g) if g.n else 0,
            "critical": is_edge_critical(g, args.k)}


def _oracle_through(g: Graph, e: Edge, r: int, residue: int, budget: int):
    try:
        return residue_profile(g, r, e, budget=budget)[residue]
    except BudgetExhausted:
        return None


def cmd_extract(args, cfg: RunConfig) -> dict:
    name, g = load_graph(args, cfg)
    e = _edge(g, args.edge)
    gm = edge_deleted(g, e)
    out = {"graph": name, "edge": [e.u, e.v], "mode": args.mode}
    if args.mode in ("one-mod-r", "zero-mod-r"):
        if args.k is None:
            raise CliError("--k is required for this mode", EXIT_PRECONDITION)
        k = args.k
        r = args.r if args.r is not None else k
        lo = 2 if args.mode == "one-mod-r" else 3
        if not lo <= r <= k:
            raise CliError(f"need {lo} <= r <= k, got r={r}, k={k}", EXIT_PRECONDITION)
        phi = find_k_coloring(gm, k)
        if phi is None:
            raise CliError(f"G - e is not {k}-colorable", EXIT_PRECONDITION)
        if find_k_coloring(g, k) is not None:
            raise CliError(f"G is {k}-colorable, so the hypothesis fails", EXIT_PRECONDITION)
        out.update(k=k, r=r)
        if args.mode == "one-mod-r":
            certs = extract_one_mod_r_cycles(g, e, phi, r)
            bound = one_mod_r_bound(k, r)
            problems = _revalidate(g, certs)
            oracle = _oracle_through(g, e, r, 1, cfg.budget)
            ok = len(certs) >= bound and not problems and (oracle is None or oracle >= len(certs))
            out.update(bound=bound, count=len(certs), oracle_count=oracle)
        else:
            certs = extract_zero_mod_r_cycles(g, e, phi, r)
            bound = zero_mod_r_bound(r)
            per_subset = counts_by_support(certs)
            problems = _revalidate(g, certs, avoid=e)
            ok = min(per_subset.values()) >= bound and not problems
            out.update(bound_per_subset=bound, count=len(certs), min_per_subset=min(per_subset.values()),
                       subsets=len(per_subset))
    else:
        spec = _spec(args.kd)
        phi = find_kd_coloring(gm, spec)
        if phi is None:
            raise CliError(f"G - e is not ({spec.k},{spec.d})-colorable", EXIT_PRECONDITION)
        if find_kd_coloring(g, spec) is not None:
            raise CliError(f"G is ({spec.k},{spec.d})-colorable, so the hypothesis fails", EXIT_PRECONDITION)
        out.update(k=spec.k, d=spec.d, s=spec.s)
        if args.mode == "circular":
            certs = [extract_circular_cycle(g, e, phi)]
        else:
            try:
                certs = list(extract_circular_bonus(g, e, phi))
            except PreconditionError as exc:
                raise CliError(f"precondition: {exc}", EXIT_PRECONDITION) from None
        problems = _revalidate(g, certs)
        if args.mode == "circular-bonus":
            problems += _revalidate(g, certs[2:], avoid=e)
        ok = not problems
    out["certificates"] = [c.to_dict() for c in certs]
    out["problems"] = problems
    out["verdict"] = "PASS" if ok else "FAIL"
    return out


def cmd_oracle(args, cfg: RunConfig) -> dict:
    name, g = load_graph(args, cfg)
    e = _edge(g, args.edge) if args.edge else None
    try:
        cycles = list(enumerate_cycles(g, e, args.max_len, cfg.budget))
    except BudgetExhausted as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    out = {"graph": name, "n": g.n, "m": g.m, "through": None if e is None else [e.u, e.v],
           "max_len": args.max_len, "lengths": {str(k): v for k, v in length_histogram(cycles).items()}}
    if args.r is not None:
        counts = {res: 0 for res in range(args.r)}
        for c in cycles:
            counts[len(c) % args.r] += 1
        out["residues"] = {"modulus": args.r, "counts": {str(k): v for k, v in counts.items()}}
    return out


def cmd_orient(args, cfg: RunConfig) -> dict:
    name, g = load_graph(args, cfg)
    try:
        res = random_orientation_search(g, args.k, args.trials, cfg.seed, stop_at_first=False, budget=cfg.budget)
    except BudgetExhausted as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    first = res.first_pass
    return {"graph": name, "k": args.k, "seed": cfg.seed, "trials": [t.to_dict(args.k) for t in res.trials],
            "passes": sum(t.passed for t in res.trials), "first_pass": None if first is None else first.index}


# -- census ---------------------------------------------------------------


def census_record(lineno: int, line: str, ks: list[int], cfg: RunConfig) -> dict:
    """Analyse one corpus line; never raises for bad input."""
    rec: dict = {"line": lineno, "version": __version__, "seed": cfg.seed}
    try:
        g = parse_line(line, cfg.max_n)
    except (GraphFormatError, ValueError) as exc:
        rec["error"] = f"parse error: {exc}"
        return rec
    rec.update(graph6=write_graph6(g), n=g.n, m=g.m, chromatic_number=chromatic_number(g) if g.n else 0)
    rec["critical"] = {str(k): is_edge_critical(g, k) for k in ks}
    rec["violations"] = []
    rec["budget_exhausted"] = False
    try:
        hists = edge_length_histograms(g, cfg.budget)
        whole = length_histogram(enumerate_cycles(g, budget=cfg.budget))
    except BudgetExhausted:
        rec["budget_exhausted"] = True
        hists = whole = None
    rec["residues"] = None if whole is None else {str(k): profile_from_lengths(whole, k).to_dict()["counts"] for k in ks if k >= 2}
    rec["two_mod_k"] = {}
    rec["one_mod_r"] = {}
    rec["zero_mod_r"] = {}
    for k in ks:
        if not rec["critical"][str(k)] or k < 2:
            continue
        complete = g.m == g.n * (g.n - 1) // 2
        if whole is not None:
            has2 = profile_from_lengths(whole, k)[2] > 0
            rec["two_mod_k"][str(k)] = {"non_complete": not complete, "has_cycle_2_mod_k": has2}
        rows = []
        zero_rows = []
        for e in g.edges():
            phi = find_k_coloring(edge_deleted(g, e), k)
            for r in range(2, k + 1):
                bound = one_mod_r_bound(k, r)
                row = {"edge": [e.u, e.v], "r": r, "bound": bound}
                try:
                    certs = extract_one_mod_r_cycles(g, e, phi, r)
                except TheoremViolation as exc:
                    rec["violations"].append(f"one-mod-r edge {e} r={r}: {exc}")
                    continue
                row["extracted"] = len(certs)
                oracle = None if hists is None else profile_from_lengths(hists[e], r)[1]
                row["oracle"] = oracle
                if len(certs) < bound:
                    rec["violations"].append(f"edge {e} r={r}: {len(certs)} certificates < bound {bound}")
                if oracle is not None and oracle < len(certs):
                    rec["violations"].append(f"edge {e} r={r}: oracle {oracle} < extracted {len(certs)}")
                for p in _revalidate(g, certs):
                    rec["violations"].append(f"edge {e} r={r}: {p}")
                rows.append(row)
                if r >= 3:
                    try:
                        zcerts = extract_zero_mod_r_cycles(g, e, phi, r)
                    except TheoremViolation as exc:
                        rec["violations"].append(f"zero-mod-r edge {e} r={r}: {exc}")
                        continue
                    least = min(counts_by_support(zcerts).values())
                    if least < zero_mod_r_bound(r):
                        rec["violations"].append(f"edge {e} r={r}: {least} zero-mod-r cycles < {zero_mod_r_bound(r)}")
                    for p in _revalidate(g, zcerts, avoid=e):
                        rec["violations"].append(f"zero-mod-r edge {e} r={r}: {p}")
                    zero_rows.append({"edge": [e.u, e.v], "r": r, "count": len(zcerts), "min_per_subset": least})
        rec["one_mod_r"][str(k)] = rows
        rec["zero_mod_r"][str(k)] = zero_rows
        sharp = {}
        for r in range(2, k + 1):
            oracles = [row["oracle"] for row in rows if row["r"] == r and row.get("oracle") is not None]
            if oracles:
                sharp[str(r)] = {"min_oracle": min(oracles), "bound": one_mod_r_bound(k, r),
                                 "sharp_somewhere": min(oracles) == one_mod_r_bound(k, r)}
        rec.setdefault("sharpness", {})[str(k)] = {"non_complete": not complete, "per_r": sharp}
    return rec


def _census_worker(job):
    lineno, line, ks, cfg = job
    return census_record(lineno, line, ks, cfg)


CSV_FIELDS = ["line", "graph6", "n", "m", "chromatic_number", "critical", "two_mod_k", "violations", "budget_exhausted", "error"]


def run_census(path: str | Path, ks: list[int], cfg: RunConfig, out) -> dict:
    try:
        jobs = [(lineno, line, ks, cfg) for lineno, line in iter_graph_file(path)]
    except OSError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            records = list(pool.map(_census_worker, jobs, chunksize=4))
    else:
        records = [_census_worker(j) for j in jobs]

    writer = None
    if cfg.fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
    for rec in records:
        if writer is not None:
            flat = dict(rec)
            for key in ("critical", "two_mod_k"):
                if key in flat:
                    flat[key] = json.dumps(flat[key], sort_keys=True)
            flat["violations"] = len(rec.get("violations", []))
            writer.writerow(flat)
        else:
            out.write(json.dumps(rec) + "\n")
    summary = {
        "summary": True,
        "version": __version__,
        "seed": cfg.seed,
        "graphs": len(records),
        "parsed": sum(1 for r in records if "error" not in r),
        "parse_errors": [{"line": r["line"], "error": r["error"]} for r in records if "error" in r],
        "critical": {str(k): sum(1 for r in records if r.get("critical", {}).get(str(k))) for k in ks},
        "violations": [f"line {r['line']}: {v}" for r in records for v in r.get("violations", [])],
        "budget_exhausted": [r["line"] for r in records if r.get("budget_exhausted")],
    }
    if writer is None:
        out.write(json.dumps(summary) + "\n")
    return summary


def cmd_census(args, cfg: RunConfig) -> dict:
    out = sys.stdout if args.output is None else open(args.output, "w", encoding="utf-8")
    try:
        summary = run_census(args.corpus, args.k, cfg, out)
    finally:
        if out is not sys.stdout:
            out.close()
    if cfg.fmt == "csv":
        sys.stderr.write(json.dumps(summary) + "\n")
    if summary["violations"]:
        raise CliError(f"{len(summary['violations'])} theorem violations", EXIT_VIOLATION)
    return None


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--budget", type=int, default=None,
                        help="cycle enumeration budget (default: $CHROMA_CYCLES_BUDGET or 10^7)")
    common.add_argument("--max-n", type=int, default=MAX_N, help="largest accepted vertex count")
    common.add_argument("-v", "--verbose", action="store_true")

    source = argparse.ArgumentParser(add_help=False)
    src = source.add_mutually_exclusive_group()
    src.add_argument("--named", help="named graph, e.g. complete:5, circular-clique:7:3, toft")
    src.add_argument("--graph6", help="a graph6 or sparse6 string")
    src.add_argument("--file", help="graph6/sparse6 file")
    source.add_argument("--index", type=int, default=1, help="which graph of --file to use (1-based)")

    parser = argparse.ArgumentParser(prog="chroma-cycles", description="Certified cycles in color-critical graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", parents=[common, source], help="proper k-coloring / chromatic number")
    p.add_argument("--k", type=int)
    p.add_argument("--chromatic", action="store_true")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("circ", parents=[common, source], help="(k,d)-coloring")
    p.add_argument("--kd", type=_pair, required=True)
    p.set_defaults(func=cmd_circ)

    p = sub.add_parser("critical", parents=[common, source], help="test (k+1)-edge-criticality")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("extract", parents=[common, source], help="extract certified cycles")
    p.add_argument("--edge", type=_pair, required=True)
    p.add_argument("--mode", choices=["one-mod-r", "zero-mod-r", "circular", "circular-bonus"], required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--kd", type=_pair)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("oracle", parents=[common, source], help="brute-force cycle statistics")
    p.add_argument("--r", type=int)
    p.add_argument("--edge", type=_pair)
    p.add_argument("--max-len", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("census", parents=[common], help="analyse a graph6 corpus")
    p.add_argument("corpus")
    p.add_argument("--k", type=_int_list, required=True, help="comma-separated k values")
    p.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("orient", parents=[common, source], help="random orientations vs the Minty condition")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=cmd_orient)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    budget = args.budget if args.budget is not None else default_budget()
    cfg = RunConfig(max_n=args.max_n, budget=budget, seed=args.seed,
                    fmt=getattr(args, "format", "jsonl"), workers=getattr(args, "workers", 1))
    if cfg.max_n > MAX_N:
        parser.error(f"--max-n cannot exceed {MAX_N}")
    try:
        result = args.func(args, cfg)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except TheoremViolation as exc:
        sys.stderr.write(f"theorem violation: {exc}\n")
        return EXIT_VIOLATION
    if result is not None:
        sys.stdout.write(json.dumps(result) + "\n")
        if result.get("verdict") == "FAIL":
            return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
