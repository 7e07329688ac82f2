"""Command-line entry point: ``critlab {gen,check,verify,report}``.

Exit codes: 0 pass, 1 verification failure, 2 usage or I/O error,
3 incomplete (a budget stopped the run).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Iterator, TextIO

from .catalog import NAMES, catalog
from .cliques import clique_packing, find_k4_minus_e, find_kites
from .colorings import is_k_critical
from .discharging import audit, run_discharging
from .enumerate import CapabilityError
from .graph import Graph
from .graph6 import Graph6Error, from_graph6, read_graph6_lines, to_graph6
from .ore import family_name, ky_potential
from .potential import classify_critical, potential
from .errors import VerificationFailure

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3
CHECKS = ("critical", "potential", "packing", "kites", "discharge")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    family: str | None
    k: int
    max_n: int | None
    out: Path | None
    jobs: int
    fmt: str


def _config(args: argparse.Namespace) -> RunConfig:
    inputs = tuple(getattr(args, "inputs", None) or ())
    corpus = getattr(args, "corpus", None)
    if corpus:
        inputs += (corpus,)
    for p in inputs:
        if p != "-" and not Path(p).is_file():
            raise UsageError(f"input file not found: {p}")
    out = Path(args.out) if getattr(args, "out", None) else None
    if out is not None:
        parent = out if args.command in ("gen", "report") else out.parent
        probe = parent
        while not probe.exists():
            probe = probe.parent
        if not os.access(probe, os.W_OK):
            raise UsageError(f"output location not writable: {out}")
    jobs = getattr(args, "jobs", None) or os.cpu_count() or 1
    if jobs < 1:
        raise UsageError("--jobs must be positive")
    return RunConfig(args.command, inputs, getattr(args, "family", None), getattr(args, "k", 4),
                     getattr(args, "max_n", None), out, jobs, getattr(args, "format", "json"))


# graph input --------------------------------------------------------------


def _read_inputs(paths: Iterable[str], named: Iterable[str], err: TextIO) -> tuple[list[tuple[str, Graph]], int]:
    """Collect graphs from named catalog entries and graph6 sources; returns (graphs, parse errors)."""
    out: list[tuple[str, Graph]] = [(name, catalog(name)) for name in named]
    bad = 0
    for p in paths:
        fh = sys.stdin if p == "-" else open(p, encoding="ascii", errors="replace")
        label = "<stdin>" if p == "-" else p
        try:
            for lineno, text in read_graph6_lines(fh):
                try:
                    out.append((f"{label}:{lineno}", from_graph6(text)))
                except Graph6Error as exc:
                    bad += 1
                    print(f"{label}: line {lineno}: {exc}", file=err)
        finally:
            if fh is not sys.stdin:
                fh.close()
    return out, bad


def _emit(rows: Iterable[dict[str, Any]], fmt: str, stream: TextIO) -> None:
    header: list[str] | None = None
    for row in rows:
        if fmt == "json":
            stream.write(json.dumps(row, sort_keys=True) + "\n")
            continue
        if header is None:
            header = list(row)
            stream.write("\t".join(header) + "\n")
        cells = []
        for key in header:
            v = row.get(key, "")
            cells.append(v if isinstance(v, str) else json.dumps(v))
        stream.write("\t".join(cells) + "\n")
        stream.flush()


# subcommands ----------------------------------------------------------------


def cmd_gen(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    from .verify import family_index

    if cfg.family is None or cfg.max_n is None or cfg.out is None:
        raise UsageError("gen needs --family, --max-n and --out")
    try:
        name = family_name(cfg.family, cfg.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        index = family_index(cfg.family, cfg.max_n, cfg.k)
    except CapabilityError as exc:
        partial = getattr(exc, "partial", None)
        if partial is not None:
            partial.save(cfg.out)
        print(f"gen: {exc}", file=err)
        return EXIT_INCOMPLETE
    index.save(cfg.out)
    _emit([{"family": name, "max_n": cfg.max_n, "members": len(index), "counts": index.counts(),
            "complete": index.complete, "out": str(cfg.out)}], "json", out)
    return EXIT_PASS


def _check_row(what: str, label: str, g: Graph, k: int) -> dict[str, Any]:
    row: dict[str, Any] = {"source": label, "graph6": to_graph6(g), "v": g.n, "e": g.e}
    if what == "critical":
        verdict = is_k_critical(g, k)
        row.update(k=k, critical=verdict.is_critical)
        if verdict.coloring is not None:
            row["colouring"] = list(verdict.coloring.assignment)
        if verdict.edge is not None:
            row["non_critical_edge"] = list(verdict.edge)
        if verdict.isolated is not None:
            row["isolated"] = verdict.isolated
    elif what == "potential":
        t3 = clique_packing(g, 3).size
        row.update(T3=t3, p=potential(g), KY=ky_potential(g))
        if is_k_critical(g, 4).is_critical:
            row["class"] = classify_critical(g, check=False).cls
    elif what == "packing":
        packing = clique_packing(g, 3)
        row.update(T3=packing.size, triangles=[list(c) for c in packing.cliques])
    elif what == "kites":
        row.update(
            kites=[{"vertices": list(kt.vertices), "spar": list(kt.spar)} for kt in find_kites(g)],
            k4_minus_e=[list(s) for s in find_k4_minus_e(g)],
        )
    elif what == "discharge":
        ledger = run_discharging(g)
        row.update(ledger=ledger.to_json(), audit=audit(g, ledger).to_json())
    return row


def cmd_check(cfg: RunConfig, what: str, named: list[str], out: TextIO, err: TextIO) -> int:
    paths = cfg.inputs or (() if named else ("-",))
    graphs, bad = _read_inputs(paths, named, err)
    status = EXIT_PASS

    def rows() -> Iterator[dict[str, Any]]:
        nonlocal status
        for label, g in graphs:
            try:
                yield _check_row(what, label, g, cfg.k)
            except (ValueError, VerificationFailure) as exc:
                print(f"{label}: {exc}", file=err)
                status = EXIT_FAIL if isinstance(exc, VerificationFailure) else EXIT_USAGE
                yield {"source": label, "graph6": to_graph6(g), "error": str(exc)}

    _emit(rows(), cfg.fmt, out)
    if bad and status == EXIT_PASS:
        status = EXIT_USAGE
    return status


def _corpus(cfg: RunConfig, predicates: tuple[str, ...], default) -> Any:
    from .verify import Corpus

    if cfg.inputs:
        src = cfg.inputs[-1]
        if src == "-":
            return Corpus.from_lines("<stdin>", sys.stdin, predicates)
        return Corpus.from_file(src, predicates)
    return default()


def cmd_verify(cfg: RunConfig, ids: list[str], mutation: str | None, budget: int | None, out: TextIO, err: TextIO) -> int:
    from . import verify as V

    limits = V.Limits.capped(cfg.max_n)
    wanted: list[str] = []
    for lemma_id in ids or ["all"]:
        if lemma_id == "all":
            wanted.extend(V.REGISTRY)
        elif lemma_id in V.REGISTRY or lemma_id in ("maintheorem", "density"):
            wanted.append(lemma_id)
        else:
            raise UsageError(f"unknown lemma id {lemma_id!r}")
    if mutation is not None and mutation not in V.MUTANTS:
        raise UsageError(f"unknown mutation {mutation!r}; known: {', '.join(V.MUTANTS)}")
    failed = incomplete = False
    for lemma_id in wanted:
        if lemma_id == "maintheorem":
            corpus = _corpus(cfg, ("4-critical",), lambda: V.Corpus.admit(
                f"4-critical<= {limits.crit_max}", (from_graph6(s) for s in V.critical_keys(limits.crit_max))))
            verdict = V.verify_main_theorem(corpus)
        elif lemma_id == "density":
            n = min(cfg.max_n or 10, 10)
            corpus = _corpus(cfg, ("4-critical", "triangle-free"), lambda: V.Corpus.admit(
                f"triangle-free 4-critical<= {n}", V.triangle_free_critical(n)))
            verdict = V.verify_density(corpus)
        else:
            m = mutation if mutation is not None and V.MUTANTS[mutation][0] == lemma_id else None
            verdict = V.verify_lemma(lemma_id, limits, mutation=m, jobs=cfg.jobs, budget=budget)
        out.write(verdict.to_line() + "\n")
        out.flush()
        failed |= not verdict.passed
        incomplete |= not verdict.complete
    if failed:
        return EXIT_FAIL
    return EXIT_INCOMPLETE if incomplete else EXIT_PASS


def cmd_report(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    from .report import build_report

    if cfg.out is None:
        raise UsageError("report needs --out")
    written = build_report(cfg.out, max_n=cfg.max_n, fmt=cfg.fmt)
    _emit([{"out": str(cfg.out), "files": [str(p) for p in written]}], "json", out)
    return EXIT_PASS


# argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="critlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a family index (members.g6 + provenance.json)")
    gen.add_argument("--family", required=True, help="4ore, kore (with --k) or classb")
    gen.add_argument("--k", type=int, default=4)
    gen.add_argument("--max-n", type=int, required=True)
    gen.add_argument("--out", required=True)

    check = sub.add_parser("check", help="analyse graphs given as graph6 (files or standard input)")
    check.add_argument("what", choices=CHECKS)
    check.add_argument("inputs", nargs="*", help="graph6 files; '-' or nothing reads standard input")
    check.add_argument("--named", action="append", default=[], choices=NAMES, help="add a named graph")
    check.add_argument("--k", type=int, default=4)
    check.add_argument("--format", choices=("json", "tsv"), default="json")

    ver = sub.add_parser("verify", help="run lemma checks and stream JSON verdicts")
    ver.add_argument("ids", nargs="*", help="lemma ids, 'all', 'maintheorem' or 'density'")
    ver.add_argument("--max-n", type=int)
    ver.add_argument("--corpus", help="graph6 corpus for maintheorem/density ('-' for standard input)")
    ver.add_argument("--jobs", type=int)
    ver.add_argument("--budget", type=int, help="cap on subjects per lemma")
    ver.add_argument("--mutation", help="run a deliberately falsified statement")

    rep = sub.add_parser("report", help="write summary tables and figures")
    rep.add_argument("--out", required=True)
    rep.add_argument("--max-n", type=int)
    rep.add_argument("--format", choices=("json", "tsv"), default="tsv")
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        cfg = _config(args)
        if args.command == "gen":
            return cmd_gen(cfg, out, err)
        if args.command == "check":
            return cmd_check(cfg, args.what, args.named, out, err)
        if args.command == "verify":
            return cmd_verify(cfg, args.ids, args.mutation, args.budget, out, err)
        return cmd_report(cfg, out, err)
    except UsageError as exc:
        print(f"critlab: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"critlab: {exc}", file=err)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
