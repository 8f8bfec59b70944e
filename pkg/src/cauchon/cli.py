"""Command-line interface.

    cauchon count      --n N
    cauchon enumerate  --n N [--rank T]
    cauchon restore    --n N --diagram 00/00
    cauchon localized  --n N --r 1,3
    cauchon verify     --n N --suite all

Exit codes: 0 success, 1 a verification or internal invariant failed,
2 bad usage or input.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

from . import counting
from .diagrams import (
    Diagram,
    NotADiagram,
    constructed_family,
    enumerate_Gamma,
    enumerate_W,
    parse_diagram,
    require_diagram,
    surviving_diagrams,
    to_json as diagram_json,
    to_string,
)
from .qminors import ClassificationRecord, GapViolation, classify_all
from .qtorus import element_to_json, format_element
from .restoration import PivotNotMonomial, restore
from .verify import LARGE_LIMITS, SUITE_LIMITS, SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("ascii", "json", "csv")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int
    fmt: str = "ascii"
    jobs: int = 1
    allow_large: bool = False
    output: str | None = None


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        n=args.n,
        fmt=args.format,
        jobs=max(1, args.jobs),
        allow_large=args.allow_large,
        output=args.output,
    )


def _check_n(n: int, limit: int, large_limit: int | None, allow_large: bool, what: str) -> None:
    if n < 1:
        raise UsageError("--n must be at least 1")
    if n <= limit:
        return
    if large_limit is not None and n <= large_limit:
        if allow_large:
            return
        raise UsageError(f"{what} with n={n} needs --allow-large")
    raise UsageError(f"{what} supports n <= {large_limit or limit}, got {n}")


def _csv_rows(out: TextIO, rows: Iterable[Iterable]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerows(rows)


def _dump_json(out: TextIO, data) -> None:
    json.dump(data, out, indent=2)
    out.write("\n")


# -- count ------------------------------------------------------------------------


def cmd_count(cfg: RunConfig, out: TextIO) -> int:
    _check_n(cfg.n, 6, 10, cfg.allow_large, "count")
    n = cfg.n
    ranks = [(t, counting.rank_count(n, t)) for t in range(n + 1)]
    totals = counting.total_counts(n)
    total = sum(c for _, c in ranks)
    agree = len(set(totals.values()) | {total}) == 1
    if cfg.fmt == "json":
        _dump_json(
            out,
            {
                "n": n,
                "ranks": [{"rank": t, "count": c} for t, c in ranks],
                "total": total,
                "totals": totals,
                "agree": agree,
            },
        )
    elif cfg.fmt == "csv":
        rows = [("section", "key", "value")]
        rows += [("rank", t, c) for t, c in ranks]
        rows += [("total", "ranks", total)] + [("total", k, v) for k, v in totals.items()]
        rows.append(("total", "agree", str(agree).lower()))
        _csv_rows(out, rows)
    else:
        width = max(len(str(total)), 5)
        out.write(f"n = {n}\n")
        out.write(f"{'rank':>5}  {'count':>{width}}\n")
        for t, c in ranks:
            out.write(f"{t:>5}  {c:>{width}}\n")
        out.write(f"{'total':>5}  {total:>{width}}\n")
        for k, v in totals.items():
            out.write(f"{k}: {v}\n")
        out.write(f"agree: {'yes' if agree else 'NO'}\n")
    return EXIT_OK if agree else EXIT_FAIL


# -- enumerate --------------------------------------------------------------------


def _load_cache(path: Path, n: int) -> dict[Diagram, ClassificationRecord]:
    known = {}
    if path.exists():
        with path.open() as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = ClassificationRecord.from_json(json.loads(line))
                except (ValueError, KeyError, TypeError):
                    continue  # torn last line from an interrupted run
                if rec.diagram.n == n:
                    known[rec.diagram] = rec
    return known


def _classify(cfg: RunConfig, cache: str | None, progress: bool) -> list[ClassificationRecord]:
    known = _load_cache(Path(cache), cfg.n) if cache else {}
    fh = open(cache, "a") if cache else None
    if fh and fh.tell() and not Path(cache).read_bytes().endswith(b"\n"):
        fh.write("\n")  # isolate a torn last line so new records stay parseable
    done = [len(known)]
    total = counting.poly_bernoulli_nn(cfg.n)

    def on_record(rec):
        done[0] += 1
        if fh:
            fh.write(rec.dumps() + "\n")
            fh.flush()
        if progress and (done[0] % 500 == 0 or done[0] == total):
            print(f"classified {done[0]}/{total}", file=sys.stderr)

    try:
        return classify_all(cfg.n, jobs=cfg.jobs, known=known, on_record=on_record)
    finally:
        if fh:
            fh.close()


def cmd_enumerate(cfg: RunConfig, out: TextIO, rank: int | None, classify: bool, cache: str | None) -> int:
    annotate = rank is not None or classify
    if annotate:
        _check_n(cfg.n, 3, 4, cfg.allow_large, "classification")
        if rank is not None and not 0 <= rank <= cfg.n:
            raise UsageError(f"--rank must lie in [0, {cfg.n}]")
        records = _classify(cfg, cache, progress=cfg.allow_large)
        if rank is not None:
            records = [r for r in records if r.rank == rank]
        if cfg.fmt == "json":
            _dump_json(out, [r.to_json() for r in records])
        elif cfg.fmt == "csv":
            rows = [("diagram", "rank", "witness_rows", "witness_cols", "gap_free")]
            for r in records:
                wr = " ".join(map(str, r.witness.rows)) if r.witness else ""
                wc = " ".join(map(str, r.witness.cols)) if r.witness else ""
                rows.append((to_string(r.diagram), r.rank, wr, wc, str(r.gap_free).lower()))
            _csv_rows(out, rows)
        else:
            for r in records:
                wit = f" rows={list(r.witness.rows)} cols={list(r.witness.cols)}" if r.witness else ""
                out.write(f"{to_string(r.diagram)} rank={r.rank}{wit}\n")
        return EXIT_OK

    _check_n(cfg.n, 6, None, cfg.allow_large, "enumerate")
    if cfg.fmt == "json":
        out.write("[")
        for k, w in enumerate(enumerate_W(cfg.n)):
            out.write(("," if k else "") + "\n  " + json.dumps(diagram_json(w), separators=(",", ":")))
        out.write("\n]\n")
    elif cfg.fmt == "csv":
        out.write("diagram\n")
        for w in enumerate_W(cfg.n):
            out.write(to_string(w) + "\n")
    else:
        for w in enumerate_W(cfg.n):
            out.write(to_string(w) + "\n")
    return EXIT_OK


# -- restore ----------------------------------------------------------------------


def cmd_restore(cfg: RunConfig, out: TextIO, diagram: str) -> int:
    _check_n(cfg.n, 4, None, cfg.allow_large, "restore")
    try:
        w = parse_diagram(diagram, cfg.n)
        require_diagram(w)
    except NotADiagram as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    M = restore(cfg.n, w)
    n = cfg.n
    if cfg.fmt == "json":
        _dump_json(
            out,
            {
                "n": n,
                "diagram": to_string(w),
                "entries": [
                    [
                        {"position": [i, a], "value": format_element(M[i, a]), "terms": element_to_json(M[i, a])}
                        for a in range(1, n + 1)
                    ]
                    for i in range(1, n + 1)
                ],
            },
        )
    elif cfg.fmt == "csv":
        _csv_rows(out, [("i", "a", "value")] + [(i, a, format_element(M[i, a])) for i in range(1, n + 1) for a in range(1, n + 1)])
    else:
        out.write(f"M_w for w = {to_string(w)}\n")
        for i in range(1, n + 1):
            for a in range(1, n + 1):
                out.write(f"y[{i},{a}] = {format_element(M[i, a])}\n")
    return EXIT_OK


# -- localized --------------------------------------------------------------------


def _parse_r(text: str, n: int) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        r = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--r must be a comma list of integers, got {text!r}") from None
    if any(not 1 <= x <= n for x in r) or any(x >= y for x, y in zip(r, r[1:])):
        raise UsageError(f"--r must be strictly increasing in [1, {n}], got {text!r}")
    return r


def cmd_localized(cfg: RunConfig, out: TextIO, r_text: str) -> int:
    _check_n(cfg.n, 3, 4, cfg.allow_large, "localized")
    n = cfg.n
    r = _parse_r(r_text, n)
    gammas = list(enumerate_Gamma(n, r))
    family = constructed_family(n, r)
    surviving = sorted(surviving_diagrams(n, r))
    size = counting.gamma_size(n, r)
    match = set(family) == set(surviving) and len(family) == size
    if cfg.fmt == "json":
        _dump_json(
            out,
            {
                "n": n,
                "r": list(r),
                "gamma_size": size,
                "gammas": [list(g) for g in gammas],
                "constructed": [to_string(w) for w in family],
                "surviving": [to_string(w) for w in surviving],
                "match": match,
            },
        )
    elif cfg.fmt == "csv":
        rows = [("kind", "gamma", "diagram")]
        rows += [("constructed", " ".join(map(str, g)), to_string(w)) for g, w in zip(gammas, family)]
        rows += [("surviving", "", to_string(w)) for w in surviving]
        rows.append(("match", "", str(match).lower()))
        _csv_rows(out, rows)
    else:
        out.write(f"n = {n}, r = ({','.join(map(str, r))})\n")
        out.write(f"|Gamma_r| = {size}\n")
        for g, w in zip(gammas, family):
            out.write(f"gamma = ({','.join(map(str, g))})  w = {to_string(w)}\n")
        out.write(f"constructed: {len(family)}, surviving: {len(surviving)}\n")
        for w in surviving:
            out.write(f"surviving {to_string(w)}\n")
        out.write(f"match: {'yes' if match else 'NO'}\n")
    return EXIT_OK if match else EXIT_FAIL


# -- verify -----------------------------------------------------------------------


def cmd_verify(cfg: RunConfig, out: TextIO, suite: str, timings: bool) -> int:
    names = list(SUITES) if suite == "all" else [s.strip() for s in suite.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown or not names:
        raise UsageError(f"unknown suite(s) {unknown}; choose from all, {', '.join(SUITES)}")
    for s in names:
        _check_n(cfg.n, SUITE_LIMITS[s], LARGE_LIMITS.get(s), cfg.allow_large, f"suite {s}")
    checks = run_suites(names, cfg.n, jobs=cfg.jobs)
    passed = all(c.passed for c in checks)
    if cfg.fmt == "json":
        items = [c.to_json() for c in checks]
        if not timings:
            for it in items:
                it.pop("seconds")
        _dump_json(out, {"n": cfg.n, "passed": passed, "checks": items})
    elif cfg.fmt == "csv":
        head = ("suite", "check", "passed", "detail") + (("seconds",) if timings else ())
        rows = [head]
        for c in checks:
            row = (c.suite, c.name, str(c.passed).lower(), c.detail)
            rows.append(row + ((f"{c.seconds:.4f}",) if timings else ()))
        _csv_rows(out, rows)
    else:
        for c in checks:
            t = f" ({c.seconds:.2f}s)" if timings else ""
            out.write(f"[{'PASS' if c.passed else 'FAIL'}] {c.suite}/{c.name}: {c.detail}{t}\n")
        out.write(f"{'all checks passed' if passed else 'FAILED'}\n")
    return EXIT_OK if passed else EXIT_FAIL


# -- entry point ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="grid size")
    common.add_argument("--format", choices=FORMATS, default="ascii")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--allow-large", action="store_true", help="permit the slow large-n paths")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    parser = _Parser(prog="cauchon", description="H-primes of quantum matrices via Cauchon diagrams")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("count", parents=[common], help="closed-form counts per rank")

    p = sub.add_parser("enumerate", parents=[common], help="list Cauchon diagrams")
    p.add_argument("--rank", type=int, help="keep only diagrams of this rank")
    p.add_argument("--classify", action="store_true", help="annotate every diagram with its rank")
    p.add_argument("--cache", help="JSON-lines file of classification records (resumable)")

    p = sub.add_parser("restore", parents=[common], help="print the restored matrix M_w")
    p.add_argument("--diagram", required=True, help="rows joined by '/', e.g. 011/011/001")

    p = sub.add_parser("localized", parents=[common], help="Gamma_r family versus surviving diagrams")
    p.add_argument("--r", required=True, help="comma list r_1,...,r_t; empty for t=0")

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", default="all", help="'all' or a comma list of " + ", ".join(SUITES))
    p.add_argument("--no-timings", action="store_true", help="omit per-check timings")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    out = open(cfg.output, "w") if cfg.output else sys.stdout
    try:
        if cfg.command == "count":
            code = cmd_count(cfg, out)
        elif cfg.command == "enumerate":
            code = cmd_enumerate(cfg, out, args.rank, args.classify, args.cache)
        elif cfg.command == "restore":
            code = cmd_restore(cfg, out, args.diagram)
        elif cfg.command == "localized":
            code = cmd_localized(cfg, out, args.r)
        else:
            code = cmd_verify(cfg, out, args.suite, timings=not args.no_timings)
    except UsageError as exc:
        print(f"cauchon {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PivotNotMonomial, GapViolation) as exc:
        print(f"cauchon {cfg.command}: invariant failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BrokenPipeError:
        return EXIT_OK
    finally:
        if cfg.output:
            out.close()
        else:
            with contextlib.suppress(BrokenPipeError):
                out.flush()
    return code

if __name__ == "__main__":
    sys.exit(main())
