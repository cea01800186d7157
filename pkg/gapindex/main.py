"""
gapindex command-line interface

Subcommands: build, query, oracle, bench, sdj.
Exit codes: 0 success, 2 usage error, 3 data error.
"""
import argparse
import asyncio
import json
import logging
import os
import sys
import time
from itertools import combinations
from pathlib import Path
from typing import AsyncGenerator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from benchmark import CSV_HEADER, csv_lines, run_bench
from config import Settings, configure_logging, get_settings
from errors import GapIndexError, ScriptError
from indexes import build_index, format_answer
from models import BenchRequest, QueryLine
from oracle import oracle_query
from sdj_reduction import DisjointnessIndex, parse_set_system, sets_disjoint
from serialization import load_index, save_index
from workload import random_text, sample_queries, sample_tight_exists

logger = logging.getLogger(__name__)

KINDS = ["count", "report", "zero-beta", "baseline", "quadratic"]
MODES = ["exists", "count", "report"]


def parse_script(data: bytes) -> List[QueryLine]:
    """Query script: one `mode<TAB>p1<TAB>p2<TAB>alpha<TAB>beta` per line; blank lines skipped."""
    lines = []
    for line_no, raw in enumerate(data.split(b"\n"), start=1):
        if raw.endswith(b"\r"):
            raw = raw[:-1]
        if not raw:
            continue
        fields = raw.split(b"\t")
        if len(fields) != 5:
            raise ScriptError(f"expected 5 tab-separated fields, got {len(fields)}", line_no)
        mode, p1, p2, alpha, beta = fields
        if not (alpha.isdigit() and beta.isdigit()):
            raise ScriptError("alpha and beta must be non-negative decimals", line_no)
        try:
            lines.append(QueryLine(
                mode=mode.decode("ascii", errors="replace"), p1=p1, p2=p2, alpha=int(alpha), beta=int(beta)
            ))
        except ValidationError as e:
            raise ScriptError(f"invalid query: {e.errors()[0]['msg']}", line_no) from e
    return lines


def parse_pair(value: str) -> Tuple[int, int]:
    """A `i,j` pair of 1-based set ids."""
    try:
        i, j = (int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a pair like 1,2, got {value!r}")
    return i, j


def _script_lines(args: argparse.Namespace, parser: argparse.ArgumentParser) -> List[QueryLine]:
    if args.script:
        return parse_script(Path(args.script).read_bytes())
    if None in (args.mode, args.p1, args.p2, args.beta):
        parser.error("either --script or all of --mode, --p1, --p2, --beta is required")
    try:
        return [QueryLine(
            mode=args.mode, p1=os.fsencode(args.p1), p2=os.fsencode(args.p2), alpha=args.alpha, beta=args.beta
        )]
    except ValidationError as e:
        parser.error(f"invalid query: {e.errors()[0]['msg']}")


def cmd_build(args: argparse.Namespace, settings: Settings) -> int:
    text = Path(args.text).read_bytes()
    kind = args.kind or settings.default_kind
    start = time.perf_counter()
    index = build_index(kind, text, tau=args.tau)
    build_ms = (time.perf_counter() - start) * 1000
    size = save_index(index, args.out)
    stats = index.stats()
    for key, value in stats.items():
        print(f"{key}={value}")
    print(f"build_ms={build_ms:.1f}")
    print(f"file_bytes={size}")
    return 0


def cmd_query(args: argparse.Namespace, settings: Settings) -> int:
    lines = _script_lines(args, args.parser)
    index = load_index(args.index)
    index.reset_calls()
    for line in lines:
        print(index.answer(line))
    if args.stats:
        print(f"# ors_calls={index.ors_calls()}")
    return 0


def cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    lines = _script_lines(args, args.parser)
    text = Path(args.text).read_bytes()
    for line in lines:
        result = oracle_query(text, line.p1, line.p2, line.alpha, line.beta)
        print(format_answer(line.mode, result))
    return 0


def _bench_request(args: argparse.Namespace, settings: Settings) -> BenchRequest:
    rng = np.random.default_rng(args.seed)
    texts = {}
    for path in args.text or []:
        texts[path] = Path(path).read_bytes()
    for n in args.random_sizes or []:
        texts[f"random-{n}"] = random_text(n, args.sigma, rng)
    if not texts:
        args.parser.error("bench needs --text or --random-sizes")
    if args.script:
        if args.tight_exists:
            args.parser.error("--tight-exists samples its own lines and cannot be combined with --script")
        queries = parse_script(Path(args.script).read_bytes())
        per_text = None
    else:
        modes = args.modes or MODES
        queries = []
        per_text = {
            text_id: sample_queries(text, args.queries, rng, modes=modes)
            + sample_tight_exists(text, args.tight_exists, rng)
            for text_id, text in texts.items()
        }
    return BenchRequest(
        texts=texts,
        queries=queries,
        kind=args.kind or settings.default_kind,
        tau=args.tau,
        per_text_queries=per_text,
    )


async def stream_bench_rows(request: BenchRequest, settings: Settings, ndjson: bool = False) -> AsyncGenerator[str, None]:
    """Bench output lines: CSV rows, or one NDJSON line per event."""
    if not ndjson:
        yield CSV_HEADER
    async for event in run_bench(request, settings):
        if event["event_type"] == "summary":
            request_errors = event["errors"]
            logger.info(f"Bench finished: {event['total_queries']} queries in {event['total_duration_ms']:.0f}ms")
            if request_errors:
                logger.error(f"Bench finished with {len(request_errors)} errors")
                raise GapIndexError(request_errors[0])
        if ndjson:
            yield json.dumps(event)
        else:
            for row in csv_lines(event):
                yield row


async def _print_bench(request: BenchRequest, settings: Settings, ndjson: bool) -> int:
    async for row in stream_bench_rows(request, settings, ndjson):
        print(row)
    return 0


def cmd_bench(args: argparse.Namespace, settings: Settings) -> int:
    request = _bench_request(args, settings)
    return asyncio.run(_print_bench(request, settings, args.ndjson))


def cmd_sdj(args: argparse.Namespace, settings: Settings) -> int:
    system = parse_set_system(Path(args.sets).read_text())
    index = DisjointnessIndex(system, kind=args.kind or settings.default_kind)
    pairs = [(i - 1, j - 1) for i, j in args.pairs]
    if args.verify and not pairs:
        pairs = list(combinations(range(system.m), 2))
    mismatches = 0
    for i, j in pairs:
        verdict = index.disjoint(i, j)
        line = "disjoint" if verdict else "intersecting"
        if args.verify:
            ok = verdict == sets_disjoint(system, i, j)
            mismatches += not ok
            line += "\tverified" if ok else "\tMISMATCH"
        print(line)
    if args.verify:
        print(f"# mismatches={mismatches}")
        if mismatches:
            logger.error(f"{mismatches} disjointness verdicts disagree with direct intersection")
            return 3
    return 0


def _add_query_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--script", help="Query script, one tab-separated query per line")
    parser.add_argument("--mode", choices=MODES)
    parser.add_argument("--p1")
    parser.add_argument("--p2")
    parser.add_argument("--alpha", type=int, default=0)
    parser.add_argument("--beta", type=int)


def _positive_sizes(value: str) -> List[int]:
    try:
        sizes = [int(part) for part in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated sizes, got {value!r}")
    if any(size < 1 for size in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def _non_negative(value: str) -> int:
    try:
        count = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a count, got {value!r}")
    if count < 0:
        raise argparse.ArgumentTypeError("count must not be negative")
    return count


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapindex", description="Gapped consecutive-occurrence indexing"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="Build an index and write it to disk")
    build.add_argument("text", help="Raw text file")
    build.add_argument("out", help="Index file to write")
    build.add_argument("--kind", choices=KINDS)
    build.add_argument("--tau", type=int)
    build.set_defaults(handler=cmd_build)

    query = sub.add_parser("query", help="Answer queries from an index file")
    query.add_argument("index", help="Index file")
    _add_query_flags(query)
    query.add_argument("--stats", action="store_true", help="Print the ORS-call count")
    query.set_defaults(handler=cmd_query, parser=query)

    oracle = sub.add_parser("oracle", help="Answer queries by scanning the text")
    oracle.add_argument("text", help="Raw text file")
    _add_query_flags(oracle)
    oracle.set_defaults(handler=cmd_oracle, parser=oracle)

    bench = sub.add_parser("bench", help="Measure query cost as CSV")
    bench.add_argument("--text", action="append", help="Raw text file (repeatable)")
    bench.add_argument("--script", help="Query script run on every text")
    bench.add_argument("--random-sizes", type=_positive_sizes, help="Comma-separated random text lengths")
    bench.add_argument("--sigma", type=int, default=4, choices=range(1, 27), metavar="SIGMA")
    bench.add_argument("--queries", type=_non_negative, default=100, help="Sampled queries per text without --script")
    bench.add_argument("--modes", nargs="+", choices=MODES)
    bench.add_argument(
        "--tight-exists", type=_non_negative, default=0, metavar="COUNT",
        help="Per text, add COUNT exists lines with beta below the patterns' smallest distance",
    )
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--kind", choices=KINDS)
    bench.add_argument("--tau", type=int)
    bench.add_argument("--ndjson", action="store_true", help="Emit raw events instead of CSV")
    bench.set_defaults(handler=cmd_bench, parser=bench)

    sdj = sub.add_parser("sdj", help="Set disjointness through gapped existence queries")
    sdj.add_argument("sets", help="Set-system file, one set per line")
    sdj.add_argument("pairs", nargs="*", type=parse_pair, help="1-based set id pairs such as 1,2")
    sdj.add_argument("--verify", action="store_true", help="Cross-check against direct intersection")
    sdj.add_argument("--kind", choices=KINDS)
    sdj.set_defaults(handler=cmd_sdj)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    configure_logging(settings)
    try:
        return args.handler(args, settings)
    except GapIndexError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except OSError as e:
        logger.error(f"IO error: {e}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
