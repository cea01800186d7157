"""Bench pipeline: per-query cost events and log-log fits of ORS calls against n."""
import asyncio
import time
from collections import defaultdict
from typing import Any, AsyncGenerator, Dict, List, Optional
import logging

from config import Settings, get_settings
from indexes import GapIndex, build_index
from models import BenchRequest, FitEvent, QueryEvent, QueryLine, SummaryEvent
from workload import fit_exponent

logger = logging.getLogger(__name__)

CSV_HEADER = "mode,n,occ,wall_ms,ors_calls"


def measure_query(index: GapIndex, text_id: str, line: QueryLine) -> QueryEvent:
    """Run one query; ORS calls are the counter delta around it."""
    query = line.to_query()
    before = index.ors_calls()
    start = time.perf_counter()
    try:
        if line.mode == "exists":
            occ = None
            index.exists(query)
        elif line.mode == "count":
            occ = index.count(query)
        else:
            occ = index.report(query).count
        wall_ms = (time.perf_counter() - start) * 1000
        calls = index.ors_calls() - before
        if occ is None:
            occ = index.count(query)
        return QueryEvent(text_id=text_id, mode=line.mode, n=index.n, occ=occ, wall_ms=wall_ms, ors_calls=calls)
    except Exception as e:
        logger.error(f"Query {line.mode} {line.p1!r} {line.p2!r} on {text_id} failed: {e}")
        return QueryEvent(
            text_id=text_id, mode=line.mode, n=index.n, occ=0,
            wall_ms=(time.perf_counter() - start) * 1000, ors_calls=0, error=str(e),
        )


def measure_text(text_id: str, text: bytes, kind: str, tau: Optional[int], lines: List[QueryLine]) -> List[QueryEvent]:
    """Build one index and run its queries sequentially so counter deltas stay exact."""
    build_start = time.perf_counter()
    index = build_index(kind, text, tau=tau)
    logger.info(f"Built {kind} index for {text_id}: n={index.n} in {(time.perf_counter() - build_start):.2f}s")
    return [measure_query(index, text_id, line) for line in lines]


async def run_bench(
    request: BenchRequest, settings: Optional[Settings] = None
) -> AsyncGenerator[Dict[str, Any], None]:
    """Run the bench pipeline, yielding query, fit and summary events."""
    settings = settings or get_settings()
    start_time = time.time()
    errors: List[str] = []
    total = 0

    try:
        logger.info(f"Running bench: kind={request.kind}, texts={len(request.texts)}, workers={settings.bench_workers}")
        semaphore = asyncio.Semaphore(settings.bench_workers)

        async def run_text(text_id: str, text: bytes) -> List[QueryEvent]:
            async with semaphore:
                return await asyncio.to_thread(
                    measure_text, text_id, text, request.kind, request.tau, request.queries_for(text_id)
                )

        tasks = [
            (text_id, asyncio.create_task(run_text(text_id, text)))
            for text_id, text in request.texts.items()
        ]
        calls_by_mode: Dict[str, Dict[int, List[int]]] = defaultdict(lambda: defaultdict(list))

        for text_id, task in tasks:
            try:
                events = await task
            except Exception as e:
                error_msg = f"Error building index for {text_id}: {e}"
                logger.error(error_msg)
                errors.append(error_msg)
                continue
            for event in events:
                total += 1
                if event.error:
                    errors.append(f"{text_id}: {event.error}")
                else:
                    calls_by_mode[event.mode][event.n].append(event.ors_calls)
                yield event.model_dump(mode='json')

        for mode in sorted(calls_by_mode):
            by_n = calls_by_mode[mode]
            ns = sorted(by_n)
            means = [sum(by_n[n]) / len(by_n[n]) for n in ns]
            exponent = fit_exponent(ns, means) if len(ns) >= 2 else None
            yield FitEvent(mode=mode, exponent=exponent, points=len(ns)).model_dump(mode='json')

        summary = SummaryEvent(
            total_queries=total,
            total_duration_ms=(time.time() - start_time) * 1000,
            errors=errors,
        )
        yield summary.model_dump(mode='json')

    except Exception as e:
        logger.error(f"Bench pipeline error: {e}")
        summary = SummaryEvent(
            total_queries=total,
            total_duration_ms=(time.time() - start_time) * 1000,
            errors=errors + [str(e)],
        )
        yield summary.model_dump(mode='json')


def csv_lines(event: Dict[str, Any]) -> List[str]:
    """CSV rendering of one bench event (summaries and failed queries render nothing)."""
    if event["event_type"] == "query" and not event.get("error"):
        return [f"{event['mode']},{event['n']},{event['occ']},{event['wall_ms']:.3f},{event['ors_calls']}"]
    if event["event_type"] == "fit":
        exponent = "" if event["exponent"] is None else f"{event['exponent']:.4f}"
        return [f"# fit,{event['mode']},{exponent},{event['points']}"]
    return []
