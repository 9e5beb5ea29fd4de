"""Parameter grid for reproducing the closed-form linear complexity across many (p, e, n, b)."""

import logging
import uuid
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Optional, Sequence

from sympy import primerange

from ..config import settings
from .cyclotomy import CyclotomicParams, build_params
from .lc_engine import LcReport, measure
from .number_theory import find_primitive_root, is_wieferich
from .progress import progress_manager

logger = logging.getLogger(__name__)

GRID_METHODS = ("bm", "gcd")


def _sort_key(params: CyclotomicParams) -> tuple[int, int, int, int]:
    return params.p, params.e, params.n, params.b


def grid_parameters(
    p_max: int,
    n_max: int,
    cap_period: Optional[int] = None,
    all_b: bool = False,
) -> tuple[list[CyclotomicParams], list[int]]:
    """All valid parameter tuples in range, plus the Wieferich primes that were skipped.

    For every odd prime p <= p_max, every f = 2^r >= 2 dividing p - 1 and
    every n <= n_max with p^n <= cap_period. The b sweep is {0, 1, d_n/2, d_n - 1}
    unless all_b.
    """
    cap = settings.cap_period if cap_period is None else cap_period
    rows: list[CyclotomicParams] = []
    skipped: list[int] = []

    for p in primerange(3, p_max + 1):
        p = int(p)
        if is_wieferich(p):
            logger.info(f"Skipping Wieferich prime {p}")
            skipped.append(p)
            continue
        g = find_primitive_root(p)
        f = 2
        while (p - 1) % f == 0:
            e = (p - 1) // f
            for n in range(1, n_max + 1):
                if p**n > cap:
                    break
                d_n = f * p ** (n - 1)
                offsets = range(d_n) if all_b else sorted({0, 1, d_n // 2, d_n - 1})
                rows.extend(build_params(p, n, e, b, g) for b in offsets)
            f *= 2

    rows.sort(key=_sort_key)
    logger.info(f"Grid p <= {p_max}, n <= {n_max}: {len(rows)} parameter sets, skipped {skipped}")
    return rows, skipped


def run_grid(
    rows: Sequence[CyclotomicParams],
    methods: Sequence[str] = GRID_METHODS,
    workers: Optional[int] = None,
    cap_period: Optional[int] = None,
    cap_degree: Optional[int] = None,
    job_id: Optional[str] = None,
) -> list[LcReport]:
    """Measure every row; reports come back sorted by (p, e, n, b) whatever the completion order."""
    workers = settings.workers if workers is None else workers
    job_id = job_id or f"grid-{uuid.uuid4().hex[:8]}"
    task = partial(measure, methods=tuple(methods), cap_period=cap_period, cap_degree=cap_degree)

    progress_manager.create_job(job_id, len(rows))
    reports: list[LcReport] = []
    try:
        if workers > 1 and len(rows) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for report in pool.map(task, rows, chunksize=max(1, len(rows) // (4 * workers))):
                    reports.append(report)
                    progress_manager.record_row(job_id, report.agree)
        else:
            for params in rows:
                report = task(params)
                reports.append(report)
                progress_manager.record_row(job_id, report.agree)
    except Exception as exc:
        progress_manager.fail_job(job_id, str(exc))
        raise

    progress_manager.complete_job(job_id)
    reports.sort(key=lambda r: _sort_key(r.params))
    return reports
