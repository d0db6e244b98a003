"""Seeded reduction and factorization runs over every O(D) with D dividing n.

Each job draws one unimodular pair and one SL2 matrix from a word of
DEMO_WORD_LENGTH random elementary ops, reduces and factors them, and
re-verifies both certificates. Jobs run on a thread pool; the report is
ordered by (|D|, D, seed) no matter how the pool schedules them.
"""

import logging
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict
from typing import Any, Dict, List, Tuple

import numpy as np
from tqdm import tqdm

from cyclo import SUPPORTED_CONDUCTORS
from errors import BudgetExceeded, SpecError, ZcgeError
from ge2 import UmPair, evaluate, factor_sl2, random_sl2, random_um_pair, reduce_pair_od, verify
from ge_types import DEFAULT_BUDGET, DEFAULT_DEMO_JOBS, DEFAULT_WORKERS, DEMO_BOUND, DEMO_WORD_LENGTH, ReductionStats, SubsetReport
from intpoly import divisors
from odring import nonempty_subsets, od_ring

log = logging.getLogger(__name__)


def check_supported(n: int) -> List[int]:
    if n < 1:
        raise SpecError(f"n must be positive, got {n}")
    divs = divisors(n)
    missing = [d for d in divs if d not in SUPPORTED_CONDUCTORS]
    if missing:
        raise SpecError(f"n={n} needs conductors {missing} outside the supported list")
    return divs


def job_seeds(seed: int, D: Tuple[int, ...], j: int) -> Tuple[int, int]:
    """Independent 64-bit seeds for the pair and the matrix of job j over D."""
    state = np.random.SeedSequence([seed, j, *D]).generate_state(2, np.uint64)
    return int(state[0]), int(state[1])


def run_job(D: Tuple[int, ...], j: int, seed: int, budget: int) -> Dict[str, Any]:
    ring = od_ring(D)
    pair_seed, matrix_seed = job_seeds(seed, D, j)
    stats = ReductionStats()
    result: Dict[str, Any] = {
        "D": D, "job": j, "seed": pair_seed,
        "reduced": False, "factored": False, "length": 0,
        "fallback": 0, "budget_exceeded": False, "error": None,
    }
    try:
        pair = random_um_pair(ring, pair_seed, DEMO_WORD_LENGTH, DEMO_BOUND)
        word = reduce_pair_od(ring, pair, budget, stats)
        result["reduced"] = verify(word, pair, UmPair.unit(ring))
        result["length"] = len(word)

        M = random_sl2(ring, matrix_seed, DEMO_WORD_LENGTH, DEMO_BOUND)
        fw = factor_sl2(ring, M, budget, stats)
        result["factored"] = evaluate(fw) == M
        result["length"] = max(result["length"], len(fw))
    except BudgetExceeded as e:
        result["budget_exceeded"] = True
        result["error"] = str(e)
    except ZcgeError as e:
        result["error"] = f"{type(e).__name__}: {e}"
    result["fallback"] = stats.fallback_activations
    return result


def _summarize(D: Tuple[int, ...], results: List[Dict[str, Any]]) -> SubsetReport:
    report = SubsetReport(D=D, jobs=len(results))
    for r in results:
        report.reductions_verified += int(r["reduced"])
        report.factorizations_verified += int(r["factored"])
        report.max_word_length = max(report.max_word_length, r["length"])
        report.fallback_activations += r["fallback"]
        report.budget_failures += int(r["budget_exceeded"])
        if not (r["reduced"] and r["factored"]):
            report.failures.append({"job": r["job"], "seed": r["seed"], "error": r["error"]})
            if report.error is None and r["error"]:
                report.error = r["error"]
    return report


def run_demo(n: int, k: int = DEFAULT_DEMO_JOBS, seed: int = 0, budget: int = DEFAULT_BUDGET,
             workers: int = DEFAULT_WORKERS, progress: bool = True) -> Dict[str, Any]:
    """Run k jobs for every nonempty D within divisors(n).

    Returns:
        {"n", "k", "seed", "subsets": [...], "all_verified": bool}
    """
    divs = check_supported(n)
    subsets = nonempty_subsets(divs)
    tasks = [(D, j) for D in subsets for j in range(k)]
    log.info(f"demo n={n}: {len(subsets)} subsets, {len(tasks)} jobs, {workers} workers")

    progress_bar = tqdm(
        total=len(tasks),
        desc=f"Reducing over Z[C_{n}]",
        unit="job",
        leave=True,
        dynamic_ncols=True,
        bar_format='{l_bar}{bar}| {n_fmt}/{total_fmt} [{elapsed}<{remaining}, {rate_fmt}]',
        colour='green',
        file=sys.stderr,
        disable=not progress,
    )

    results: List[Dict[str, Any]] = []
    with ThreadPoolExecutor(max_workers=max(1, workers)) as ex:
        futures = {ex.submit(run_job, D, j, seed, budget): (D, j) for D, j in tasks}
        for fut in as_completed(futures):
            D, j = futures[fut]
            try:
                res = fut.result()
            except Exception as e:
                log.error(f"job {j} over D={list(D)} crashed: {e}")
                res = {"D": D, "job": j, "seed": None, "reduced": False, "factored": False, "length": 0,
                       "fallback": 0, "budget_exceeded": False, "error": str(e)}
            results.append(res)
            progress_bar.update(1)
    progress_bar.close()

    by_subset: Dict[Tuple[int, ...], List[Dict[str, Any]]] = {D: [] for D in subsets}
    for r in sorted(results, key=lambda r: r["job"]):
        by_subset[r["D"]].append(r)
    reports = [_summarize(D, by_subset[D]) for D in subsets]

    all_verified = all(not rep.failures for rep in reports)
    fallbacks = sum(rep.fallback_activations for rep in reports)
    log.info(f"demo n={n} finished: all verified={all_verified}, fallback activations={fallbacks}")
    return {
        "n": n,
        "k": k,
        "seed": seed,
        "subsets": [asdict(rep) for rep in reports],
        "all_verified": all_verified,
    }
