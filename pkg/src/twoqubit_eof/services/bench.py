"""Throughput benchmark on a pre-generated random workload."""

import logging
import time

import numpy as np

from twoqubit_eof.decomposition.optimal import optimal_decomposition
from twoqubit_eof.oracle.sampling import RandomSpec, random_density_matrices
from twoqubit_eof.quantum.batch import eof_many
from twoqubit_eof.schemas.records import BenchSummary

logger = logging.getLogger(__name__)


def _summary(stage: str, count: int, seconds: float) -> BenchSummary:
    return BenchSummary(
        stage=stage,
        count=count,
        seconds=seconds,
        mean_seconds=seconds / count,
        per_second=count / seconds if seconds > 0.0 else float("inf"),
    )


def run_bench(count: int, seed: int, eof_only: bool = False) -> list[BenchSummary]:
    """Time eof (vectorized) and, unless eof_only, optimal_decomposition.

    Matrices are drawn before the clock starts, so the same seed always
    gives the same workload.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    logger.info(f"Generating {count} random rank-4 matrices (seed {seed})")
    matrices = random_density_matrices(RandomSpec(rank=4, count=count, seed=seed))
    stack = np.stack([rho.matrix for rho in matrices])

    summaries = []
    start = time.perf_counter()
    values = eof_many(stack)
    summaries.append(_summary("eof", count, time.perf_counter() - start))
    logger.debug(f"Mean eof over the workload: {float(values.mean()):.6g}")

    if not eof_only:
        start = time.perf_counter()
        for rho in matrices:
            optimal_decomposition(rho)
        summaries.append(_summary("decompose", count, time.perf_counter() - start))

    for s in summaries:
        logger.info(f"{s.stage}: {s.count} in {s.seconds:.3f}s ({s.per_second:.1f}/s)")
    return summaries
