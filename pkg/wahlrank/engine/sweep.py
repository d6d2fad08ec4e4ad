#!/usr/bin/env python3
"""
Batch job grids and their execution.

A sweep is a list of independent jobs; results come back ordered by their
grid key ((d, k) for plane curves, (a, b, k) for the line) whatever order
the workers finish in.

"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, TypeVar

from wahlrank.engine.criteria import NO_CONCLUSION, einlaz_predicate
from wahlrank.engine.curve import PlaneCurve
from wahlrank.engine.gaussian import EXACT, Arithmetic, GaussReport, gamma_rank
from wahlrank.engine.p1_oracle import p1_gauss_rank

log = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class PlaneJob:
    """
    One rank computation for a plane curve.

    Attributes:
        curve: validated curve
        k: order of the Gaussian map
        arithmetic: exact or modular screening
        method: domain construction, "chain" or "direct"
    """

    curve: PlaneCurve
    k: int
    arithmetic: Arithmetic = EXACT
    method: str = "chain"

    @property
    def key(self) -> tuple:
        return (self.curve.d, self.k)


@dataclass(frozen=True)
class P1Job:
    a: int
    b: int
    k: int

    @property
    def key(self) -> tuple:
        return (self.a, self.b, self.k)


def make_plane_jobs(
    curves: Sequence[PlaneCurve],
    ks: Iterable[int],
    arithmetic: Arithmetic = EXACT,
    method: str = "chain",
) -> List[PlaneJob]:
    """Every (curve, k) pair; curves are kept in the order given."""
    ks = list(ks)
    return [PlaneJob(c, k, arithmetic, method) for c in curves for k in ks]


def make_p1_jobs(as_: Iterable[int], bs: Iterable[int], ks: Iterable[int]) -> List[P1Job]:
    bs, ks = list(bs), list(ks)
    return [P1Job(a, b, k) for a in as_ for b in bs for k in ks]


def run_plane_job(job: PlaneJob) -> GaussReport:
    return gamma_rank(job.curve, job.k, job.arithmetic, job.method)


def run_p1_job(job: P1Job) -> dict:
    """
    Brute-force rank on the line next to the genus-0 prediction.

    agree is False only when the predicate guarantees surjectivity and the
    computed map is not surjective.
    """
    result = p1_gauss_rank(job.a, job.b, job.k)
    prediction = einlaz_predicate(0, job.a, job.b, job.k, None)
    agree = prediction == NO_CONCLUSION or result.surjective
    if not agree:
        log.warning("p1 a=%d b=%d k=%d: predicted %s but rank %d < %d",
                    job.a, job.b, job.k, prediction, result.rank, result.codomain_dim)
    return {
        "a": job.a,
        "b": job.b,
        "k": job.k,
        "domain_dim": result.domain_dim,
        "rank": result.rank,
        "codomain_dim": result.codomain_dim,
        "surjective": result.surjective,
        "prediction": prediction,
        "agree": agree,
    }


def run_jobs(
    worker: Callable[[T], R], jobs: Sequence[T], key: Callable[[T], tuple], threads: int = 1
) -> List[R]:
    """
    Run jobs with up to `threads` worker processes.

    Returns:
        Results sorted by the job key (stable for equal keys).
    """
    order = sorted(range(len(jobs)), key=lambda i: key(jobs[i]))
    if threads <= 1 or len(jobs) <= 1:
        results = [worker(j) for j in jobs]
    else:
        log.info("running %d jobs on %d processes", len(jobs), threads)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(worker, jobs))
    return [results[i] for i in order]


def run_plane(jobs: Sequence[PlaneJob], threads: int = 1) -> List[GaussReport]:
    return run_jobs(run_plane_job, jobs, lambda j: j.key, threads)


def run_p1(jobs: Sequence[P1Job], threads: int = 1) -> List[dict]:
    return run_jobs(run_p1_job, jobs, lambda j: j.key, threads)
