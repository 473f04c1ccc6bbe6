"""Timing and footprint comparison of the direct and Kronecker routes."""

from __future__ import annotations

import csv
import random
import time
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from .exact import track_peak
from .kron_route import kron_factorization, kron_general_solution
from .parametric import same_affine_set
from .generate import random_consistent
from .solver import general_solution

CSV_COLUMNS = ("instance_id", "m", "n", "k", "l", "a", "b", "route", "wall_time_ns", "peak_entries")


@dataclass
class BenchRow:
    instance_id: int
    m: int
    n: int
    k: int
    l: int
    a: int
    b: int
    route: str
    wall_time_ns: int
    peak_entries: int

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, c) for c in CSV_COLUMNS)


class RouteMismatch(AssertionError):
    pass


def _run_direct(A, B, C):
    return general_solution(A, B, C)


def _run_kron(A, B, C):
    return kron_general_solution(kron_factorization(A, B), C)


ROUTES = {"direct": _run_direct, "kron": _run_kron}


def bench_instance(instance_id: int, A, B, C) -> list[BenchRow]:
    """Check both routes agree, then time each once."""
    m, n = A.shape
    k, l = B.shape
    sols = {name: fn(A, B, C) for name, fn in ROUTES.items()}
    if not same_affine_set(sols["direct"].X, sols["kron"].X):
        raise RouteMismatch(f"routes disagree on instance {instance_id}")
    a, b = sols["direct"].witnesses["A"].rank, sols["direct"].witnesses["B"].rank
    rows = []
    for name, fn in ROUTES.items():
        with track_peak() as peak:
            t0 = time.perf_counter_ns()
            fn(A, B, C)
            elapsed = time.perf_counter_ns() - t0
        rows.append(BenchRow(instance_id, m, n, k, l, a, b, name, elapsed, peak[0]))
    return rows


def instances(max_dim: int, count: int, seed: int, sweep: bool = False) -> Iterator[tuple]:
    """Random consistent instances.

    Without ``sweep``: ``count`` instances with dimensions drawn from
    ``1..max_dim``. With ``sweep``: ``count`` square instances for each
    ``d = 1..max_dim`` (all of m, n, k, l equal to d).
    """
    rng = random.Random(seed)
    if sweep:
        for d in range(1, max_dim + 1):
            for _ in range(count):
                yield random_consistent(rng, dims=(d, d, d, d))[:3]
    else:
        for _ in range(count):
            yield random_consistent(rng, max_dim)[:3]


def run(max_dim: int, count: int, seed: int, sweep: bool = False) -> list[BenchRow]:
    rows = []
    for i, (A, B, C) in enumerate(instances(max_dim, count, seed, sweep)):
        rows.extend(bench_instance(i, A, B, C))
    return rows


def write_csv(rows: Iterable[BenchRow], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.as_tuple())
