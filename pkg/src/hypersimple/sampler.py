"""Uniform stub-matching samples and reproducible Monte Carlo estimates.

Sample ``i`` shuffles the stub list with stream ``i`` of the seed (see
:mod:`hypersimple.rng`) and fills edges block by block in edge order.  The
Monte Carlo driver keeps exact integer totals of each count and of its
square, so merging worker results is order-free and the estimate does not
depend on how the indices were split.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .core import (
    DegreeSequence,
    DirectedDegreeSequence,
    DirectedHypergraph,
    Hypergraph,
    UndirectedDegreeSequence,
    validate_directed,
    validate_undirected,
)
from .errors import InvalidParams
from .exact import STATISTICS_DIRECTED, STATISTICS_UNDIRECTED
from .rng import stream

Z95 = 1.959964


@dataclass(frozen=True)
class SampleEstimate:
    statistic: str
    mean: float
    std_error: float
    samples: int
    seed: int

    @property
    def ci95(self) -> tuple[float, float]:
        half = Z95 * self.std_error
        return (self.mean - half, self.mean + half)

    def as_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "mean": self.mean,
            "std_error": self.std_error,
            "samples": self.samples,
            "seed": self.seed,
            "ci95": list(self.ci95),
        }


def _stubs(degrees: Sequence[int]) -> np.ndarray:
    return np.repeat(np.arange(len(degrees), dtype=np.int64), np.asarray(degrees, dtype=np.int64))


def _blocks(order: np.ndarray, sizes: Sequence[int]) -> list[tuple[int, ...]]:
    cuts = np.cumsum(sizes)[:-1]
    return [tuple(int(v) for v in part) for part in np.split(order, cuts)] if len(sizes) else []


def sample_undirected(ds: UndirectedDegreeSequence, sample_index: int, seed: int) -> Hypergraph:
    validate_undirected(ds)
    rng = stream(seed, sample_index)
    order = rng.permutation(_stubs(ds.vertex_degrees))
    return Hypergraph(ds.n, _blocks(order, ds.edge_degrees))


def sample_directed(dds: DirectedDegreeSequence, sample_index: int, seed: int) -> DirectedHypergraph:
    validate_directed(dds)
    rng = stream(seed, sample_index)
    tails = _blocks(rng.permutation(_stubs(dds.out_degrees)), dds.tail_degrees)
    heads = _blocks(rng.permutation(_stubs(dds.in_degrees)), dds.head_degrees)
    return DirectedHypergraph(dds.n, tuple(zip(tails, heads)))


# ---------------------------------------------------------------------------
# vectorized per-sample counting
# ---------------------------------------------------------------------------

def _slot_index(sizes: Sequence[int]) -> dict[int, np.ndarray]:
    """Edge size -> (edges of that size, size) array of stub positions."""
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(np.int64) if len(sizes) else np.zeros(0, np.int64)
    sizes_arr = np.asarray(sizes, dtype=np.int64)
    out = {}
    for k in sorted(set(int(s) for s in sizes)):
        st = starts[sizes_arr == k]
        out[k] = st[:, None] + np.arange(k)[None, :]
    return out


def _repeats(rows: np.ndarray) -> np.ndarray:
    """Rows (already sorted) with some vertex appearing twice."""
    if rows.shape[1] < 2:
        return np.zeros(rows.shape[0], dtype=bool)
    return (rows[:, 1:] == rows[:, :-1]).any(axis=1)


def _equal_pairs(rows: np.ndarray) -> int:
    """Unordered pairs of identical rows."""
    m = rows.shape[0]
    if m < 2:
        return 0
    order = np.lexsort(rows.T[::-1])
    srt = rows[order]
    new_group = np.ones(m, dtype=bool)
    new_group[1:] = (srt[1:] != srt[:-1]).any(axis=1)
    starts = np.flatnonzero(new_group)
    counts = np.diff(np.append(starts, m))
    return int((counts * (counts - 1) // 2).sum())


class _UndirectedCounter:
    def __init__(self, ds: UndirectedDegreeSequence):
        self.stubs = _stubs(ds.vertex_degrees)
        self.slots = _slot_index(ds.edge_degrees)

    def __call__(self, index: int, seed: int) -> dict[str, int]:
        order = stream(seed, index).permutation(self.stubs)
        dh = m = 0
        for idx in self.slots.values():
            rows = np.sort(order[idx], axis=1)
            dh += int(_repeats(rows).sum())
            m += _equal_pairs(rows)
        return {"DH": dh, "M": m}


class _DirectedCounter:
    def __init__(self, dds: DirectedDegreeSequence):
        self.out_stubs = _stubs(dds.out_degrees)
        self.in_stubs = _stubs(dds.in_degrees)
        tail_starts = np.concatenate(([0], np.cumsum(dds.tail_degrees)[:-1])).astype(np.int64)
        head_starts = np.concatenate(([0], np.cumsum(dds.head_degrees)[:-1])).astype(np.int64)
        t_arr = np.asarray(dds.tail_degrees)
        h_arr = np.asarray(dds.head_degrees)
        self.classes = []
        for t, h in sorted(set(zip(dds.tail_degrees, dds.head_degrees))):
            mask = (t_arr == t) & (h_arr == h)
            self.classes.append((
                t, h,
                tail_starts[mask][:, None] + np.arange(t)[None, :],
                head_starts[mask][:, None] + np.arange(h)[None, :],
            ))

    def __call__(self, index: int, seed: int) -> dict[str, int]:
        rng = stream(seed, index)
        tails_order = rng.permutation(self.out_stubs)
        heads_order = rng.permutation(self.in_stubs)
        dh = m = s = ws = 0
        for t, h, t_idx, h_idx in self.classes:
            tails = np.sort(tails_order[t_idx], axis=1)
            heads = np.sort(heads_order[h_idx], axis=1)
            dh += int((_repeats(tails) | _repeats(heads)).sum())
            m += _equal_pairs(np.hstack((tails, heads)))
            if t == h:
                s += int((tails == heads).all(axis=1).sum())
            ws += int((tails[:, :, None] == heads[:, None, :]).any(axis=(1, 2)).sum())
        return {"DH": dh, "M": m, "S": s, "WS": ws}


def sample_counts(seq: DegreeSequence, sample_index: int, seed: int) -> dict[str, int]:
    """Statistic counts of sample ``sample_index`` without building the hypergraph."""
    return _counter(seq)(sample_index, seed)


def _counter(seq: DegreeSequence):
    if isinstance(seq, DirectedDegreeSequence):
        validate_directed(seq)
        return _DirectedCounter(seq)
    validate_undirected(seq)
    return _UndirectedCounter(seq)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def _run_chunk(seq: DegreeSequence, stats: tuple[str, ...], seed: int, start: int, stop: int, keep: bool):
    count = _counter(seq)
    sums = [0] * len(stats)
    squares = [0] * len(stats)
    rows = [] if keep else None
    for i in range(start, stop):
        c = count(i, seed)
        row = [c[s] for s in stats]
        for j, x in enumerate(row):
            sums[j] += x
            squares[j] += x * x
        if keep:
            rows.append(row)
    return sums, squares, rows


def default_workers() -> int:
    raw = os.environ.get("HYPERSIMPLE_WORKERS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise InvalidParams(f"HYPERSIMPLE_WORKERS={raw!r} is not an integer") from None
    return 1


def _chunks(samples: int, workers: int) -> list[tuple[int, int]]:
    step = -(-samples // workers)
    return [(a, min(a + step, samples)) for a in range(0, samples, step)]


def _estimate(stat: str, total: int, squares: int, samples: int, seed: int) -> SampleEstimate:
    mean = Fraction(total, samples)
    var = (squares - total * mean) / (samples - 1)
    return SampleEstimate(stat, float(mean), math.sqrt(var / samples), samples, seed)


def monte_carlo(
    seq: DegreeSequence,
    statistics: Optional[Iterable[str]] = None,
    samples: int = 1000,
    seed: int = 0,
    workers: Optional[int] = None,
    dump: Optional[Union[str, os.PathLike]] = None,
) -> dict[str, SampleEstimate]:
    """Estimate each statistic from ``samples`` independent matchings.

    Draw ``i`` always uses stream ``i`` of ``seed``, so the result is the same
    for any ``workers``.  ``dump`` writes one CSV row of counts per sample.
    """
    directed = isinstance(seq, DirectedDegreeSequence)
    allowed = STATISTICS_DIRECTED if directed else STATISTICS_UNDIRECTED
    stats = tuple(statistics) if statistics else allowed
    for s in stats:
        if s not in allowed:
            raise InvalidParams(f"statistic {s!r} not available; choose from {list(allowed)}")
    if samples < 2:
        raise InvalidParams("need at least 2 samples for a standard error")
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise InvalidParams("workers must be positive")
    _counter(seq)  # validates before any worker starts

    keep = dump is not None
    chunks = _chunks(samples, min(workers, samples))
    if workers == 1:
        results = [_run_chunk(seq, stats, seed, a, b, keep) for a, b in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_chunk, seq, stats, seed, a, b, keep) for a, b in chunks]
            results = [f.result() for f in futures]

    totals = [sum(r[0][j] for r in results) for j in range(len(stats))]
    squares = [sum(r[1][j] for r in results) for j in range(len(stats))]
    if keep:
        with open(dump, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(stats)
            for r in results:
                writer.writerows(r[2])
    return {
        s: _estimate(s, totals[j], squares[j], samples, seed) for j, s in enumerate(stats)
    }
