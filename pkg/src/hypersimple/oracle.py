"""Brute-force ground truth for tiny instances.

The matching oracles enumerate every bijection between labeled stubs and
edge slots (``S!`` of them) and average the realized statistics as exact
fractions.  Identical realized hypergraphs are tallied before their
statistics are counted, which changes nothing about the enumeration.

The identity checks compare a direct sum over vertex tuples with the
partition expansion used by the exact theorems.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Optional, Sequence

import numpy as np

from .combin import coincidence_expansion, single_expansion
from .core import (
    DirectedDegreeSequence,
    DirectedHypergraph,
    Hypergraph,
    UndirectedDegreeSequence,
    count_degenerate,
    count_multi_pairs,
    count_self_loops,
    count_weak_self_loops,
    validate_directed,
    validate_undirected,
)
from .errors import CapExceeded, PreconditionViolated
from .exact import expected
from .rng import stream

UNDIRECTED_CAP = 8
DIRECTED_CAP = 6
IDENTITY_MAX_V = 5
IDENTITY_MAX_DELTA = 4
IDENTITY_MAX_JOINT = 5
IDENTITY_MAX_WEIGHT = 2


def _stub_list(degrees: Sequence[int]) -> list[int]:
    return [v for v, d in enumerate(degrees) for _ in range(d)]


def _fill(order: Sequence[int], sizes: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    out = []
    pos = 0
    for size in sizes:
        out.append(tuple(sorted(order[pos:pos + size])))
        pos += size
    return tuple(out)


def _outcomes(degrees: Sequence[int], sizes: Sequence[int]) -> Counter:
    """Realized edge tuples over all labeled-stub bijections, with multiplicity."""
    tally: Counter = Counter()
    for order in permutations(_stub_list(degrees)):
        tally[_fill(order, sizes)] += 1
    return tally


def brute_force_undirected(
    ds: UndirectedDegreeSequence, cap: int = UNDIRECTED_CAP
) -> dict[str, Fraction]:
    validate_undirected(ds)
    if ds.total_stubs > cap:
        raise CapExceeded(f"stub total {ds.total_stubs} exceeds oracle cap {cap}")
    tally = _outcomes(ds.vertex_degrees, ds.edge_degrees)
    total = sum(tally.values())
    assert total == factorial(ds.total_stubs)
    dh = m = 0
    for edges, weight in tally.items():
        h = Hypergraph(ds.n, edges)
        dh += weight * count_degenerate(h)
        m += weight * count_multi_pairs(h)
    return {"DH": Fraction(dh, total), "M": Fraction(m, total)}


def brute_force_directed(
    dds: DirectedDegreeSequence, cap: int = DIRECTED_CAP
) -> dict[str, Fraction]:
    validate_directed(dds)
    if dds.out_stubs > cap or dds.in_stubs > cap:
        raise CapExceeded(
            f"stub totals ({dds.out_stubs}, {dds.in_stubs}) exceed oracle cap {cap}"
        )
    tails = _outcomes(dds.out_degrees, dds.tail_degrees)
    heads = _outcomes(dds.in_degrees, dds.head_degrees)
    total = sum(tails.values()) * sum(heads.values())
    assert total == factorial(dds.out_stubs) * factorial(dds.in_stubs)
    sums = Counter()
    for tail_edges, wt in tails.items():
        for head_edges, wh in heads.items():
            h = DirectedHypergraph(dds.n, tuple(zip(tail_edges, head_edges)))
            w = wt * wh
            sums["DH"] += w * count_degenerate(h)
            sums["M"] += w * count_multi_pairs(h)
            sums["S"] += w * count_self_loops(h)
            sums["WS"] += w * count_weak_self_loops(h)
    return {k: Fraction(sums[k], total) for k in ("DH", "M", "S", "WS")}


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FunctionTable:
    """Values ``f1[i-1][v]`` (and ``f2[j-1][v]``) of the per-multiplicity functions."""

    f1: tuple[tuple[int, ...], ...]
    f2: tuple[tuple[int, ...], ...] = ()
    weight: int = 0

    @property
    def n(self) -> int:
        return len(self.f1[0]) if self.f1 else len(self.f2[0])

    @classmethod
    def random(
        cls, n: int, delta1: int, delta2: int = 0, weight: int = 0,
        seed: int = 0, index: int = 0, high: int = 3,
    ) -> "FunctionTable":
        rng = stream(seed, index)
        f1 = rng.integers(0, high + 1, size=(delta1, n))
        f2 = rng.integers(0, high + 1, size=(delta2, n))
        return cls(
            tuple(tuple(int(x) for x in row) for row in f1),
            tuple(tuple(int(x) for x in row) for row in f2),
            weight,
        )


def _tuple_weight(vs: Sequence[int]) -> tuple[int, Counter]:
    mult = Counter(vs)
    den = 1
    for m in mult.values():
        den *= factorial(m)
    return factorial(len(vs)) // den, mult


def _lhs(n: int, delta1: int, delta2: int, table: FunctionTable) -> int:
    total = 0
    for vs in product(range(n), repeat=delta1):
        dv, mult_v = _tuple_weight(vs)
        fv = 1
        for v, m in mult_v.items():
            fv *= table.f1[m - 1][v]
        if not fv:
            continue
        allowed = [u for u in range(n) if u not in mult_v]
        for ws in product(allowed, repeat=delta2):
            dw, mult_w = _tuple_weight(ws)
            fw = 1
            for u, m in mult_w.items():
                fw *= table.f2[m - 1][u]
            total += (dv * dw) ** table.weight * fv * fw
    return total


def _check_caps(n: int, delta1: int, delta2: int, weight: int, joint: bool) -> None:
    if n > IDENTITY_MAX_V:
        raise CapExceeded(f"|V|={n} exceeds {IDENTITY_MAX_V}")
    if not joint and delta1 > IDENTITY_MAX_DELTA:
        raise CapExceeded(f"delta={delta1} exceeds {IDENTITY_MAX_DELTA}")
    if delta1 + delta2 > IDENTITY_MAX_JOINT:
        raise CapExceeded(f"delta1+delta2={delta1 + delta2} exceeds {IDENTITY_MAX_JOINT}")
    if weight > IDENTITY_MAX_WEIGHT:
        raise CapExceeded(f"weight {weight} exceeds {IDENTITY_MAX_WEIGHT}")


def _result(lhs: int, rhs: Fraction) -> dict:
    return {"lhs": lhs, "rhs": rhs, "equal": rhs.denominator == 1 and lhs == rhs}


def check_corollary_identity(n: int, delta: int, table: FunctionTable) -> dict:
    """Single-family identity: tuple sum vs. expansion over ``a`` and ``R(a)``."""
    _check_caps(n, delta, 0, table.weight, joint=False)
    f = table.f1

    def moment(y):
        total = 0
        for v in range(n):
            term = 1
            for i, yi in enumerate(y):
                term *= f[i][v] ** yi
            total += term
        return total

    lhs = _lhs(n, delta, 0, table)
    rhs = single_expansion(delta, table.weight, moment)
    return _result(lhs, rhs)


def check_main_lemma_identity(
    n: int, delta1: int, delta2: int, table: FunctionTable
) -> dict:
    """Joint identity with tail tuple ``v`` and a head tuple avoiding ``v``'s vertices."""
    _check_caps(n, delta1, delta2, table.weight, joint=True)
    f1, f2 = table.f1, table.f2

    def moment(y, z):
        total = 0
        for v in range(n):
            term = 1
            for i, yi in enumerate(y):
                term *= f1[i][v] ** yi
            for j, zj in enumerate(z):
                term *= f2[j][v] ** zj
            total += term
        return total

    lhs = _lhs(n, delta1, delta2, table)
    rhs = coincidence_expansion(delta1, delta2, table.weight, moment)
    return _result(lhs, rhs)


def run_identity_trials(
    trials: int, seed: int, kind: str = "corollary",
    max_delta: Optional[int] = None, max_weight: int = IDENTITY_MAX_WEIGHT,
) -> list[dict]:
    """Randomized identity trials; trial ``t`` draws its shape and table from stream ``t``."""
    out = []
    for t in range(trials):
        rng = stream(seed, 2 * t + (kind == "lemma"))
        n = int(rng.integers(1, IDENTITY_MAX_V + 1))
        weight = int(rng.integers(0, max_weight + 1))
        if kind == "corollary":
            top = min(max_delta or IDENTITY_MAX_DELTA, IDENTITY_MAX_DELTA)
            delta1, delta2 = int(rng.integers(1, top + 1)), 0
        else:
            top = min(max_delta or IDENTITY_MAX_JOINT, IDENTITY_MAX_JOINT)
            delta1 = int(rng.integers(0, top + 1))
            delta2 = int(rng.integers(0, top - delta1 + 1))
            if delta1 + delta2 == 0:
                delta1 = 1
        table = FunctionTable.random(
            n, delta1, delta2, weight, seed=seed, index=(1 << 32) + 2 * t + (kind == "lemma")
        )
        if kind == "corollary":
            res = check_corollary_identity(n, delta1, table)
        else:
            res = check_main_lemma_identity(n, delta1, delta2, table)
        res.update(trial=t, n=n, delta1=delta1, delta2=delta2, weight=weight)
        out.append(res)
    return out


# ---------------------------------------------------------------------------
# comparison with the exact theorems and the built-in catalog
# ---------------------------------------------------------------------------

def compare_with_exact(seq) -> list[dict]:
    """Oracle vs. exact theorem per statistic.

    A statistic whose theorem refuses the instance (precondition) is reported
    with ``exact=None`` and ``equal=None`` rather than compared.
    """
    if isinstance(seq, DirectedDegreeSequence):
        truth = brute_force_directed(seq)
    else:
        truth = brute_force_undirected(seq)
    rows = []
    for stat, value in truth.items():
        try:
            ex = expected(seq, stat).value
        except PreconditionViolated as err:
            rows.append({"statistic": stat, "oracle": value, "exact": None,
                         "equal": None, "note": err.code})
            continue
        rows.append({"statistic": stat, "oracle": value, "exact": ex, "equal": ex == value})
    return rows


def _random_composition(rng, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.choice(np.arange(1, total), size=parts - 1, replace=False)) if parts > 1 else []
    bounds = [0, *[int(c) for c in cuts], total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def _random_spread(rng, total: int, n: int) -> list[int]:
    return [int(x) for x in np.bincount(rng.integers(0, n, size=total), minlength=n)]


CATALOG_SEED = 20240601

_HAND_UNDIRECTED = [
    ("loop-plus-edge", (2, 1, 1), (2, 2)),
    ("two-loops", (2, 2), (2, 2)),
    ("single-vertex-1", (1,), (1,)),
    ("single-vertex-3", (3,), (3,)),
    ("single-vertex-split", (4,), (2, 2)),
    ("single-vertex-mixed", (5,), (3, 2)),
    ("single-vertex-8", (8,), (2, 2, 2, 2)),
    ("all-size-1", (1, 1, 1), (1, 1, 1)),
    ("all-size-1-repeat", (2, 1), (1, 1, 1)),
    ("all-size-1-wide", (3, 2, 1, 2), (1,) * 8),
    ("mixed-3-2", (2, 2, 1), (3, 2)),
    ("mixed-4-2-2", (3, 3, 2), (4, 2, 2)),
    ("mixed-1-2-3", (2, 2, 2), (1, 2, 3)),
    ("triangle-graph", (2, 2, 2), (2, 2, 2)),
    ("four-cycle-graph", (2, 2, 2, 2), (2, 2, 2, 2)),
    ("two-triples", (2, 2, 2), (3, 3)),
    ("eight-in-one", (2, 2, 2, 2), (8,)),
    ("with-isolated", (0, 2, 2, 0), (2, 2)),
]

_HAND_DIRECTED = [
    ("digraph-pair", (1, 1), (1, 1), (1, 1), (1, 1)),
    ("single-loop", (1,), (1,), (1,), (1,)),
    ("unequal-sizes", (2, 1), (1, 1), (2, 1), (1, 1)),
    ("unequal-sizes-2", (1, 2, 0), (1, 1, 2), (1, 2), (2, 2)),
    ("two-by-two", (2, 2), (2, 2), (2, 2), (2, 2)),
    ("parallel-digraph", (2, 0), (0, 2), (1, 1), (1, 1)),
    ("disjoint-supports", (2, 2, 0, 0), (0, 0, 2, 2), (2, 2), (2, 2)),
    ("single-vertex-big", (6,), (6,), (3, 3), (2, 4)),
]


def catalog(
    undirected: int = 60, directed: int = 36, seed: int = CATALOG_SEED
) -> list[tuple[str, object]]:
    """Named tiny instances: hand-picked edge cases, then seeded random fill."""
    out: list[tuple[str, object]] = [
        (name, UndirectedDegreeSequence(d, e)) for name, d, e in _HAND_UNDIRECTED
    ]
    i = 0
    while sum(isinstance(s, UndirectedDegreeSequence) for _, s in out) < undirected:
        rng = stream(seed, i)
        total = int(rng.integers(1, UNDIRECTED_CAP + 1))
        n = int(rng.integers(1, 6))
        parts = int(rng.integers(1, total + 1))
        out.append((
            f"random-u{i}",
            UndirectedDegreeSequence(_random_spread(rng, total, n), _random_composition(rng, total, parts)),
        ))
        i += 1
    out.extend((name, DirectedDegreeSequence(*rest)) for name, *rest in _HAND_DIRECTED)
    j = 0
    while sum(isinstance(s, DirectedDegreeSequence) for _, s in out) < directed:
        rng = stream(seed, (1 << 20) + j)
        n = int(rng.integers(1, 5))
        t_total = int(rng.integers(1, DIRECTED_CAP + 1))
        h_total = int(rng.integers(1, DIRECTED_CAP + 1))
        m = int(rng.integers(1, min(t_total, h_total) + 1))
        out.append((
            f"random-d{j}",
            DirectedDegreeSequence(
                _random_spread(rng, t_total, n),
                _random_spread(rng, h_total, n),
                _random_composition(rng, t_total, m),
                _random_composition(rng, h_total, m),
            ),
        ))
        j += 1
    return out
