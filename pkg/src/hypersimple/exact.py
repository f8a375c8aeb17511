"""Exact expectations of DH, M, S and WS under uniform stub matching.

Every expectation is a sum over edges of a term that depends on the edge only
through its size (or ``(tail, head)`` size pair), so terms are evaluated once
per size class and multiplied by the class count.  Degree moments are taken
over a degree histogram rather than the raw vertex list.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .combin import (
    Vector,
    coincidence_expansion,
    falling,
    multiplicity_vectors,
    reciprocal_falling,
    single_expansion,
)
from .core import (
    DirectedDegreeSequence,
    UndirectedDegreeSequence,
    validate_directed,
    validate_undirected,
)
from .errors import (
    DegenerateDenominator,
    EdgeTooLarge,
    InvalidParams,
    NotADigraph,
    NotAGraph,
    PreconditionViolated,
)

STATISTICS_UNDIRECTED = ("DH", "M")
STATISTICS_DIRECTED = ("DH", "M", "S", "WS")


@dataclass(frozen=True)
class ExpectationReport:
    value: Fraction
    statistic: str
    model: str
    per_edge_terms: Optional[dict] = field(default=None, compare=False)

    @property
    def value_float(self) -> float:
        # Fraction.__float__ rounds to nearest
        return float(self.value)


# ---------------------------------------------------------------------------
# histogram moments
# ---------------------------------------------------------------------------

def _hist_sum(hist: Counter, fn) -> int:
    return sum(count * fn(key) for key, count in hist.items())


def _power_sum(hist: Counter, i: int) -> int:
    return _hist_sum(hist, lambda d: d**i)


def _double_ff(hist: Counter):
    def moment(y: Vector) -> int:
        def per(d: int) -> int:
            out = 1
            for i, yi in enumerate(y, start=1):
                if yi:
                    out *= falling(d, 2 * i) ** yi
            return out

        return _hist_sum(hist, per)

    return moment


def _paired_ff(hist: Counter):
    def moment(y: Vector) -> int:
        def per(key) -> int:
            do, di = key
            out = 1
            for i, yi in enumerate(y, start=1):
                if yi:
                    out *= (falling(do, i) * falling(di, i)) ** yi
            return out

        return _hist_sum(hist, per)

    return moment


def _split_ff(hist: Counter):
    def moment(y: Vector, z: Vector) -> int:
        def per(key) -> int:
            do, di = key
            out = 1
            for i, yi in enumerate(y, start=1):
                if yi:
                    out *= falling(do, i) ** yi
            for j, zj in enumerate(z, start=1):
                if zj:
                    out *= falling(di, j) ** zj
            return out

        return _hist_sum(hist, per)

    return moment


def _distinct_sum(delta: int, power_sums: Sequence[int]) -> Fraction:
    """``sum_a (-1)^{sum (i-1) a_i} prod_i (1/a_i!) (p_i / i)^{a_i}``.

    This is the elementary symmetric polynomial of degree ``delta`` in the
    vertex degrees; multiplied by ``delta!`` it counts ordered choices of
    ``delta`` stubs from pairwise distinct vertices.
    """
    total = Fraction(0)
    for a in multiplicity_vectors(delta):
        term = Fraction(1)
        sign = 0
        for i, ai in enumerate(a, start=1):
            if ai:
                sign += (i - 1) * ai
                term *= Fraction(power_sums[i - 1], i) ** ai / factorial(ai)
        total += -term if sign % 2 else term
    return total


# ---------------------------------------------------------------------------
# undirected
# ---------------------------------------------------------------------------

def expected_degenerate_undirected(ds: UndirectedDegreeSequence) -> ExpectationReport:
    validate_undirected(ds)
    S = ds.total_stubs
    hist = Counter(ds.vertex_degrees)
    classes = ds.edge_classes()
    if classes:
        largest = max(classes)
        if largest > S:
            raise EdgeTooLarge(f"edge size {largest} exceeds stub total {S}")
        power_sums = [_power_sum(hist, i) for i in range(1, largest + 1)]
    terms = {}
    value = Fraction(ds.num_edges)
    for delta, count in sorted(classes.items()):
        p_simple = factorial(delta) * reciprocal_falling(S, delta) * _distinct_sum(delta, power_sums)
        terms[delta] = count * (1 - p_simple)
        value -= count * p_simple
    _check_range(value, 0, ds.num_edges, "DH")
    return ExpectationReport(value, "DH", "undirected", terms)


def expected_multi_undirected(ds: UndirectedDegreeSequence) -> ExpectationReport:
    validate_undirected(ds)
    S = ds.total_stubs
    # only edges with a same-size partner enter the sum, so only they are checked
    for delta, count in ds.edge_classes().items():
        if count >= 2 and 2 * delta > S:
            raise PreconditionViolated(f"edge size {delta} exceeds half the stub total {S}")
    hist = Counter(ds.vertex_degrees)
    moment = _double_ff(hist)
    terms = {}
    value = Fraction(0)
    for delta, count in sorted(ds.edge_classes().items()):
        if count < 2:
            continue
        pair_prob = reciprocal_falling(S, 2 * delta) * single_expansion(delta, 1, moment)
        terms[delta] = Fraction(count * (count - 1), 2) * pair_prob
        value += terms[delta]
    m = ds.num_edges
    _check_range(value, 0, Fraction(m * (m - 1), 2), "M")
    return ExpectationReport(value, "M", "undirected", terms)


# ---------------------------------------------------------------------------
# directed
# ---------------------------------------------------------------------------

def _check_side_sizes(dds: DirectedDegreeSequence, factor: int, exc, min_count: int = 1) -> None:
    S_out, S_in = dds.out_stubs, dds.in_stubs
    for (t, h), count in dds.edge_classes().items():
        if count >= min_count and (factor * t > S_out or factor * h > S_in):
            raise exc(
                f"edge ({t}, {h}) too large for stub totals ({S_out}, {S_in})"
                + (" (needs 2x)" if factor == 2 else "")
            )


def expected_degenerate_directed(dds: DirectedDegreeSequence) -> ExpectationReport:
    validate_directed(dds)
    _check_side_sizes(dds, 1, EdgeTooLarge)
    S_out, S_in = dds.out_stubs, dds.in_stubs
    out_hist = Counter(dds.out_degrees)
    in_hist = Counter(dds.in_degrees)
    classes = dds.edge_classes()
    terms = {}
    value = Fraction(dds.num_edges)
    if classes:
        max_t = max(t for t, _ in classes)
        max_h = max(h for _, h in classes)
        out_sums = [_power_sum(out_hist, i) for i in range(1, max_t + 1)]
        in_sums = [_power_sum(in_hist, i) for i in range(1, max_h + 1)]
    for (t, h), count in sorted(classes.items()):
        p_simple = (
            factorial(t) * factorial(h)
            * reciprocal_falling(S_out, t) * reciprocal_falling(S_in, h)
            * _distinct_sum(t, out_sums) * _distinct_sum(h, in_sums)
        )
        terms[(t, h)] = count * (1 - p_simple)
        value -= count * p_simple
    _check_range(value, 0, dds.num_edges, "DH")
    return ExpectationReport(value, "DH", "directed", terms)


def expected_multi_directed(dds: DirectedDegreeSequence) -> ExpectationReport:
    validate_directed(dds)
    _check_side_sizes(dds, 2, PreconditionViolated, min_count=2)
    S_out, S_in = dds.out_stubs, dds.in_stubs
    out_moment = _double_ff(Counter(dds.out_degrees))
    in_moment = _double_ff(Counter(dds.in_degrees))
    terms = {}
    value = Fraction(0)
    for (t, h), count in sorted(dds.edge_classes().items()):
        if count < 2:
            continue
        pair_prob = (
            reciprocal_falling(S_out, 2 * t) * reciprocal_falling(S_in, 2 * h)
            * single_expansion(t, 1, out_moment) * single_expansion(h, 1, in_moment)
        )
        terms[(t, h)] = Fraction(count * (count - 1), 2) * pair_prob
        value += terms[(t, h)]
    m = dds.num_edges
    _check_range(value, 0, Fraction(m * (m - 1), 2), "M")
    return ExpectationReport(value, "M", "directed", terms)


def expected_self_loops(dds: DirectedDegreeSequence) -> ExpectationReport:
    validate_directed(dds)
    S_out, S_in = dds.out_stubs, dds.in_stubs
    moment = _paired_ff(Counter(zip(dds.out_degrees, dds.in_degrees)))
    terms = {}
    value = Fraction(0)
    n_star = 0
    for (t, h), count in sorted(dds.edge_classes().items()):
        if t != h:
            continue
        n_star += count
        if t > min(S_out, S_in):
            raise EdgeTooLarge(f"edge size {t} exceeds stub totals ({S_out}, {S_in})")
        p_loop = (
            reciprocal_falling(S_out, t) * reciprocal_falling(S_in, t)
            * single_expansion(t, 1, moment)
        )
        terms[(t, h)] = count * p_loop
        value += terms[(t, h)]
    _check_range(value, 0, n_star, "S")
    return ExpectationReport(value, "S", "directed", terms)


def expected_weak_self_loops(dds: DirectedDegreeSequence) -> ExpectationReport:
    validate_directed(dds)
    _check_side_sizes(dds, 1, EdgeTooLarge)
    S_out, S_in = dds.out_stubs, dds.in_stubs
    moment = _split_ff(Counter(zip(dds.out_degrees, dds.in_degrees)))
    terms = {}
    value = Fraction(dds.num_edges)
    for (t, h), count in sorted(dds.edge_classes().items()):
        p_disjoint = (
            reciprocal_falling(S_out, t) * reciprocal_falling(S_in, h)
            * coincidence_expansion(t, h, 0, moment)
        )
        terms[(t, h)] = count * (1 - p_disjoint)
        value -= count * p_disjoint
    _check_range(value, 0, dds.num_edges, "WS")
    return ExpectationReport(value, "WS", "directed", terms)


EXACT_UNDIRECTED = {
    "DH": expected_degenerate_undirected,
    "M": expected_multi_undirected,
}
EXACT_DIRECTED = {
    "DH": expected_degenerate_directed,
    "M": expected_multi_directed,
    "S": expected_self_loops,
    "WS": expected_weak_self_loops,
}


def expected(seq, statistic: str) -> ExpectationReport:
    table = EXACT_DIRECTED if isinstance(seq, DirectedDegreeSequence) else EXACT_UNDIRECTED
    try:
        fn = table[statistic]
    except KeyError:
        raise InvalidParams(
            f"statistic {statistic!r} not defined for this model; choose from {list(table)}"
        ) from None
    return fn(seq)


def _check_range(value: Fraction, lo, hi, name: str) -> None:
    if not lo <= value <= hi:
        raise AssertionError(f"E[{name}] = {value} outside [{lo}, {hi}]")


# ---------------------------------------------------------------------------
# closed-form graph / digraph reductions
# ---------------------------------------------------------------------------

def _require_graph(ds: UndirectedDegreeSequence) -> None:
    validate_undirected(ds)
    if any(d != 2 for d in ds.edge_degrees):
        raise NotAGraph("all edges must have size 2")


def _require_digraph(dds: DirectedDegreeSequence) -> None:
    validate_directed(dds)
    if any(t != 1 for t in dds.tail_degrees) or any(h != 1 for h in dds.head_degrees):
        raise NotADigraph("all edges must have tail and head size 1")


def _mean(values) -> Fraction:
    values = list(values)
    return Fraction(sum(values), len(values))


def reduced_graph_selfloops(ds: UndirectedDegreeSequence) -> Fraction:
    """``(E[d^2] - E[d]) / (2 E[d] - 2/n)``."""
    _require_graph(ds)
    n = ds.n
    d = ds.vertex_degrees
    m1 = _mean(d)
    m2 = _mean(x * x for x in d)
    # stub total is even, so the denominator never vanishes
    return (m2 - m1) / (2 * m1 - Fraction(2, n))


def reduced_graph_multi(ds: UndirectedDegreeSequence) -> Fraction:
    """Finite-n closed form for multi-edge pairs in the configuration model."""
    _require_graph(ds)
    n = ds.n
    d = ds.vertex_degrees
    m1 = _mean(d)
    ff2 = _mean(falling(x, 2) for x in d)
    ff2_sq = _mean(falling(x, 2) ** 2 for x in d)
    ff4 = _mean(falling(x, 4) for x in d)
    num = ff2**2 - Fraction(1, n) * ff2_sq + Fraction(1, 2 * n) * ff4
    den = 4 * (m1 - Fraction(1, n)) * (m1 - Fraction(3, n))
    if den == 0:
        if num == 0:
            return Fraction(0)
        raise DegenerateDenominator(f"denominator vanishes for n={n}, E[d]={m1}")
    return num / den


def reduced_digraph_selfloops(dds: DirectedDegreeSequence) -> Fraction:
    """``E[d_out d_in] / E[d_in]``."""
    _require_digraph(dds)
    if dds.in_stubs == 0:
        return Fraction(0)
    cross = _mean(o * i for o, i in zip(dds.out_degrees, dds.in_degrees))
    return cross / _mean(dds.in_degrees)


def reduced_digraph_multi(dds: DirectedDegreeSequence) -> Fraction:
    """``n (E[dout^2]-E[dout]) (E[din^2]-E[din]) / (2 E[din] (n E[dout] - 1))``."""
    _require_digraph(dds)
    n = dds.n
    o, i = dds.out_degrees, dds.in_degrees
    ff_out = _mean(falling(x, 2) for x in o)
    ff_in = _mean(falling(x, 2) for x in i)
    den = 2 * _mean(i) * (n * _mean(o) - 1)
    if den == 0:
        if ff_out * ff_in == 0:
            return Fraction(0)
        raise DegenerateDenominator("denominator vanishes")
    return n * ff_out * ff_in / den
