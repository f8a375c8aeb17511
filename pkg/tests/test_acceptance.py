"""Acceptance criteria, one ``criterion`` marker per criterion.

The terminal summary prints a PASS/FAIL line per criterion (see conftest.py).
"""

import time

import pytest

from hypersimple.asymp import convergence_ratio, is_monotone_approach, regular_family
from hypersimple.combin import enumerate_R, enumerate_R_hat, multiplicity_vectors
from hypersimple.core import DirectedDegreeSequence as DDS
from hypersimple.core import UndirectedDegreeSequence as UDS
from hypersimple.core import statistic_counts
from hypersimple.exact import (
    expected,
    expected_degenerate_directed,
    expected_degenerate_undirected,
    expected_multi_directed,
    expected_multi_undirected,
    expected_self_loops,
    expected_weak_self_loops,
    reduced_digraph_multi,
    reduced_digraph_selfloops,
    reduced_graph_multi,
    reduced_graph_selfloops,
)
from hypersimple.oracle import catalog, compare_with_exact, run_identity_trials
from hypersimple.rng import stream
from hypersimple.sampler import monte_carlo

from test_core import FIG_DIRECTED, FIG_UNDIRECTED

AC1 = ("AC1", "exact theorems equal brute-force enumeration on the catalog")
AC2 = ("AC2", "graph and digraph reductions hold exactly")
AC3 = ("AC3", "partition identities hold on seeded trials")
AC4 = ("AC4", "Monte Carlo estimates cover the exact values")
AC5 = ("AC5", "exact/asymptotic ratios approach 1 along the n ladder")
AC6 = ("AC6", "enumeration and figure pins")

LADDER = [102, 1002, 10002]
LADDER_TOLERANCE = 0.05
MC_SAMPLES = 20000
MC_SEED = 20240601


def _random_graph_sequence(index: int) -> UDS:
    rng = stream(2, index)
    n = int(rng.integers(1, 51))
    degrees = rng.poisson(rng.uniform(0.5, 4.0), size=n)
    if degrees.sum() % 2:
        degrees[int(rng.integers(n))] += 1
    if degrees.sum() == 0:
        degrees[0] = 2
    return UDS(degrees.tolist(), [2] * (int(degrees.sum()) // 2))


def _random_digraph_sequence(index: int) -> DDS:
    rng = stream(3, index)
    n = int(rng.integers(1, 51))
    m = int(rng.integers(1, 3 * n + 1))
    out = rng.multinomial(m, [1 / n] * n)
    in_ = rng.multinomial(m, [1 / n] * n)
    return DDS(out.tolist(), in_.tolist(), [1] * m, [1] * m)


# ---------------------------------------------------------------------------
# AC1
# ---------------------------------------------------------------------------

@pytest.mark.criterion(*AC1)
def test_catalog_exact_equals_oracle():
    start = time.perf_counter()
    entries = catalog()
    undirected = [s for _, s in entries if isinstance(s, UDS)]
    directed = [s for _, s in entries if isinstance(s, DDS)]
    assert len(undirected) >= 50 and len(directed) >= 30
    assert all(s.total_stubs <= 8 for s in undirected)
    assert all(s.out_stubs <= 6 and s.in_stubs <= 6 for s in directed)
    assert any(set(s.edge_degrees) == {1} for s in undirected)
    assert any(s.n == 1 for s in undirected)
    assert any(len(set(s.edge_degrees)) > 1 for s in undirected)

    mismatches = []
    compared = 0
    for name, seq in entries:
        for row in compare_with_exact(seq):
            compared += 1
            if row["equal"] is not True:
                mismatches.append((name, row["statistic"], row["oracle"], row["exact"]))
    assert mismatches == []
    assert compared == 2 * len(undirected) + 4 * len(directed)
    assert time.perf_counter() - start < 120


# ---------------------------------------------------------------------------
# AC2
# ---------------------------------------------------------------------------

@pytest.mark.criterion(*AC2)
def test_graph_reductions():
    for i in range(100):
        ds = _random_graph_sequence(i)
        assert ds.n <= 50
        assert expected_degenerate_undirected(ds).value == reduced_graph_selfloops(ds), i
        assert expected_multi_undirected(ds).value == reduced_graph_multi(ds), i


@pytest.mark.criterion(*AC2)
def test_digraph_reductions():
    for i in range(100):
        dds = _random_digraph_sequence(i)
        loops = reduced_digraph_selfloops(dds)
        assert expected_degenerate_directed(dds).value == 0, i
        assert expected_multi_directed(dds).value == reduced_digraph_multi(dds), i
        assert expected_self_loops(dds).value == loops, i
        assert expected_weak_self_loops(dds).value == loops, i
        assert expected_self_loops(dds).value == expected_weak_self_loops(dds).value, i


# ---------------------------------------------------------------------------
# AC3
# ---------------------------------------------------------------------------

@pytest.mark.criterion(*AC3)
def test_identity_trials():
    start = time.perf_counter()
    corollary = run_identity_trials(200, seed=31, kind="corollary")
    lemma = run_identity_trials(100, seed=32, kind="lemma")
    assert len(corollary) == 200 and len(lemma) == 100
    assert [t for t in corollary + lemma if not t["equal"]] == []
    assert time.perf_counter() - start < 60


# ---------------------------------------------------------------------------
# AC4
# ---------------------------------------------------------------------------

REGULAR_TRIPLES = UDS((3,) * 300, (3,) * 300)
REGULAR_DIGRAPH = DDS((2,) * 300, (2,) * 300, (2,) * 300, (2,) * 300)
_mc_cache = {}


def _mc(seq, workers):
    key = (id(seq), workers)
    if key not in _mc_cache:
        _mc_cache[key] = monte_carlo(seq, samples=MC_SAMPLES, seed=MC_SEED, workers=workers)
    return _mc_cache[key]


@pytest.mark.criterion(*AC4)
@pytest.mark.parametrize("stat", ["DH", "M"])
def test_monte_carlo_undirected(stat):
    est = _mc(REGULAR_TRIPLES, 1)[stat]
    exact = float(expected(REGULAR_TRIPLES, stat).value)
    assert abs(est.mean - exact) <= 4 * est.std_error, (est, exact)


@pytest.mark.criterion(*AC4)
@pytest.mark.parametrize("stat", ["S", "WS"])
def test_monte_carlo_directed(stat):
    est = _mc(REGULAR_DIGRAPH, 1)[stat]
    exact = float(expected(REGULAR_DIGRAPH, stat).value)
    assert abs(est.mean - exact) <= 4 * est.std_error, (est, exact)


@pytest.mark.criterion(*AC4)
@pytest.mark.parametrize("seq", [REGULAR_TRIPLES, REGULAR_DIGRAPH], ids=["undirected", "directed"])
def test_monte_carlo_worker_invariance(seq):
    start = time.perf_counter()
    one = _mc(seq, 1)
    eight = _mc(seq, 8)
    assert {k: v.mean for k, v in one.items()} == {k: v.mean for k, v in eight.items()}
    assert one == eight
    assert time.perf_counter() - start < 300


# ---------------------------------------------------------------------------
# AC5
# ---------------------------------------------------------------------------

LADDERS = {
    "DH": (3, 3),
    "M": (3, 3),
    "S": (2, (2, 2)),
    "WS": (2, (2, 2)),
}

# observed exact/asymptotic ratios at n = 102, 1002, 10002
RATIO_PINS = {
    "DH": (0.8580672993960311, 0.857237810168013, 0.8571523780958834),
    "M": (1.0098569871366274, 1.0009985569987048, 1.0000999855569999),
    "S": (1.001213327185809, 1.0001246258420657, 1.0000124962508437),
    "WS": (0.7921424931447014, 0.79920144745438, 0.7999200144974504),
}


def _ladder(stat):
    degree, edge_size = LADDERS[stat]
    return convergence_ratio(stat, regular_family(degree, edge_size, LADDER))


@pytest.mark.criterion(*AC5)
@pytest.mark.parametrize("stat", list(LADDERS))
def test_convergence_ladder(stat):
    points = _ladder(stat)
    assert [p.n for p in points] == LADDER
    report = [(p.n, p.ratio) for p in points]
    assert is_monotone_approach(points), report
    assert points[-1].deviation < LADDER_TOLERANCE, report


@pytest.mark.parametrize("stat", list(LADDERS))
def test_convergence_ratio_pins(stat):
    assert tuple(p.ratio for p in _ladder(stat)) == pytest.approx(RATIO_PINS[stat], rel=1e-12)


# ---------------------------------------------------------------------------
# AC6
# ---------------------------------------------------------------------------

@pytest.mark.criterion(*AC6)
def test_multiplicity_vector_pin():
    assert multiplicity_vectors(4) == [
        (4, 0, 0, 0), (2, 1, 0, 0), (1, 0, 1, 0), (0, 2, 0, 0), (0, 0, 0, 1),
    ]


@pytest.mark.criterion(*AC6)
def test_vector_partition_pin():
    got = {frozenset(p) for p in enumerate_R((2, 1, 0, 0))}
    want = {
        frozenset({((1, 0, 0, 0), 2), ((0, 1, 0, 0), 1)}),
        frozenset({((1, 0, 0, 0), 1), ((1, 1, 0, 0), 1)}),
        frozenset({((0, 1, 0, 0), 1), ((2, 0, 0, 0), 1)}),
        frozenset({((2, 1, 0, 0), 1)}),
    }
    assert len(enumerate_R((2, 1, 0, 0))) == 4 and got == want


@pytest.mark.criterion(*AC6)
def test_joint_partition_pin():
    got = {frozenset(p) for p in enumerate_R_hat((0, 1), (2, 0))}
    want = {
        frozenset({(((0, 1), (0, 0)), 1), (((0, 0), (1, 0)), 2)}),
        frozenset({(((0, 1), (0, 0)), 1), (((0, 0), (2, 0)), 1)}),
        frozenset({(((0, 1), (1, 0)), 1), (((0, 0), (1, 0)), 1)}),
        frozenset({(((0, 1), (2, 0)), 1)}),
    }
    assert len(enumerate_R_hat((0, 1), (2, 0))) == 4 and got == want


@pytest.mark.criterion(*AC6)
def test_figure_counts():
    assert statistic_counts(FIG_UNDIRECTED).as_dict() == {"DH": 1, "M": 1}
    assert statistic_counts(FIG_DIRECTED).as_dict() == {"DH": 1, "M": 1, "S": 1, "WS": 2}
