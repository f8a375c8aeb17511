from collections import Counter

from hypothesis import given
from hypothesis import strategies as st

from hypersimple.combin import enumerate_R, enumerate_R_hat, marginal, multiplicity_vectors
from hypersimple.core import DirectedDegreeSequence as DDS
from hypersimple.core import DirectedHypergraph, Hypergraph, statistic_counts
from hypersimple.core import UndirectedDegreeSequence as UDS
from hypersimple.exact import expected
from hypersimple.oracle import (
    FunctionTable,
    brute_force_directed,
    brute_force_undirected,
    check_corollary_identity,
    check_main_lemma_identity,
)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _distinct_block_multisets(labels, to_part):
    """Collapse labelled set partitions to multisets of block types."""
    seen = set()
    for partition in _set_partitions(list(range(len(labels)))):
        blocks = Counter(to_part([labels[i] for i in block]) for block in partition)
        seen.add(frozenset(blocks.items()))
    return seen


def _canon(partitions):
    return {frozenset(p) for p in partitions}


@st.composite
def compositions(draw, total, parts, min_part=0):
    cuts = sorted(draw(st.lists(st.integers(0, total - min_part * parts), min_size=parts - 1, max_size=parts - 1)))
    bounds = [0] + cuts + [total - min_part * parts]
    return [b - a + min_part for a, b in zip(bounds, bounds[1:])]


@st.composite
def undirected_sequences(draw, max_stubs=7):
    total = draw(st.integers(1, max_stubs))
    m = draw(st.integers(1, total))
    n = draw(st.integers(1, 4))
    return UDS(draw(compositions(total, n)), draw(compositions(total, m, min_part=1)))


@st.composite
def directed_sequences(draw, max_stubs=5):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 3))
    s_out = draw(st.integers(m, max_stubs))
    s_in = draw(st.integers(m, max_stubs))
    return DDS(
        draw(compositions(s_out, n)), draw(compositions(s_in, n)),
        draw(compositions(s_out, m, min_part=1)), draw(compositions(s_in, m, min_part=1)),
    )


class TestCombinatorics:
    @given(st.integers(1, 9))
    def test_vectors_have_weight_delta(self, delta):
        for a in multiplicity_vectors(delta):
            assert sum((i + 1) * x for i, x in enumerate(a)) == delta

    @given(st.integers(1, 5).flatmap(lambda d: st.sampled_from(multiplicity_vectors(d))))
    def test_vector_partitions_match_set_partitions(self, a):
        labels = [i for i, x in enumerate(a) for _ in range(x)]

        def to_part(block):
            c = Counter(block)
            return tuple(c[i] for i in range(len(a)))

        assert _canon(enumerate_R(a)) == _distinct_block_multisets(labels, to_part)

    @given(
        st.integers(1, 4).flatmap(lambda d: st.sampled_from(multiplicity_vectors(d))),
        st.integers(1, 3).flatmap(lambda d: st.sampled_from(multiplicity_vectors(d))),
    )
    def test_joint_partitions_match_set_partitions(self, a, b):
        labels = [("t", i) for i, x in enumerate(a) for _ in range(x)]
        labels += [("h", i) for i, x in enumerate(b) for _ in range(x)]

        def to_part(block):
            c = Counter(block)
            return (
                tuple(c[("t", i)] for i in range(len(a))),
                tuple(c[("h", i)] for i in range(len(b))),
            )

        assert _canon(enumerate_R_hat(a, b)) == _distinct_block_multisets(labels, to_part)

    @given(st.integers(1, 6).flatmap(lambda d: st.sampled_from(multiplicity_vectors(d))))
    def test_marginals(self, a):
        for alpha in enumerate_R(a):
            assert marginal(alpha, len(a)) == a


class TestCounts:
    @given(undirected_sequences(), st.randoms(use_true_random=False))
    def test_relabel_invariance(self, ds, rnd):
        stubs = [v for v, d in enumerate(ds.vertex_degrees) for _ in range(d)]
        rnd.shuffle(stubs)
        edges, i = [], 0
        for size in ds.edge_degrees:
            edges.append(stubs[i:i + size])
            i += size
        perm = list(range(ds.n))
        rnd.shuffle(perm)
        a = statistic_counts(Hypergraph(ds.n, edges))
        b = statistic_counts(Hypergraph(ds.n, [[perm[v] for v in e] for e in reversed(edges)]))
        assert a == b
        m = len(edges)
        assert 0 <= a.degenerate <= m and 0 <= a.multi_pairs <= m * (m - 1) // 2

    @given(directed_sequences(), st.randoms(use_true_random=False))
    def test_directed_bounds(self, dds, rnd):
        def blocks(degrees, sizes):
            stubs = [v for v, d in enumerate(degrees) for _ in range(d)]
            rnd.shuffle(stubs)
            out, i = [], 0
            for size in sizes:
                out.append(stubs[i:i + size])
                i += size
            return out

        h = DirectedHypergraph(dds.n, list(zip(blocks(dds.out_degrees, dds.tail_degrees),
                                               blocks(dds.in_degrees, dds.head_degrees))))
        c = statistic_counts(h)
        assert c.self_loops <= c.weak_self_loops <= len(dds.tail_degrees)


class TestExactAgainstOracle:
    @given(undirected_sequences())
    def test_undirected(self, ds):
        oracle = brute_force_undirected(ds)
        for stat in ("DH", "M"):
            assert expected(ds, stat).value == oracle[stat]

    @given(directed_sequences())
    def test_directed(self, dds):
        oracle = brute_force_directed(dds)
        for stat in ("DH", "M", "S", "WS"):
            assert expected(dds, stat).value == oracle[stat]


class TestExactInvariance:
    @given(undirected_sequences(max_stubs=12), st.randoms(use_true_random=False))
    def test_order_invariance(self, ds, rnd):
        vs, es = list(ds.vertex_degrees), list(ds.edge_degrees)
        rnd.shuffle(vs)
        rnd.shuffle(es)
        shuffled = UDS(vs, es)
        for stat in ("DH", "M"):
            assert expected(ds, stat).value == expected(shuffled, stat).value

    @given(directed_sequences(max_stubs=7), st.randoms(use_true_random=False))
    def test_directed_order_invariance(self, dds, rnd):
        perm = list(range(dds.n))
        rnd.shuffle(perm)
        edges = list(zip(dds.tail_degrees, dds.head_degrees))
        rnd.shuffle(edges)
        shuffled = DDS(
            [dds.out_degrees[p] for p in perm], [dds.in_degrees[p] for p in perm],
            [t for t, _ in edges], [h for _, h in edges],
        )
        values = {}
        for stat in ("DH", "M", "S", "WS"):
            values[stat] = expected(dds, stat).value
            assert values[stat] == expected(shuffled, stat).value
            assert values[stat] >= 0
        assert values["S"] <= values["WS"] <= len(edges)


class TestIdentities:
    @given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2), st.integers(0, 2 ** 32))
    def test_corollary(self, n, delta, weight, seed):
        table = FunctionTable.random(n, delta, weight=weight, seed=seed)
        assert check_corollary_identity(n, delta, table)["equal"]

    @given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2), st.integers(0, 2 ** 32))
    def test_lemma(self, n, d1, d2, seed):
        table = FunctionTable.random(n, d1, d2, weight=1, seed=seed)
        assert check_main_lemma_identity(n, d1, d2, table)["equal"]
