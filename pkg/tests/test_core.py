import pytest

from hypersimple.core import (
    DirectedDegreeSequence,
    DirectedHypergraph,
    Hypergraph,
    UndirectedDegreeSequence,
    check_realizes,
    count_degenerate,
    count_multi_pairs,
    count_self_loops,
    count_weak_self_loops,
    statistic_counts,
    validate_directed,
    validate_undirected,
)
from hypersimple.errors import (
    EmptyEdge,
    EmptyHead,
    EmptyTail,
    LengthMismatch,
    NegativeDegree,
    NoVertices,
    StubMismatch,
    StubMismatchIn,
    StubMismatchOut,
    ValidationError,
)

A, B, C, D, E, F = range(6)

FIG_UNDIRECTED = Hypergraph(6, [(A, B, D), (A, B, D), (C, C, F)])
FIG_DIRECTED = DirectedHypergraph(6, [
    ((A, D), (A, B)),
    ((D, D), (E,)),
    ((B,), (C,)),
    ((B,), (C,)),
    ((C, F), (C, F)),
])


class TestValidation:
    def test_undirected_ok(self):
        validate_undirected(UndirectedDegreeSequence((2, 1, 1), (2, 2)))

    def test_empty_edge_set_ok(self):
        validate_undirected(UndirectedDegreeSequence((0, 0), ()))

    def test_stub_mismatch(self):
        with pytest.raises(StubMismatch) as err:
            validate_undirected(UndirectedDegreeSequence((1, 1), (3,)))
        assert (err.value.vertex_stubs, err.value.edge_stubs) == (2, 3)

    def test_empty_edge(self):
        with pytest.raises(EmptyEdge) as err:
            validate_undirected(UndirectedDegreeSequence((1, 0), (1, 0)))
        assert err.value.index == 1

    def test_no_vertices(self):
        with pytest.raises(NoVertices):
            validate_undirected(UndirectedDegreeSequence((), ()))

    def test_negative_degree(self):
        with pytest.raises(NegativeDegree):
            validate_undirected(UndirectedDegreeSequence((3, -1), (2,)))

    def test_directed_ok(self):
        validate_directed(DirectedDegreeSequence((1, 1), (1, 1), (1, 1), (1, 1)))
        validate_directed(DirectedDegreeSequence((2,), (1,), (2,), (1,)))

    def test_directed_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            validate_directed(DirectedDegreeSequence((1, 1), (1, 1), (1, 1), (2,)))

    def test_directed_sides_checked_separately(self):
        with pytest.raises(StubMismatchOut):
            validate_directed(DirectedDegreeSequence((2, 1), (1, 1), (1, 1), (1, 1)))
        with pytest.raises(StubMismatchIn):
            validate_directed(DirectedDegreeSequence((1, 1), (1, 2), (1, 1), (1, 1)))

    def test_empty_tail_and_head(self):
        with pytest.raises(EmptyTail):
            validate_directed(DirectedDegreeSequence((1,), (1,), (0, 1), (1, 0)))
        with pytest.raises(EmptyHead):
            validate_directed(DirectedDegreeSequence((1,), (0,), (1,), (0,)))

    def test_errors_are_value_errors(self):
        assert issubclass(StubMismatch, ValidationError)
        assert issubclass(ValidationError, ValueError)


class TestHypergraph:
    def test_edges_are_canonical(self):
        h = Hypergraph(3, [(2, 0, 2)])
        assert h.edges == ((0, 2, 2),)

    def test_degree_sequence_round_trip(self):
        seq = FIG_UNDIRECTED.degree_sequence()
        assert seq.vertex_degrees == (2, 2, 2, 2, 0, 1)
        check_realizes(FIG_UNDIRECTED, seq)

    def test_directed_degrees(self):
        assert FIG_DIRECTED.out_degrees() == (1, 2, 1, 3, 0, 1)
        assert FIG_DIRECTED.in_degrees() == (1, 1, 3, 0, 1, 1)

    def test_check_realizes_rejects(self):
        with pytest.raises(ValidationError):
            check_realizes(FIG_UNDIRECTED, UndirectedDegreeSequence((3, 1, 2, 2, 0, 1), (3, 3, 3)))


class TestStatistics:
    def test_figure_undirected(self):
        assert count_degenerate(FIG_UNDIRECTED) == 1
        assert count_multi_pairs(FIG_UNDIRECTED) == 1

    def test_figure_directed(self):
        counts = statistic_counts(FIG_DIRECTED)
        assert counts.as_dict() == {"DH": 1, "M": 1, "S": 1, "WS": 2}

    def test_size_one_edges_never_degenerate(self):
        assert count_degenerate(Hypergraph(2, [(0,), (0,), (1,)])) == 0

    def test_three_identical_edges(self):
        assert count_multi_pairs(Hypergraph(2, [(0, 1)] * 3)) == 3

    def test_distinct_edges(self):
        assert count_multi_pairs(Hypergraph(3, [(0, 1), (1, 2), (0, 2)])) == 0

    def test_directed_multi_needs_tail_and_head(self):
        h = DirectedHypergraph(3, [((0,), (1,)), ((0,), (2,)), ((0,), (1,))])
        assert count_multi_pairs(h) == 1

    def test_self_loops(self):
        assert count_self_loops(DirectedHypergraph(2, [((0,), (1,))])) == 0
        assert count_self_loops(DirectedHypergraph(1, [((0, 0), (0, 0))])) == 1

    def test_weak_self_loops_use_sets(self):
        h = DirectedHypergraph(2, [((0, 0), (0, 1)), ((0,), (1,))])
        assert count_weak_self_loops(h) == 1
        assert count_self_loops(h) == 0

    def test_undirected_counts_have_no_directed_fields(self):
        assert statistic_counts(FIG_UNDIRECTED).as_dict() == {"DH": 1, "M": 1}
