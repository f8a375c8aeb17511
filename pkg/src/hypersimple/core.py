"""Degree sequences, realized hypergraphs and the four simplicity statistics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import (
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


def _ints(values: Iterable[int]) -> tuple[int, ...]:
    return tuple(int(v) for v in values)


@dataclass(frozen=True)
class UndirectedDegreeSequence:
    vertex_degrees: tuple[int, ...]
    edge_degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertex_degrees", _ints(self.vertex_degrees))
        object.__setattr__(self, "edge_degrees", _ints(self.edge_degrees))

    @property
    def n(self) -> int:
        return len(self.vertex_degrees)

    @property
    def num_edges(self) -> int:
        return len(self.edge_degrees)

    @property
    def total_stubs(self) -> int:
        return sum(self.vertex_degrees)

    def edge_classes(self) -> Counter:
        """Edge size -> number of edges of that size."""
        return Counter(self.edge_degrees)


@dataclass(frozen=True)
class DirectedDegreeSequence:
    out_degrees: tuple[int, ...]
    in_degrees: tuple[int, ...]
    tail_degrees: tuple[int, ...]
    head_degrees: tuple[int, ...]

    def __post_init__(self):
        for name in ("out_degrees", "in_degrees", "tail_degrees", "head_degrees"):
            object.__setattr__(self, name, _ints(getattr(self, name)))

    @property
    def n(self) -> int:
        return len(self.out_degrees)

    @property
    def num_edges(self) -> int:
        return len(self.tail_degrees)

    @property
    def out_stubs(self) -> int:
        return sum(self.out_degrees)

    @property
    def in_stubs(self) -> int:
        return sum(self.in_degrees)

    def edge_classes(self) -> Counter:
        """(tail size, head size) -> number of edges."""
        return Counter(zip(self.tail_degrees, self.head_degrees))


DegreeSequence = Union[UndirectedDegreeSequence, DirectedDegreeSequence]


def validate_undirected(ds: UndirectedDegreeSequence) -> None:
    """Raise a :class:`ValidationError` subclass naming the first violated invariant."""
    if ds.n < 1:
        raise NoVertices()
    for v, d in enumerate(ds.vertex_degrees):
        if d < 0:
            raise NegativeDegree(v, d)
    for e, size in enumerate(ds.edge_degrees):
        if size < 1:
            raise EmptyEdge(e)
    if ds.total_stubs != sum(ds.edge_degrees):
        raise StubMismatch(ds.total_stubs, sum(ds.edge_degrees))


def validate_directed(dds: DirectedDegreeSequence) -> None:
    if dds.n < 1:
        raise NoVertices()
    if len(dds.in_degrees) != len(dds.out_degrees):
        raise LengthMismatch(
            f"out_degrees has {len(dds.out_degrees)} entries, in_degrees {len(dds.in_degrees)}"
        )
    if len(dds.tail_degrees) != len(dds.head_degrees):
        raise LengthMismatch(
            f"tail_degrees has {len(dds.tail_degrees)} entries, head_degrees {len(dds.head_degrees)}"
        )
    for v, (do, di) in enumerate(zip(dds.out_degrees, dds.in_degrees)):
        if do < 0:
            raise NegativeDegree(v, do)
        if di < 0:
            raise NegativeDegree(v, di)
    for e, (t, h) in enumerate(zip(dds.tail_degrees, dds.head_degrees)):
        if t < 1:
            raise EmptyTail(e)
        if h < 1:
            raise EmptyHead(e)
    if dds.out_stubs != sum(dds.tail_degrees):
        raise StubMismatchOut(dds.out_stubs, sum(dds.tail_degrees))
    if dds.in_stubs != sum(dds.head_degrees):
        raise StubMismatchIn(dds.in_stubs, sum(dds.head_degrees))


def validate(seq: DegreeSequence) -> None:
    if isinstance(seq, DirectedDegreeSequence):
        validate_directed(seq)
    else:
        validate_undirected(seq)


# ---------------------------------------------------------------------------
# realized hypergraphs
# ---------------------------------------------------------------------------

def _canon(vertices: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(int(v) for v in vertices))


@dataclass(frozen=True)
class Hypergraph:
    """Undirected hypergraph; each edge is a sorted tuple of vertex indices."""

    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(_canon(e) for e in self.edges))

    def vertex_degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    def degree_sequence(self) -> UndirectedDegreeSequence:
        return UndirectedDegreeSequence(self.vertex_degrees(), tuple(len(e) for e in self.edges))


@dataclass(frozen=True)
class DirectedHypergraph:
    """Directed hypergraph; each edge is a ``(tail, head)`` pair of sorted tuples."""

    n: int
    edges: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((_canon(t), _canon(h)) for t, h in self.edges)
        )

    def out_degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for tail, _ in self.edges:
            for v in tail:
                deg[v] += 1
        return tuple(deg)

    def in_degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for _, head in self.edges:
            for v in head:
                deg[v] += 1
        return tuple(deg)

    def degree_sequence(self) -> DirectedDegreeSequence:
        return DirectedDegreeSequence(
            self.out_degrees(),
            self.in_degrees(),
            tuple(len(t) for t, _ in self.edges),
            tuple(len(h) for _, h in self.edges),
        )


def check_realizes(h: Union[Hypergraph, DirectedHypergraph], seq: DegreeSequence) -> None:
    """Raise ValidationError unless ``h`` has exactly the degrees prescribed by ``seq``."""
    if h.degree_sequence() != seq:
        raise ValidationError("hypergraph does not realize the degree sequence")


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StatisticCounts:
    degenerate: int
    multi_pairs: int
    self_loops: Optional[int] = field(default=None)
    weak_self_loops: Optional[int] = field(default=None)

    def as_dict(self) -> dict[str, int]:
        out = {"DH": self.degenerate, "M": self.multi_pairs}
        if self.self_loops is not None:
            out["S"] = self.self_loops
        if self.weak_self_loops is not None:
            out["WS"] = self.weak_self_loops
        return out


def _has_repeat(sorted_vertices: Sequence[int]) -> bool:
    return any(a == b for a, b in zip(sorted_vertices, sorted_vertices[1:]))


def count_degenerate(h: Union[Hypergraph, DirectedHypergraph]) -> int:
    if isinstance(h, DirectedHypergraph):
        return sum(1 for t, hd in h.edges if _has_repeat(t) or _has_repeat(hd))
    return sum(1 for e in h.edges if _has_repeat(e))


def count_multi_pairs(h: Union[Hypergraph, DirectedHypergraph]) -> int:
    # edges are canonical, so equal multisets are equal tuples
    return sum(k * (k - 1) // 2 for k in Counter(h.edges).values())


def count_self_loops(h: DirectedHypergraph) -> int:
    return sum(1 for t, hd in h.edges if t == hd)


def count_weak_self_loops(h: DirectedHypergraph) -> int:
    return sum(1 for t, hd in h.edges if not set(t).isdisjoint(hd))


def statistic_counts(h: Union[Hypergraph, DirectedHypergraph]) -> StatisticCounts:
    if isinstance(h, DirectedHypergraph):
        return StatisticCounts(
            count_degenerate(h),
            count_multi_pairs(h),
            count_self_loops(h),
            count_weak_self_loops(h),
        )
    return StatisticCounts(count_degenerate(h), count_multi_pairs(h))
