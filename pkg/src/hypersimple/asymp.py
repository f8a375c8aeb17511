"""Leading-order expectations for regular hypergraphs and exact/asymptotic ratios.

"Regular" means every edge has the same size (or the same ``(tail, head)``
size pair); vertex degrees may vary.  Degree moments are exact integer sums
and the closed forms are evaluated as fractions, so the only rounding is the
final conversion to float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isinf
from typing import Iterable, Iterator, Optional, Sequence, Union

from .core import DirectedDegreeSequence, UndirectedDegreeSequence
from .errors import (
    DivisibilityError,
    InvalidParams,
    NotRegular,
    TailHeadMismatch,
    ZeroMeanDegree,
)
from .exact import expected

EdgeSize = Union[int, tuple[int, int]]

# an instance moment above this fraction of n is flagged as not looking o(n)
MOMENT_WARN_FRACTION = 0.1


@dataclass(frozen=True)
class RegularSpec:
    """Vertex degrees plus one edge size shared by every edge.

    Undirected: ``degrees`` are vertex degrees and ``edge_size`` is an int.
    Directed: ``degrees`` are out-degrees, ``in_degrees`` is set and
    ``edge_size`` is ``(tail, head)``.
    """

    degrees: tuple[int, ...]
    edge_size: EdgeSize
    in_degrees: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.in_degrees is not None:
            object.__setattr__(self, "in_degrees", tuple(int(d) for d in self.in_degrees))
            t, h = (int(x) for x in self.edge_size)
            object.__setattr__(self, "edge_size", (t, h))
            if len(self.in_degrees) != len(self.degrees):
                raise InvalidParams("out- and in-degree lists differ in length")
            if t < 1 or h < 1:
                raise InvalidParams(f"edge size {(t, h)} must be positive")
            so, si = sum(self.degrees), sum(self.in_degrees)
            if so % t or si % h:
                raise DivisibilityError(f"stub totals ({so}, {si}) not divisible by {(t, h)}")
            if so // t != si // h:
                raise DivisibilityError(
                    f"tails imply {so // t} edges but heads imply {si // h}"
                )
        else:
            if isinstance(self.edge_size, tuple):
                raise InvalidParams("undirected spec needs an integer edge size")
            object.__setattr__(self, "edge_size", int(self.edge_size))
            if self.edge_size < 1:
                raise InvalidParams(f"edge size {self.edge_size} must be positive")
            if sum(self.degrees) % self.edge_size:
                raise DivisibilityError(
                    f"stub total {sum(self.degrees)} not divisible by {self.edge_size}"
                )

    @property
    def directed(self) -> bool:
        return self.in_degrees is not None

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def num_edges(self) -> int:
        if self.directed:
            return sum(self.degrees) // self.edge_size[0]
        return sum(self.degrees) // self.edge_size

    def to_sequence(self) -> Union[UndirectedDegreeSequence, DirectedDegreeSequence]:
        m = self.num_edges
        if self.directed:
            t, h = self.edge_size
            return DirectedDegreeSequence(self.degrees, self.in_degrees, (t,) * m, (h,) * m)
        return UndirectedDegreeSequence(self.degrees, (self.edge_size,) * m)

    @classmethod
    def from_sequence(cls, seq) -> "RegularSpec":
        if isinstance(seq, DirectedDegreeSequence):
            sizes = set(zip(seq.tail_degrees, seq.head_degrees))
            if len(sizes) != 1:
                raise NotRegular(f"edges have {len(sizes)} distinct (tail, head) sizes")
            return cls(seq.out_degrees, sizes.pop(), seq.in_degrees)
        sizes = set(seq.edge_degrees)
        if len(sizes) != 1:
            raise NotRegular(f"edges have {len(sizes)} distinct sizes")
        return cls(seq.vertex_degrees, sizes.pop())


def _as_spec(x) -> RegularSpec:
    return x if isinstance(x, RegularSpec) else RegularSpec.from_sequence(x)


def _moment(values: Sequence[int], power: int = 1) -> Fraction:
    return Fraction(sum(v ** power for v in values), len(values))


def _cross_moment(spec: RegularSpec) -> Fraction:
    return Fraction(sum(a * b for a, b in zip(spec.degrees, spec.in_degrees)), spec.n)


def _positive_mean(values: Sequence[int], label: str) -> Fraction:
    mean = _moment(values)
    if mean == 0:
        raise ZeroMeanDegree(f"mean {label} degree is zero")
    return mean


def _require_undirected(spec: RegularSpec) -> None:
    if spec.directed:
        raise InvalidParams("expected an undirected spec")


def _require_directed(spec: RegularSpec) -> None:
    if not spec.directed:
        raise InvalidParams("expected a directed spec")


def _degenerate_term(delta: int, values: Sequence[int], label: str) -> Fraction:
    m1 = _positive_mean(values, label)
    m2 = _moment(values, 2)
    return Fraction(delta - 1, delta) * (delta * m2 - 2 * m1) / (2 * m1)


def _coincidence_ratio(spec: RegularSpec, values: Sequence[int], label: str) -> Fraction:
    m1 = _positive_mean(values, label)
    return (_moment(values, 2) - m1) / (spec.n * m1 * m1)


def asym_degenerate_undirected(spec) -> float:
    spec = _as_spec(spec)
    _require_undirected(spec)
    return float(_degenerate_term(spec.edge_size, spec.degrees, "vertex"))


def asym_multi_undirected(spec) -> float:
    spec = _as_spec(spec)
    _require_undirected(spec)
    delta = spec.edge_size
    m1 = _positive_mean(spec.degrees, "vertex")
    ratio = _coincidence_ratio(spec, spec.degrees, "vertex")
    return float(Fraction(factorial(delta - 1), 2 * delta) * (spec.n * m1) ** 2 * ratio ** delta)


def asym_degenerate_directed(spec) -> float:
    spec = _as_spec(spec)
    _require_directed(spec)
    t, h = spec.edge_size
    return float(
        _degenerate_term(t, spec.degrees, "out") + _degenerate_term(h, spec.in_degrees, "in")
    )


def asym_multi_directed(spec) -> float:
    spec = _as_spec(spec)
    _require_directed(spec)
    t, h = spec.edge_size
    mo = _positive_mean(spec.degrees, "out")
    mi = _positive_mean(spec.in_degrees, "in")
    value = (
        Fraction(factorial(t - 1) * factorial(h - 1), 2)
        * spec.n ** 2 * mo * mi
        * _coincidence_ratio(spec, spec.degrees, "out") ** t
        * _coincidence_ratio(spec, spec.in_degrees, "in") ** h
    )
    return float(value)


def asym_self_loops(spec) -> float:
    spec = _as_spec(spec)
    _require_directed(spec)
    t, h = spec.edge_size
    if t != h:
        raise TailHeadMismatch(f"self-loops need equal tail and head sizes, got {(t, h)}")
    mi = _positive_mean(spec.in_degrees, "in")
    base = _cross_moment(spec) / (spec.n * mi * mi)
    return float(factorial(t - 1) * spec.n * mi * base ** t)


def asym_weak_self_loops(spec) -> float:
    spec = _as_spec(spec)
    _require_directed(spec)
    t, h = spec.edge_size
    mi = _positive_mean(spec.in_degrees, "in")
    return float(Fraction(t + h - 2, 2) + h * _cross_moment(spec) / mi)


ASYMPTOTIC_UNDIRECTED = {"DH": asym_degenerate_undirected, "M": asym_multi_undirected}
ASYMPTOTIC_DIRECTED = {
    "DH": asym_degenerate_directed,
    "M": asym_multi_directed,
    "S": asym_self_loops,
    "WS": asym_weak_self_loops,
}


def asymptotic(spec, statistic: str) -> float:
    spec = _as_spec(spec)
    table = ASYMPTOTIC_DIRECTED if spec.directed else ASYMPTOTIC_UNDIRECTED
    try:
        fn = table[statistic]
    except KeyError:
        raise InvalidParams(
            f"statistic {statistic!r} not available for this model; choose from {sorted(table)}"
        ) from None
    return fn(spec)


# ---------------------------------------------------------------------------
# hypothesis advisories
# ---------------------------------------------------------------------------

def _share(values: Iterable[bool], n: int) -> float:
    return sum(values) / n


def check_hypotheses(spec, statistic: str) -> list[str]:
    """Advisory notes where a single instance does not look like it meets the lemma's hypotheses.

    The hypotheses are statements about families as n grows, so these are
    heuristics: a moment above ``MOMENT_WARN_FRACTION * n`` or an empty
    degree-threshold class is reported.
    """
    spec = _as_spec(spec)
    n = spec.n
    notes = []

    def moment_note(label: str, value: Fraction) -> None:
        if value > MOMENT_WARN_FRACTION * n:
            notes.append(f"{label} = {float(value):.6g} is large relative to n = {n}")

    def mass_note(label: str, share: float) -> None:
        if share == 0:
            notes.append(f"no vertex satisfies {label}")

    if not spec.directed:
        delta = spec.edge_size
        power = delta if statistic == "DH" else 2 * delta
        threshold = 1 if statistic == "DH" else 2 * delta
        moment_note(f"E[d^{power}]", _moment(spec.degrees, power))
        mass_note(f"d >= {threshold}", _share((d >= threshold for d in spec.degrees), n))
        return notes

    t, h = spec.edge_size
    out, in_ = spec.degrees, spec.in_degrees
    if statistic == "DH":
        moment_note(f"E[dout^{t}]", _moment(out, t))
        moment_note(f"E[din^{h}]", _moment(in_, h))
        mass_note("dout, din >= 1", _share((a >= 1 and b >= 1 for a, b in zip(out, in_)), n))
    elif statistic == "M":
        moment_note(f"E[dout^{2 * t}]", _moment(out, 2 * t))
        moment_note(f"E[din^{2 * h}]", _moment(in_, 2 * h))
        mass_note(f"dout >= {2 * t}", _share((a >= 2 * t for a in out), n))
        mass_note(f"din >= {2 * h}", _share((b >= 2 * h for b in in_), n))
    elif statistic == "S":
        moment_note(
            f"E[(dout*din)^{t}]",
            Fraction(sum((a * b) ** t for a, b in zip(out, in_)), n),
        )
        mass_note(f"dout, din >= {t}", _share((a >= t and b >= t for a, b in zip(out, in_)), n))
    elif statistic == "WS":
        moment_note(
            f"E[dout^{t} din^{h}]",
            Fraction(sum(a ** t * b ** h for a, b in zip(out, in_)), n),
        )
        mass_note(f"dout >= {t}", _share((a >= t for a in out), n))
        mass_note(f"din >= {h}", _share((b >= h for b in in_), n))
    return notes


# ---------------------------------------------------------------------------
# convergence studies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergencePoint:
    n: int
    exact: Fraction
    asymptotic: float
    ratio: float

    @property
    def deviation(self) -> float:
        return abs(self.ratio - 1.0)


def ratio(exact_value: Fraction, asymptotic_value: float) -> float:
    """``exact / asymptotic`` with ``0/0`` read as 1 and ``x/0`` as infinity."""
    if asymptotic_value == 0:
        return 1.0 if exact_value == 0 else float("inf")
    return float(exact_value) / asymptotic_value


def convergence_ratio(statistic: str, family: Iterable[RegularSpec]) -> list[ConvergencePoint]:
    points = []
    for spec in family:
        spec = _as_spec(spec)
        exact_value = expected(spec.to_sequence(), statistic).value
        asym_value = asymptotic(spec, statistic)
        points.append(ConvergencePoint(spec.n, exact_value, asym_value, ratio(exact_value, asym_value)))
    return points


def adjust_n(n: int, degree: Union[int, tuple[int, int]], edge_size: EdgeSize) -> int:
    """Smallest ``n' >= n`` whose uniform degree sequence divides evenly into edges."""
    if n < 1:
        raise InvalidParams("n must be positive")
    for candidate in range(n, n + 10 ** 6):
        try:
            uniform_spec(candidate, degree, edge_size)
            return candidate
        except DivisibilityError:
            continue
    raise DivisibilityError(f"no valid n near {n} for degree {degree}, edge size {edge_size}")


def uniform_spec(n: int, degree, edge_size: EdgeSize) -> RegularSpec:
    if isinstance(edge_size, tuple):
        d_out, d_in = degree if isinstance(degree, tuple) else (degree, degree)
        return RegularSpec((d_out,) * n, edge_size, (d_in,) * n)
    return RegularSpec((int(degree),) * n, edge_size)


def regular_family(
    degree, edge_size: EdgeSize, ns: Sequence[int]
) -> Iterator[RegularSpec]:
    """Uniform-degree specs along ``ns``, each n bumped up to satisfy divisibility."""
    for n in ns:
        yield uniform_spec(adjust_n(n, degree, edge_size), degree, edge_size)


def is_monotone_approach(points: Sequence[ConvergencePoint]) -> bool:
    devs = [p.deviation for p in points]
    if any(isinf(d) for d in devs):
        return False
    return all(b <= a for a, b in zip(devs, devs[1:]))
