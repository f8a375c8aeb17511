"""Multiplicity vectors, vector partitions and exact moment sums.

A *multiplicity vector* ``a = (a_1, ..., a_delta)`` records how many distinct
vertices occur exactly ``i`` times in a multiset of size ``delta``.  A
*vector partition* of ``a`` splits those vertices into groups of coinciding
vertices; it is stored as a tuple of ``(part, count)`` pairs with parts in
lexicographically non-increasing order, e.g. ``(((1, 1, 0, 0), 1),
((1, 0, 0, 0), 1))``.

All sums here are exact Python integers; division is left to the caller
(:class:`fractions.Fraction`).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterator, Sequence

from .errors import CapExceeded, KTooLarge, LengthMismatch

Vector = tuple[int, ...]
VectorPartition = tuple[tuple[Vector, int], ...]
JointPart = tuple[Vector, Vector]
JointVectorPartition = tuple[tuple[JointPart, int], ...]

DEFAULT_MAX_DELTA = 12
DEFAULT_MAX_PARTITIONS = 10**7


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def multiplicity_vectors(delta: int, cap: int = DEFAULT_MAX_DELTA) -> list[Vector]:
    """All ``a`` in N^delta with ``sum(i * a_i) == delta``, lexicographically descending.

    ``delta == 0`` yields the single empty vector, which is convenient for the
    empty side of a joint expansion.
    """
    if delta < 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    if delta > cap:
        raise CapExceeded(f"delta={delta} exceeds cap {cap}")
    out: list[Vector] = []
    prefix = [0] * delta

    def rec(i: int, remaining: int) -> None:
        # i is the 1-based multiplicity being assigned
        if i > delta:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for k in range(remaining // i, -1, -1):
            prefix[i - 1] = k
            rec(i + 1, remaining - i * k)
        prefix[i - 1] = 0

    rec(1, delta)
    for a in out:
        assert sum((i + 1) * x for i, x in enumerate(a)) == delta
    return out


def _parts_leading_at(residual: list[int], k: int, bound: Vector | None) -> Iterator[Vector]:
    """Nonzero parts x <= residual with leading index k, lexicographically descending,
    and lexicographically <= bound when a bound is given."""
    dim = len(residual)
    x = [0] * dim

    def rec(j: int, tight: bool) -> Iterator[Vector]:
        if j == dim:
            yield tuple(x)
            return
        hi = residual[j]
        if tight and bound is not None:
            hi = min(hi, bound[j])
        lo = 1 if j == k else 0
        for v in range(hi, lo - 1, -1):
            x[j] = v
            yield from rec(j + 1, tight and bound is not None and v == bound[j])
        x[j] = 0

    # coordinates before k are zero by construction
    if bound is not None:
        for j in range(k):
            if bound[j] > 0:
                # any part leading at k is strictly below the bound
                yield from rec(k, False)
                return
    yield from rec(k, bound is not None)


def _iter_vector_partitions(a: Sequence[int], limit: int) -> Iterator[VectorPartition]:
    residual = list(a)
    stack: list[Vector] = []
    produced = 0

    def rec(bound: Vector | None) -> Iterator[VectorPartition]:
        nonlocal produced
        k = next((j for j, v in enumerate(residual) if v), None)
        if k is None:
            produced += 1
            if produced > limit:
                raise CapExceeded(f"more than {limit} partitions of {tuple(a)}")
            grouped: list[tuple[Vector, int]] = []
            for part in stack:
                if grouped and grouped[-1][0] == part:
                    grouped[-1] = (part, grouped[-1][1] + 1)
                else:
                    grouped.append((part, 1))
            yield tuple(grouped)
            return
        # later parts are lex <= this one, so this part must absorb every
        # coordinate of the residual before its own leading index: it leads at k
        for part in list(_parts_leading_at(residual, k, bound)):
            for j, v in enumerate(part):
                residual[j] -= v
            stack.append(part)
            yield from rec(part)
            stack.pop()
            for j, v in enumerate(part):
                residual[j] += v

    yield from rec(None)


def iter_R(a: Sequence[int], limit: int = DEFAULT_MAX_PARTITIONS) -> Iterator[VectorPartition]:
    """Stream the vector partitions of ``a`` (single consumer)."""
    return _iter_vector_partitions(tuple(a), limit)


def enumerate_R(a: Sequence[int], limit: int = DEFAULT_MAX_PARTITIONS) -> list[VectorPartition]:
    """Every vector partition ``alpha`` of ``a`` exactly once.

    >>> enumerate_R((1,))
    [(((1,), 1),)]
    """
    a = tuple(a)
    out = list(_iter_vector_partitions(a, limit))
    for alpha in out:
        _check_marginal(alpha, a)
    return out


def enumerate_R_hat(
    a: Sequence[int], b: Sequence[int], limit: int = DEFAULT_MAX_PARTITIONS
) -> list[JointVectorPartition]:
    """Joint partitions ``gamma`` of the tail pattern ``a`` and head pattern ``b``.

    A joint part ``(y, z)`` groups ``y_i`` tail vertices of multiplicity ``i``
    with ``z_j`` head vertices of multiplicity ``j`` into one coinciding vertex
    class.  This is a vector partition of the concatenation ``a + b``.
    """
    a, b = tuple(a), tuple(b)
    split = len(a)
    out: list[JointVectorPartition] = []
    for alpha in _iter_vector_partitions(a + b, limit):
        gamma = tuple(((part[:split], part[split:]), count) for part, count in alpha)
        out.append(gamma)
    for gamma in out:
        tail = tuple((y, c) for (y, _), c in gamma)
        head = tuple((z, c) for (_, z), c in gamma)
        _check_marginal(tail, a, allow_zero_parts=True)
        _check_marginal(head, b, allow_zero_parts=True)
    return out


def marginal(alpha: VectorPartition, dim: int) -> Vector:
    """Sum of ``count * part`` over the partition, i.e. the vector it partitions."""
    acc = [0] * dim
    for part, count in alpha:
        for i, v in enumerate(part):
            acc[i] += v * count
    return tuple(acc)


def _check_marginal(alpha, a: Vector, allow_zero_parts: bool = False) -> None:
    if marginal(alpha, len(a)) != a:
        raise AssertionError(f"partition {alpha} does not sum to {a}")
    if not allow_zero_parts and any(not any(part) for part, _ in alpha):
        raise AssertionError(f"partition {alpha} has an empty part")


# ---------------------------------------------------------------------------
# integer moment sums
# ---------------------------------------------------------------------------

def falling(d: int, k: int) -> int:
    """Falling factorial ``d (d-1) ... (d-k+1)``; zero when ``d < k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if d < k:
        return 0
    out = 1
    for j in range(k):
        out *= d - j
    return out


def power_moment_sum(degrees: Sequence[int], i: int) -> int:
    return sum(d**i for d in degrees)


def ff_moment_double(degrees: Sequence[int], y: Sequence[int]) -> int:
    """``sum_v prod_i falling(d_v, 2i)^{y_i}``."""
    total = 0
    for d in degrees:
        term = 1
        for i, yi in enumerate(y, start=1):
            if yi:
                term *= falling(d, 2 * i) ** yi
                if not term:
                    break
        total += term
    return total


def _check_lengths(out: Sequence[int], in_: Sequence[int]) -> None:
    if len(out) != len(in_):
        raise LengthMismatch(f"out has {len(out)} entries, in has {len(in_)}")


def ff_moment_paired(out: Sequence[int], in_: Sequence[int], y: Sequence[int]) -> int:
    """``sum_v prod_i (falling(out_v, i) * falling(in_v, i))^{y_i}``."""
    _check_lengths(out, in_)
    total = 0
    for do, di in zip(out, in_):
        term = 1
        for i, yi in enumerate(y, start=1):
            if yi:
                term *= (falling(do, i) * falling(di, i)) ** yi
                if not term:
                    break
        total += term
    return total


def ff_moment_split(
    out: Sequence[int], in_: Sequence[int], y: Sequence[int], z: Sequence[int]
) -> int:
    """``sum_v prod_i falling(out_v, i)^{y_i} * prod_j falling(in_v, j)^{z_j}``."""
    _check_lengths(out, in_)
    total = 0
    for do, di in zip(out, in_):
        term = 1
        for i, yi in enumerate(y, start=1):
            if yi:
                term *= falling(do, i) ** yi
        for j, zj in enumerate(z, start=1):
            if zj and term:
                term *= falling(di, j) ** zj
        total += term
    return total


def reciprocal_falling(S: int, k: int) -> Fraction:
    """``(S - k)! / S!`` as an exact fraction, without forming either factorial."""
    if k > S:
        raise KTooLarge(f"k={k} exceeds S={S}")
    return Fraction(1, falling(S, k))


# ---------------------------------------------------------------------------
# coincidence expansion
# ---------------------------------------------------------------------------

def _pattern_weight(a: Vector, weight: int) -> Fraction:
    """``delta!^{1+w} / prod_k k!^{(1+w) a_k}``."""
    delta = sum(i * v for i, v in enumerate(a, start=1))
    den = 1
    for k, ak in enumerate(a, start=1):
        den *= factorial(k) ** ak
    return Fraction(factorial(delta), den) ** (1 + weight)


def _part_size(part: Vector) -> int:
    return sum(part)


def _part_denominator(part: Vector) -> int:
    out = 1
    for v in part:
        out *= factorial(v)
    return out


def coincidence_expansion(
    delta1: int,
    delta2: int,
    weight: int,
    moment: Callable[[Vector, Vector], int],
    max_delta: int = DEFAULT_MAX_DELTA,
) -> Fraction:
    """Right-hand side of the joint coincidence identity.

    Evaluates, over tail patterns ``a`` of ``delta1``, head patterns ``b`` of
    ``delta2`` and joint partitions ``gamma`` of ``(a, b)``::

        W(a) W(b) (-1)^{sum (|y|+|z|-1) gamma(y,z)}
            prod_{(y,z)} (1/gamma(y,z)!) (moment(y,z) (|y|+|z|-1)! / (y! z!))^{gamma(y,z)}

    where ``W(a) = delta1!^{1+w} / prod k!^{(1+w) a_k}`` and ``moment(y, z)``
    returns ``sum_v prod_i f1_i(v)^{y_i} prod_j f2_j(v)^{z_j}``.  With
    ``delta2 == 0`` this is the single-family expansion.
    """
    cache: dict[JointPart, int] = {}

    def m(y: Vector, z: Vector) -> int:
        key = (y, z)
        if key not in cache:
            cache[key] = moment(y, z)
        return cache[key]

    total = Fraction(0)
    for a in multiplicity_vectors(delta1, max_delta):
        wa = _pattern_weight(a, weight)
        for b in multiplicity_vectors(delta2, max_delta):
            wb = _pattern_weight(b, weight)
            inner = Fraction(0)
            for gamma in enumerate_R_hat(a, b):
                sign_exp = 0
                num = 1
                den = 1
                for (y, z), count in gamma:
                    size = _part_size(y) + _part_size(z)
                    sign_exp += (size - 1) * count
                    mv = m(y, z)
                    if mv == 0:
                        num = 0
                        break
                    num *= (mv * factorial(size - 1)) ** count
                    den *= factorial(count) * _part_denominator(y) ** count * _part_denominator(z) ** count
                if num:
                    term = Fraction(num, den)
                    inner += -term if sign_exp % 2 else term
            total += wa * wb * inner
    return total


def single_expansion(
    delta: int,
    weight: int,
    moment: Callable[[Vector], int],
    max_delta: int = DEFAULT_MAX_DELTA,
) -> Fraction:
    """Single-family coincidence expansion (``delta2 == 0``), iterating ``R(a)`` directly."""
    cache: dict[Vector, int] = {}
    total = Fraction(0)
    for a in multiplicity_vectors(delta, max_delta):
        wa = _pattern_weight(a, weight)
        inner = Fraction(0)
        for alpha in enumerate_R(a):
            sign_exp = 0
            num = 1
            den = 1
            for y, count in alpha:
                size = _part_size(y)
                sign_exp += (size - 1) * count
                if y not in cache:
                    cache[y] = moment(y)
                mv = cache[y]
                if mv == 0:
                    num = 0
                    break
                num *= (mv * factorial(size - 1)) ** count
                den *= factorial(count) * _part_denominator(y) ** count
            if num:
                term = Fraction(num, den)
                inner += -term if sign_exp % 2 else term
        total += wa * inner
    return total
