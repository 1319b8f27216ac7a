"""Meander enumeration and the loop-modulus moment identity.

A meander system of order ``n`` is a pair of noncrossing perfect matchings
on ``2n`` points, one drawn above a line and one below; the union is a
disjoint collection of closed loops.  This module enumerates all such pairs
with its own matching generator and a union-find component counter, kept
deliberately separate from the diagram engine so the histogram can serve as
an independent cross-check of the engine's trace of powers of the two-bar
element: that moment equals the meander polynomial at the loop modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Tuple

from .algebra import boxtimes_trace, v_product, vertical_bars
from .scalars import Scalar

__all__ = [
    "MAX_ORDER",
    "MeanderCount",
    "catalan",
    "enumerate_meanders",
    "meander_polynomial",
    "polynomial_string",
    "trace_moment",
]

MAX_ORDER = 8


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class MeanderCount:
    """Histogram of meander systems of one order by loop count."""

    order: int
    counts: Tuple[int, ...]

    def count(self, loops: int) -> int:
        """Number of systems with exactly ``loops`` closed loops."""
        if not 1 <= loops <= self.order:
            raise ValueError(
                f"loop count must lie in 1..{self.order}, got {loops}"
            )
        return self.counts[loops - 1]

    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> Dict[int, int]:
        return {k + 1: c for k, c in enumerate(self.counts)}


@lru_cache(maxsize=None)
def _arc_systems(points: int) -> Tuple[Tuple[int, ...], ...]:
    """All noncrossing perfect matchings of ``points`` as partner tuples.

    The first point pairs with each odd offset in turn; the stretches
    inside and outside the arc are matched recursively and reindexed.
    """
    if points == 0:
        return ((),)
    systems = []
    for gap in range(1, points, 2):
        for inside in _arc_systems(gap - 1):
            for outside in _arc_systems(points - gap - 1):
                partner = [0] * points
                partner[0], partner[gap] = gap, 0
                for i, p in enumerate(inside):
                    partner[1 + i] = 1 + p
                for i, p in enumerate(outside):
                    partner[gap + 1 + i] = gap + 1 + p
                systems.append(tuple(partner))
    return tuple(systems)


def _loop_count(upper: Tuple[int, ...], lower: Tuple[int, ...]) -> int:
    """Connected components of the union of two matchings, by union-find."""
    parent = list(range(len(upper)))
    roots = len(upper)
    for matching in (upper, lower):
        for a in range(len(upper)):
            b = matching[a]
            if b < a:
                continue
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                parent[b] = a
                roots -= 1
    return roots


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(
            f"meander order must lie in 1..{MAX_ORDER}, got {n}"
        )


def enumerate_meanders(n: int) -> MeanderCount:
    """Histogram all pairs of order-``n`` matchings by loop count."""
    _check_order(n)
    systems = _arc_systems(2 * n)
    counts = [0] * n
    for upper in systems:
        for lower in systems:
            counts[_loop_count(upper, lower) - 1] += 1
    return MeanderCount(n, tuple(counts))


def meander_polynomial(n: int) -> Scalar:
    """The loop-count generating polynomial, in the loop modulus."""
    histogram = enumerate_meanders(n)
    return Scalar((0,) + histogram.counts)


def polynomial_string(histogram: MeanderCount) -> str:
    """Render a histogram as a polynomial in the counting variable ``q``."""
    terms = []
    for loops, count in enumerate(histogram.counts, start=1):
        if count == 0:
            continue
        power = "q" if loops == 1 else f"q^{loops}"
        terms.append(power if count == 1 else f"{count}*{power}")
    return " + ".join(terms) if terms else "0"


def trace_moment(n: int) -> Scalar:
    """The state applied to the ``n``-th power of the two-bar element.

    Computed entirely through the diagram engine, independently of the
    meander enumeration it must agree with.
    """
    if n < 1:
        raise ValueError(f"moment order must be positive, got {n}")
    bars = vertical_bars()
    power = bars
    for _ in range(n - 1):
        power = v_product(power, bars)
    return boxtimes_trace(power)
