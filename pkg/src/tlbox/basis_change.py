"""Change of basis between the joint and orthogonal product pictures.

``to_orthogonal`` rewrites a joint-picture element over the orthogonalized
product basis by summing, over every cell, the stacked actions of all epi
rectangles on the top bundle and all monic rectangles on the bottom bundle.
``from_orthogonal`` inverts it using only non-nested rectangles, with the
coefficient ``(-1)**arcs`` where ``arcs`` counts the turn-backs of the pair.
The composite in either order is the identity; each map is degree-filtered
(rectangles never increase point counts).

Rectangle enumerations are memoized per point-count pair and signs are
attached when the enumeration is built, so composing the maps never applies
a sign twice.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import GradedElement, _Accumulator
from .diagrams import (
    BoxShape,
    TLDiagram,
    classify,
    enumerate_matchings,
    identity_rectangle,
    tl_action_glue,
)
from .scalars import ONE, Scalar

__all__ = [
    "epi_rectangles",
    "monic_rectangles",
    "nonnested_epi_rectangles",
    "nonnested_monic_rectangles",
    "to_orthogonal",
    "from_orthogonal",
    "map_X",
    "map_Y",
    "round_trip_operator",
]


@lru_cache(maxsize=None)
def epi_rectangles(s: int, s_prime: int) -> tuple[TLDiagram, ...]:
    """Rectangles from ``s`` bottom points onto ``s_prime`` top points."""
    if s_prime > s or (s - s_prime) % 2:
        return ()
    shape = BoxShape(0, 0, s_prime, s)
    return tuple(d for d in enumerate_matchings(shape) if classify(d)["epi"])


@lru_cache(maxsize=None)
def monic_rectangles(t: int, t_prime: int) -> tuple[TLDiagram, ...]:
    """Rectangles with ``t`` top points whose ``t_prime`` bottoms all pass up."""
    if t_prime > t or (t - t_prime) % 2:
        return ()
    shape = BoxShape(0, 0, t, t_prime)
    return tuple(d for d in enumerate_matchings(shape) if classify(d)["monic"])


@lru_cache(maxsize=None)
def nonnested_epi_rectangles(s: int, s_prime: int) -> tuple[TLDiagram, ...]:
    return tuple(
        d for d in epi_rectangles(s, s_prime) if classify(d)["nonnested_epi"]
    )


@lru_cache(maxsize=None)
def nonnested_monic_rectangles(t: int, t_prime: int) -> tuple[TLDiagram, ...]:
    return tuple(
        d for d in monic_rectangles(t, t_prime) if classify(d)["nonnested_monic"]
    )


@lru_cache(maxsize=None)
def _signed_pairs(
    s: int, t: int, nonnested: bool
) -> tuple[tuple[TLDiagram, TLDiagram, Scalar], ...]:
    """All (top rectangle, bottom rectangle, coefficient) triples for a cell."""
    top_enum = nonnested_epi_rectangles if nonnested else epi_rectangles
    bot_enum = nonnested_monic_rectangles if nonnested else monic_rectangles
    triples: list[tuple[TLDiagram, TLDiagram, Scalar]] = []
    for s_prime in range(s % 2, s + 1, 2):
        for a in top_enum(s, s_prime):
            for t_prime in range(t % 2, t + 1, 2):
                for b in bot_enum(t, t_prime):
                    if nonnested:
                        arcs = (s - s_prime + t - t_prime) // 2
                        coeff = Scalar.from_int(-1 if arcs % 2 else 1)
                    else:
                        coeff = ONE
                    triples.append((a, b, coeff))
    return tuple(triples)


@lru_cache(maxsize=None)
def _apply_pairs(
    diagram: TLDiagram, nonnested: bool
) -> tuple[tuple[TLDiagram, Scalar], ...]:
    """Image terms of one basis diagram under the full rectangle sum."""
    shape = diagram.shape
    out: dict[TLDiagram, Scalar] = {}
    for a, b, coeff in _signed_pairs(shape.top, shape.bottom, nonnested):
        glued, loops = tl_action_glue(a, b, diagram)
        if loops:
            coeff = coeff * Scalar.delta_power(loops)
        prev = out.get(glued)
        out[glued] = coeff if prev is None else prev + coeff
    return tuple((d, c) for d, c in out.items() if not c.is_zero())


def _apply(element: GradedElement, nonnested: bool, flavor: str) -> GradedElement:
    acc = _Accumulator(flavor)
    for diagram, coeff in element.iter_terms():
        for image, factor in _apply_pairs(diagram, nonnested):
            acc.add(image, coeff * factor)
    return acc.element()


def to_orthogonal(v: GradedElement) -> GradedElement:
    """Expand a joint-picture element over the orthogonal product basis."""
    if v.flavor != "V":
        raise ValueError("to_orthogonal expects a joint-picture (V) element")
    return _apply(v, nonnested=False, flavor="W")


def from_orthogonal(w: GradedElement) -> GradedElement:
    """Contract an orthogonal-picture element back to the joint basis."""
    if w.flavor != "W":
        raise ValueError("from_orthogonal expects an orthogonal (W) element")
    return _apply(w, nonnested=True, flavor="V")


# Spec-facing aliases for the two maps.
map_X = to_orthogonal
map_Y = from_orthogonal


# ---------------------------------------------------------------------------
# composed round trips (for exhaustive identity sweeps)
# ---------------------------------------------------------------------------


def _compose_top(outer: TLDiagram, inner: TLDiagram) -> tuple[TLDiagram, int]:
    """Stack ``outer`` above ``inner`` (both act on the top bundle)."""
    ident = identity_rectangle(inner.shape.bottom)
    return tl_action_glue(outer, ident, inner)


def _compose_bottom(outer: TLDiagram, inner: TLDiagram) -> tuple[TLDiagram, int]:
    """Stack ``outer`` below ``inner`` (both act on the bottom bundle)."""
    ident = identity_rectangle(inner.shape.top)
    return tl_action_glue(ident, outer, inner)


def _composite_sum(
    n: int,
    first_pairs,
    second_pairs,
    compose,
    signed_first: bool,
    signed_second: bool,
) -> dict[TLDiagram, Scalar]:
    out: dict[TLDiagram, Scalar] = {}
    for mid in range(n % 2, n + 1, 2):
        for inner in first_pairs(n, mid):
            sign_inner = (n - mid) // 2 if signed_first else 0
            for final in range(mid % 2, mid + 1, 2):
                for outer in second_pairs(mid, final):
                    sign_outer = (mid - final) // 2 if signed_second else 0
                    composed, loops = compose(outer, inner)
                    coeff = Scalar.delta_power(loops)
                    if (sign_inner + sign_outer) % 2:
                        coeff = -coeff
                    prev = out.get(composed)
                    out[composed] = coeff if prev is None else prev + coeff
    return {d: c for d, c in out.items() if not c.is_zero()}


def round_trip_operator(
    s: int, t: int, order: str
) -> tuple[dict[TLDiagram, Scalar], dict[TLDiagram, Scalar]]:
    """Composite of the two maps on a cell, as formal rectangle sums.

    ``order="yx"`` composes the expansion first and the contraction second;
    ``order="xy"`` the other way.  The top and bottom bundles compose
    independently, so the result is a pair (top sum, bottom sum); the round
    trip is the identity on the cell exactly when both sums reduce to the
    identity rectangle with coefficient one.
    """
    if order == "yx":
        top = _composite_sum(
            s, epi_rectangles, nonnested_epi_rectangles, _compose_top, False, True
        )
        bottom = _composite_sum(
            t, monic_rectangles, nonnested_monic_rectangles, _compose_bottom,
            False, True,
        )
    elif order == "xy":
        top = _composite_sum(
            s, nonnested_epi_rectangles, epi_rectangles, _compose_top, True, False
        )
        bottom = _composite_sum(
            t, nonnested_monic_rectangles, monic_rectangles, _compose_bottom,
            True, False,
        )
    else:
        raise ValueError(f"order must be 'yx' or 'xy', got {order!r}")
    return top, bottom
