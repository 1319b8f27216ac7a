"""Graded diagram algebras: products, traces, embeddings, standard elements.

Elements are finite scalar combinations of box diagrams, graded by shape.
Two product pictures share the same underlying space:

* the joint picture (flavor ``"V"``): the product glues boxes side by side,
  and is zero by definition unless the facing side counts agree and the
  right factor's shading equals the left factor's shading flipped once per
  left-factor top point;
* the orthogonal picture (flavor ``"W"``): the product additionally sums
  over partial contractions of facing top and bottom strings.

A ``GradedElement`` keeps one ``DiagramVector`` per occupied shape.  All
cells of one element share the side counts and follow one shading pattern:
flipping a cell's shading once per top point lands in a common base sign,
so products of well-formed elements stay well-formed.

Traces close a square box's left side onto its right side.  The joint trace
also sums independent Temperley-Lieb cap fillings over the top and bottom
bundles (and vanishes off even-by-even cells); the orthogonal trace keeps
only cells with no top or bottom points.  Loop counts become powers of the
modulus ``d``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

from .diagrams import (
    BoxShape,
    TLDiagram,
    dagger_reflect,
    embed_pair_diagram,
    enumerate_matchings,
    gr_include_diagram,
    horizontal_glue,
    identity_diagram,
    identity_rectangle,
    partial_glue,
    rotate_pi,
    side_close,
    tl_action_glue,
)
from .scalars import ONE, ZERO, Scalar

__all__ = [
    "DiagramVector",
    "GradedElement",
    "gr_product",
    "voiculescu_trace",
    "gr_include",
    "include_square",
    "v_product",
    "v_trace",
    "w_product",
    "w_trace",
    "tl_action",
    "embed_tensor",
    "op_map",
    "boxtimes_trace",
    "dagger",
    "inner_product_v",
    "identity_strings",
    "parallel_strings",
    "vertical_bars",
    "jones_generator",
    "cup_cap",
    "middle_cupcap",
    "corner_hooks",
    "standard_element",
    "identity_rectangle",
]

Coeff = Union[Scalar, int]


def _coeff(c: Coeff) -> Scalar:
    return c if isinstance(c, Scalar) else Scalar.from_int(c)


def _flip(sign: str, times: int = 1) -> str:
    if times % 2 == 0:
        return sign
    return "-" if sign == "+" else "+"


def _base_shading(shape: BoxShape) -> str:
    """Cell shading transported through the top bundle to a common base."""
    return _flip(shape.shading, shape.top)


class DiagramVector:
    """Sparse scalar combination of diagrams sharing one shape."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: BoxShape, terms: Mapping[TLDiagram, Scalar]):
        clean: dict[TLDiagram, Scalar] = {}
        for diagram, coeff in terms.items():
            if diagram.shape != shape:
                raise ValueError(
                    f"diagram of shape {diagram.shape!r} in a {shape!r} vector"
                )
            coeff = _coeff(coeff)
            if not coeff.is_zero():
                clean[diagram] = coeff
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DiagramVector is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramVector):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        body = ", ".join(
            f"{coeff}*{list(d.pairs)}" for d, coeff in sorted(
                self.terms.items(), key=lambda kv: kv[0].encoding()
            )
        )
        return f"DiagramVector({self.shape!r}: {body})"


class GradedElement:
    """A finite graded family of diagram vectors under one product picture."""

    __slots__ = ("flavor", "cells")

    def __init__(self, flavor: str, cells: Mapping[BoxShape, DiagramVector]):
        if flavor not in ("V", "W"):
            raise ValueError(f"flavor must be 'V' or 'W', got {flavor!r}")
        clean: dict[BoxShape, DiagramVector] = {}
        sides: Optional[tuple[int, int]] = None
        base: Optional[str] = None
        for shape, vector in cells.items():
            if not vector.terms:
                continue
            if vector.shape != shape:
                raise ValueError("cell key does not match vector shape")
            if sides is None:
                sides = (shape.left, shape.right)
                base = _base_shading(shape)
            elif (shape.left, shape.right) != sides:
                raise ValueError(
                    f"cells mix side counts {sides} and "
                    f"{(shape.left, shape.right)}"
                )
            elif _base_shading(shape) != base:
                raise ValueError("cells break the alternating shading pattern")
            clean[shape] = vector
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "cells", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GradedElement is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(flavor: str = "V") -> "GradedElement":
        return GradedElement(flavor, {})

    @staticmethod
    def from_terms(
        terms: Iterable[tuple[TLDiagram, Coeff]], flavor: str = "V"
    ) -> "GradedElement":
        acc: dict[BoxShape, dict[TLDiagram, Scalar]] = {}
        for diagram, coeff in terms:
            cell = acc.setdefault(diagram.shape, {})
            cell[diagram] = cell.get(diagram, ZERO) + _coeff(coeff)
        return GradedElement(
            flavor,
            {shape: DiagramVector(shape, t) for shape, t in acc.items()},
        )

    @staticmethod
    def from_diagram(
        diagram: TLDiagram, coeff: Coeff = 1, flavor: str = "V"
    ) -> "GradedElement":
        return GradedElement.from_terms([(diagram, coeff)], flavor)

    def reflavor(self, flavor: str) -> "GradedElement":
        """The same formal sum reinterpreted in the other picture."""
        if flavor == self.flavor:
            return self
        return GradedElement.from_terms(self.iter_terms(), flavor)

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.cells

    def __bool__(self) -> bool:
        return bool(self.cells)

    def iter_terms(self) -> Iterator[tuple[TLDiagram, Scalar]]:
        for vector in self.cells.values():
            yield from vector.terms.items()

    def cell(self, shape: BoxShape) -> Optional[DiagramVector]:
        return self.cells.get(shape)

    def side_counts(self) -> Optional[tuple[int, int]]:
        for shape in self.cells:
            return (shape.left, shape.right)
        return None

    def base_shading(self) -> Optional[str]:
        for shape in self.cells:
            return _base_shading(shape)
        return None

    def coefficient(self, diagram: TLDiagram) -> Scalar:
        vector = self.cells.get(diagram.shape)
        if vector is None:
            return ZERO
        return vector.terms.get(diagram, ZERO)

    def total_degree(self) -> int:
        """Largest total boundary size over occupied cells (0 when zero)."""
        return max((shape.total for shape in self.cells), default=0)

    # -- linear structure --------------------------------------------------------

    def _combine(self, other: "GradedElement", sign: int) -> "GradedElement":
        if self.flavor != other.flavor:
            raise ValueError("cannot combine elements of different flavors")
        acc = _Accumulator(self.flavor)
        acc.add_element(self)
        for diagram, coeff in other.iter_terms():
            acc.add(diagram, coeff if sign > 0 else -coeff)
        return acc.element()

    def __add__(self, other: "GradedElement") -> "GradedElement":
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self) -> "GradedElement":
        return self.scale(Scalar.from_int(-1))

    def scale(self, coeff: Coeff) -> "GradedElement":
        c = _coeff(coeff)
        if c.is_zero():
            return GradedElement.zero(self.flavor)
        return GradedElement(
            self.flavor,
            {
                shape: DiagramVector(
                    shape, {d: cf * c for d, cf in vector.terms.items()}
                )
                for shape, vector in self.cells.items()
            },
        )

    def __mul__(self, coeff: Coeff) -> "GradedElement":
        if isinstance(coeff, (Scalar, int)):
            return self.scale(coeff)
        return NotImplemented

    __rmul__ = __mul__

    # -- involution ---------------------------------------------------------------

    def dagger(self) -> "GradedElement":
        """Mirror every diagram left-to-right (the adjoint of both products)."""
        return GradedElement.from_terms(
            ((dagger_reflect(d), coeff) for d, coeff in self.iter_terms()),
            self.flavor,
        )

    # -- identity --------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.flavor == other.flavor and self.cells == other.cells

    def __hash__(self) -> int:
        return hash((self.flavor, frozenset(self.cells.items())))

    def __repr__(self) -> str:
        if not self.cells:
            return f"GradedElement({self.flavor!r}, 0)"
        cells = ", ".join(
            repr(self.cells[shape])
            for shape in sorted(self.cells, key=BoxShape.key)
        )
        return f"GradedElement({self.flavor!r}, {cells})"

    # -- serialization ------------------------------------------------------------------

    def to_doc(self) -> dict:
        cells = []
        for shape in sorted(self.cells, key=BoxShape.key):
            vector = self.cells[shape]
            terms = [
                {"pairs": [list(p) for p in d.pairs], "coeff": coeff.to_doc()}
                for d, coeff in sorted(
                    vector.terms.items(), key=lambda kv: kv[0].encoding()
                )
            ]
            cells.append({"shape": shape.to_doc(), "terms": terms})
        return {"flavor": self.flavor, "cells": cells}

    @staticmethod
    def from_doc(doc: dict) -> "GradedElement":
        if "flavor" not in doc or "cells" not in doc:
            raise ValueError("element document needs 'flavor' and 'cells'")
        flavor = doc["flavor"]
        terms: list[tuple[TLDiagram, Scalar]] = []
        for cell_doc in doc["cells"]:
            shape = BoxShape.from_doc(cell_doc.get("shape", {}))
            for term in cell_doc.get("terms", []):
                diagram = TLDiagram.from_doc(
                    {"shape": shape.to_doc(), "pairs": term["pairs"]}
                )
                terms.append((diagram, Scalar.from_doc(term["coeff"])))
        return GradedElement.from_terms(terms, flavor)


class _Accumulator:
    """Mutable builder that collects diagram terms and drops zeros at the end."""

    __slots__ = ("flavor", "data")

    def __init__(self, flavor: str):
        self.flavor = flavor
        self.data: dict[TLDiagram, Scalar] = {}

    def add(self, diagram: TLDiagram, coeff: Coeff) -> None:
        c = _coeff(coeff)
        if c.is_zero():
            return
        prev = self.data.get(diagram)
        self.data[diagram] = c if prev is None else prev + c

    def add_element(self, element: GradedElement, factor: Optional[Scalar] = None) -> None:
        for diagram, coeff in element.iter_terms():
            self.add(diagram, coeff if factor is None else coeff * factor)

    def element(self) -> GradedElement:
        return GradedElement.from_terms(self.data.items(), self.flavor)


# ---------------------------------------------------------------------------
# joint-picture product and trace
# ---------------------------------------------------------------------------


def _sides_compatible(x_shape: BoxShape, y_shape: BoxShape) -> bool:
    """Side and shading rule for gluing ``y`` to the right of ``x``."""
    return x_shape.right == y_shape.left and y_shape.shading == _flip(
        x_shape.shading, x_shape.top
    )


def v_product(x: GradedElement, y: GradedElement) -> GradedElement:
    """Cell-wise side-by-side gluing; mismatches contribute zero, not errors."""
    if x.flavor != "V" or y.flavor != "V":
        raise ValueError("v_product expects joint-picture (V) elements")
    acc = _Accumulator("V")
    for xs, xv in x.cells.items():
        for ys, yv in y.cells.items():
            if not _sides_compatible(xs, ys):
                continue
            for dx, cx in xv.terms.items():
                for dy, cy in yv.terms.items():
                    glued, loops = horizontal_glue(dx, dy)
                    coeff = cx * cy
                    if loops:
                        coeff = coeff * Scalar.delta_power(loops)
                    acc.add(glued, coeff)
    return acc.element()


def _loop_histogram_to_scalar(hist: dict[int, int]) -> Scalar:
    if not hist:
        return ZERO
    top = max(hist)
    return Scalar(tuple(hist.get(i, 0) for i in range(top + 1)))


@lru_cache(maxsize=None)
def _closed_trace(d: TLDiagram) -> Scalar:
    """Joint trace of one diagram: cap fillings above and below, then close.

    Every boundary point carries one strand of the diagram and one strand
    of the closure, so each filled picture is a disjoint union of cycles
    and the loop count is the cycle count of the two matchings combined.
    Walking the cycles over plain index arrays keeps the sum over cap
    fillings cheap even for wide boxes.
    """
    shape = d.shape
    if shape.left != shape.right or shape.top % 2 or shape.bottom % 2:
        return ZERO
    total = shape.top + shape.right + shape.bottom + shape.left
    partner = [0] * total
    for a, b in d.pairs:
        partner[a] = b
        partner[b] = a
    closure = [0] * total
    for depth in range(shape.left):
        a = shape.left_index(depth)
        b = shape.right_index(depth)
        closure[a] = b
        closure[b] = a
    top_caps = [
        tuple((shape.top_index(a), shape.top_index(b)) for a, b in cap.pairs)
        for cap in enumerate_matchings(BoxShape(0, 0, shape.top, 0))
    ]
    bottom_caps = [
        tuple((shape.bottom_index(a), shape.bottom_index(b)) for a, b in cap.pairs)
        for cap in enumerate_matchings(BoxShape(0, 0, shape.bottom, 0))
    ]
    hist: dict[int, int] = {}
    for ct in top_caps:
        for a, b in ct:
            closure[a] = b
            closure[b] = a
        for cb in bottom_caps:
            for a, b in cb:
                closure[a] = b
                closure[b] = a
            seen = bytearray(total)
            loops = 0
            for start in range(total):
                if seen[start]:
                    continue
                loops += 1
                p = start
                while not seen[p]:
                    seen[p] = 1
                    q = partner[p]
                    seen[q] = 1
                    p = closure[q]
            hist[loops] = hist.get(loops, 0) + 1
    return _loop_histogram_to_scalar(hist)


def v_trace(x: GradedElement) -> Scalar:
    """Close sides and sum cap fillings; zero off square even-by-even cells."""
    total = ZERO
    for vector in x.cells.values():
        for diagram, coeff in vector.terms.items():
            value = _closed_trace(diagram)
            if not value.is_zero():
                total = total + coeff * value
    return total


@lru_cache(maxsize=None)
def _closed_trace_prime(d: TLDiagram) -> Scalar:
    shape = d.shape
    if shape.left != shape.right or shape.top or shape.bottom:
        return ZERO
    _, loops = side_close(d)
    return Scalar.delta_power(loops)


def w_trace(x: GradedElement) -> Scalar:
    """Orthogonal trace: close sides of point-free square cells only."""
    total = ZERO
    for vector in x.cells.values():
        for diagram, coeff in vector.terms.items():
            value = _closed_trace_prime(diagram)
            if not value.is_zero():
                total = total + coeff * value
    return total


def w_product(x: GradedElement, y: GradedElement) -> GradedElement:
    """Orthogonal-picture product: sum over partial string contractions."""
    if x.flavor != "W" or y.flavor != "W":
        raise ValueError("w_product expects orthogonal-picture (W) elements")
    acc = _Accumulator("W")
    for xs, xv in x.cells.items():
        for ys, yv in y.cells.items():
            if not _sides_compatible(xs, ys):
                continue
            for i in range(min(xs.top, ys.top) + 1):
                for j in range(min(xs.bottom, ys.bottom) + 1):
                    for dx, cx in xv.terms.items():
                        for dy, cy in yv.terms.items():
                            glued, loops = partial_glue(dx, dy, i, j)
                            coeff = cx * cy
                            if loops:
                                coeff = coeff * Scalar.delta_power(loops)
                            acc.add(glued, coeff)
    return acc.element()


def dagger(x: GradedElement) -> GradedElement:
    return x.dagger()


def inner_product_v(x: GradedElement, y: GradedElement) -> Scalar:
    """Joint-picture pairing: trace of ``dagger(y)`` glued to ``x``."""
    return v_trace(v_product(y.dagger(), x))


# ---------------------------------------------------------------------------
# graded (square-box) algebra: product, trace, inclusion
# ---------------------------------------------------------------------------


def is_gr_element(x: GradedElement, k: Optional[int] = None) -> bool:
    """True for elements supported on square cells with top points only."""
    for shape in x.cells:
        if shape.left != shape.right or shape.bottom or shape.top % 2:
            return False
        if k is not None and shape.left != k:
            return False
    return True


def _require_gr(x: GradedElement, name: str) -> None:
    if x.flavor != "V":
        raise ValueError(f"{name} expects joint-picture (V) elements")
    if not is_gr_element(x):
        raise ValueError(
            f"{name} expects square cells with top points only"
        )


def gr_product(x: GradedElement, y: GradedElement) -> GradedElement:
    """Graded-algebra product; errors on side or shading mismatch."""
    _require_gr(x, "gr_product")
    _require_gr(y, "gr_product")
    if x.is_zero() or y.is_zero():
        return GradedElement.zero("V")
    if x.side_counts() != y.side_counts():
        raise ValueError(
            f"side counts differ: {x.side_counts()} vs {y.side_counts()}"
        )
    if x.base_shading() != y.base_shading():
        raise ValueError("shadings differ")
    return v_product(x, y)


def voiculescu_trace(x: GradedElement) -> Scalar:
    """Normalized graded trace: modulus^(-k) times the cap-filled closure."""
    _require_gr(x, "voiculescu_trace")
    sides = x.side_counts()
    if sides is None:
        return ZERO
    k = sides[0]
    return v_trace(x) * Scalar.delta_power(-k)


def include_square(x: GradedElement) -> GradedElement:
    """Add one through string below every (square) cell."""
    for shape in x.cells:
        if shape.left != shape.right:
            raise ValueError("inclusion needs square cells")
    return GradedElement.from_terms(
        ((gr_include_diagram(d), coeff) for d, coeff in x.iter_terms()),
        x.flavor,
    )


def gr_include(x: GradedElement) -> GradedElement:
    """Inclusion of the level-k graded algebra into level k+1."""
    _require_gr(x, "gr_include")
    return include_square(x)


# ---------------------------------------------------------------------------
# actions, embeddings, rotations
# ---------------------------------------------------------------------------


def tl_action(a: TLDiagram, b: TLDiagram, x: GradedElement) -> GradedElement:
    """Stack rectangle ``a`` above and rectangle ``b`` below every cell."""
    acc = _Accumulator(x.flavor)
    for shape, vector in x.cells.items():
        if a.shape.bottom != shape.top or b.shape.top != shape.bottom:
            raise ValueError(
                f"action rectangles {a.shape!r}, {b.shape!r} do not fit "
                f"cell {shape!r}"
            )
        for diagram, coeff in vector.terms.items():
            glued, loops = tl_action_glue(a, b, diagram)
            if loops:
                coeff = coeff * Scalar.delta_power(loops)
            acc.add(glued, coeff)
    return acc.element()


def embed_tensor(x: GradedElement, y: GradedElement) -> GradedElement:
    """Place ``x`` upright above a half-turned ``y``: the tensor embedding."""
    _require_gr(x, "embed_tensor")
    _require_gr(y, "embed_tensor")
    if x.is_zero() or y.is_zero():
        return GradedElement.zero("V")
    if x.side_counts() != y.side_counts():
        raise ValueError("embedding legs have different side counts")
    if x.base_shading() != y.base_shading():
        raise ValueError("embedding legs have different shadings")
    acc = _Accumulator("V")
    for dx, cx in x.iter_terms():
        for dy, cy in y.iter_terms():
            acc.add(embed_pair_diagram(dx, dy), cx * cy)
    return acc.element()


def op_map(y: GradedElement) -> GradedElement:
    """Half-turn rotation of every cell; anti-multiplicative and involutive."""
    for shape in y.cells:
        if shape.left != shape.right:
            raise ValueError("half-turn rotation needs square cells")
    return GradedElement.from_terms(
        ((rotate_pi(d), coeff) for d, coeff in y.iter_terms()), y.flavor
    )


def boxtimes_trace(x: GradedElement) -> Scalar:
    """State on doubled-side cells: modulus^(-2k) times the joint trace."""
    sides = x.side_counts()
    if sides is None:
        return ZERO
    if sides[0] != sides[1] or sides[0] % 2:
        raise ValueError("doubled trace needs square cells of even side count")
    k = sides[0] // 2
    return v_trace(x) * Scalar.delta_power(-2 * k)


# ---------------------------------------------------------------------------
# standard elements
# ---------------------------------------------------------------------------


def identity_strings(k: int, shading: str = "+") -> GradedElement:
    """Unit of the level-k graded algebra: k parallel horizontal strings."""
    return GradedElement.from_diagram(identity_diagram(k, shading))


def parallel_strings(k: int, shading: str = "+") -> GradedElement:
    """Unit of the doubled corner: 2k parallel strings."""
    return identity_strings(2 * k, shading)


def vertical_bars() -> GradedElement:
    """Two vertical through strings: the basic two-by-two cell element."""
    shape = BoxShape(0, 0, 2, 2, "+")
    return GradedElement.from_diagram(TLDiagram(shape, [(0, 3), (1, 2)]))


def jones_generator(m: int, i: int, shading: str = "+") -> GradedElement:
    """Temperley-Lieb generator with arcs at side depths ``i`` and ``i+1``."""
    if not 0 <= i <= m - 2:
        raise ValueError(f"generator index {i} out of range for {m} strings")
    shape = BoxShape(m, m, 0, 0, shading)
    pairs = [(shape.left_index(i), shape.left_index(i + 1)),
             (shape.right_index(i), shape.right_index(i + 1))]
    for dd in range(m):
        if dd not in (i, i + 1):
            pairs.append((shape.right_index(dd), shape.left_index(dd)))
    return GradedElement.from_diagram(
        TLDiagram(shape, [(min(a, b), max(a, b)) for a, b in pairs])
    )


def cup_cap(k: int, shading: str = "+", normalized: bool = False) -> GradedElement:
    """Cup-cap element in the (k+2)-string box: arcs below k through strings.

    The normalization is not pinned down by the defining picture, so both
    variants are offered; ``normalized`` multiplies by the inverse modulus,
    making the element idempotent.
    """
    element = jones_generator(k + 2, k, shading)
    if normalized:
        element = element.scale(Scalar.delta_power(-1))
    return element


def middle_cupcap(k: int, shading: str = "+") -> GradedElement:
    """Middle cup-cap bridge on 2k strings, carrying its inverse-modulus factor.

    Through strings at depths 0..k-2 and k+1..2k-1 with arcs bridging depths
    k-1 and k on both sides; an idempotent implementing the step-down
    projection simultaneously on the top and bottom halves.
    """
    if k < 1:
        raise ValueError("middle cup-cap needs at least one string pair")
    return jones_generator(2 * k, k - 1, shading).scale(Scalar.delta_power(-1))


def corner_hooks(k: int, shading: str = "+") -> GradedElement:
    """Hook element: one top and one bottom point bent onto the right side."""
    shape = BoxShape(2 * k, 2 * k + 2, 1, 1, shading)
    pairs = [(shape.top_index(0), shape.right_index(0))]
    for dd in range(2 * k):
        a, b = shape.left_index(dd), shape.right_index(dd + 1)
        pairs.append((min(a, b), max(a, b)))
    pairs.append((shape.bottom_index(0), shape.right_index(2 * k + 1)))
    return GradedElement.from_diagram(
        TLDiagram(shape, [(min(a, b), max(a, b)) for a, b in pairs])
    )


_STANDARD: dict[str, Callable[..., GradedElement]] = {
    "unit_k": identity_strings,
    "jones_e_i": jones_generator,
    "cupcap_e_k": cup_cap,
    "f_k": middle_cupcap,
    "c_k": corner_hooks,
    "p_k": parallel_strings,
    "vertical_bars": vertical_bars,
}


def standard_element(kind: str, *args, **kwargs) -> GradedElement:
    """Build a named standard element; see the individual factories."""
    try:
        factory = _STANDARD[kind]
    except KeyError:
        raise ValueError(f"unknown standard element kind {kind!r}") from None
    return factory(*args, **kwargs)
