"""Derivations of the box algebra, their kernel, and conjugate elements.

One-left-string boxes label a family of derivations on the algebra of
top-row boxes: each summand wires the label into one top string of the
argument while a parity-constrained tail of strings folds down to the
bottom row.  Composing with the conditional expectation onto paired boxes
gives the projected derivation family.  Hook differences of no-side boxes
parameterize the kernel of that family; a kernel label can be reconstructed
from its hook difference, and every label has an exact conjugate element
realizing the adjoint pairing against the unit.  Independently, bending
suffixes of the top row defines a splitting coproduct that makes the
algebra an infinitesimal bialgebra.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Tuple, Union

from .algebra import GradedElement
from .diagrams import (
    BoxShape,
    TLDiagram,
    enumerate_linear_matchings,
    enumerate_matchings,
    identity_rectangle,
    rewire,
    split_paired_diagram,
)
from .pairings import annihilated_by_expectation, conditional_expectation
from .scalars import Scalar, ZERO

__all__ = [
    "DerivationLabel",
    "KernelLabel",
    "ReconstructionError",
    "conjugate_variable",
    "derivation",
    "diagram_coproduct",
    "double_coproduct",
    "hook_difference",
    "kernel_reconstruct",
    "label_right_action",
    "raw_derivation",
]

TensorSquare = Dict[Tuple[TLDiagram, TLDiagram], Scalar]


class ReconstructionError(ValueError):
    """Raised when a label cannot be inverted to a kernel element."""


def _parity_shading(top: int) -> str:
    return "-" if top % 2 else "+"


def _cell_parity(shape: BoxShape) -> str:
    return "odd" if shape.top % 2 else "even"


class _Label:
    """Shared validation shell for graded labels with fixed side counts.

    Fixing the side counts pins the row-point parity as well, since every
    box has an even boundary total; only the shading needs its own check.
    """

    __slots__ = ("element",)
    _sides = (0, 0)
    _noun = "label"

    def __init__(self, element: GradedElement):
        if element.flavor != "V":
            raise ValueError(f"{self._noun}s live in the joint picture")
        left, right = self._sides
        for shape in element.cells:
            if shape.left != left or shape.right != right:
                raise ValueError(
                    f"cell {shape!r} has side counts "
                    f"({shape.left}, {shape.right}); a {self._noun} needs "
                    f"({left}, {right})"
                )
            if shape.shading != _parity_shading(shape.top):
                raise ValueError(
                    f"cell {shape!r} shading disagrees with its top parity"
                )
        self.element = element

    @property
    def parity(self) -> str:
        """``'odd'``, ``'even'``, or ``'mixed'`` by top-count parity.

        The zero label reports ``'even'``, the parity of the empty cell.
        """
        kinds = {_cell_parity(shape) for shape in self.element.cells}
        if len(kinds) == 2:
            return "mixed"
        if kinds == {"odd"}:
            return "odd"
        return "even"

    def is_zero(self) -> bool:
        return self.element.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.element == other.element

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.element!r})"


class DerivationLabel(_Label):
    """A formal sum of one-left-string boxes with odd row-point total.

    Odd-parity cells have shape ``(1, 0, odd, even, '-')`` and even-parity
    cells ``(1, 0, even, odd, '+')``; a label may mix both parities.
    """

    __slots__ = ()
    _sides = (1, 0)
    _noun = "derivation label"


class KernelLabel(_Label):
    """A formal sum of no-side boxes with even row-point total.

    Odd-parity cells have shape ``(0, 0, odd, odd, '-')`` and even-parity
    cells ``(0, 0, even, even, '+')``.  The even part is exactly a sum of
    plain two-row boxes; hook differences of these labels exhaust the
    kernel of the projected derivation family.
    """

    __slots__ = ()
    _sides = (0, 0)
    _noun = "kernel label"


LabelLike = Union[DerivationLabel, GradedElement]
KernelLike = Union[KernelLabel, GradedElement]


def _derivation_element(label: LabelLike) -> GradedElement:
    if isinstance(label, DerivationLabel):
        return label.element
    if isinstance(label, GradedElement):
        return DerivationLabel(label).element
    raise TypeError(f"expected a derivation label, got {type(label).__name__}")


def _kernel_element(label: KernelLike) -> GradedElement:
    if isinstance(label, KernelLabel):
        return label.element
    if isinstance(label, GradedElement):
        return KernelLabel(label).element
    raise TypeError(f"expected a kernel label, got {type(label).__name__}")


def _require_top_row(x: GradedElement, name: str) -> None:
    if x.flavor != "V":
        raise ValueError(f"{name} expects joint-picture (V) elements")
    for shape in x.cells:
        if (
            shape.left
            or shape.right
            or shape.bottom
            or shape.top % 2
            or shape.shading != "+"
        ):
            raise ValueError(
                f"{name} expects unshaded top-row cells, got {shape!r}"
            )


# ---------------------------------------------------------------------------
# the raw and projected derivation families
# ---------------------------------------------------------------------------


def _insertion_terms(
    q: TLDiagram, dx: TLDiagram
) -> Iterator[Tuple[TLDiagram, int]]:
    """All wirings of label ``q`` into top-row diagram ``dx``.

    For each admissible fold count ``k`` (matching the label parity), the
    first ``top - k - 1`` strings of ``dx`` pass straight up, the next one
    enters the label's left point, and the last ``k`` fold over clockwise to
    the leftmost bottom slots in reversed order; the label's own rows exit
    to the right of both groups.
    """
    qs = q.shape
    n2 = dx.shape.top
    for k in range((qs.top + 1) % 2, n2, 2):
        up = n2 - k - 1
        out = BoxShape(0, 0, up + qs.top, k + qs.bottom, "+")
        joins = [((0, up), (1, qs.left_index(0)))]
        outs: Dict[Tuple[int, int], int] = {}
        for i in range(up):
            outs[(0, i)] = out.top_index(i)
        for p in range(k):
            outs[(0, up + 1 + p)] = out.bottom_index(k - 1 - p)
        for j in range(qs.top):
            outs[(1, j)] = out.top_index(up + j)
        for p in range(qs.bottom):
            outs[(1, qs.bottom_index(p))] = out.bottom_index(k + p)
        yield rewire([dx, q], joins, outs, out)


def raw_derivation(label: LabelLike, x: GradedElement) -> GradedElement:
    """Derivation of the top-row algebra into two-row boxes.

    Linear in the label and in ``x``; satisfies the product rule against
    the two-row embeddings of the factors.
    """
    q_elem = _derivation_element(label)
    _require_top_row(x, "raw_derivation")
    terms: List[Tuple[TLDiagram, Scalar]] = []
    for q, cq in q_elem.iter_terms():
        for dx, cx in x.iter_terms():
            for diagram, loops in _insertion_terms(q, dx):
                terms.append((diagram, cq * cx * Scalar.delta_power(loops)))
    return GradedElement.from_terms(terms, "V")


def derivation(
    label: LabelLike, x: GradedElement, flavor: str = "tau_prime"
) -> GradedElement:
    """The raw derivation followed by the expectation onto paired boxes."""
    return conditional_expectation(raw_derivation(label, x), flavor)


def label_right_action(
    label: LabelLike, a: GradedElement, b: GradedElement
) -> DerivationLabel:
    """Right action of a paired box on a derivation label.

    ``a`` extends the top row on the right and ``b`` joins the bottom row
    half-turned, mirroring how paired boxes embed two top-row elements.
    The raw derivation intertwines this action with right multiplication
    by the embedded pair.
    """
    q_elem = _derivation_element(label)
    _require_top_row(a, "label_right_action")
    _require_top_row(b, "label_right_action")
    terms: List[Tuple[TLDiagram, Scalar]] = []
    for q, cq in q_elem.iter_terms():
        qs = q.shape
        for da, ca in a.iter_terms():
            sa = da.shape.top
            for db, cb in b.iter_terms():
                tb = db.shape.top
                out = BoxShape(
                    1,
                    0,
                    qs.top + sa,
                    qs.bottom + tb,
                    _parity_shading(qs.top + sa),
                )
                outs: Dict[Tuple[int, int], int] = {
                    (0, qs.left_index(0)): out.left_index(0)
                }
                for j in range(qs.top):
                    outs[(0, j)] = out.top_index(j)
                for p in range(qs.bottom):
                    outs[(0, qs.bottom_index(p))] = out.bottom_index(p)
                for i in range(sa):
                    outs[(1, i)] = out.top_index(qs.top + i)
                for j in range(tb):
                    outs[(2, j)] = out.bottom_index(
                        qs.bottom + tb - 1 - j
                    )
                diagram, loops = rewire([q, da, db], [], outs, out)
                terms.append(
                    (diagram, cq * ca * cb * Scalar.delta_power(loops))
                )
    return DerivationLabel(GradedElement.from_terms(terms, "V"))


# ---------------------------------------------------------------------------
# hook differences and kernel reconstruction
# ---------------------------------------------------------------------------


def hook_difference(label: KernelLike) -> DerivationLabel:
    """The two-term derivation label attached to a kernel label.

    The first term hooks a new left point to a fresh leftmost top point
    (reversing the corner shading), the second hooks it to a fresh leftmost
    bottom point (keeping the shading); the difference of the two labels
    the derivation the kernel element induces.
    """
    r_elem = _kernel_element(label)
    terms: List[Tuple[TLDiagram, Scalar]] = []
    for d, coeff in r_elem.iter_terms():
        s, t = d.shape.top, d.shape.bottom
        up_shape = BoxShape(1, 0, s + 1, t, _parity_shading(s + 1))
        up_map = {i: up_shape.top_index(i + 1) for i in range(s)}
        for p in range(t):
            up_map[d.shape.bottom_index(p)] = up_shape.bottom_index(p)
        up_pairs = [(up_map[a], up_map[b]) for a, b in d.pairs]
        up_pairs.append((up_shape.left_index(0), up_shape.top_index(0)))
        terms.append((TLDiagram(up_shape, up_pairs), coeff))

        down_shape = BoxShape(1, 0, s, t + 1, _parity_shading(s))
        down_map = {i: down_shape.top_index(i) for i in range(s)}
        for p in range(t):
            down_map[d.shape.bottom_index(p)] = down_shape.bottom_index(p + 1)
        down_pairs = [(down_map[a], down_map[b]) for a, b in d.pairs]
        down_pairs.append(
            (down_shape.left_index(0), down_shape.bottom_index(0))
        )
        terms.append((TLDiagram(down_shape, down_pairs), -coeff))
    return DerivationLabel(GradedElement.from_terms(terms, "V"))


def _reconstruction_terms(
    q: TLDiagram,
) -> Iterator[Tuple[TLDiagram, int]]:
    """Partial closures of one label cell feeding the kernel element.

    For each ``k`` up to half the label's top count: cap the first ``2k``
    top points with a rainbow, route the left point to the top row after
    ``k - 1`` fresh through strings, and shift the remaining rows outward.
    """
    qs = q.shape
    for k in range(1, qs.top // 2 + 1):
        s = qs.top - k
        t = qs.bottom + k - 1
        out = BoxShape(0, 0, s, t, _parity_shading(s))
        strings = identity_rectangle(k - 1)
        joins = [((0, j), (0, 2 * k - 1 - j)) for j in range(k)]
        outs: Dict[Tuple[int, int], int] = {
            (0, qs.left_index(0)): out.top_index(k - 1)
        }
        for i in range(k - 1):
            outs[(1, i)] = out.top_index(i)
            outs[(1, strings.shape.bottom_index(i))] = out.bottom_index(i)
        for j in range(2 * k, qs.top):
            outs[(0, j)] = out.top_index(j - k)
        for p in range(qs.bottom):
            outs[(0, qs.bottom_index(p))] = out.bottom_index(k - 1 + p)
        yield rewire([q, strings], joins, outs, out)


def kernel_reconstruct(
    label: LabelLike,
    max_degree: int = 3,
    flavor: str = "tau_prime",
) -> KernelLabel:
    """Invert the hook difference on a label of a vanishing derivation.

    The projected derivation of the label is checked to vanish on every
    top-row basis diagram up to ``max_degree`` strands before
    reconstruction, and the reconstructed kernel label's hook difference
    is checked to reproduce the input afterwards; either failure raises
    ``ReconstructionError``.
    """
    q_elem = _derivation_element(label)
    if q_elem.is_zero():
        return KernelLabel(GradedElement.zero("V"))
    for n in range(1, max_degree + 1):
        cell = BoxShape(0, 0, 2 * n, 0, "+")
        for dx in enumerate_matchings(cell):
            probe = GradedElement.from_diagram(dx)
            image = raw_derivation(q_elem, probe)
            if not annihilated_by_expectation(image, flavor):
                raise ReconstructionError(
                    f"the projected derivation of the label does not vanish "
                    f"on a {2 * n}-strand basis diagram"
                )
    terms: List[Tuple[TLDiagram, Scalar]] = []
    for q, coeff in q_elem.iter_terms():
        for diagram, loops in _reconstruction_terms(q):
            terms.append((diagram, coeff * Scalar.delta_power(loops)))
    result = KernelLabel(GradedElement.from_terms(terms, "V"))
    if hook_difference(result).element != q_elem:
        raise ReconstructionError(
            "the reconstructed kernel label does not reproduce the input; "
            "the derivation is nonzero beyond the tested degree bound"
        )
    return result


# ---------------------------------------------------------------------------
# conjugate elements
# ---------------------------------------------------------------------------


def conjugate_variable(label: LabelLike) -> GradedElement:
    """The top-row element adjoint to a derivation label at the unit.

    The pairing of the raw derivation of any top-row element against the
    empty box equals the inner product of that element with this one.  Per
    label cell it is the adjoint of a direct left-wrap closure minus two
    sums of partial cap closures with parity-matched survivor counts.
    """
    q_elem = _derivation_element(label)
    terms: List[Tuple[TLDiagram, Scalar]] = []
    for q, coeff in q_elem.iter_terms():
        qs = q.shape
        s, t = qs.top, qs.bottom

        direct = BoxShape(0, 0, s + t + 1, 0, _parity_shading(s + t + 1))
        point_map = {qs.left_index(0): direct.top_index(t)}
        for p in range(t):
            point_map[qs.bottom_index(p)] = direct.top_index(t - 1 - p)
        for j in range(s):
            point_map[j] = direct.top_index(t + 1 + j)
        pairs = [(point_map[a], point_map[b]) for a, b in q.pairs]
        terms.append((TLDiagram(direct, pairs), coeff))

        for k in range(t % 2, s, 2):
            m = s - k - 1
            out = BoxShape(0, 0, t + k, 0, "+")
            outs: Dict[Tuple[int, int], int] = {}
            for p in range(t):
                outs[(0, qs.bottom_index(p))] = out.top_index(t - 1 - p)
            for j in range(k):
                outs[(0, m + 1 + j)] = out.top_index(t + j)
            for partner in enumerate_linear_matchings(m):
                joins = [
                    ((0, a), (0, partner[a]))
                    for a in range(m)
                    if partner[a] > a
                ]
                joins.append(((0, qs.left_index(0)), (0, m)))
                diagram, loops = rewire([q], joins, outs, out)
                terms.append(
                    (diagram, -coeff * Scalar.delta_power(loops))
                )

        for k in range(s % 2, t, 2):
            m = t - k - 1
            out = BoxShape(0, 0, s + k, 0, "+")
            outs = {}
            for p in range(m + 1, t):
                outs[(0, qs.bottom_index(p))] = out.top_index(t - 1 - p)
            for j in range(s):
                outs[(0, j)] = out.top_index(k + j)
            for partner in enumerate_linear_matchings(m):
                joins = [
                    ((0, qs.bottom_index(a)), (0, qs.bottom_index(partner[a])))
                    for a in range(m)
                    if partner[a] > a
                ]
                joins.append(
                    ((0, qs.left_index(0)), (0, qs.bottom_index(m)))
                )
                diagram, loops = rewire([q], joins, outs, out)
                terms.append(
                    (diagram, -coeff * Scalar.delta_power(loops))
                )
    return GradedElement.from_terms(terms, "V").dagger()


# ---------------------------------------------------------------------------
# the splitting coproduct
# ---------------------------------------------------------------------------


def diagram_coproduct(
    x: GradedElement, flavor: str = "tau_prime"
) -> TensorSquare:
    """Split every top row at each even point, then expect and separate.

    Each summand folds a suffix of the top row down to the bottom row
    (keeping the clockwise boundary order, so the matching is unchanged),
    applies the conditional expectation onto paired boxes, and splits the
    paired output into a pure tensor of two top-row diagrams.  The empty
    box maps to the pure tensor of two empty boxes, and the resulting
    coproduct is coassociative.
    """
    _require_top_row(x, "diagram_coproduct")
    bracket_terms: List[Tuple[TLDiagram, Scalar]] = []
    for dx, coeff in x.iter_terms():
        n2 = dx.shape.top
        for bend in range(0, n2 + 1, 2):
            shape = BoxShape(0, 0, n2 - bend, bend, "+")
            bracket_terms.append((TLDiagram(shape, dx.pairs), coeff))
    projected = conditional_expectation(
        GradedElement.from_terms(bracket_terms, "V"), flavor
    )
    result: TensorSquare = {}
    for d, coeff in projected.iter_terms():
        key = split_paired_diagram(d)
        total = result.get(key, ZERO) + coeff
        if total == ZERO:
            result.pop(key, None)
        else:
            result[key] = total
    return result


def double_coproduct(
    x: GradedElement, leg: int, flavor: str = "tau_prime"
) -> Dict[Tuple[TLDiagram, TLDiagram, TLDiagram], Scalar]:
    """Apply the coproduct twice, refining the ``leg``-th tensor factor."""
    if leg not in (0, 1):
        raise ValueError("leg must be 0 or 1")
    result: Dict[Tuple[TLDiagram, TLDiagram, TLDiagram], Scalar] = {}
    for (a, b), outer in diagram_coproduct(x, flavor).items():
        inner = diagram_coproduct(
            GradedElement.from_diagram(a if leg == 0 else b), flavor
        )
        for (u, v), c in inner.items():
            key = (u, v, b) if leg == 0 else (a, u, v)
            total = result.get(key, ZERO) + outer * c
            if total == ZERO:
                result.pop(key, None)
            else:
                result[key] = total
    return result
