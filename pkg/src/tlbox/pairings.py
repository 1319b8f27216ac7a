"""Inner products, Gram matrices, and the expectation onto paired boxes.

Side-free boxes carry two exact pairings.  The joint-picture pairing
("tau") closes the mirror of one box against the other and sums over all
cap fillings of the free strings.  The orthogonal-picture pairing
("tau_prime") contracts the two boxes fully, top against top and bottom
against bottom, and counts the loops: a single rewiring per pair.

A box is *paired* when its top points match among themselves and its
bottom points match among themselves; such boxes are tensor products of
two one-sided legs.  Projecting an element onto the span of paired boxes
is an exact linear solve against the pairing matrix, and the pairing
matrix of paired boxes factors leg by leg, so the solve reduces to two
small systems per cell.  Both pairing flavors define the projection and
they agree on it; the test suite checks that agreement instead of
assuming it.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .algebra import GradedElement, _closed_trace, _sides_compatible
from .diagrams import (
    BoxShape,
    TLDiagram,
    cap_top,
    cap_top_pair,
    dagger_reflect,
    embed_pair_diagram,
    enumerate_matchings,
    horizontal_glue,
    is_paired_diagram,
    partial_glue,
    side_close,
)
from .scalars import ZERO, Scalar

__all__ = [
    "PAIRING_FLAVORS",
    "DegenerateModulusError",
    "GramMatrix",
    "annihilated_by_expectation",
    "cap_adjacent_top",
    "cap_all_top",
    "conditional_expectation",
    "expectation_at_modulus",
    "gram_matrix",
    "inner_product",
    "orthogonal_complement_basis",
    "solve_exact",
]

PAIRING_FLAVORS = ("tau", "tau_prime")

# Above this condition number a specialized pairing matrix is treated as
# singular; exact solves are unaffected.
_CONDITION_LIMIT = 1e12


class DegenerateModulusError(ArithmeticError):
    """A pairing matrix became singular at a specialized loop modulus."""


def _check_flavor(flavor: str) -> None:
    if flavor not in PAIRING_FLAVORS:
        raise ValueError(f"unknown pairing flavor {flavor!r}")


@lru_cache(maxsize=None)
def _pair_tau(x: TLDiagram, y: TLDiagram) -> Scalar:
    """Joint-picture pairing of single boxes: closed trace of mirror-glue."""
    mirrored = dagger_reflect(y)
    if not _sides_compatible(mirrored.shape, x.shape):
        return ZERO
    glued, loops = horizontal_glue(mirrored, x)
    value = _closed_trace(glued)
    if loops and not value.is_zero():
        value = value * Scalar.delta_power(loops)
    return value


@lru_cache(maxsize=None)
def _pair_tau_prime(x: TLDiagram, y: TLDiagram) -> Scalar:
    """Orthogonal-picture pairing: full contraction, loops become powers."""
    xs, ys = x.shape, y.shape
    if (xs.top, xs.bottom) != (ys.top, ys.bottom) or xs.right != ys.right:
        return ZERO
    mirrored = dagger_reflect(y)
    if not _sides_compatible(mirrored.shape, xs):
        return ZERO
    glued, loops = partial_glue(mirrored, x, xs.top, xs.bottom)
    _, closed = side_close(glued)
    return Scalar.delta_power(loops + closed)


_PAIRINGS = {"tau": _pair_tau, "tau_prime": _pair_tau_prime}


def inner_product(
    x: GradedElement, y: GradedElement, flavor: str = "tau"
) -> Scalar:
    """Exact pairing of two elements: ``dagger(y)`` traced against ``x``.

    Flavor "tau" closes the product box and sums its cap fillings; flavor
    "tau_prime" contracts fully and counts loops.  The pairing reads the
    diagram coordinates only, so either flavor may be applied to elements
    of either picture, but the two arguments must share their picture tag.
    """
    _check_flavor(flavor)
    if x.flavor != y.flavor:
        raise ValueError("pairing arguments live in different pictures")
    pair = _PAIRINGS[flavor]
    total = ZERO
    for dx, cx in x.iter_terms():
        for dy, cy in y.iter_terms():
            value = pair(dx, dy)
            if not value.is_zero():
                total = total + cx * cy * value
    return total


class GramMatrix:
    """Pairing matrix of one cell's diagram basis, exact and immutable."""

    __slots__ = ("shape", "flavor", "basis", "entries")

    def __init__(
        self,
        shape: BoxShape,
        flavor: str,
        basis: Sequence[TLDiagram],
        entries: Sequence[Sequence[Scalar]],
    ):
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "entries", tuple(tuple(row) for row in entries))

    def __setattr__(self, name, value):
        raise AttributeError("GramMatrix is immutable")

    def __len__(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return (
            f"GramMatrix({self.shape!r}, {self.flavor!r}, "
            f"{len(self.basis)} basis boxes)"
        )

    def numeric(self, delta: float) -> np.ndarray:
        """Evaluate every entry at the given loop modulus."""
        size = len(self.basis)
        out = np.empty((size, size), dtype=float)
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                out[i, j] = entry.evaluate(delta)
        return out

    def min_eigenvalue(self, delta: float) -> float:
        """Smallest eigenvalue of the symmetrized numeric matrix."""
        numeric = self.numeric(delta)
        return float(np.linalg.eigvalsh((numeric + numeric.T) / 2.0)[0])

    def to_csv(self) -> str:
        """Rows of printed exact entries, comma separated."""
        lines = [",".join(entry.render() for entry in row) for row in self.entries]
        return "\n".join(lines) + "\n"

    def to_numeric_csv(self, delta: float) -> str:
        """Float rows preceded by a header row recording the modulus."""
        lines = [f"delta,{delta!r}"]
        for row in self.numeric(delta):
            lines.append(",".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def gram_matrix(shape: BoxShape, flavor: str = "tau") -> GramMatrix:
    """Pairing matrix of the full diagram basis of ``shape``.

    The basis order is the canonical enumeration order of the cell, so the
    matrix is reproducible across runs.  Both pairings are symmetric, so
    only the upper triangle is computed and the rest is mirrored.
    """
    _check_flavor(flavor)
    basis = enumerate_matchings(shape)
    pair = _PAIRINGS[flavor]
    size = len(basis)
    entries: list[list[Scalar]] = [[ZERO] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            value = pair(basis[i], basis[j])
            entries[i][j] = value
            entries[j][i] = value
    return GramMatrix(shape, flavor, basis, entries)


# ---------------------------------------------------------------------------
# exact linear solves
# ---------------------------------------------------------------------------


def _pivot_weight(entry: Scalar) -> tuple[int, int]:
    return (len(entry.num) + len(entry.den), len(entry.num))


def solve_exact(
    matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Sequence[Scalar]]
) -> list[list[Scalar]]:
    """Solve ``matrix @ X = rhs`` over the exact scalar field.

    Gauss-Jordan elimination with full pivoting; among the nonzero
    candidates the pivot minimizes total numerator and denominator degree,
    which keeps intermediate entries from growing needlessly.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("coefficient matrix must be square")
    if len(rhs) != n:
        raise ValueError("right-hand side height does not match the matrix")
    width = len(rhs[0]) if rhs else 0
    if any(len(row) != width for row in rhs):
        raise ValueError("right-hand side rows have uneven width")
    a = [list(row) for row in matrix]
    b = [list(row) for row in rhs]
    cols = list(range(n))
    for k in range(n):
        pivot = None
        for i in range(k, n):
            for j in range(k, n):
                entry = a[i][j]
                if entry.is_zero():
                    continue
                weight = _pivot_weight(entry)
                if pivot is None or weight < pivot[0]:
                    pivot = (weight, i, j)
        if pivot is None:
            raise ArithmeticError("singular matrix in exact solve")
        _, pi, pj = pivot
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            b[k], b[pi] = b[pi], b[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            cols[k], cols[pj] = cols[pj], cols[k]
        inverse = a[k][k].inverse()
        a[k] = [entry * inverse for entry in a[k]]
        b[k] = [entry * inverse for entry in b[k]]
        for i in range(n):
            if i == k:
                continue
            factor = a[i][k]
            if factor.is_zero():
                continue
            a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
            b[i] = [x - factor * y for x, y in zip(b[i], b[k])]
    solution: list[list[Scalar]] = [[ZERO] * width for _ in range(n)]
    for k in range(n):
        solution[cols[k]] = b[k]
    return solution


def _transpose(matrix: Sequence[Sequence[Scalar]]) -> list[list]:
    return [list(row) for row in zip(*matrix)] if matrix and matrix[0] else []


# ---------------------------------------------------------------------------
# expectation onto the span of paired boxes
# ---------------------------------------------------------------------------


def _require_expectation_cell(shape: BoxShape) -> None:
    if shape.left or shape.right:
        raise ValueError("expectation cells carry no side strings")
    if shape.top % 2 or shape.bottom % 2:
        raise ValueError("expectation cells have even point counts")
    if shape.shading != "+":
        raise ValueError("expectation cells carry the '+' corner shading")


def _leg_shape(points: int) -> BoxShape:
    return BoxShape(0, 0, points, 0, "+")


@lru_cache(maxsize=None)
def _paired_grid(
    top: int, bottom: int
) -> tuple[tuple[TLDiagram, ...], tuple[TLDiagram, ...], tuple[tuple[TLDiagram, ...], ...]]:
    tops = tuple(enumerate_matchings(_leg_shape(top)))
    bots = tuple(enumerate_matchings(_leg_shape(bottom)))
    grid = tuple(
        tuple(embed_pair_diagram(a, b) for b in bots) for a in tops
    )
    return tops, bots, grid


def _cell_sorted(element: GradedElement) -> list[BoxShape]:
    return sorted(element.cells, key=lambda shape: shape.key())


def conditional_expectation(
    Q: GradedElement, flavor: str = "tau_prime"
) -> GradedElement:
    """Project onto the span of paired boxes, cell by cell and exactly.

    The result is the unique paired-box combination whose pairings with
    every paired box match those of ``Q``.  The system's matrix factors leg
    by leg, so each cell costs two small exact solves.  Flavor "tau_prime"
    is the cheap route (one rewiring per pairing); flavor "tau" pairs
    through cap-filling traces.  Both yield the same projection.
    """
    _check_flavor(flavor)
    if Q.flavor != "V":
        raise ValueError("expectation expects joint-picture (V) elements")
    pair = _PAIRINGS[flavor]
    collected: list[tuple[TLDiagram, Scalar]] = []
    for shape in _cell_sorted(Q):
        _require_expectation_cell(shape)
        vector = Q.cells[shape]
        tops, bots, grid = _paired_grid(shape.top, shape.bottom)
        rhs: list[list[Scalar]] = []
        for a_i in range(len(tops)):
            row = []
            for b_i in range(len(bots)):
                target = grid[a_i][b_i]
                total = ZERO
                for diagram, coeff in vector.terms.items():
                    value = pair(diagram, target)
                    if not value.is_zero():
                        total = total + coeff * value
                row.append(total)
            rhs.append(row)
        g_top = gram_matrix(_leg_shape(shape.top), flavor).entries
        g_bot = gram_matrix(_leg_shape(shape.bottom), flavor).entries
        lam = solve_exact(_transpose(g_top), rhs)
        lam = _transpose(solve_exact(_transpose(g_bot), _transpose(lam)))
        for a_i in range(len(tops)):
            for b_i in range(len(bots)):
                coeff = lam[a_i][b_i]
                if not coeff.is_zero():
                    collected.append((grid[a_i][b_i], coeff))
    return GradedElement.from_terms(collected, "V")


def annihilated_by_expectation(
    Q: GradedElement, flavor: str = "tau_prime"
) -> bool:
    """True when the paired-box expectation sends ``Q`` to zero.

    The expectation solves a nonsingular pairing system per cell, so its
    output vanishes exactly when the pairings of ``Q`` against every
    paired box vanish; this checks those pairings directly and skips the
    solves, which matters on cells with large leg bases.
    """
    _check_flavor(flavor)
    if Q.flavor != "V":
        raise ValueError("expectation expects joint-picture (V) elements")
    pair = _PAIRINGS[flavor]
    for shape in _cell_sorted(Q):
        _require_expectation_cell(shape)
        vector = Q.cells[shape]
        _, _, grid = _paired_grid(shape.top, shape.bottom)
        for row in grid:
            for target in row:
                total = ZERO
                for diagram, coeff in vector.terms.items():
                    value = pair(diagram, target)
                    if not value.is_zero():
                        total = total + coeff * value
                if not total.is_zero():
                    return False
    return True


def _numeric_factor(shape: BoxShape, flavor: str, delta: float) -> np.ndarray:
    numeric = gram_matrix(shape, flavor).numeric(delta)
    condition = np.linalg.cond(numeric)
    if not np.isfinite(condition) or condition > _CONDITION_LIMIT:
        raise DegenerateModulusError(
            f"pairing matrix of {shape!r} is singular at modulus {delta}"
        )
    return numeric


def expectation_at_modulus(
    Q: GradedElement, delta: float, flavor: str = "tau_prime"
) -> dict[BoxShape, dict[TLDiagram, float]]:
    """Numeric projection onto paired boxes at a specialized modulus.

    Runs the same leg-factored solve as the exact expectation, but with
    floating-point pairing matrices; a singular specialized matrix raises
    :class:`DegenerateModulusError`.  Useful as an independent check of the
    exact route and for moduli given only as floats.
    """
    _check_flavor(flavor)
    if Q.flavor != "V":
        raise ValueError("expectation expects joint-picture (V) elements")
    pair = _PAIRINGS[flavor]
    out: dict[BoxShape, dict[TLDiagram, float]] = {}
    for shape in _cell_sorted(Q):
        _require_expectation_cell(shape)
        vector = Q.cells[shape]
        tops, bots, grid = _paired_grid(shape.top, shape.bottom)
        rhs = np.zeros((len(tops), len(bots)))
        for a_i in range(len(tops)):
            for b_i in range(len(bots)):
                total = ZERO
                for diagram, coeff in vector.terms.items():
                    value = pair(diagram, grid[a_i][b_i])
                    if not value.is_zero():
                        total = total + coeff * value
                rhs[a_i, b_i] = total.evaluate(delta)
        g_top = _numeric_factor(_leg_shape(shape.top), flavor, delta)
        g_bot = _numeric_factor(_leg_shape(shape.bottom), flavor, delta)
        lam = np.linalg.solve(g_top.T, rhs)
        lam = np.linalg.solve(g_bot.T, lam.T).T
        cell: dict[TLDiagram, float] = {}
        for a_i in range(len(tops)):
            for b_i in range(len(bots)):
                cell[grid[a_i][b_i]] = float(lam[a_i, b_i])
        out[shape] = cell
    return out


def orthogonal_complement_basis(
    shape: BoxShape, flavor: str = "tau_prime"
) -> list[GradedElement]:
    """Exact basis of the paired-box complement inside one cell.

    One element per unpaired basis diagram: the diagram minus its
    projection.  The unpaired coordinates of these elements form an
    identity block, so they are independent and span the complement.
    """
    _require_expectation_cell(shape)
    out: list[GradedElement] = []
    for diagram in enumerate_matchings(shape):
        if is_paired_diagram(diagram):
            continue
        element = GradedElement.from_diagram(diagram)
        out.append(element - conditional_expectation(element, flavor))
    return out


def cap_adjacent_top(x: GradedElement, i: int) -> GradedElement:
    """Close top points ``i`` and ``i + 1`` of every cell with one cap."""
    collected: list[tuple[TLDiagram, Scalar]] = []
    for diagram, coeff in x.iter_terms():
        capped, loops = cap_top_pair(diagram, i)
        if loops:
            coeff = coeff * Scalar.delta_power(loops)
        collected.append((capped, coeff))
    return GradedElement.from_terms(collected, x.flavor)


def cap_all_top(x: GradedElement, cap: TLDiagram) -> GradedElement:
    """Close every top point of every cell with the matching ``cap``.

    Elements orthogonal to the paired boxes are annihilated by every such
    closure; the test suite checks this exactly on small cells.
    """
    collected: list[tuple[TLDiagram, Scalar]] = []
    for diagram, coeff in x.iter_terms():
        capped, loops = cap_top(diagram, cap)
        if loops:
            coeff = coeff * Scalar.delta_power(loops)
        collected.append((capped, coeff))
    return GradedElement.from_terms(collected, x.flavor)
