"""Canonical JSON-ready document forms for scalars, diagrams, and elements.

Documents are plain dictionaries shaped for compact JSON.  Emission is
canonical: cells are sorted by shape, terms by matching, pair lists are the
diagrams' own sorted pairs, and coefficients are reduced, so emitting a
parsed document reproduces it byte for byte.  Parsing validates structure
and rejects crossing or non-canonical matchings and zero coefficients;
unreduced coefficients are re-canonicalized quietly, or rejected when
``strict`` is set.
"""

from __future__ import annotations

from typing import Dict, List, Mapping, Sequence

from .algebra import GradedElement
from .diagrams import BoxShape, TLDiagram
from .scalars import Scalar

__all__ = [
    "diagram_from_document",
    "diagram_to_document",
    "element_from_document",
    "element_to_document",
    "scalar_from_document",
    "scalar_to_document",
]

_SHADINGS = ("+", "-")


def scalar_to_document(value: Scalar) -> Dict[str, List[int]]:
    """Two ascending integer coefficient lists, numerator and denominator."""
    return {"num": list(value.num), "den": list(value.den)}


def _int_list(values, field: str) -> tuple:
    if not isinstance(values, (list, tuple)) or not values:
        raise ValueError(f"{field} must be a nonempty list of integers")
    for entry in values:
        if not isinstance(entry, int) or isinstance(entry, bool):
            raise ValueError(f"{field} must contain only integers")
    return tuple(values)


def scalar_from_document(document: Mapping, strict: bool = False) -> Scalar:
    """Parse a coefficient document, re-canonicalizing unless ``strict``."""
    if not isinstance(document, Mapping) or set(document) != {"num", "den"}:
        raise ValueError("a coefficient needs exactly the keys 'num', 'den'")
    num = _int_list(document["num"], "num")
    den = _int_list(document["den"], "den")
    if not any(den):
        raise ValueError("coefficient denominator is zero")
    value = Scalar(num, den)
    if strict and (value.num != num or value.den != den):
        raise ValueError(
            f"coefficient {{'num': {list(num)}, 'den': {list(den)}}} is not "
            f"in reduced canonical form"
        )
    return value


def _shape_to_document(shape: BoxShape) -> Dict:
    return {
        "left": shape.left,
        "right": shape.right,
        "top": shape.top,
        "bottom": shape.bottom,
        "shading": shape.shading,
    }


def _shape_from_document(document: Mapping) -> BoxShape:
    expected = {"left", "right", "top", "bottom", "shading"}
    if not isinstance(document, Mapping) or set(document) != expected:
        raise ValueError(
            f"a shape needs exactly the keys {sorted(expected)}"
        )
    for side in ("left", "right", "top", "bottom"):
        count = document[side]
        if not isinstance(count, int) or isinstance(count, bool):
            raise ValueError(f"shape field {side!r} must be an integer")
    if document["shading"] not in _SHADINGS:
        raise ValueError("shape shading must be '+' or '-'")
    return BoxShape(
        document["left"],
        document["right"],
        document["top"],
        document["bottom"],
        document["shading"],
    )


def _pairs_from_document(pairs, shape: BoxShape) -> TLDiagram:
    if not isinstance(pairs, Sequence) or isinstance(pairs, (str, bytes)):
        raise ValueError("pairs must be a list of two-element lists")
    cleaned = []
    for pair in pairs:
        if (
            not isinstance(pair, Sequence)
            or isinstance(pair, (str, bytes))
            or len(pair) != 2
            or any(not isinstance(p, int) or isinstance(p, bool) for p in pair)
        ):
            raise ValueError(f"malformed pair {pair!r}")
        cleaned.append((pair[0], pair[1]))
    diagram = TLDiagram(shape, cleaned)
    if list(diagram.pairs) != cleaned:
        raise ValueError(
            f"pairs {cleaned} are not in canonical order "
            f"(ascending, smaller index first)"
        )
    return diagram


def diagram_to_document(diagram: TLDiagram) -> Dict:
    """Shape plus the sorted pair list."""
    return {
        "shape": _shape_to_document(diagram.shape),
        "pairs": [list(pair) for pair in diagram.pairs],
    }


def diagram_from_document(document: Mapping) -> TLDiagram:
    """Parse one diagram document; crossings and bad orders are rejected."""
    if not isinstance(document, Mapping) or set(document) != {"shape", "pairs"}:
        raise ValueError("a diagram needs exactly the keys 'shape', 'pairs'")
    shape = _shape_from_document(document["shape"])
    return _pairs_from_document(document["pairs"], shape)


def _shape_sort_key(shape: BoxShape):
    return (shape.left, shape.right, shape.top, shape.bottom, shape.shading)


def element_to_document(element: GradedElement) -> Dict:
    """Flavor plus per-cell term lists, in canonical order."""
    cells = []
    for shape in sorted(element.cells, key=_shape_sort_key):
        vector = element.cells[shape]
        terms = [
            {
                "pairs": [list(pair) for pair in diagram.pairs],
                "coeff": scalar_to_document(coeff),
            }
            for diagram, coeff in sorted(
                vector.terms.items(), key=lambda item: item[0].pairs
            )
        ]
        cells.append({"shape": _shape_to_document(shape), "terms": terms})
    return {"flavor": element.flavor, "cells": cells}


def element_from_document(
    document: Mapping, strict: bool = False
) -> GradedElement:
    """Parse an element document.

    An optional ``parity`` key is tolerated (label documents carry one);
    every other deviation from the schema is an error, as are crossing or
    non-canonical pair lists, zero coefficients, and duplicate diagrams.
    ``strict`` additionally rejects unreduced coefficients.
    """
    if not isinstance(document, Mapping):
        raise ValueError("an element document must be a mapping")
    keys = set(document) - {"parity"}
    if keys != {"flavor", "cells"}:
        raise ValueError(
            "an element needs exactly the keys 'flavor', 'cells' "
            "(plus an optional 'parity')"
        )
    flavor = document["flavor"]
    if flavor not in ("V", "W"):
        raise ValueError(f"flavor must be 'V' or 'W', got {flavor!r}")
    terms = []
    seen_shapes = set()
    for cell in document["cells"]:
        if not isinstance(cell, Mapping) or set(cell) != {"shape", "terms"}:
            raise ValueError("a cell needs exactly the keys 'shape', 'terms'")
        shape = _shape_from_document(cell["shape"])
        if shape in seen_shapes:
            raise ValueError(f"duplicate cell for shape {shape!r}")
        seen_shapes.add(shape)
        seen_diagrams = set()
        for term in cell["terms"]:
            if not isinstance(term, Mapping) or set(term) != {"pairs", "coeff"}:
                raise ValueError(
                    "a term needs exactly the keys 'pairs', 'coeff'"
                )
            diagram = _pairs_from_document(term["pairs"], shape)
            if diagram in seen_diagrams:
                raise ValueError(
                    f"duplicate diagram {list(diagram.pairs)} in cell "
                    f"{shape!r}"
                )
            seen_diagrams.add(diagram)
            coeff = scalar_from_document(term["coeff"], strict=strict)
            if coeff.is_zero():
                raise ValueError("zero coefficients may not be stored")
            terms.append((diagram, coeff))
    return GradedElement.from_terms(terms, flavor)
