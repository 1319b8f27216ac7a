"""Shared helpers for building seeded random test data."""

import random

from tlbox.algebra import GradedElement
from tlbox.diagrams import BoxShape, enumerate_matchings, enumerate_shapes
from tlbox.scalars import Scalar


def random_scalar(rng: random.Random, degree: int = 2) -> Scalar:
    """Nonzero polynomial in the loop modulus with small coefficients."""
    width = rng.randint(1, degree + 1)
    coeffs = tuple(rng.randint(-3, 3) for _ in range(width))
    if not any(coeffs):
        coeffs = (1,)
    value = Scalar(coeffs)
    if rng.random() < 0.25:
        value = value * Scalar.delta_power(-rng.randint(1, 2))
    return value


def random_element(
    rng: random.Random, shape: BoxShape, terms: int = 2, degree: int = 2
) -> GradedElement:
    """Random element of one cell with a few nonzero basis coefficients."""
    basis = enumerate_matchings(shape)
    chosen = rng.sample(basis, min(terms, len(basis)))
    return GradedElement.from_terms(
        (d, random_scalar(rng, degree)) for d in chosen
    )


def shapes_with_boundary_upto(
    total: int, shadings: tuple[str, ...] = ("+", "-")
) -> list[BoxShape]:
    """Every box shape with an even boundary count up to ``total``."""
    return enumerate_shapes(total, shadings)
