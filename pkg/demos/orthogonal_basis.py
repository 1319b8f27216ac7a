"""The orthogonalizing change of basis between the two product pictures.

Box elements multiply in two pictures: the joint picture, where boxes glue
side by side, and the orthogonal picture, whose basis diagonalizes the
trace pairing degree by degree.  The maps between them are triangular with
explicit rectangle coefficients; composing them in either order gives the
identity, and the product, adjoint, and trace all transport across.
"""

import random

from tlbox import (
    BoxShape,
    GradedElement,
    enumerate_matchings,
    from_orthogonal,
    gram_matrix,
    round_trip_operator,
    identity_rectangle,
    to_orthogonal,
    v_product,
    v_trace,
    w_product,
    w_trace,
    ONE,
)


def main() -> None:
    print("round trips on single cells (bundle sizes s, t up to 6)")
    for s in range(7):
        for t in range(7 - s):
            for order in ("xy", "yx"):
                top, bottom = round_trip_operator(s, t, order)
                assert top == {identity_rectangle(s): ONE}
                assert bottom == {identity_rectangle(t): ONE}
    print("  both compositions are the identity on every cell")

    print()
    print("transport of the product, adjoint, and trace")
    rng = random.Random(5)
    shape_x = BoxShape(0, 0, 3, 1, "+")
    shape_y = BoxShape(0, 0, 1, 1, "-")

    def sample(shape):
        basis = enumerate_matchings(shape)
        return GradedElement.from_terms(
            (d, ONE) for d in rng.sample(basis, min(2, len(basis)))
        )

    x, y = sample(shape_x), sample(shape_y)
    assert to_orthogonal(v_product(x, y)) == w_product(
        to_orthogonal(x), to_orthogonal(y)
    )
    assert to_orthogonal(x.dagger()) == to_orthogonal(x).dagger()
    assert w_trace(to_orthogonal(x)) == v_trace(x)
    assert from_orthogonal(to_orthogonal(x)) == x
    print("  products, adjoints, and traces agree in both pictures")

    print()
    shape = BoxShape(0, 0, 4, 0, "+")
    print(f"exact Gram matrices on the cell {shape}")
    for flavor in ("tau", "tau_prime"):
        gram = gram_matrix(shape, flavor)
        print(f"  pairing {flavor}:")
        for row in gram.entries:
            print("    " + "  ".join(entry.render() for entry in row))


if __name__ == "__main__":
    main()
