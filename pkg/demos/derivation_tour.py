"""Derivations on the strand algebra: labels, kernels, and conjugates.

A one-left-string label acts on top-row elements as a derivation: it
replaces each strand by a copy of the label, folded over so the result is
a two-row box.  Projecting onto paired boxes gives a derivation whose
kernel labels can be reconstructed exactly, and pairing against the empty
box produces the label's conjugate variable.  The same machinery yields a
coassociative splitting of the strand algebra.
"""

from tlbox import (
    BoxShape,
    GradedElement,
    TLDiagram,
    conjugate_variable,
    derivation,
    diagram_coproduct,
    double_coproduct,
    hook_difference,
    inner_product_v,
    kernel_reconstruct,
    raw_derivation,
    v_trace,
)


def show_element(label: str, element: GradedElement) -> None:
    print(f"  {label}:")
    if element.is_zero():
        print("    0")
        return
    for diagram, coeff in sorted(
        element.iter_terms(), key=lambda item: (str(item[0].shape), item[0].pairs)
    ):
        pairs = " ".join(f"{a}-{b}" for a, b in diagram.pairs)
        print(f"    [{diagram.shape}] {pairs}  *  {coeff.render()}")


def main() -> None:
    cup = GradedElement.from_diagram(
        TLDiagram(BoxShape(0, 0, 2, 0, "+"), [(0, 1)])
    )
    label = GradedElement.from_diagram(
        TLDiagram(BoxShape(1, 0, 1, 0, "-"), [(0, 1)])
    )

    print("derivation of the cup by the one-strand label")
    show_element("raw image", raw_derivation(label, cup))
    show_element("projected image", derivation(label, cup))

    print()
    print("kernel labels reconstruct exactly")
    kernel = GradedElement.from_diagram(
        TLDiagram(BoxShape(0, 0, 1, 1, "-"), [(0, 1)])
    )
    difference = hook_difference(kernel)
    assert kernel_reconstruct(difference).element == kernel
    print("  hook difference of a one-point kernel label inverts back")

    print()
    print("the conjugate variable represents pairing against the empty box")
    conjugate = conjugate_variable(label)
    show_element("conjugate of the label", conjugate)
    for n in (1, 2):
        shape = BoxShape(0, 0, 2 * n, 0, "+")
        from tlbox import enumerate_matchings

        for diagram in enumerate_matchings(shape):
            x = GradedElement.from_diagram(diagram)
            assert v_trace(derivation(label, x)) == inner_product_v(x, conjugate)
    print("  <derivation(x), 1 x 1> = <x, conjugate> on every small basis element")

    print()
    print("coproduct of the cup, and coassociativity")
    for (left, right), coeff in sorted(
        diagram_coproduct(cup).items(), key=lambda item: str(item[0])
    ):
        print(
            f"  {list(left.pairs)} (x) {list(right.pairs)}  *  {coeff.render()}"
        )
    assert double_coproduct(cup, 0) == double_coproduct(cup, 1)
    print("  refining either tensor leg gives the same double splitting")


if __name__ == "__main__":
    main()
