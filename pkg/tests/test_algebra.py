"""Products, traces, and standard elements of the box algebras."""

import random

import pytest

from support import random_element, random_scalar
from tlbox.algebra import (
    GradedElement,
    boxtimes_trace,
    corner_hooks,
    cup_cap,
    dagger,
    embed_tensor,
    gr_include,
    gr_product,
    identity_strings,
    inner_product_v,
    jones_generator,
    middle_cupcap,
    op_map,
    parallel_strings,
    standard_element,
    tl_action,
    v_product,
    v_trace,
    vertical_bars,
    voiculescu_trace,
    w_product,
    w_trace,
)
from tlbox.diagrams import BoxShape, TLDiagram, identity_rectangle
from tlbox.scalars import DELTA, ONE, ZERO, Scalar, parse_scalar


def cup(shading: str = "+") -> GradedElement:
    return GradedElement.from_diagram(
        TLDiagram(BoxShape(0, 0, 2, 0, shading), [(0, 1)])
    )


def wrap(x: GradedElement) -> GradedElement:
    """Reinterpret an element in the orthogonal picture."""
    return GradedElement.from_terms(x.iter_terms(), "W")


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


class TestProducts:
    def test_unit_absorbs(self):
        rng = random.Random(11)
        for k in (0, 1, 2):
            unit = identity_strings(k)
            for s, t in [(0, 0), (2, 0), (1, 1), (2, 2)]:
                x = random_element(rng, BoxShape(k, k, s, t, "+"), terms=2)
                assert v_product(unit, x) == x
                right_unit = identity_strings(k, x.base_shading())
                assert v_product(x, right_unit) == x

    def test_side_mismatch_is_zero(self):
        x = cup()
        wide = GradedElement.from_diagram(
            TLDiagram(BoxShape(1, 1, 0, 0, "+"), [(0, 1)])
        )
        assert v_product(x, wide).is_zero()
        assert v_product(wide, x).is_zero()
        assert not v_product(x, x).is_zero()

    def test_shading_mismatch_is_zero(self):
        odd_top = GradedElement.from_diagram(
            TLDiagram(BoxShape(0, 2, 1, 1, "+"), [(0, 1), (2, 3)])
        )
        same = GradedElement.from_diagram(
            TLDiagram(BoxShape(2, 0, 1, 1, "+"), [(0, 3), (1, 2)])
        )
        flipped = GradedElement.from_diagram(
            TLDiagram(BoxShape(2, 0, 1, 1, "-"), [(0, 3), (1, 2)])
        )
        assert v_product(odd_top, same).is_zero()
        assert not v_product(odd_top, flipped).is_zero()

    def test_joint_product_associative(self):
        rng = random.Random(23)
        chains = [
            [(0, 1, 2, 1), (1, 0, 1, 2), (0, 2, 1, 1)],
            [(1, 1, 2, 0), (1, 2, 1, 2), (2, 0, 2, 2)],
            [(0, 0, 2, 2), (0, 0, 4, 0), (0, 0, 2, 0)],
            [(2, 1, 1, 2), (1, 1, 0, 0), (1, 2, 2, 1)],
        ]
        for chain in chains:
            shading = "+"
            elements = []
            for left, right, top, bottom in chain:
                shape = BoxShape(left, right, top, bottom, shading)
                element = random_element(rng, shape, terms=2)
                elements.append(element)
                shading = element.base_shading()
            x, y, z = elements
            assert v_product(v_product(x, y), z) == v_product(x, v_product(y, z))

    def test_orthogonal_product_associative(self):
        rng = random.Random(29)
        for _ in range(12):
            shapes = [
                BoxShape(0, 0, 2 * rng.randint(0, 2), 2 * rng.randint(0, 1), "+")
                for _ in range(3)
            ]
            x, y, z = (wrap(random_element(rng, s, terms=2)) for s in shapes)
            assert w_product(w_product(x, y), z) == w_product(x, w_product(y, z))

    def test_dagger_reverses_products(self):
        rng = random.Random(31)
        for _ in range(8):
            x = random_element(rng, BoxShape(0, 1, 2, 1, "+"))
            y = random_element(rng, BoxShape(1, 1, 1, 1, "+"))
            assert v_product(x, y).dagger() == v_product(y.dagger(), x.dagger())
            xw = wrap(random_element(rng, BoxShape(0, 0, 2, 2, "+")))
            yw = wrap(random_element(rng, BoxShape(0, 0, 4, 0, "+")))
            assert w_product(xw, yw).dagger() == w_product(yw.dagger(), xw.dagger())

    def test_gr_product_validates(self):
        a = cup()
        level_one = GradedElement.from_diagram(
            TLDiagram(BoxShape(1, 1, 2, 0, "+"), [(0, 1), (2, 3)])
        )
        with pytest.raises(ValueError):
            gr_product(a, level_one)
        with pytest.raises(ValueError):
            gr_product(a, cup("-"))
        with pytest.raises(ValueError):
            gr_product(a, vertical_bars())


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------


class TestTraces:
    def test_closed_trace_of_cups(self):
        one_cup = cup()
        assert v_trace(one_cup) == DELTA
        two = v_product(one_cup, one_cup)
        assert v_trace(two) == parse_scalar("d + d^2")
        three = v_product(two, one_cup)
        assert v_trace(three) == parse_scalar("d + 3*d^2 + d^3")

    def test_trace_vanishes_off_support(self):
        odd = GradedElement.from_diagram(
            TLDiagram(BoxShape(0, 0, 1, 1, "+"), [(0, 1)])
        )
        assert v_trace(odd) == ZERO
        rect = GradedElement.from_diagram(
            TLDiagram(BoxShape(0, 1, 1, 0, "+"), [(0, 1)])
        )
        assert v_trace(rect) == ZERO

    def test_traciality(self):
        rng = random.Random(37)
        for k1, k2 in [(0, 0), (1, 1), (0, 2), (2, 0), (2, 2)]:
            x = random_element(rng, BoxShape(k1, k2, 2, 0, "+"))
            y = random_element(rng, BoxShape(k2, k1, 2, 2, "+"))
            assert v_trace(v_product(x, y)) == v_trace(v_product(y, x))
        for _ in range(6):
            xw = wrap(random_element(rng, BoxShape(0, 0, 2, 2, "+")))
            yw = wrap(random_element(rng, BoxShape(0, 0, 2, 4, "+")))
            assert w_trace(w_product(xw, yw)) == w_trace(w_product(yw, xw))

    def test_normalized_trace_of_units(self):
        for k in range(5):
            assert voiculescu_trace(identity_strings(k)) == ONE

    def test_normalized_trace_rejects_general_cells(self):
        with pytest.raises(ValueError):
            voiculescu_trace(vertical_bars())

    def test_doubled_trace_of_doubled_units(self):
        for k in range(4):
            p = parallel_strings(k)
            assert v_trace(p) == Scalar.delta_power(2 * k)
            assert boxtimes_trace(p) == ONE

    def test_doubled_trace_rejects_odd_sides(self):
        with pytest.raises(ValueError):
            boxtimes_trace(identity_strings(3))

    def test_inner_product_examples(self):
        unit = identity_strings(0)
        assert inner_product_v(unit, unit) == ONE
        assert inner_product_v(cup(), cup()) == parse_scalar("d + d^2")


# ---------------------------------------------------------------------------
# standard elements
# ---------------------------------------------------------------------------


class TestStandardElements:
    def test_generator_relations(self):
        e = [jones_generator(4, i) for i in range(3)]
        for ei in e:
            assert v_product(ei, ei) == ei * DELTA
        for i in (0, 1):
            assert v_product(v_product(e[i], e[i + 1]), e[i]) == e[i]
            assert v_product(v_product(e[i + 1], e[i]), e[i + 1]) == e[i + 1]
        assert v_product(e[0], e[2]) == v_product(e[2], e[0])

    def test_generator_range_checked(self):
        with pytest.raises(ValueError):
            jones_generator(3, 2)

    def test_normalized_cupcap_idempotent(self):
        for k in (0, 1, 2):
            e = cup_cap(k, normalized=True)
            assert v_product(e, e) == e

    def test_middle_bridge_idempotent_with_state(self):
        for k in (1, 2, 3):
            f = middle_cupcap(k)
            assert v_product(f, f) == f
            assert boxtimes_trace(f) == Scalar.delta_power(-2)

    def test_corner_hook_closes_to_cupcap(self):
        c = corner_hooks(0)
        product = v_product(c, c.dagger())
        expected = GradedElement.from_diagram(
            TLDiagram(BoxShape(0, 0, 2, 2, "+"), [(0, 1), (2, 3)])
        )
        assert product == expected

    def test_dispatcher_matches_factories(self):
        assert standard_element("unit_k", 3) == identity_strings(3)
        assert standard_element("jones_e_i", 4, 1) == jones_generator(4, 1)
        assert standard_element("f_k", 2) == middle_cupcap(2)
        assert standard_element("p_k", 2) == parallel_strings(2)
        with pytest.raises(ValueError):
            standard_element("no_such_kind")


# ---------------------------------------------------------------------------
# inclusions, embeddings, rotations
# ---------------------------------------------------------------------------


class TestEmbeddings:
    def test_inclusion_preserves_normalized_trace(self):
        rng = random.Random(41)
        for k in (0, 1, 2):
            x = random_element(rng, BoxShape(k, k, 4, 0, "+"), terms=2)
            assert voiculescu_trace(gr_include(x)) == voiculescu_trace(x)

    def test_inclusion_multiplicative(self):
        rng = random.Random(43)
        for k in (0, 1):
            x = random_element(rng, BoxShape(k, k, 2, 0, "+"))
            y = random_element(rng, BoxShape(k, k, 4, 0, "+"))
            assert gr_include(gr_product(x, y)) == gr_product(
                gr_include(x), gr_include(y)
            )

    def test_embed_of_units_is_doubled_unit(self):
        for k in (0, 1, 2):
            assert embed_tensor(
                identity_strings(k), identity_strings(k)
            ) == parallel_strings(k)

    def test_embed_multiplicative_with_reversal(self):
        rng = random.Random(47)
        for k in (0, 1):
            a = random_element(rng, BoxShape(k, k, 2, 0, "+"))
            a2 = random_element(rng, BoxShape(k, k, 2, 0, "+"))
            b = random_element(rng, BoxShape(k, k, 2, 0, "+"))
            b2 = random_element(rng, BoxShape(k, k, 2, 0, "+"))
            lhs = v_product(embed_tensor(a, b), embed_tensor(a2, b2))
            rhs = embed_tensor(gr_product(a, a2), gr_product(b2, b))
            assert lhs == rhs

    def test_embed_dagger(self):
        rng = random.Random(53)
        for k in (0, 1):
            a = random_element(rng, BoxShape(k, k, 2, 0, "+"))
            b = random_element(rng, BoxShape(k, k, 4, 0, "+"))
            assert embed_tensor(a, b).dagger() == embed_tensor(
                a.dagger(), b.dagger()
            )

    def test_doubled_trace_factors_on_embeddings(self):
        rng = random.Random(59)
        for k in (0, 1):
            a = random_element(rng, BoxShape(k, k, 2, 0, "+"))
            b = random_element(rng, BoxShape(k, k, 4, 0, "+"))
            assert boxtimes_trace(embed_tensor(a, b)) == voiculescu_trace(
                a
            ) * voiculescu_trace(b)

    def test_half_turn_antimultiplicative_and_involutive(self):
        rng = random.Random(61)
        for k in (0, 1):
            x = random_element(rng, BoxShape(k, k, 2, 0, "+"))
            y = random_element(rng, BoxShape(k, k, 2, 2, "+"))
            lhs = op_map(v_product(x, y))
            assert not lhs.is_zero()
            assert lhs == v_product(op_map(y), op_map(x))
            assert op_map(op_map(x)) == x

    def test_action_by_identity_rectangles(self):
        rng = random.Random(67)
        x = random_element(rng, BoxShape(1, 1, 3, 1, "+"), terms=2)
        acted = tl_action(identity_rectangle(3), identity_rectangle(1), x)
        assert acted == x

    def test_action_size_mismatch_raises(self):
        with pytest.raises(ValueError):
            tl_action(identity_rectangle(3), identity_rectangle(2), vertical_bars())


# ---------------------------------------------------------------------------
# element structure
# ---------------------------------------------------------------------------


class TestGradedElement:
    def test_mixed_side_cells_rejected(self):
        a = TLDiagram(BoxShape(0, 0, 2, 0, "+"), [(0, 1)])
        b = TLDiagram(BoxShape(1, 1, 0, 0, "+"), [(0, 1)])
        with pytest.raises(ValueError):
            GradedElement.from_terms([(a, ONE), (b, ONE)])

    def test_mixed_shading_cells_rejected(self):
        a = TLDiagram(BoxShape(0, 0, 2, 0, "+"), [(0, 1)])
        b = TLDiagram(BoxShape(0, 0, 4, 0, "-"), [(0, 1), (2, 3)])
        with pytest.raises(ValueError):
            GradedElement.from_terms([(a, ONE), (b, ONE)])

    def test_zero_coefficients_dropped(self):
        a = TLDiagram(BoxShape(0, 0, 2, 0, "+"), [(0, 1)])
        x = GradedElement.from_terms([(a, ONE), (a, -ONE)])
        assert x.is_zero()
        assert x == GradedElement.zero()

    def test_linear_structure(self):
        rng = random.Random(71)
        shape = BoxShape(0, 0, 4, 2, "+")
        x = random_element(rng, shape, terms=3)
        y = random_element(rng, shape, terms=3)
        c = random_scalar(rng)
        assert (x + y) - y == x
        assert (x * c) + (y * c) == (x + y) * c
        assert -(-x) == x
        assert x - x == GradedElement.zero()

    def test_document_round_trip(self):
        rng = random.Random(73)
        for shape in (BoxShape(0, 0, 4, 2, "+"), BoxShape(1, 2, 2, 1, "-")):
            x = random_element(rng, shape, terms=3)
            assert GradedElement.from_doc(x.to_doc()) == x

    def test_dagger_is_involution(self):
        rng = random.Random(79)
        x = random_element(rng, BoxShape(1, 2, 3, 2, "+"), terms=3)
        assert dagger(dagger(x)) == x
