"""Acceptance gate: ten named checks with pinned tolerances and budgets.

Every check contributes one PASS or FAIL line to the terminal summary, so
the gate is readable in any pytest run, and the timed checks enforce
their runtime budgets.  Tolerances are written out literally at each
comparison.
"""

import functools
import json
import math
import random
import time

import numpy as np
import pytest

from conftest import record_acceptance
from support import random_element, random_scalar
from tlbox.algebra import (
    GradedElement,
    gr_product,
    identity_strings,
    inner_product_v,
    parallel_strings,
    embed_tensor,
    boxtimes_trace,
    v_product,
    v_trace,
    voiculescu_trace,
    w_product,
    w_trace,
)
from tlbox.basis_change import (
    from_orthogonal,
    round_trip_operator,
    to_orthogonal,
)
from tlbox.derivations import (
    conjugate_variable,
    derivation,
    double_coproduct,
    hook_difference,
    kernel_reconstruct,
    raw_derivation,
)
from tlbox.diagrams import (
    BoxShape,
    TLDiagram,
    enumerate_matchings,
    enumerate_shapes,
    identity_rectangle,
)
from tlbox.meander import (
    enumerate_meanders,
    meander_polynomial,
    polynomial_string,
    trace_moment,
)
from tlbox.pairings import (
    PAIRING_FLAVORS,
    annihilated_by_expectation,
    cap_all_top,
    conditional_expectation,
    gram_matrix,
    orthogonal_complement_basis,
)
from tlbox.scalars import DELTA, ONE, Scalar
from tlbox.serialization import element_from_document, element_to_document
from tlbox.spectrum import (
    PrincipalGraph,
    global_index,
    pf_dimensions,
    r_parameter,
)


def gate(number: int, name: str, budget: float | None = None):
    """Record one PASS/FAIL line per check and enforce the budget."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            status = "FAIL"
            try:
                fn(*args, **kwargs)
                status = "PASS"
            finally:
                elapsed = time.perf_counter() - start
                if status == "PASS" and budget is not None and elapsed >= budget:
                    status = "FAIL"
                record_acceptance(number, name, status, elapsed)
                print(f"acceptance {number:2d} {name}: {status} ({elapsed:.1f}s)")
            assert status == "PASS", (
                f"check {number} ran {elapsed:.1f}s, over its {budget}s budget"
            )

        return run

    return wrap


def flip(shading: str, points: int) -> str:
    if points % 2 == 0:
        return shading
    return "-" if shading == "+" else "+"


def partner_shape(rng: random.Random, shape: BoxShape, bound: int) -> BoxShape:
    """A shape that glues to the right of ``shape`` within the bound."""
    shading = flip(shape.shading, shape.top)
    candidates = [
        s for s in enumerate_shapes(bound, (shading,)) if s.left == shape.right
    ]
    return rng.choice(candidates)


@gate(1, "orthogonalizing basis change", budget=60.0)
def test_01_orthogonalization():
    for s in range(11):
        for t in range(11 - s):
            for order in ("xy", "yx"):
                top, bottom = round_trip_operator(s, t, order)
                assert top == {identity_rectangle(s): ONE}, (s, t, order)
                assert bottom == {identity_rectangle(t): ONE}, (s, t, order)

    for shape in enumerate_shapes(8):
        for d in enumerate_matchings(shape):
            x = GradedElement.from_diagram(d)
            assert from_orthogonal(to_orthogonal(x)) == x
            w = GradedElement.from_diagram(d, flavor="W")
            assert to_orthogonal(from_orthogonal(w)) == w

    rng = random.Random(2024)
    shapes = enumerate_shapes(6)
    for _ in range(200):
        a_shape = rng.choice(shapes)
        a = random_element(rng, a_shape)
        b = random_element(rng, partner_shape(rng, a_shape, 6))
        assert to_orthogonal(v_product(a, b)) == w_product(
            to_orthogonal(a), to_orthogonal(b)
        )
        assert to_orthogonal(a.dagger()) == to_orthogonal(a).dagger()
        assert w_trace(to_orthogonal(a)) == v_trace(a)


@gate(2, "meander moment identity", budget=60.0)
def test_02_meander_moments():
    assert meander_polynomial(1) == DELTA
    assert polynomial_string(enumerate_meanders(1)) == "q"
    assert meander_polynomial(2) == Scalar((0, 2, 2))
    assert polynomial_string(enumerate_meanders(2)) == "2*q + 2*q^2"
    for n in range(1, 7):
        assert trace_moment(n) == meander_polynomial(n)


@gate(3, "associativity and trace properties", budget=30.0)
def test_03_products_and_traces():
    rng = random.Random(3)
    shapes = enumerate_shapes(6)

    for _ in range(60):
        a_shape = rng.choice(shapes)
        b_shape = partner_shape(rng, a_shape, 6)
        c_shape = partner_shape(rng, b_shape, 6)
        a = random_element(rng, a_shape)
        b = random_element(rng, b_shape)
        c = random_element(rng, c_shape)
        assert v_product(v_product(a, b), c) == v_product(a, v_product(b, c))
        wa, wb, wc = to_orthogonal(a), to_orthogonal(b), to_orthogonal(c)
        assert w_product(w_product(wa, wb), wc) == w_product(
            wa, w_product(wb, wc)
        )

    cyclable = [
        (x, y)
        for x in shapes
        for y in shapes
        if x.right == y.left
        and y.right == x.left
        and y.shading == flip(x.shading, x.top)
        and x.shading == flip(y.shading, y.top)
    ]
    for x_shape, y_shape in rng.sample(cyclable, 60):
        x = random_element(rng, x_shape)
        y = random_element(rng, y_shape)
        assert v_trace(v_product(x, y)) == v_trace(v_product(y, x))

    for k in range(3):
        for top_x in range(0, 7 - 2 * k, 2):
            for top_y in range(0, 7 - 2 * k - top_x, 2):
                x = random_element(rng, BoxShape(k, k, top_x, 0, "+"))
                y = random_element(rng, BoxShape(k, k, top_y, 0, "+"))
                assert voiculescu_trace(gr_product(x, y)) == voiculescu_trace(
                    gr_product(y, x)
                )

    for k in range(6):
        assert voiculescu_trace(identity_strings(k)) == ONE
    for k in range(3):
        assert boxtimes_trace(parallel_strings(k)) == ONE


@gate(4, "Gram positivity at sample moduli", budget=30.0)
def test_04_gram_positivity():
    for shape in enumerate_shapes(8):
        for flavor in PAIRING_FLAVORS:
            gram = gram_matrix(shape, flavor)
            for delta in (2.0, 1.9, 1.6180339887):
                low = gram.min_eigenvalue(delta)
                assert low >= -1e-8, (shape, flavor, delta, low)


@gate(5, "conditional expectation onto paired boxes")
def test_05_conditional_expectation():
    rng = random.Random(5)
    for s in range(3):
        for t in range(3):
            shape = BoxShape(0, 0, 2 * s, 2 * t, "+")
            for d in enumerate_matchings(shape):
                x = GradedElement.from_diagram(d)
                assert conditional_expectation(
                    x, "tau"
                ) == conditional_expectation(x, "tau_prime")
            u = random_element(rng, shape, terms=3)
            assert conditional_expectation(
                u, "tau"
            ) == conditional_expectation(u, "tau_prime")
            projected = conditional_expectation(u)
            assert conditional_expectation(projected) == projected

    for s, t in ((2, 2), (4, 2), (2, 4)):
        shape = BoxShape(0, 0, s, t, "+")
        caps = enumerate_matchings(BoxShape(0, 0, s, 0, "+"))
        for perp in orthogonal_complement_basis(shape):
            for cap in caps:
                assert cap_all_top(perp, cap).is_zero()


def kernel_label_basis(max_points: int):
    """Basis kernel labels: odd-cell diagrams and even-cell complements."""
    labels = []
    for a in range(1, max_points, 2):
        for b in range(1, max_points + 1 - a, 2):
            cell = BoxShape(0, 0, a, b, "-")
            labels += [
                GradedElement.from_diagram(d) for d in enumerate_matchings(cell)
            ]
    for a in range(2, max_points + 1, 2):
        for b in range(2, max_points + 1 - a, 2):
            labels += orthogonal_complement_basis(BoxShape(0, 0, a, b, "+"))
    return labels


@gate(6, "derivations, kernels, reconstruction", budget=120.0)
def test_06_derivations():
    rng = random.Random(6)
    unit = identity_strings(0)
    label_cells = [
        BoxShape(1, 0, s, t, "-" if s % 2 else "+")
        for s in range(4)
        for t in range(4 - s)
        if (s + t) % 2
    ]
    argument_cells = [BoxShape(0, 0, 2 * n, 0, "+") for n in (1, 2, 3)]
    for _ in range(200):
        q = random_element(rng, rng.choice(label_cells))
        x = random_element(rng, rng.choice(argument_cells))
        y = random_element(rng, rng.choice(argument_cells))
        lhs = raw_derivation(q, gr_product(x, y))
        rhs = v_product(embed_tensor(unit, y), raw_derivation(q, x)) + v_product(
            embed_tensor(x, unit), raw_derivation(q, y)
        )
        assert lhs == rhs

    probes = [
        GradedElement.from_diagram(d)
        for n in (1, 2, 3)
        for d in enumerate_matchings(BoxShape(0, 0, 2 * n, 0, "+"))
    ]
    labels = kernel_label_basis(8)
    assert len(labels) > 100
    for r in labels:
        difference = hook_difference(r)
        for probe in probes:
            assert annihilated_by_expectation(raw_derivation(difference, probe))
        assert kernel_reconstruct(difference, max_degree=3).element == r


@gate(7, "conjugate variable pairing")
def test_07_conjugate_variables():
    arguments = [
        GradedElement.from_diagram(d)
        for n in range(4)
        for d in enumerate_matchings(BoxShape(0, 0, 2 * n, 0, "+"))
    ]
    label_cells = [
        BoxShape(1, 0, s, t, "-" if s % 2 else "+")
        for s in range(5)
        for t in range(5 - s)
        if (s + t) % 2 and 1 + s + t <= 5
    ]
    for cell in label_cells:
        for q in enumerate_matchings(cell):
            label = GradedElement.from_diagram(q)
            conjugate = conjugate_variable(label)
            for x in arguments:
                assert v_trace(derivation(label, x)) == inner_product_v(
                    x, conjugate
                )


@gate(8, "coassociativity of the splitting")
def test_08_coassociativity():
    for n in range(3):
        for d in enumerate_matchings(BoxShape(0, 0, 2 * n, 0, "+")):
            x = GradedElement.from_diagram(d)
            assert double_coproduct(x, 0) == double_coproduct(x, 1)


def path_graph(length: int) -> PrincipalGraph:
    names = ["*"] + [f"v{i}" for i in range(1, length + 1)]
    vertices = {
        name: ("even" if i % 2 == 0 else "odd") for i, name in enumerate(names)
    }
    edges = tuple((names[i], names[i + 1]) for i in range(length))
    return PrincipalGraph(vertices, edges, "*")


@gate(9, "index and free dimension arithmetic")
def test_09_index_arithmetic():
    a3 = path_graph(2)
    delta, dims = pf_dimensions(a3)
    index = global_index(a3)
    assert abs(index - 2.0) <= 1e-9
    assert abs(r_parameter(0, delta, index) - (4.0 * math.sqrt(2.0) - 3.0)) <= 1e-9

    rng = random.Random(9)
    for _ in range(100):
        dlt = 1.0 + 3.0 * rng.random() + 1e-6
        idx = 0.5 + 10.0 * rng.random()
        assert abs(
            (2.0 * dlt * idx - (2.0 * idx - 1.0))
            - (1.0 + 2.0 * idx * (dlt - 1.0))
        ) <= 1e-12
        assert abs(
            r_parameter(0, dlt, idx) - (1.0 + 2.0 * idx * (dlt - 1.0))
        ) <= 1e-12

    for length in (2, 3, 6):
        graph = path_graph(length)
        delta, dims = pf_dimensions(graph)
        order = graph.vertex_order()
        vec = np.array([dims[v] for v in order])
        residual = float(np.linalg.norm(graph.adjacency() @ vec - delta * vec))
        assert residual <= 1e-10, (length, residual)


@gate(10, "serialization round trips")
def test_10_serialization():
    rng = random.Random(10)
    groups: dict = {}
    for shape in enumerate_shapes(8):
        key = (shape.left, shape.right, flip(shape.shading, shape.top))
        groups.setdefault(key, []).append(shape)
    group_list = [groups[key] for key in sorted(groups)]
    documents = 0
    for i in range(50):
        flavor = "V" if i % 2 == 0 else "W"
        group = rng.choice(group_list)
        terms = []
        for shape in rng.sample(group, min(rng.randint(1, 3), len(group))):
            basis = enumerate_matchings(shape)
            for d in rng.sample(basis, min(rng.randint(1, 3), len(basis))):
                terms.append((d, random_scalar(rng)))
        element = GradedElement.from_terms(terms, flavor)
        blob = json.dumps(
            element_to_document(element), separators=(",", ":")
        )
        parsed = element_from_document(json.loads(blob))
        assert parsed == element
        assert (
            json.dumps(element_to_document(parsed), separators=(",", ":"))
            == blob
        )
        documents += 1
    assert documents == 50

    crossing = {
        "flavor": "V",
        "cells": [
            {
                "shape": {
                    "left": 0,
                    "right": 0,
                    "top": 4,
                    "bottom": 0,
                    "shading": "+",
                },
                "terms": [
                    {"pairs": [[0, 2], [1, 3]], "coeff": {"num": [1], "den": [1]}}
                ],
            }
        ],
    }
    with pytest.raises(ValueError):
        element_from_document(crossing)
