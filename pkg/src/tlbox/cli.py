"""Command-line front end: reports, identity checks, and document IO.

Every subcommand is deterministic for a fixed seed and flag set.  Exit
status 0 means success, 1 means an identity check failed, and 2 means the
invocation or its input documents were invalid.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from .algebra import (
    GradedElement,
    embed_tensor,
    gr_product,
    inner_product_v,
    v_product,
    v_trace,
    voiculescu_trace,
    w_product,
    w_trace,
)
from .basis_change import round_trip_operator, to_orthogonal
from .derivations import (
    ReconstructionError,
    conjugate_variable,
    derivation,
    double_coproduct,
    hook_difference,
    kernel_reconstruct,
    raw_derivation,
)
from .diagrams import (
    BoxShape,
    TLDiagram,
    enumerate_matchings,
    enumerate_shapes,
    identity_rectangle,
)
from .meander import enumerate_meanders, polynomial_string
from .pairings import (
    annihilated_by_expectation,
    conditional_expectation,
    expectation_at_modulus,
    gram_matrix,
    orthogonal_complement_basis,
)
from .scalars import ONE, Scalar
from .serialization import element_from_document, element_to_document
from .spectrum import PrincipalGraph, global_index, pf_dimensions, r_parameter

__all__ = ["RunConfig", "main"]

FORMATS = ("json", "csv", "text")
MAX_DEGREE_GUARD = 5
EIGENVALUE_FLOOR = -1e-8
DELTA_MISMATCH = 1e-9
CHECK_TRIALS = 200

DeltaMode = Union[str, float]


@dataclass(frozen=True)
class RunConfig:
    """Validated run settings shared by the subcommands."""

    delta_mode: DeltaMode = "symbolic"
    max_degree: int = 3
    output_format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise ValueError(
                f"format must be one of {', '.join(FORMATS)}, got "
                f"{self.output_format!r}"
            )
        if not 1 <= self.max_degree <= MAX_DEGREE_GUARD:
            raise ValueError(
                f"max degree must lie in 1..{MAX_DEGREE_GUARD}, got "
                f"{self.max_degree}"
            )
        if self.delta_mode != "symbolic":
            value = float(self.delta_mode)
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(
                    f"numeric modulus must be positive and finite, got "
                    f"{value}"
                )

    @property
    def numeric_delta(self) -> float | None:
        return None if self.delta_mode == "symbolic" else float(self.delta_mode)


def _parse_delta(text: str) -> DeltaMode:
    if text == "symbolic":
        return "symbolic"
    try:
        return float(text)
    except ValueError:
        raise ValueError(
            f"--delta takes 'symbolic' or a number, got {text!r}"
        ) from None


def _config(args) -> RunConfig:
    return RunConfig(
        delta_mode=getattr(args, "delta", "symbolic"),
        max_degree=getattr(args, "max_degree", 3),
        output_format=getattr(args, "format", "text"),
        seed=getattr(args, "seed", 0),
    )


def _dumps(document) -> str:
    return json.dumps(document, separators=(",", ":")) + "\n"


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _load_element(path: str, strict: bool) -> GradedElement:
    return element_from_document(_load_json(path), strict=strict)


def _fmt(value: float) -> str:
    return format(value, ".6g")


# ---------------------------------------------------------------------------
# seeded random elements for the check subcommands
# ---------------------------------------------------------------------------


def _random_scalar(rng: random.Random) -> Scalar:
    coeffs = tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 3)))
    if not any(coeffs):
        coeffs = (1,)
    value = Scalar(coeffs)
    if rng.random() < 0.25:
        value = value * Scalar.delta_power(-rng.randint(1, 2))
    return value


def _random_element(
    rng: random.Random, shape: BoxShape, terms: int = 2
) -> GradedElement:
    basis = enumerate_matchings(shape)
    chosen = rng.sample(basis, min(terms, len(basis)))
    return GradedElement.from_terms(
        (d, _random_scalar(rng)) for d in chosen
    )


def _composable_partner(rng: random.Random, shape: BoxShape, bound: int) -> BoxShape:
    """A shape that glues to the right of ``shape`` within the bound."""
    shading = shape.shading if shape.top % 2 == 0 else (
        "-" if shape.shading == "+" else "+"
    )
    candidates = [
        s for s in enumerate_shapes(bound, (shading,)) if s.left == shape.right
    ]
    return rng.choice(candidates)


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------


def _check_report(
    checks: List[Tuple[str, bool]], output_format: str
) -> Tuple[str, int]:
    ok = all(passed for _, passed in checks)
    if output_format == "json":
        document = {
            "checks": [
                {"name": name, "status": "PASS" if passed else "FAIL"}
                for name, passed in checks
            ],
            "pass": ok,
        }
        return _dumps(document), 0 if ok else 1
    if output_format == "csv":
        lines = ["check,status"] + [
            f"{name},{'PASS' if passed else 'FAIL'}" for name, passed in checks
        ]
        return "\n".join(lines) + "\n", 0 if ok else 1
    lines = [
        f"{name}: {'PASS' if passed else 'FAIL'}" for name, passed in checks
    ]
    return "\n".join(lines) + "\n", 0 if ok else 1


def _shape_label(shape: BoxShape) -> str:
    return (
        f"{shape.left},{shape.right},{shape.top},{shape.bottom},"
        f"{shape.shading}"
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_trace(args) -> Tuple[str, int]:
    config = _config(args)
    if args.n < 1:
        raise ValueError(f"--n must be positive, got {args.n}")
    element = _load_element(args.element, args.strict)
    moments: List[Scalar] = []
    power = element
    for k in range(1, args.n + 1):
        if k > 1:
            power = gr_product(power, element)
        moments.append(voiculescu_trace(power))
    delta = config.numeric_delta
    if config.output_format == "json":
        document: Dict = {"n": args.n}
        if delta is None:
            document["moments"] = [m.render() for m in moments]
        else:
            document["delta"] = delta
            document["moments"] = [m.evaluate(delta) for m in moments]
        return _dumps(document), 0
    if config.output_format == "csv":
        lines = ["k,moment"]
        for k, moment in enumerate(moments, start=1):
            value = moment.render() if delta is None else repr(moment.evaluate(delta))
            lines.append(f"{k},{value}")
        return "\n".join(lines) + "\n", 0
    lines = []
    for k, moment in enumerate(moments, start=1):
        value = moment.render() if delta is None else _fmt(moment.evaluate(delta))
        lines.append(f"tau(x^{k}) = {value}")
    return "\n".join(lines) + "\n", 0


def _cmd_gram(args) -> Tuple[str, int]:
    config = _config(args)
    shapes = enumerate_shapes(args.max_boundary)
    delta = config.numeric_delta
    if delta is None:
        if config.output_format == "json":
            matrices = [
                {
                    "shape": _shape_label(shape),
                    "flavor": flavor,
                    "entries": [
                        [entry.render() for entry in row]
                        for row in gram_matrix(shape, flavor).entries
                    ],
                }
                for shape in shapes
                for flavor in ("tau", "tau_prime")
            ]
            return _dumps({"max_boundary": args.max_boundary, "matrices": matrices}), 0
        if config.output_format == "csv":
            lines = ["left,right,top,bottom,shading,flavor,row,col,entry"]
            for shape in shapes:
                for flavor in ("tau", "tau_prime"):
                    for i, row in enumerate(gram_matrix(shape, flavor).entries):
                        for j, entry in enumerate(row):
                            lines.append(
                                f"{_shape_label(shape)},{flavor},{i},{j},"
                                f"{entry.render()}"
                            )
            return "\n".join(lines) + "\n", 0
        blocks = []
        for shape in shapes:
            for flavor in ("tau", "tau_prime"):
                gram = gram_matrix(shape, flavor)
                blocks.append(f"shape ({_shape_label(shape)}) flavor {flavor}")
                blocks.append(gram.to_csv().rstrip("\n"))
        return "\n".join(blocks) + "\n", 0
    results = []
    worst = math.inf
    for shape in shapes:
        for flavor in ("tau", "tau_prime"):
            low = gram_matrix(shape, flavor).min_eigenvalue(delta)
            worst = min(worst, low)
            results.append((shape, flavor, low))
    ok = worst >= EIGENVALUE_FLOOR
    if config.output_format == "json":
        document = {
            "max_boundary": args.max_boundary,
            "delta": delta,
            "floor": EIGENVALUE_FLOOR,
            "results": [
                {
                    "shape": _shape_label(shape),
                    "flavor": flavor,
                    "min_eigenvalue": low,
                }
                for shape, flavor, low in results
            ],
            "pass": ok,
        }
        return _dumps(document), 0 if ok else 1
    if config.output_format == "csv":
        lines = ["left,right,top,bottom,shading,flavor,min_eigenvalue"]
        lines += [
            f"{_shape_label(shape)},{flavor},{low!r}"
            for shape, flavor, low in results
        ]
        return "\n".join(lines) + "\n", 0 if ok else 1
    lines = [
        f"shape ({_shape_label(shape)}) flavor {flavor}: "
        f"min eigenvalue {_fmt(low)}"
        for shape, flavor, low in results
    ]
    lines.append(
        f"positivity at modulus {_fmt(delta)}: {'PASS' if ok else 'FAIL'}"
    )
    return "\n".join(lines) + "\n", 0 if ok else 1


def _cmd_meander(args) -> Tuple[str, int]:
    config = _config(args)
    histogram = enumerate_meanders(args.n)
    rendered = polynomial_string(histogram)
    if config.output_format == "json":
        document = {
            "n": histogram.order,
            "counts": {str(k): c for k, c in histogram.as_dict().items()},
            "polynomial": rendered,
        }
        return _dumps(document), 0
    if config.output_format == "csv":
        lines = ["loops,count"]
        lines += [f"{k},{c}" for k, c in histogram.as_dict().items()]
        return "\n".join(lines) + "\n", 0
    lines = [f"meander order {histogram.order}"]
    lines += [
        f"{k} loop{'s' if k > 1 else ''}: {c}"
        for k, c in histogram.as_dict().items()
    ]
    lines.append(f"polynomial: {rendered}")
    return "\n".join(lines) + "\n", 0


def _cmd_cob_check(args) -> Tuple[str, int]:
    config = _config(args)
    rng = random.Random(config.seed)
    bound = args.max_boundary

    round_trip_ok = True
    for s in range(bound + 1):
        for t in range(bound + 1 - s):
            for order in ("yx", "xy"):
                top, bottom = round_trip_operator(s, t, order)
                if top != {identity_rectangle(s): ONE} or bottom != {
                    identity_rectangle(t): ONE
                }:
                    round_trip_ok = False

    shapes = enumerate_shapes(bound)
    product_ok = dagger_ok = trace_ok = True
    for _ in range(CHECK_TRIALS):
        shape = rng.choice(shapes)
        partner = _composable_partner(rng, shape, bound)
        a = _random_element(rng, shape)
        b = _random_element(rng, partner)
        if to_orthogonal(v_product(a, b)) != w_product(
            to_orthogonal(a), to_orthogonal(b)
        ):
            product_ok = False
        if to_orthogonal(a.dagger()) != to_orthogonal(a).dagger():
            dagger_ok = False
        if w_trace(to_orthogonal(a)) != v_trace(a):
            trace_ok = False

    checks = [
        ("round-trip identity", round_trip_ok),
        ("product intertwining", product_ok),
        ("adjoint intertwining", dagger_ok),
        ("trace intertwining", trace_ok),
    ]
    return _check_report(checks, config.output_format)


def _kernel_label_sweep(max_boundary: int):
    """Basis kernel labels: odd-cell diagrams and even-cell complements."""
    labels = []
    for a in range(1, max_boundary, 2):
        for b in range(1, max_boundary + 1 - a, 2):
            cell = BoxShape(0, 0, a, b, "-")
            labels += [
                GradedElement.from_diagram(d) for d in enumerate_matchings(cell)
            ]
    for a in range(2, max_boundary + 1, 2):
        for b in range(2, max_boundary + 1 - a, 2):
            labels += orthogonal_complement_basis(BoxShape(0, 0, a, b, "+"))
    return labels


def _cmd_derivation_check(args) -> Tuple[str, int]:
    config = _config(args)
    rng = random.Random(config.seed)
    unit = GradedElement.from_diagram(TLDiagram(BoxShape(0, 0, 0, 0, "+"), []))

    label_cells = [
        BoxShape(1, 0, s, t, "-" if s % 2 else "+")
        for s in range(4)
        for t in range(4 - s)
        if (s + t) % 2
    ]
    top_cells = [
        BoxShape(0, 0, 2 * n, 0, "+") for n in range(1, config.max_degree + 1)
    ]
    leibniz_ok = True
    for _ in range(CHECK_TRIALS):
        label = _random_element(rng, rng.choice(label_cells))
        x = _random_element(rng, rng.choice(top_cells))
        y = _random_element(rng, rng.choice(top_cells))
        lhs = raw_derivation(label, gr_product(x, y))
        rhs = v_product(embed_tensor(unit, y), raw_derivation(label, x)) + v_product(
            embed_tensor(x, unit), raw_derivation(label, y)
        )
        if lhs != rhs:
            leibniz_ok = False

    probes = [
        GradedElement.from_diagram(d)
        for n in (1, 2)
        for d in enumerate_matchings(BoxShape(0, 0, 2 * n, 0, "+"))
    ]
    vanishing_ok = True
    reconstruction_ok = True
    for r in _kernel_label_sweep(args.max_boundary):
        label = hook_difference(r)
        for probe in probes:
            if not annihilated_by_expectation(raw_derivation(label, probe)):
                vanishing_ok = False
        try:
            if kernel_reconstruct(label, max_degree=2).element != r:
                reconstruction_ok = False
        except ReconstructionError:
            reconstruction_ok = False

    coassociative_ok = True
    for n in (0, 1, 2):
        for d in enumerate_matchings(BoxShape(0, 0, 2 * n, 0, "+")):
            x = GradedElement.from_diagram(d)
            if double_coproduct(x, 0) != double_coproduct(x, 1):
                coassociative_ok = False

    checks = [
        ("product rule", leibniz_ok),
        ("kernel vanishing", vanishing_ok),
        ("kernel reconstruction", reconstruction_ok),
        ("coassociativity", coassociative_ok),
    ]
    return _check_report(checks, config.output_format)


def _cmd_conjugate_check(args) -> Tuple[str, int]:
    config = _config(args)
    label_cells = [
        BoxShape(1, 0, s, t, "-" if s % 2 else "+")
        for s in range(args.max_boundary)
        for t in range(args.max_boundary - s)
        if (s + t) % 2
    ]
    arguments = [
        GradedElement.from_diagram(d)
        for n in range(0, 4)
        for d in enumerate_matchings(BoxShape(0, 0, 2 * n, 0, "+"))
    ]
    ok = True
    for cell in label_cells:
        for q in enumerate_matchings(cell):
            label = GradedElement.from_diagram(q)
            conjugate = conjugate_variable(label)
            for x in arguments:
                paired = v_trace(derivation(label, x))
                if paired != inner_product_v(x, conjugate):
                    ok = False
    return _check_report([("adjoint pairing", ok)], config.output_format)


def _cmd_expectation(args) -> Tuple[str, int]:
    config = _config(args)
    element = _load_element(args.element, args.strict)
    delta = config.numeric_delta
    if delta is not None:
        projected = expectation_at_modulus(element, delta)
        rows = [
            (shape, diagram, value)
            for shape in sorted(
                projected, key=lambda s: (s.left, s.right, s.top, s.bottom, s.shading)
            )
            for diagram, value in sorted(
                projected[shape].items(), key=lambda item: item[0].pairs
            )
        ]
        if config.output_format == "json":
            document = {
                "delta": delta,
                "terms": [
                    {
                        "shape": _shape_label(shape),
                        "pairs": [list(p) for p in diagram.pairs],
                        "value": value,
                    }
                    for shape, diagram, value in rows
                ],
            }
            return _dumps(document), 0
        if config.output_format == "csv":
            lines = ["left,right,top,bottom,shading,pairs,value"]
            for shape, diagram, value in rows:
                pairs = " ".join(f"{a}-{b}" for a, b in diagram.pairs)
                lines.append(f"{_shape_label(shape)},{pairs},{value!r}")
            return "\n".join(lines) + "\n", 0
        lines = [
            f"({_shape_label(shape)}) "
            + " ".join(f"{a}-{b}" for a, b in diagram.pairs)
            + f": {_fmt(value)}"
            for shape, diagram, value in rows
        ]
        return "\n".join(lines) + ("\n" if lines else ""), 0
    projected_prime = conditional_expectation(element, "tau_prime")
    agree = projected_prime == conditional_expectation(element, "tau")
    document = element_to_document(projected_prime)
    if config.output_format == "json":
        return _dumps({"element": document, "flavors_agree": agree}), 0 if agree else 1
    if config.output_format == "csv":
        lines = ["left,right,top,bottom,shading,pairs,coeff"]
        for cell in document["cells"]:
            label = ",".join(
                str(cell["shape"][key])
                for key in ("left", "right", "top", "bottom", "shading")
            )
            for term in cell["terms"]:
                pairs = " ".join(f"{a}-{b}" for a, b in term["pairs"])
                coeff = Scalar(
                    tuple(term["coeff"]["num"]), tuple(term["coeff"]["den"])
                ).render()
                lines.append(f"{label},{pairs},{coeff}")
        lines.append(f"flavors_agree,{agree}")
        return "\n".join(lines) + "\n", 0 if agree else 1
    lines = []
    for cell in document["cells"]:
        label = ",".join(
            str(cell["shape"][key])
            for key in ("left", "right", "top", "bottom", "shading")
        )
        for term in cell["terms"]:
            pairs = " ".join(f"{a}-{b}" for a, b in term["pairs"])
            coeff = Scalar(
                tuple(term["coeff"]["num"]), tuple(term["coeff"]["den"])
            ).render()
            lines.append(f"({label}) {pairs}: {coeff}")
    lines.append(f"flavors agree: {agree}")
    return "\n".join(lines) + "\n", 0 if agree else 1


def _cmd_index(args) -> Tuple[str, int]:
    config = _config(args)
    document = _load_json(args.graph)
    if not isinstance(document, dict):
        raise ValueError("graph document must be a JSON object")
    declared = config.numeric_delta
    if declared is not None:
        existing = document.get("delta")
        if existing is not None and abs(existing - declared) > DELTA_MISMATCH:
            raise ValueError(
                f"--delta {declared} disagrees with the document's modulus "
                f"{existing}"
            )
        document = dict(document, delta=declared)
    graph = PrincipalGraph.from_document(document)
    delta, dims = pf_dimensions(graph)
    if graph.infinite and graph.delta is not None:
        delta = graph.delta
    index = global_index(graph)
    levels = list(range(args.k + 1))
    r_values = [r_parameter(k, delta, index) for k in levels]

    if config.output_format == "json":
        out: Dict = {
            "delta": delta,
            "dims": {v: dims[v] for v in graph.vertex_order()},
            "infinite": graph.infinite,
            "index": None if math.isinf(index) else index,
            "r": {
                str(k): (None if math.isinf(r) else r)
                for k, r in zip(levels, r_values)
            },
        }
        return _dumps(out), 0
    if config.output_format == "csv":
        lines = ["vertex,parity,dim"]
        for vertex in graph.vertex_order():
            lines.append(
                f"{vertex},{graph.vertices[vertex]},{dims[vertex]!r}"
            )
        lines.append(f"delta,{delta!r}")
        lines.append(f"I,{index!r}")
        for k, r in zip(levels, r_values):
            lines.append(f"r_{k},{r!r}")
        return "\n".join(lines) + "\n", 0
    width = max(len(v) for v in graph.vertex_order())
    width = max(width, len("vertex"))
    lines = [f"{'vertex'.ljust(width)}  parity  dim"]
    for vertex in graph.vertex_order():
        parity = graph.vertices[vertex].ljust(6)
        lines.append(f"{vertex.ljust(width)}  {parity}  {_fmt(dims[vertex])}")
    lines.append(f"delta = {_fmt(delta)}")
    footer = f"I = {_fmt(index)}"
    for k, r in zip(levels, r_values):
        footer += f", r_{k} = {_fmt(r)}"
    lines.append(footer)
    return "\n".join(lines) + "\n", 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_format(parser) -> None:
    parser.add_argument(
        "--format", choices=FORMATS, default="text", help="output format"
    )


def _add_delta(parser) -> None:
    parser.add_argument(
        "--delta",
        type=_parse_delta,
        default="symbolic",
        help="'symbolic' for exact output or a numeric loop modulus",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tlbox",
        description=(
            "Exact computations in the diagrammatic box algebras: traces, "
            "Gram matrices, meanders, basis-change and derivation checks, "
            "conditional expectations, and principal-graph indices."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    trace = commands.add_parser(
        "trace", help="moments of an element under the graded trace"
    )
    trace.add_argument("--element", required=True, help="element document path")
    trace.add_argument("--n", type=int, default=3, help="highest power")
    trace.add_argument(
        "--strict", action="store_true", help="reject unreduced coefficients"
    )
    _add_delta(trace)
    _add_format(trace)
    trace.set_defaults(handler=_cmd_trace)

    gram = commands.add_parser(
        "gram", help="Gram matrices, or their least eigenvalues at a modulus"
    )
    gram.add_argument(
        "--max-boundary", type=int, default=4, help="largest boundary size"
    )
    _add_delta(gram)
    _add_format(gram)
    gram.set_defaults(handler=_cmd_gram)

    meander = commands.add_parser(
        "meander", help="loop histogram of all meander systems of one order"
    )
    meander.add_argument("--n", type=int, required=True, help="meander order")
    _add_format(meander)
    meander.set_defaults(handler=_cmd_meander)

    cob = commands.add_parser(
        "cob-check", help="verify the orthogonalizing change of basis"
    )
    cob.add_argument(
        "--max-boundary", type=int, default=6, help="largest boundary size"
    )
    cob.add_argument("--seed", type=int, default=0, help="sampling seed")
    _add_format(cob)
    cob.set_defaults(handler=_cmd_cob_check)

    derivation_check = commands.add_parser(
        "derivation-check",
        help="verify the derivation family, its kernel, and the coproduct",
    )
    derivation_check.add_argument(
        "--max-degree",
        type=int,
        default=3,
        help="largest strand degree in sampled arguments",
    )
    derivation_check.add_argument(
        "--max-boundary",
        type=int,
        default=6,
        help="largest kernel-label boundary size",
    )
    derivation_check.add_argument("--seed", type=int, default=0, help="sampling seed")
    _add_format(derivation_check)
    derivation_check.set_defaults(handler=_cmd_derivation_check)

    conjugate = commands.add_parser(
        "conjugate-check", help="verify the adjoint pairing of conjugates"
    )
    conjugate.add_argument(
        "--max-boundary",
        type=int,
        default=5,
        help="largest label boundary size",
    )
    _add_format(conjugate)
    conjugate.set_defaults(handler=_cmd_conjugate_check)

    expectation = commands.add_parser(
        "expectation", help="project an element onto the paired boxes"
    )
    expectation.add_argument(
        "--element", required=True, help="element document path"
    )
    expectation.add_argument(
        "--strict", action="store_true", help="reject unreduced coefficients"
    )
    _add_delta(expectation)
    _add_format(expectation)
    expectation.set_defaults(handler=_cmd_expectation)

    index = commands.add_parser(
        "index", help="Perron-Frobenius data of a principal graph"
    )
    index.add_argument("--graph", required=True, help="graph document path")
    index.add_argument(
        "--k", type=int, default=0, help="highest free-dimension level"
    )
    _add_delta(index)
    _add_format(index)
    index.set_defaults(handler=_cmd_index)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        output, code = args.handler(args)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
