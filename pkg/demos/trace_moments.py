"""Moments of a box element, and the meander identity behind them.

The graded trace of the n-th power of the single vertical strand counts
meander systems: closed loops formed by matching the strand's endpoints
above and below in every planar way.  This script computes moments of a
small element exactly, evaluates them at a numeric loop modulus, and then
checks the strand moments against a standalone meander enumeration that
never touches the diagram engine.
"""

import json
from pathlib import Path

from tlbox import (
    element_from_document,
    gr_product,
    meander_polynomial,
    polynomial_string,
    enumerate_meanders,
    trace_moment,
    voiculescu_trace,
)

HERE = Path(__file__).parent


def main() -> None:
    with open(HERE / "elements" / "powers.json", encoding="utf-8") as handle:
        x = element_from_document(json.load(handle))

    print("moments of the element in demos/elements/powers.json")
    power = x
    for k in range(1, 4):
        if k > 1:
            power = gr_product(power, x)
        moment = voiculescu_trace(power)
        print(f"  tau(x^{k}) = {moment.render()}")
        print(f"             = {moment.evaluate(2.0):g} at modulus 2")

    print()
    print("strand moments against the independent meander count")
    for n in range(1, 7):
        polynomial = meander_polynomial(n)
        assert trace_moment(n) == polynomial
        rendered = polynomial_string(enumerate_meanders(n))
        print(f"  m_{n} = {rendered}")
    print("  every strand moment matches the meander polynomial exactly")


if __name__ == "__main__":
    main()
