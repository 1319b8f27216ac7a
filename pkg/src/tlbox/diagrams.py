"""Non-crossing matchings on four-sided boxes and the gluing engine.

A diagram lives in a rectangular box with ``left`` points on the left edge,
``right`` on the right, ``top`` on the top and ``bottom`` on the bottom, plus
a shading sign ``+``/``-`` for the region at the marked top-left corner.
Boundary points are indexed clockwise from that corner:

* top edge, left to right: ``0 .. top-1``;
* right edge, top to bottom: ``top .. top+right-1``;
* bottom edge, right to left: ``top+right .. top+right+bottom-1``;
* left edge, bottom to top: ``top+right+bottom .. total-1``.

Position helpers (``bottom_index``, ``left_index``) translate the human
reading order (bottom positions counted from the left, left depths counted
from the top) into these clockwise indices; every gluing recipe in the
package is written against the helpers, never against raw indices.

A matching is stored as a fixed-point-free involution ``partner`` on the
boundary indices; non-crossing means no pairs ``(a, b)`` and ``(c, d)`` with
``a < c < b < d`` in the circular order (for matchings the linear check is
equivalent).  All gluing operations reduce to one generic rewiring pass that
joins boundary points of several diagrams, routes the surviving strings to
output slots, and counts the closed loops removed.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence

__all__ = [
    "VALIDATE",
    "BoxShape",
    "TLDiagram",
    "catalan",
    "enumerate_matchings",
    "enumerate_linear_matchings",
    "enumerate_shapes",
    "classify",
    "glue",
    "horizontal_glue",
    "partial_glue",
    "side_close",
    "cap_top",
    "cap_bottom",
    "cap_top_pair",
    "is_paired_diagram",
    "split_paired_diagram",
    "tl_action_glue",
    "dagger_reflect",
    "rotate_pi",
    "gr_include_diagram",
    "embed_pair_diagram",
    "empty_diagram",
    "identity_diagram",
    "identity_rectangle",
    "rewire",
]

# When true, every gluing validates that its output matching is perfect and
# non-crossing.  The checks are linear-time; they stay on by default.
VALIDATE = True


def catalan(n: int) -> int:
    """The number of non-crossing perfect matchings on ``2n`` points."""
    return comb(2 * n, n) // (n + 1)


class BoxShape:
    """Boundary profile of a box: four edge counts and a corner shading."""

    __slots__ = ("left", "right", "top", "bottom", "shading", "_hash")

    def __init__(self, left: int, right: int, top: int, bottom: int, shading: str = "+"):
        if min(left, right, top, bottom) < 0:
            raise ValueError("edge counts must be nonnegative")
        if shading not in ("+", "-"):
            raise ValueError(f"shading must be '+' or '-', got {shading!r}")
        if (left + right + top + bottom) % 2:
            raise ValueError(
                f"total boundary size must be even, got "
                f"{left + right + top + bottom}"
            )
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        object.__setattr__(self, "shading", shading)
        object.__setattr__(self, "_hash", hash((left, right, top, bottom, shading)))

    def __setattr__(self, name, value):
        raise AttributeError("BoxShape is immutable")

    # -- size and index helpers ------------------------------------------

    @property
    def total(self) -> int:
        return self.left + self.right + self.top + self.bottom

    def top_index(self, i: int) -> int:
        """Clockwise index of top point ``i`` counted from the left."""
        return i

    def right_index(self, depth: int) -> int:
        """Clockwise index of right point at ``depth`` counted from the top."""
        return self.top + depth

    def bottom_index(self, pos: int) -> int:
        """Clockwise index of bottom point at ``pos`` counted from the left."""
        return self.top + self.right + (self.bottom - 1 - pos)

    def left_index(self, depth: int) -> int:
        """Clockwise index of left point at ``depth`` counted from the top."""
        return self.top + self.right + self.bottom + (self.left - 1 - depth)

    def flip_shading(self, times: int = 1) -> str:
        if times % 2 == 0:
            return self.shading
        return "-" if self.shading == "+" else "+"

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoxShape):
            return NotImplemented
        return (
            self.left == other.left
            and self.right == other.right
            and self.top == other.top
            and self.bottom == other.bottom
            and self.shading == other.shading
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return (
            f"BoxShape({self.left}, {self.right}, {self.top}, {self.bottom}, "
            f"{self.shading!r})"
        )

    def key(self) -> tuple:
        return (self.left, self.right, self.top, self.bottom, self.shading)

    # -- serialization ---------------------------------------------------------

    def to_doc(self) -> dict:
        return {
            "left": self.left,
            "right": self.right,
            "top": self.top,
            "bottom": self.bottom,
            "shading": self.shading,
        }

    @staticmethod
    def from_doc(doc: dict) -> "BoxShape":
        try:
            return BoxShape(
                doc["left"], doc["right"], doc["top"], doc["bottom"], doc["shading"]
            )
        except KeyError as exc:
            raise ValueError(f"shape document missing field {exc}") from exc


def _check_noncrossing(partner: Sequence[int]) -> None:
    stack: list[int] = []
    for i, j in enumerate(partner):
        if j > i:
            stack.append(j)
        else:
            if not stack or stack[-1] != i:
                raise ValueError("matching has crossing pairs")
            stack.pop()
    if stack:
        raise ValueError("matching is not a perfect involution")


class TLDiagram:
    """A non-crossing perfect matching on the boundary of a box."""

    __slots__ = ("shape", "partner", "_hash")

    def __init__(self, shape: BoxShape, pairs: Iterable[tuple[int, int]]):
        m = shape.total
        partner = [-1] * m
        count = 0
        for a, b in pairs:
            if not (0 <= a < m and 0 <= b < m) or a == b:
                raise ValueError(f"pair ({a}, {b}) out of range for {shape!r}")
            if partner[a] != -1 or partner[b] != -1:
                raise ValueError(f"point matched twice in pair ({a}, {b})")
            partner[a] = b
            partner[b] = a
            count += 2
        if count != m:
            raise ValueError(f"matching covers {count} of {m} points")
        _check_noncrossing(partner)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "partner", tuple(partner))
        object.__setattr__(self, "_hash", hash((shape, tuple(partner))))

    def __setattr__(self, name, value):
        raise AttributeError("TLDiagram is immutable")

    @staticmethod
    def _from_partner(shape: BoxShape, partner: tuple[int, ...]) -> "TLDiagram":
        d = object.__new__(TLDiagram)
        object.__setattr__(d, "shape", shape)
        object.__setattr__(d, "partner", partner)
        object.__setattr__(d, "_hash", hash((shape, partner)))
        return d

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(a, b)`` with ``a < b``, sorted ascending by ``a``."""
        return tuple(
            (i, j) for i, j in enumerate(self.partner) if j > i
        )

    def encoding(self) -> bytes:
        """Injective byte encoding used for ordering and hashing."""
        if self.shape.total > 250:
            raise ValueError("diagram too large for byte encoding")
        head = bytes(
            (
                self.shape.left,
                self.shape.right,
                self.shape.top,
                self.shape.bottom,
                0 if self.shape.shading == "+" else 1,
            )
        )
        return head + bytes(self.partner)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLDiagram):
            return NotImplemented
        return self.shape == other.shape and self.partner == other.partner

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"TLDiagram({self.shape!r}, {list(self.pairs)!r})"

    # -- serialization -----------------------------------------------------

    def to_doc(self) -> dict:
        return {
            "shape": self.shape.to_doc(),
            "pairs": [list(p) for p in self.pairs],
        }

    @staticmethod
    def from_doc(doc: dict) -> "TLDiagram":
        if "shape" not in doc or "pairs" not in doc:
            raise ValueError("diagram document needs 'shape' and 'pairs'")
        shape = BoxShape.from_doc(doc["shape"])
        pairs = []
        for item in doc["pairs"]:
            if not (isinstance(item, (list, tuple)) and len(item) == 2):
                raise ValueError(f"malformed pair {item!r}")
            pairs.append((int(item[0]), int(item[1])))
        return TLDiagram(shape, pairs)


def empty_diagram(shading: str = "+") -> TLDiagram:
    """The unit of the point-free shape: a box with no boundary points."""
    return TLDiagram(BoxShape(0, 0, 0, 0, shading), [])


def identity_diagram(k: int, shading: str = "+") -> TLDiagram:
    """``k`` horizontal through strings joining left depth d to right depth d."""
    shape = BoxShape(k, k, 0, 0, shading)
    pairs = [(shape.right_index(d), shape.left_index(d)) for d in range(k)]
    return TLDiagram(shape, [(min(a, b), max(a, b)) for a, b in pairs])


def identity_rectangle(m: int, shading: str = "+") -> TLDiagram:
    """The rectangle sending bottom position p straight up to top point p."""
    shape = BoxShape(0, 0, m, m, shading)
    return TLDiagram(
        shape, [(shape.top_index(p), shape.bottom_index(p)) for p in range(m)]
    )


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _linear_matchings(m: int) -> tuple[tuple[int, ...], ...]:
    """All non-crossing perfect matchings on points ``0..m-1`` as partners."""
    if m % 2:
        raise ValueError(f"odd point count {m} admits no perfect matching")

    def gen(points: tuple[int, ...]) -> list[list[tuple[int, int]]]:
        if not points:
            return [[]]
        out = []
        first = points[0]
        for idx in range(1, len(points), 2):
            other = points[idx]
            for inside in gen(points[1:idx]):
                for outside in gen(points[idx + 1 :]):
                    out.append([(first, other)] + inside + outside)
        return out

    partners = []
    for pairing in gen(tuple(range(m))):
        partner = [-1] * m
        for a, b in pairing:
            partner[a] = b
            partner[b] = a
        partners.append(tuple(partner))
    partners.sort()
    return tuple(partners)


def enumerate_linear_matchings(m: int) -> tuple[tuple[int, ...], ...]:
    """Non-crossing matchings on a line of ``m`` points, as partner tuples."""
    return _linear_matchings(m)


@lru_cache(maxsize=None)
def enumerate_matchings(shape: BoxShape) -> tuple[TLDiagram, ...]:
    """All diagrams of one shape, ordered by canonical byte encoding."""
    m = shape.total
    if m % 2:
        raise ValueError(f"shape {shape!r} has odd boundary size")
    diagrams = [
        TLDiagram._from_partner(shape, partner) for partner in _linear_matchings(m)
    ]
    diagrams.sort(key=TLDiagram.encoding)
    return tuple(diagrams)


def enumerate_shapes(
    max_boundary: int, shadings: tuple[str, ...] = ("+", "-")
) -> list[BoxShape]:
    """Every box shape with an even boundary total up to the bound.

    Ordered lexicographically by side counts and shading, so sweeps over
    shapes are deterministic.
    """
    shapes = []
    for left in range(max_boundary + 1):
        for right in range(max_boundary + 1 - left):
            for top in range(max_boundary + 1 - left - right):
                for bottom in range(max_boundary + 1 - left - right - top):
                    if (left + right + top + bottom) % 2:
                        continue
                    for shading in shadings:
                        shapes.append(
                            BoxShape(left, right, top, bottom, shading)
                        )
    return shapes


# ---------------------------------------------------------------------------
# classification of rectangles
# ---------------------------------------------------------------------------


def classify(d: TLDiagram) -> dict:
    """Classify a top/bottom rectangle as epi, monic, and non-nested variants.

    The diagram is read as a map from its ``bottom`` points to its ``top``
    points.  It is epi when every top point is matched to a bottom point,
    monic when every bottom point reaches the top, and non-nested on a side
    when every turn-back on that side spans adjacent positions (planarity
    makes that equivalent to enclosing no other turn-back).
    """
    shape = d.shape
    if shape.left or shape.right:
        raise ValueError("classification needs a rectangle without side points")
    s_top, s_bot = shape.top, shape.bottom
    top_ids = set(range(s_top))
    epi = True
    monic = True
    top_turnbacks = []
    bottom_turnbacks = []
    for a, b in d.pairs:
        a_top = a in top_ids
        b_top = b in top_ids
        if a_top and b_top:
            epi = False
            top_turnbacks.append((a, b))
        elif not a_top and not b_top:
            monic = False
            bottom_turnbacks.append((a, b))
    def adjacent_positions(pairs, to_pos):
        return all(abs(to_pos(a) - to_pos(b)) == 1 for a, b in pairs)

    bottom_pos = {shape.bottom_index(p): p for p in range(s_bot)}
    nonnested_epi = epi and adjacent_positions(bottom_turnbacks, bottom_pos.get)
    nonnested_monic = monic and adjacent_positions(top_turnbacks, lambda i: i)
    return {
        "epi": epi,
        "monic": monic,
        "nonnested_epi": nonnested_epi,
        "nonnested_monic": nonnested_monic,
    }


# ---------------------------------------------------------------------------
# the generic rewiring engine
# ---------------------------------------------------------------------------


def rewire(
    parts: Sequence[TLDiagram],
    joins: Sequence[tuple[tuple[int, int], tuple[int, int]]],
    outs: dict[tuple[int, int], int],
    out_shape: BoxShape,
) -> tuple[TLDiagram, int]:
    """Glue several diagrams along joined points and collect the result.

    ``parts`` are diagrams whose boundary points are addressed as
    ``(part_index, point_index)``.  ``joins`` identifies pairs of points
    (possibly within one part), ``outs`` maps every surviving point to a slot
    on the output boundary.  Each point must carry exactly one of the two
    roles.  Strings are followed through the joins; paths between two output
    points become output pairs and closed cycles are counted as loops.
    """
    offsets = []
    total = 0
    for part in parts:
        offsets.append(total)
        total += part.shape.total
    partner = [0] * total
    for pi, part in enumerate(parts):
        off = offsets[pi]
        for i, j in enumerate(part.partner):
            partner[off + i] = off + j
    link = [-1] * total
    for (pa, ia), (pb, ib) in joins:
        a = offsets[pa] + ia
        b = offsets[pb] + ib
        if link[a] != -1 or link[b] != -1:
            raise ValueError("boundary point joined twice")
        link[a] = b
        link[b] = a
    slot = [-1] * total
    for (pi, i), s in outs.items():
        g = offsets[pi] + i
        if link[g] != -1:
            raise ValueError("boundary point both joined and routed out")
        slot[g] = s
    if VALIDATE:
        for g in range(total):
            if link[g] == -1 and slot[g] == -1:
                raise ValueError(f"boundary point {g} has no role")
    out_partner = [-1] * out_shape.total
    seen = bytearray(total)
    for g in range(total):
        if slot[g] == -1 or seen[g]:
            continue
        seen[g] = 1
        cur = g
        while True:
            nxt = partner[cur]
            seen[nxt] = 1
            if slot[nxt] != -1:
                a, b = slot[g], slot[nxt]
                out_partner[a] = b
                out_partner[b] = a
                break
            cur = link[nxt]
            if cur == -1:
                raise ValueError("string ends at an unrouted point")
            seen[cur] = 1
    loops = 0
    for g in range(total):
        if seen[g]:
            continue
        loops += 1
        cur = g
        while not seen[cur]:
            seen[cur] = 1
            nxt = partner[cur]
            seen[nxt] = 1
            cur = link[nxt]
            if cur == -1:
                raise ValueError("open string in loop phase")
    if VALIDATE:
        if any(p == -1 for p in out_partner):
            raise ValueError("output boundary not fully matched")
        _check_noncrossing(out_partner)
    return TLDiagram._from_partner(out_shape, tuple(out_partner)), loops


# ---------------------------------------------------------------------------
# concrete gluings
# ---------------------------------------------------------------------------


def horizontal_glue(x: TLDiagram, y: TLDiagram) -> tuple[TLDiagram, int]:
    """Place ``y`` to the right of ``x``, joining facing side points.

    Requires ``x.right == y.left``; the output shading is taken from ``x``
    (compatibility of shadings is an algebra-level rule, not a diagram one).
    """
    xs, ys = x.shape, y.shape
    if xs.right != ys.left:
        raise ValueError(
            f"cannot glue horizontally: {xs.right} right points vs "
            f"{ys.left} left points"
        )
    out = BoxShape(xs.left, ys.right, xs.top + ys.top, xs.bottom + ys.bottom, xs.shading)
    joins = [
        ((0, xs.right_index(d)), (1, ys.left_index(d))) for d in range(xs.right)
    ]
    outs: dict[tuple[int, int], int] = {}
    for i in range(xs.top):
        outs[(0, xs.top_index(i))] = out.top_index(i)
    for i in range(ys.top):
        outs[(1, ys.top_index(i))] = out.top_index(xs.top + i)
    for p in range(xs.bottom):
        outs[(0, xs.bottom_index(p))] = out.bottom_index(p)
    for p in range(ys.bottom):
        outs[(1, ys.bottom_index(p))] = out.bottom_index(xs.bottom + p)
    for d in range(xs.left):
        outs[(0, xs.left_index(d))] = out.left_index(d)
    for d in range(ys.right):
        outs[(1, ys.right_index(d))] = out.right_index(d)
    return rewire([x, y], joins, outs, out)


def partial_glue(x: TLDiagram, y: TLDiagram, i: int, j: int) -> tuple[TLDiagram, int]:
    """Horizontal gluing that also contracts facing top and bottom strings.

    The last ``i`` top points of ``x`` are joined, in reversed order, to the
    first ``i`` top points of ``y``; symmetrically the last ``j`` bottom
    points of ``x`` (counted from the left) meet the first ``j`` of ``y``.
    """
    xs, ys = x.shape, y.shape
    if xs.right != ys.left:
        raise ValueError("side point counts differ")
    if not (0 <= i <= min(xs.top, ys.top)):
        raise ValueError(f"cannot contract {i} top strings")
    if not (0 <= j <= min(xs.bottom, ys.bottom)):
        raise ValueError(f"cannot contract {j} bottom strings")
    out = BoxShape(
        xs.left,
        ys.right,
        xs.top + ys.top - 2 * i,
        xs.bottom + ys.bottom - 2 * j,
        xs.shading,
    )
    joins = [
        ((0, xs.right_index(d)), (1, ys.left_index(d))) for d in range(xs.right)
    ]
    for q in range(i):
        joins.append(((0, xs.top_index(xs.top - 1 - q)), (1, ys.top_index(q))))
    for q in range(j):
        joins.append(((0, xs.bottom_index(xs.bottom - 1 - q)), (1, ys.bottom_index(q))))
    outs: dict[tuple[int, int], int] = {}
    for p in range(xs.top - i):
        outs[(0, xs.top_index(p))] = out.top_index(p)
    for p in range(i, ys.top):
        outs[(1, ys.top_index(p))] = out.top_index(xs.top - i + p - i)
    for p in range(xs.bottom - j):
        outs[(0, xs.bottom_index(p))] = out.bottom_index(p)
    for p in range(j, ys.bottom):
        outs[(1, ys.bottom_index(p))] = out.bottom_index(xs.bottom - j + p - j)
    for d in range(xs.left):
        outs[(0, xs.left_index(d))] = out.left_index(d)
    for d in range(ys.right):
        outs[(1, ys.right_index(d))] = out.right_index(d)
    return rewire([x, y], joins, outs, out)


def side_close(x: TLDiagram) -> tuple[TLDiagram, int]:
    """Close left depth d onto right depth d beneath the box (trace closure)."""
    xs = x.shape
    if xs.left != xs.right:
        raise ValueError("side closure needs equal left and right counts")
    out = BoxShape(0, 0, xs.top, xs.bottom, xs.shading)
    joins = [
        ((0, xs.left_index(d)), (0, xs.right_index(d))) for d in range(xs.left)
    ]
    outs: dict[tuple[int, int], int] = {}
    for i in range(xs.top):
        outs[(0, xs.top_index(i))] = out.top_index(i)
    for p in range(xs.bottom):
        outs[(0, xs.bottom_index(p))] = out.bottom_index(p)
    return rewire([x], joins, outs, out)


def _cap_pairs(cap: TLDiagram, n: int, where: str) -> tuple[tuple[int, int], ...]:
    cs = cap.shape
    if cs.left or cs.right or cs.bottom or cs.top != n:
        raise ValueError(
            f"{where} cap must be a matching on {n} top points, got {cs!r}"
        )
    return cap.pairs


def cap_top(x: TLDiagram, cap: TLDiagram) -> tuple[TLDiagram, int]:
    """Close all top points of ``x`` with the matching ``cap`` drawn above."""
    xs = x.shape
    pairs = _cap_pairs(cap, xs.top, "top")
    out = BoxShape(xs.left, xs.right, 0, xs.bottom, xs.shading)
    joins = [((0, xs.top_index(a)), (0, xs.top_index(b))) for a, b in pairs]
    outs: dict[tuple[int, int], int] = {}
    for p in range(xs.bottom):
        outs[(0, xs.bottom_index(p))] = out.bottom_index(p)
    for d in range(xs.left):
        outs[(0, xs.left_index(d))] = out.left_index(d)
    for d in range(xs.right):
        outs[(0, xs.right_index(d))] = out.right_index(d)
    return rewire([x], joins, outs, out)


def cap_bottom(x: TLDiagram, cap: TLDiagram) -> tuple[TLDiagram, int]:
    """Close all bottom points of ``x`` with ``cap`` drawn below.

    The cap's point ``p`` meets the bottom point at position ``p`` counted
    from the left; reversal of reading order preserves non-crossing, so the
    cap set is the same Catalan family as for the top.
    """
    xs = x.shape
    pairs = _cap_pairs(cap, xs.bottom, "bottom")
    out = BoxShape(xs.left, xs.right, xs.top, 0, xs.shading)
    joins = [((0, xs.bottom_index(a)), (0, xs.bottom_index(b))) for a, b in pairs]
    outs: dict[tuple[int, int], int] = {}
    for i in range(xs.top):
        outs[(0, xs.top_index(i))] = out.top_index(i)
    for d in range(xs.left):
        outs[(0, xs.left_index(d))] = out.left_index(d)
    for d in range(xs.right):
        outs[(0, xs.right_index(d))] = out.right_index(d)
    return rewire([x], joins, outs, out)


def cap_top_pair(x: TLDiagram, i: int) -> tuple[TLDiagram, int]:
    """Close the adjacent top points ``i`` and ``i + 1`` with a single cap.

    All other boundary points pass through; the corner shading is unchanged
    because the two regions merged by the cap always agree.
    """
    xs = x.shape
    if not 0 <= i < xs.top - 1:
        raise ValueError(f"no adjacent top pair at {i} for {xs!r}")
    out = BoxShape(xs.left, xs.right, xs.top - 2, xs.bottom, xs.shading)
    joins = [((0, xs.top_index(i)), (0, xs.top_index(i + 1)))]
    outs: dict[tuple[int, int], int] = {}
    for p in range(xs.top):
        if p in (i, i + 1):
            continue
        outs[(0, xs.top_index(p))] = out.top_index(p if p < i else p - 2)
    for p in range(xs.bottom):
        outs[(0, xs.bottom_index(p))] = out.bottom_index(p)
    for d in range(xs.left):
        outs[(0, xs.left_index(d))] = out.left_index(d)
    for d in range(xs.right):
        outs[(0, xs.right_index(d))] = out.right_index(d)
    return rewire([x], joins, outs, out)


def is_paired_diagram(d: TLDiagram) -> bool:
    """True when a side-free box never connects its top to its bottom."""
    shape = d.shape
    if shape.left or shape.right:
        return False
    s = shape.top
    return all((a < s) == (b < s) for a, b in d.pairs)


def split_paired_diagram(d: TLDiagram) -> tuple[TLDiagram, TLDiagram]:
    """Recover the two legs of a paired box: inverse of the tensor embedding.

    The top matching becomes the first leg; the bottom matching, read after
    undoing the half turn the embedding applied, becomes the second.
    """
    if not is_paired_diagram(d):
        raise ValueError("box connects top to bottom; it has no tensor legs")
    shape = d.shape
    s, t = shape.top, shape.bottom
    if s % 2 or t % 2:
        raise ValueError("tensor legs need even point counts")
    top_pairs = [(a, b) for a, b in d.pairs if a < s]
    bot_pairs = [(a - s, b - s) for a, b in d.pairs if a >= s]
    a_leg = TLDiagram(BoxShape(0, 0, s, 0, shape.shading), top_pairs)
    b_leg = TLDiagram(BoxShape(0, 0, t, 0, shape.shading), bot_pairs)
    return a_leg, b_leg


def tl_action_glue(
    a: TLDiagram, b: TLDiagram, x: TLDiagram
) -> tuple[TLDiagram, int]:
    """Stack rectangle ``a`` above ``x`` and rectangle ``b`` below it.

    ``a`` maps ``x``'s top bundle to a new top (its bottom count equals
    ``x.top``); ``b`` receives ``x``'s bottom bundle on its top (its top
    count equals ``x.bottom``).  Sides and shading of ``x`` pass through.
    """
    as_, bs, xs = a.shape, b.shape, x.shape
    if as_.left or as_.right or bs.left or bs.right:
        raise ValueError("action rectangles must not have side points")
    if as_.bottom != xs.top:
        raise ValueError(
            f"top rectangle expects {as_.bottom} strings, box has {xs.top}"
        )
    if bs.top != xs.bottom:
        raise ValueError(
            f"bottom rectangle expects {bs.top} strings, box has {xs.bottom}"
        )
    out = BoxShape(xs.left, xs.right, as_.top, bs.bottom, xs.shading)
    joins = []
    for p in range(xs.top):
        joins.append(((0, as_.bottom_index(p)), (2, xs.top_index(p))))
    for p in range(xs.bottom):
        joins.append(((1, bs.top_index(p)), (2, xs.bottom_index(p))))
    outs: dict[tuple[int, int], int] = {}
    for i in range(as_.top):
        outs[(0, as_.top_index(i))] = out.top_index(i)
    for p in range(bs.bottom):
        outs[(1, bs.bottom_index(p))] = out.bottom_index(p)
    for d in range(xs.left):
        outs[(2, xs.left_index(d))] = out.left_index(d)
    for d in range(xs.right):
        outs[(2, xs.right_index(d))] = out.right_index(d)
    return rewire([a, b, x], joins, outs, out)


def glue(x: TLDiagram, y: Optional[TLDiagram] = None, mode: str = "horizontal", **kw):
    """Mode-dispatched gluing; see the concrete functions for the geometry."""
    if mode == "horizontal":
        if y is None:
            raise ValueError("horizontal gluing needs two diagrams")
        return horizontal_glue(x, y)
    if mode == "vertical-partial":
        if y is None:
            raise ValueError("vertical-partial gluing needs two diagrams")
        return partial_glue(x, y, kw.get("i", 0), kw.get("j", 0))
    if mode == "trace-close":
        return side_close(x)
    if mode == "cap-top":
        return cap_top(x, kw["cap"])
    if mode == "cap-bottom":
        return cap_bottom(x, kw["cap"])
    raise ValueError(f"unknown glue mode {mode!r}")


# ---------------------------------------------------------------------------
# reflections and rotations
# ---------------------------------------------------------------------------


def dagger_reflect(d: TLDiagram) -> TLDiagram:
    """Left-right mirror; swaps the side counts, flips shading when top is odd."""
    xs = d.shape
    out = BoxShape(xs.right, xs.left, xs.top, xs.bottom, xs.flip_shading(xs.top))
    relabel = {}
    for i in range(xs.top):
        relabel[xs.top_index(i)] = out.top_index(xs.top - 1 - i)
    for p in range(xs.bottom):
        relabel[xs.bottom_index(p)] = out.bottom_index(xs.bottom - 1 - p)
    for dd in range(xs.left):
        relabel[xs.left_index(dd)] = out.right_index(dd)
    for dd in range(xs.right):
        relabel[xs.right_index(dd)] = out.left_index(dd)
    return TLDiagram(out, [(relabel[a], relabel[b]) for a, b in d.pairs])


def rotate_pi(d: TLDiagram) -> TLDiagram:
    """Half-turn rotation; the marked corner moves to the old bottom-right.

    Swaps left/right and top/bottom counts; the transported shading is the
    region at the old bottom-right corner, which differs from the marked one
    exactly when ``top + right`` is odd.
    """
    xs = d.shape
    out = BoxShape(
        xs.right, xs.left, xs.bottom, xs.top, xs.flip_shading(xs.top + xs.right)
    )
    relabel = {}
    for i in range(xs.top):
        relabel[xs.top_index(i)] = out.bottom_index(xs.top - 1 - i)
    for p in range(xs.bottom):
        relabel[xs.bottom_index(p)] = out.top_index(xs.bottom - 1 - p)
    for dd in range(xs.left):
        relabel[xs.left_index(dd)] = out.right_index(xs.left - 1 - dd)
    for dd in range(xs.right):
        relabel[xs.right_index(dd)] = out.left_index(xs.right - 1 - dd)
    return TLDiagram(out, [(relabel[a], relabel[b]) for a, b in d.pairs])


def gr_include_diagram(d: TLDiagram) -> TLDiagram:
    """Add one through string under a square box: the step-up inclusion."""
    xs = d.shape
    if xs.left != xs.right:
        raise ValueError("inclusion needs equal side counts")
    k = xs.left
    out = BoxShape(k + 1, k + 1, xs.top, xs.bottom, xs.shading)
    relabel = {}
    for i in range(xs.top):
        relabel[xs.top_index(i)] = out.top_index(i)
    for p in range(xs.bottom):
        relabel[xs.bottom_index(p)] = out.bottom_index(p)
    for dd in range(k):
        relabel[xs.left_index(dd)] = out.left_index(dd)
        relabel[xs.right_index(dd)] = out.right_index(dd)
    pairs = [(relabel[a], relabel[b]) for a, b in d.pairs]
    pairs.append((out.left_index(k), out.right_index(k)))
    return TLDiagram(out, pairs)


def embed_pair_diagram(x: TLDiagram, y: TLDiagram) -> TLDiagram:
    """Join boxes ``x`` (upright) and ``y`` (rotated by a half turn).

    Both inputs are square boxes with ``k`` side strings and top points only.
    The result stacks the rotated ``y`` beneath ``x``: its side strings
    occupy depths ``k..2k-1`` and its top points become the bottom boundary.
    """
    xs, ys = x.shape, y.shape
    if xs.left != xs.right or ys.left != ys.right or xs.left != ys.left:
        raise ValueError("embedding needs equal square side counts")
    if xs.bottom or ys.bottom:
        raise ValueError("embedding inputs carry top points only")
    k = xs.left
    ry = rotate_pi(y)
    rys = ry.shape
    out = BoxShape(2 * k, 2 * k, xs.top, ys.top, xs.shading)
    relabel_x = {}
    for i in range(xs.top):
        relabel_x[xs.top_index(i)] = out.top_index(i)
    for dd in range(k):
        relabel_x[xs.left_index(dd)] = out.left_index(dd)
        relabel_x[xs.right_index(dd)] = out.right_index(dd)
    relabel_y = {}
    for p in range(rys.bottom):
        relabel_y[rys.bottom_index(p)] = out.bottom_index(p)
    for dd in range(k):
        relabel_y[rys.left_index(dd)] = out.left_index(k + dd)
        relabel_y[rys.right_index(dd)] = out.right_index(k + dd)
    pairs = [(relabel_x[a], relabel_x[b]) for a, b in x.pairs]
    pairs += [(relabel_y[a], relabel_y[b]) for a, b in ry.pairs]
    return TLDiagram(out, pairs)
