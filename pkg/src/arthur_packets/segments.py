"""Segments and generalized segments (rectangular half-integer grids).

A segment [x, y] is the arithmetic run from x to y with step -1 or +1.  A
generalized segment is an m x n grid whose rows are unit-step monotone
segments and whose columns are unit-step monotone segments of the opposite
direction; such a grid is determined by its top-left entry, its shape, and
its orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .halfint import HalfInt, hi


class SegmentError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    """Endpoints x, y with x - y an integer; the run is x, x∓1, ..., y."""

    x: HalfInt
    y: HalfInt

    def __post_init__(self):
        object.__setattr__(self, "x", hi(self.x))
        object.__setattr__(self, "y", hi(self.y))
        if (self.x.twice - self.y.twice) % 2 != 0:
            raise SegmentError(f"segment endpoints differ by a non-integer: {self.x}, {self.y}")

    @property
    def lo(self) -> HalfInt:
        return self.x if self.x <= self.y else self.y

    @property
    def hi_end(self) -> HalfInt:
        return self.x if self.x >= self.y else self.y

    @property
    def direction(self) -> int:
        """-1 decreasing, +1 increasing, 0 singleton."""
        if self.x == self.y:
            return 0
        return 1 if self.y > self.x else -1

    def contains(self, other: "Segment") -> bool:
        return self.lo <= other.lo and other.hi_end <= self.hi_end

    def same_lattice(self, other: "Segment") -> bool:
        return (self.x.twice - other.x.twice) % 2 == 0


def linked_segments(s1: Segment, s2: Segment) -> bool:
    """Neither contains the other and the union of the two runs is a single run."""
    if s1.direction * s2.direction < 0:
        raise SegmentError("linked_segments requires segments of compatible orientation")
    if not s1.same_lattice(s2):
        return False
    if s1.contains(s2) or s2.contains(s1):
        return False
    # Union contiguous: the runs overlap or are adjacent (gap of exactly 1).
    return max(s1.lo.twice, s2.lo.twice) <= min(s1.hi_end.twice, s2.hi_end.twice) + 2


@dataclass(frozen=True)
class GenSegment:
    matrix: Tuple[Tuple[HalfInt, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(hi(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        m = len(rows)
        if m == 0 or any(len(r) == 0 for r in rows):
            raise SegmentError("empty grid")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise SegmentError("ragged grid")
        row_step = None
        for r in rows:
            for a, b in zip(r, r[1:]):
                step = b.twice - a.twice
                if step not in (-2, 2) or (row_step is not None and step != row_step):
                    raise SegmentError("rows must be unit-step monotone with a common direction")
                row_step = step
        col_step = None
        for i in range(m - 1):
            for j in range(n):
                step = rows[i + 1][j].twice - rows[i][j].twice
                if step not in (-2, 2) or (col_step is not None and step != col_step):
                    raise SegmentError("columns must be unit-step monotone with a common direction")
                col_step = step
        if row_step is not None and col_step is not None and row_step == col_step:
            raise SegmentError("rows and columns must run in opposite directions")

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.matrix), len(self.matrix[0]))

    @property
    def orientation(self) -> int:
        """-1: rows decreasing / columns increasing; +1: the transpose of that.

        0 when the shape is 1 x 1 (compatible with both orientations).
        """
        m, n = self.shape
        if n > 1:
            return -1 if self.matrix[0][1] < self.matrix[0][0] else 1
        if m > 1:
            return -1 if self.matrix[1][0] > self.matrix[0][0] else 1
        return 0

    def transpose(self) -> "GenSegment":
        m, n = self.shape
        return GenSegment(tuple(tuple(self.matrix[i][j] for i in range(m)) for j in range(n)))

    # Sides, as segments read directly off the grid.
    def top_row(self) -> Segment:
        return Segment(self.matrix[0][0], self.matrix[0][-1])

    def bottom_row(self) -> Segment:
        return Segment(self.matrix[-1][0], self.matrix[-1][-1])

    def left_col(self) -> Segment:
        return Segment(self.matrix[0][0], self.matrix[-1][0])

    def right_col(self) -> Segment:
        return Segment(self.matrix[0][-1], self.matrix[-1][-1])

    def corner_segment(self) -> Segment:
        """From the bottom-left corner to the top-right corner."""
        return Segment(self.matrix[-1][0], self.matrix[0][-1])


def dual(g: GenSegment) -> GenSegment:
    m, n = g.shape
    return GenSegment(
        tuple(
            tuple(-g.matrix[m - 1 - i][n - 1 - j] for j in range(n)) for i in range(m)
        )
    )


def _sides_inclusive(a: Segment, b: Segment) -> bool:
    return a.same_lattice(b) and (a.contains(b) or b.contains(a))


def linked_gen(g1: GenSegment, g2: GenSegment) -> bool:
    """Linked predicate for generalized segments.

    With matching orientations: the two corner segments must be linked, and each
    of the four side pairs (top/top, bottom/bottom, left/left, right/right) must
    be mutually non-inclusive.  With opposite orientations, one argument is
    transposed first.
    """
    o1, o2 = g1.orientation, g2.orientation
    if o1 != 0 and o2 != 0 and o1 != o2:
        g2 = g2.transpose()
    if g1.corner_segment().direction * g2.corner_segment().direction < 0:
        g2 = g2.transpose()
    if not linked_segments(g1.corner_segment(), g2.corner_segment()):
        return False
    side_pairs = (
        (g1.top_row(), g2.top_row()),
        (g1.bottom_row(), g2.bottom_row()),
        (g1.left_col(), g2.left_col()),
        (g1.right_col(), g2.right_col()),
    )
    return not any(_sides_inclusive(a, b) for a, b in side_pairs)


def grid(x11: HalfInt, m: int, n: int, orientation: int = -1) -> GenSegment:
    """Build the m x n grid with given top-left entry and orientation."""
    x11 = hi(x11)
    if orientation not in (-1, 1):
        raise SegmentError("orientation must be -1 or +1")
    rs = 2 * orientation  # twice-value row step
    cs = -rs
    return GenSegment(
        tuple(
            tuple(HalfInt(x11.twice + rs * j + cs * i) for j in range(n))
            for i in range(m)
        )
    )


def speh_grid(a: int, b: int) -> GenSegment:
    """The b x a grid with entry (i, j) = (a-b)/2 + i - j (1-based), rows decreasing."""
    return GenSegment(
        tuple(
            tuple(HalfInt(a - b + 2 * (i - j)) for j in range(a))
            for i in range(b)
        )
    )
