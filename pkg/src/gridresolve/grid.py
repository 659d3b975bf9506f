"""Grid graphs P_w x P_h: coordinates, distances, classification, symmetries.

Coordinates are ``(x, y)`` with ``x`` horizontal in ``[0, width)`` and ``y``
vertical in ``[0, height)``; ``y`` grows northward, so the north-west corner
is ``(0, height - 1)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from gridresolve.errors import InputError


class Vertex(NamedTuple):
    x: int
    y: int

    def __str__(self):
        return f"({self.x},{self.y})"


VertexSet = tuple  # canonical: tuple[Vertex, ...] sorted by (x, y), no duplicates


class VertexClass(enum.Enum):
    CORNER = "corner"
    SIDE = "side"
    INTERIOR = "interior"


class Side(enum.Enum):
    WEST = "west"
    EAST = "east"
    SOUTH = "south"
    NORTH = "north"


OPPOSITE_SIDE = {
    Side.WEST: Side.EAST,
    Side.EAST: Side.WEST,
    Side.SOUTH: Side.NORTH,
    Side.NORTH: Side.SOUTH,
}


class Region(enum.Enum):
    ORIGIN = "origin"
    AXIS_EAST = "axis_east"
    AXIS_NORTH = "axis_north"
    AXIS_WEST = "axis_west"
    AXIS_SOUTH = "axis_south"
    QUAD_NE = "quad_ne"
    QUAD_NW = "quad_nw"
    QUAD_SW = "quad_sw"
    QUAD_SE = "quad_se"

    @property
    def is_quadrant(self):
        return self in QUADRANT_DIRECTION

    @property
    def is_axis(self):
        return self in AXIS_DIRECTION


QUADRANT_DIRECTION = {
    Region.QUAD_NE: (1, 1),
    Region.QUAD_NW: (-1, 1),
    Region.QUAD_SW: (-1, -1),
    Region.QUAD_SE: (1, -1),
}

AXIS_DIRECTION = {
    Region.AXIS_EAST: (1, 0),
    Region.AXIS_NORTH: (0, 1),
    Region.AXIS_WEST: (-1, 0),
    Region.AXIS_SOUTH: (0, -1),
}

OPPOSITE_QUADRANT = {
    Region.QUAD_NE: Region.QUAD_SW,
    Region.QUAD_SW: Region.QUAD_NE,
    Region.QUAD_NW: Region.QUAD_SE,
    Region.QUAD_SE: Region.QUAD_NW,
}

# the two half-axes bounding each quadrant
QUADRANT_BOUNDARY = {
    Region.QUAD_NE: frozenset({Region.AXIS_NORTH, Region.AXIS_EAST}),
    Region.QUAD_NW: frozenset({Region.AXIS_NORTH, Region.AXIS_WEST}),
    Region.QUAD_SW: frozenset({Region.AXIS_SOUTH, Region.AXIS_WEST}),
    Region.QUAD_SE: frozenset({Region.AXIS_SOUTH, Region.AXIS_EAST}),
}


class Symmetry(enum.Enum):
    IDENTITY = "identity"
    FLIP_HORIZONTAL = "flip_h"  # x -> w-1-x
    FLIP_VERTICAL = "flip_v"  # y -> h-1-y
    ROTATE_180 = "rot180"
    ROTATE_90 = "rot90"  # counter-clockwise; square grids only
    ROTATE_270 = "rot270"
    TRANSPOSE = "transpose"  # (x, y) -> (y, x)
    ANTI_TRANSPOSE = "anti_transpose"

    @property
    def needs_square(self):
        return self in _SQUARE_ONLY


_SQUARE_ONLY = frozenset(
    {Symmetry.ROTATE_90, Symmetry.ROTATE_270, Symmetry.TRANSPOSE, Symmetry.ANTI_TRANSPOSE}
)


@dataclass(frozen=True)
class Grid:
    width: int
    height: int

    def __post_init__(self):
        for name in ("width", "height"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise InputError(f"grid {name} must be an integer, got {value!r}")
            if value < 2:
                raise InputError(f"grid {name} must be at least 2, got {value}")

    def __str__(self):
        return f"{self.width}x{self.height}"

    @property
    def n(self):
        return min(self.width, self.height)

    @property
    def m(self):
        return max(self.width, self.height)

    @property
    def size(self):
        return self.width * self.height

    @property
    def is_square(self):
        return self.width == self.height

    def contains(self, v):
        return 0 <= v[0] < self.width and 0 <= v[1] < self.height

    def check(self, v):
        """Return ``v`` as a Vertex, raising InputError if it is off the grid."""
        try:
            x, y = v
        except (TypeError, ValueError):
            raise InputError(f"not a vertex: {v!r}") from None
        if not (isinstance(x, (int, np.integer)) and isinstance(y, (int, np.integer))):
            raise InputError(f"vertex coordinates must be integers: {v!r}")
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise InputError(f"vertex ({x},{y}) outside {self} grid")
        return Vertex(int(x), int(y))

    def index(self, v):
        # lexicographic by (x, y), matching canonical set order
        return v[0] * self.height + v[1]

    def vertex(self, i):
        return Vertex(*divmod(int(i), self.height))

    def vertices(self):
        return [Vertex(x, y) for x in range(self.width) for y in range(self.height)]

    def neighbours(self, v):
        x, y = v
        out = []
        for dx, dy in ((-1, 0), (0, -1), (0, 1), (1, 0)):
            if 0 <= x + dx < self.width and 0 <= y + dy < self.height:
                out.append(Vertex(x + dx, y + dy))
        return out

    def transposed(self):
        return Grid(self.height, self.width)

    def require_characterizable(self):
        if self.n < 3:
            raise InputError(f"characterization needs both dimensions >= 3, got {self}")

    @cached_property
    def coords(self):
        """``(size, 2)`` array of vertex coordinates in index order."""
        xs, ys = np.divmod(np.arange(self.size), self.height)
        return np.stack([xs, ys], axis=1)

    @cached_property
    def distances(self):
        """All-pairs Manhattan distances, indexed by ``Grid.index``."""
        c = self.coords
        d = np.abs(c[:, None, :] - c[None, :, :]).sum(axis=2)
        d.setflags(write=False)
        return d

    @cached_property
    def side_masks(self):
        c = self.coords
        return {
            Side.WEST: c[:, 0] == 0,
            Side.EAST: c[:, 0] == self.width - 1,
            Side.SOUTH: c[:, 1] == 0,
            Side.NORTH: c[:, 1] == self.height - 1,
        }


def vertex_set(g, vertices: Iterable) -> VertexSet:
    """Canonical VertexSet from any iterable of coordinate pairs.

    Raises InputError on duplicates or off-grid vertices.
    """
    vs = [g.check(v) for v in vertices]
    out = tuple(sorted(vs))
    for a, b in zip(out, out[1:]):
        if a == b:
            raise InputError(f"duplicate vertex {a}")
    return out


def set_key(s):
    """Total order on vertex sets: by cardinality, then lexicographically."""
    return (len(s), tuple(s))


def dist(g, a, b):
    a, b = g.check(a), g.check(b)
    return abs(a.x - b.x) + abs(a.y - b.y)


def classify_vertex(g, v):
    x, y = g.check(v)
    extremal = (x in (0, g.width - 1)) + (y in (0, g.height - 1))
    return (VertexClass.INTERIOR, VertexClass.SIDE, VertexClass.CORNER)[extremal]


def is_boundary(g, v):
    return classify_vertex(g, v) is not VertexClass.INTERIOR


def is_corner(g, v):
    return classify_vertex(g, v) is VertexClass.CORNER


def sides_of(g, v):
    """Sides of the grid that contain ``v`` (empty for interior vertices)."""
    x, y = v
    out = set()
    if x == 0:
        out.add(Side.WEST)
    if x == g.width - 1:
        out.add(Side.EAST)
    if y == 0:
        out.add(Side.SOUTH)
    if y == g.height - 1:
        out.add(Side.NORTH)
    return out


def on_opposite_sides(g, a, b):
    sa, sb = sides_of(g, a), sides_of(g, b)
    return any(OPPOSITE_SIDE[s] in sb for s in sa)


def opposite_side_pairs(g, s):
    """All unordered pairs of members of ``s`` lying on opposite sides."""
    s = list(s)
    return [
        (a, b)
        for i, a in enumerate(s)
        for b in s[i + 1:]
        if on_opposite_sides(g, a, b)
    ]


def region_of(g, origin, v):
    ox, oy = g.check(origin)
    x, y = g.check(v)
    sx = (x > ox) - (x < ox)
    sy = (y > oy) - (y < oy)
    return _REGION_BY_SIGN[sx, sy]


_REGION_BY_SIGN = {
    (0, 0): Region.ORIGIN,
    (1, 0): Region.AXIS_EAST,
    (0, 1): Region.AXIS_NORTH,
    (-1, 0): Region.AXIS_WEST,
    (0, -1): Region.AXIS_SOUTH,
    (1, 1): Region.QUAD_NE,
    (-1, 1): Region.QUAD_NW,
    (-1, -1): Region.QUAD_SW,
    (1, -1): Region.QUAD_SE,
}


def resolves(g, w, u, v):
    w, u, v = g.check(w), g.check(u), g.check(v)
    if u == v:
        raise InputError("resolution is undefined for identical vertices")
    return dist(g, w, u) != dist(g, w, v)


def symmetries(g):
    """The symmetries valid on ``g``: 8 when square, 4 otherwise."""
    return [s for s in Symmetry if g.is_square or not s.needs_square]


def map_vertex(g, s, v):
    x, y = v
    w1, h1 = g.width - 1, g.height - 1
    if s.needs_square and not g.is_square:
        raise InputError(f"{s.value} needs a square grid, got {g}")
    if s is Symmetry.IDENTITY:
        return Vertex(x, y)
    if s is Symmetry.FLIP_HORIZONTAL:
        return Vertex(w1 - x, y)
    if s is Symmetry.FLIP_VERTICAL:
        return Vertex(x, h1 - y)
    if s is Symmetry.ROTATE_180:
        return Vertex(w1 - x, h1 - y)
    if s is Symmetry.ROTATE_90:
        return Vertex(w1 - y, x)
    if s is Symmetry.ROTATE_270:
        return Vertex(y, h1 - x)
    if s is Symmetry.TRANSPOSE:
        return Vertex(y, x)
    return Vertex(h1 - y, w1 - x)  # ANTI_TRANSPOSE


def apply_symmetry(g, s, vertices):
    s = Symmetry(s)
    vs = vertex_set(g, vertices)
    return tuple(sorted(map_vertex(g, s, v) for v in vs))


def transpose_set(vertices):
    """Swap coordinates; maps sets on a w x h grid to the h x w grid."""
    return tuple(sorted(Vertex(y, x) for x, y in vertices))
