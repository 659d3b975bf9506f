"""Closed-form predicates and constructions for minimal resolving sets of grids.

Everything here is checked against the brute-force predicates in
``gridresolve.resolve``; the two must never disagree where a predicate
claims to be exact.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from gridresolve.errors import ConstructionError, InputError
from gridresolve.grid import (
    OPPOSITE_QUADRANT,
    QUADRANT_BOUNDARY,
    QUADRANT_DIRECTION,
    Region,
    Side,
    Symmetry,
    Vertex,
    VertexClass,
    apply_symmetry,
    classify_vertex,
    is_corner,
    opposite_side_pairs,
    region_of,
    set_key,
    sides_of,
    transpose_set,
    vertex_set,
)
from gridresolve.resolve import has_locally_resolved_neighbourhood, is_minimal


class LocalCase(enum.Enum):
    CORNER_OPPOSITE_PAIR = "corner_opposite_pair"
    SIDE_CASE_1 = "side_case_1"
    SIDE_CASE_2 = "side_case_2"
    INTERIOR_CASE_1 = "interior_case_1"
    INTERIOR_CASE_2 = "interior_case_2"
    INTERIOR_CASE_3 = "interior_case_3"
    NOT_LOCALLY_RESOLVED = "not_locally_resolved"


@dataclass(frozen=True)
class HorizontalSegment:
    y: int
    x_lo: int
    x_hi: int

    @property
    def xs(self):
        return range(self.x_lo, self.x_hi + 1)

    def covers(self, x):
        return self.x_lo <= x <= self.x_hi


@dataclass(frozen=True)
class SegmentPathCertificate:
    exists: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.exists


def corner_count(g, s):
    return sum(1 for v in s if is_corner(g, v))


def no_three_collinear(s):
    xs, ys = {}, {}
    for x, y in s:
        xs[x] = xs.get(x, 0) + 1
        ys[y] = ys.get(y, 0) + 1
    return all(c < 3 for c in xs.values()) and all(c < 3 for c in ys.values())


def max_minimal_cardinality(g):
    g.require_characterizable()
    return 2 * g.n - 2


# 2- and 3-minimals -----------------------------------------------------------


def is_two_minimal(g, s):
    g.require_characterizable()
    s = vertex_set(g, s)
    if len(s) != 2:
        return False
    a, b = s
    return is_corner(g, a) and is_corner(g, b) and bool(sides_of(g, a) & sides_of(g, b))


def two_minimals(g):
    g.require_characterizable()
    w, h = g.width - 1, g.height - 1
    corners = [Vertex(0, 0), Vertex(0, h), Vertex(w, 0), Vertex(w, h)]
    out = [
        (a, b)
        for a, b in combinations(corners, 2)
        if sides_of(g, a) & sides_of(g, b)
    ]
    return sorted(out, key=set_key)


def _collinear_pair_with_between(s, literal=False):
    """A pair on a common line plus a third vertex within their span.

    With ``literal=True`` the vertical branch compares the third vertex's
    horizontal coordinate against the pair's vertical span, exactly as the
    statement is printed; the default compares the vertical coordinate.
    """
    for a, b in combinations(s, 2):
        for c in s:
            if c in (a, b):
                continue
            if a.y == b.y and a.x != b.x:
                if min(a.x, b.x) <= c.x <= max(a.x, b.x) and c.y != a.y:
                    return True
            if a.x == b.x and a.y != b.y:
                along = c.x if literal else c.y
                if min(a.y, b.y) <= along <= max(a.y, b.y) and c.x != a.x:
                    return True
    return False


def is_three_minimal(g, s):
    g.require_characterizable()
    s = vertex_set(g, s)
    if len(s) != 3:
        raise InputError(f"3-minimal test needs exactly 3 vertices, got {len(s)}")
    return (
        corner_count(g, s) <= 1
        and bool(opposite_side_pairs(g, s))
        and _collinear_pair_with_between(s)
    )


# local structure around a vertex --------------------------------------------

_QUADRANT_ORDER = (Region.QUAD_NE, Region.QUAD_NW, Region.QUAD_SW, Region.QUAD_SE)


def quadrant_unresolved_witness(g, s, origin):
    """Predict a pair of neighbours of ``origin`` that nothing in ``s`` resolves.

    Applies when the landmarks other than the origin sit in one quadrant, or
    in a quadrant, its opposite and the half-axes bounding the first. The
    predicted pair then steps from the origin toward the opposite quadrant.
    Returns ``None`` when neither situation holds or the pair is off-grid.
    """
    origin = g.check(origin)
    s = vertex_set(g, s)
    regions = {region_of(g, origin, v) for v in s} - {Region.ORIGIN}
    quads = {r for r in regions if r.is_quadrant}
    axes = regions - quads
    for q in _QUADRANT_ORDER:
        far = OPPOSITE_QUADRANT[q]
        if not quads <= {q, far} or not axes <= QUADRANT_BOUNDARY[q]:
            continue
        dx, dy = QUADRANT_DIRECTION[far]
        a = Vertex(origin.x + dx, origin.y)
        b = Vertex(origin.x, origin.y + dy)
        if g.contains(a) and g.contains(b):
            return tuple(sorted((a, b)))
    return None


def _landmark_regions(g, s, v):
    return {region_of(g, v, a) for a in s} - {Region.ORIGIN}


def _side_case(regions):
    quads = [r for r in regions if r.is_quadrant]
    if len(quads) >= 2:
        return LocalCase.SIDE_CASE_1
    for q in (r for r in regions if r.is_axis):
        for r in regions:
            if r is q:
                continue
            if r.is_quadrant and q not in QUADRANT_BOUNDARY[r]:
                continue
            return LocalCase.SIDE_CASE_2
    return None


def _interior_case(regions):
    quads = {r for r in regions if r.is_quadrant}
    axes = {r for r in regions if r.is_axis}
    for a in quads:
        if any(b is not a and b is not OPPOSITE_QUADRANT[a] for b in quads):
            return LocalCase.INTERIOR_CASE_1
    for q, bounds in QUADRANT_BOUNDARY.items():
        if bounds <= axes:
            adjacent = set(_QUADRANT_ORDER) - {q, OPPOSITE_QUADRANT[q]}
            if quads & adjacent:
                return LocalCase.INTERIOR_CASE_2
    for a, b in ((Region.AXIS_NORTH, Region.AXIS_SOUTH), (Region.AXIS_EAST, Region.AXIS_WEST)):
        if a in axes and b in axes and regions - {a, b}:
            return LocalCase.INTERIOR_CASE_3
    return None


def classify_local_case(g, s, v):
    g.require_characterizable()
    s = vertex_set(g, s)
    v = g.check(v)
    if not has_locally_resolved_neighbourhood(g, s, v):
        return LocalCase.NOT_LOCALLY_RESOLVED
    regions = _landmark_regions(g, s, v)
    kind = classify_vertex(g, v)
    if kind is VertexClass.CORNER:
        if opposite_side_pairs(g, s):
            return LocalCase.CORNER_OPPOSITE_PAIR
        # one landmark on either of the corner's own sides is enough
        found = LocalCase.SIDE_CASE_2 if any(r.is_axis for r in regions) else None
    elif kind is VertexClass.SIDE:
        found = _side_case(regions)
    else:
        found = _interior_case(regions)
    if found is None:
        raise AssertionError(f"locally resolved vertex {v} matches no case for {s}")
    return found


# line segment paths ---------------------------------------------------------


def horizontal_segments(g, s):
    s = vertex_set(g, s)
    rows = {}
    for x, y in s:
        lo, hi = rows.get(y, (x, x))
        rows[y] = (min(lo, x), max(hi, x))
    return [HorizontalSegment(y, lo, hi) for y, (lo, hi) in sorted(rows.items())]


def _segment_path(segments, u, v):
    """Shortest u -> v path using segment edges and the columns they span."""
    by_row = {}
    for seg in segments:
        by_row.setdefault(seg.y, []).append(seg)
    columns = {x for seg in segments for x in seg.xs}
    sx = (v.x > u.x) - (v.x < u.x)
    sy = (v.y > u.y) - (v.y < u.y)
    parent = {u: None}
    queue = deque([u])
    while queue:
        cur = queue.popleft()
        if cur == v:
            break
        steps = []
        if sy and cur.y != v.y and cur.x in columns:
            steps.append(Vertex(cur.x, cur.y + sy))
        if sx and cur.x != v.x:
            lo = min(cur.x, cur.x + sx)
            if any(seg.covers(lo) and seg.covers(lo + 1) for seg in by_row.get(cur.y, ())):
                steps.append(Vertex(cur.x + sx, cur.y))
        for nxt in steps:
            if nxt not in parent:
                parent[nxt] = cur
                queue.append(nxt)
    if v not in parent:
        return None
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def _require_members(s, u, v):
    for w in (u, v):
        if w not in s:
            raise InputError(f"path endpoint {w} is not in the landmark set")


def _path_certificate(g, s, u, v):
    path = _segment_path(horizontal_segments(g, s), u, v)
    return SegmentPathCertificate(path is not None, path)


def horizontal_path_exists(g, s, u, v):
    s = vertex_set(g, s)
    u, v = g.check(u), g.check(v)
    _require_members(s, u, v)
    return _path_certificate(g, s, u, v)


def vertical_path_exists(g, s, u, v):
    s = vertex_set(g, s)
    u, v = g.check(u), g.check(v)
    _require_members(s, u, v)
    cert = _path_certificate(g.transposed(), transpose_set(s), Vertex(u.y, u.x), Vertex(v.y, v.x))
    if not cert.exists:
        return cert
    return SegmentPathCertificate(True, tuple(Vertex(y, x) for x, y in cert.witness))


def is_minimal_segment_path(g, s, u, v, vertical=False):
    s = vertex_set(g, s)
    u, v = g.check(u), g.check(v)
    _require_members(s, u, v)
    if vertical:
        g, s = g.transposed(), transpose_set(s)
        u, v = Vertex(u.y, u.x), Vertex(v.y, v.x)
    if not _path_certificate(g, s, u, v).exists:
        return False
    # without u or v there is no path between members at all
    for i, w in enumerate(s):
        if w not in (u, v) and _path_certificate(g, s[:i] + s[i + 1:], u, v).exists:
            return False
    return True


def check_segment_conditions(g, s, u, v):
    """Indices (1..6) of the necessary segment-path conditions that fail.

    The set is first reflected so ``u`` lies on a row above ``v`` and to its
    left. Conditions 3 and 6 only constrain segments off the rows of ``u``
    and ``v``, since those two segments can never be dropped.
    """
    s = vertex_set(g, s)
    u, v = g.check(u), g.check(v)
    _require_members(s, u, v)
    if u.y < v.y:
        u, v = v, u
    if u.x > v.x:
        s = apply_symmetry(g, Symmetry.FLIP_HORIZONTAL, s)
        u = Vertex(g.width - 1 - u.x, u.y)
        v = Vertex(g.width - 1 - v.x, v.y)
    p, q = u.x, v.x
    segs = horizontal_segments(g, s)
    inner = [seg for seg in segs if seg.y not in (u.y, v.y)]
    failed = []

    per_row = {}
    for w in s:
        per_row[w.y] = per_row.get(w.y, 0) + 1
    if any(c > 2 for c in per_row.values()):
        failed.append(1)
    if any(
        max(a.x_lo, b.x_lo, c.x_lo) <= min(a.x_hi, b.x_hi, c.x_hi)
        for a, b, c in combinations(segs, 3)
    ):
        failed.append(2)
    if any(
        a is not b and b.x_lo <= a.x_lo and a.x_hi <= b.x_hi
        for a in inner
        for b in segs
    ):
        failed.append(3)
    if any(seg.x_hi < p for seg in segs):
        failed.append(4)
    if any(seg.x_lo > q for seg in segs):
        failed.append(5)
    if any(
        upper.y > lower.y and lower.x_hi <= upper.x_hi
        for upper in inner
        for lower in inner
    ):
        failed.append(6)
    return failed


def _segment_class_endpoints(g, s):
    pairs = opposite_side_pairs(g, s)
    if len(pairs) != 1:
        return None
    u, v = pairs[0]
    if u.x == v.x or u.y == v.y:
        return None
    return u, v


def is_segment_class_minimal(g, s):
    """Sufficient test: a landmark set whose only opposite-side pair is joined
    by a minimal segment path. ``False`` says nothing about minimality."""
    g.require_characterizable()
    s = vertex_set(g, s)
    if len(s) <= 3:
        raise InputError(f"segment-class test needs more than 3 vertices, got {len(s)}")
    if corner_count(g, s) > 1:
        return False
    ends = _segment_class_endpoints(g, s)
    if ends is None:
        return False
    u, v = ends
    su, sv = sides_of(g, u), sides_of(g, v)
    horizontal = (Side.NORTH in su and Side.SOUTH in sv) or (Side.SOUTH in su and Side.NORTH in sv)
    return is_minimal_segment_path(g, s, u, v, vertical=not horizontal)


# constructions --------------------------------------------------------------


def _staircase(n, m, turns):
    """Turn vertices of a unit staircase on an n-wide, m-tall grid, plus ends.

    Starts at the north-west corner and alternates single steps down and
    right; after ``turns`` direction changes the final run continues to the
    far side (south for an even count, east for an odd one).
    """
    cur = Vertex(0, m - 1)
    out = [cur]
    for i in range(turns):
        cur = Vertex(cur.x, cur.y - 1) if i % 2 == 0 else Vertex(cur.x + 1, cur.y)
        out.append(cur)
    if turns % 2 == 0:
        out.append(Vertex(cur.x, 0))
    else:
        out.append(Vertex(n - 1, cur.y))
    return out


def _oriented(g, build):
    """Run ``build(n, m)`` with the short side horizontal, mapping back to ``g``."""
    if g.width <= g.height:
        return vertex_set(g, build(g.width, g.height))
    return vertex_set(g, transpose_set(build(g.height, g.width)))


def construct_staircase_max(g):
    g.require_characterizable()
    s = _oriented(g, lambda n, m: _staircase(n, m, 2 * n - 4))
    if len(s) != 2 * g.n - 2 or not is_minimal(g, s):
        raise ConstructionError(f"staircase on {g} is not a {2 * g.n - 2}-minimal: {s}")
    return s


def construct_k_minimal(g, k):
    g.require_characterizable()
    top = max_minimal_cardinality(g)
    if not 2 <= k <= top:
        raise InputError(f"k must lie in [2, {top}] on {g}, got {k}")
    if k == 2:
        s = two_minimals(g)[0]
    else:
        s = _oriented(g, lambda n, m: _staircase(n, m, k - 2))
    if len(s) != k or not is_minimal(g, s):
        raise ConstructionError(f"construction for k={k} on {g} failed verification: {s}")
    return s
