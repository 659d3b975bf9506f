"""Ground-truth resolution predicates based on distance signatures.

A set resolves the grid when every vertex has a distinct vector of
distances to the landmarks. Signatures are packed into integers (base
``width + height - 1``) whenever that cannot overflow, so a resolving
test is one matrix product and a sort.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

import numpy as np

from gridresolve.errors import InputError
from gridresolve.grid import vertex_set

_CODE_LIMIT = 2**62


def _indices(g, s):
    return np.fromiter((g.index(v) for v in s), dtype=np.intp, count=len(s))


def _packable(g, k):
    return (g.width + g.height - 1) ** k < _CODE_LIMIT


def _codes(g, idx):
    """One integer per vertex identifying its signature under landmarks ``idx``."""
    d = g.distances[idx]
    if _packable(g, len(idx)):
        base = g.width + g.height - 1
        powers = base ** np.arange(len(idx), dtype=np.int64)
        return powers @ d
    _, inverse = np.unique(d.T, axis=0, return_inverse=True)
    return inverse.ravel()


def _all_distinct(codes):
    return np.unique(codes).size == codes.size


def distance_signature(g, s, v):
    s = vertex_set(g, s)
    v = g.check(v)
    if not s:
        raise InputError("distance signature needs at least one landmark")
    return [abs(a.x - v.x) + abs(a.y - v.y) for a in s]


def is_resolving(g, s):
    s = vertex_set(g, s)
    if not s:
        return g.size < 2
    return _all_distinct(_codes(g, _indices(g, s)))


def unresolved_pairs(g, s):
    """Every pair of distinct vertices sharing a signature, canonically ordered."""
    s = vertex_set(g, s)
    if s:
        codes = _codes(g, _indices(g, s)).tolist()
    else:
        codes = [0] * g.size
    groups = defaultdict(list)
    for i, c in enumerate(codes):
        groups[c].append(g.vertex(i))
    pairs = []
    for members in groups.values():
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                pairs.append((u, v))
    pairs.sort()
    return pairs


def is_minimal(g, s):
    s = vertex_set(g, s)
    if not is_resolving(g, s):
        return False
    return not any(is_resolving(g, s[:i] + s[i + 1:]) for i in range(len(s)))


def has_locally_resolved_neighbourhood(g, s, v):
    s = vertex_set(g, s)
    v = g.check(v)
    sigs = [tuple(abs(a.x - u.x) + abs(a.y - u.y) for a in s) for u in g.neighbours(v)]
    return len(set(sigs)) == len(sigs)


@lru_cache(maxsize=64)
def neighbour_pairs(g):
    """Index pairs ``(a, b)``, ``a < b``, of distinct vertices sharing a neighbour."""
    pairs = set()
    for v in g.vertices():
        nb = sorted(g.index(u) for u in g.neighbours(v))
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                pairs.add((a, b))
    arr = np.array(sorted(pairs), dtype=np.intp)
    arr.setflags(write=False)
    return arr


def all_locally_resolved(g, s):
    s = vertex_set(g, s)
    pairs = neighbour_pairs(g)
    if not s:
        return len(pairs) == 0
    d = g.distances[_indices(g, s)]
    return bool(np.all(np.any(d[:, pairs[:, 0]] != d[:, pairs[:, 1]], axis=0)))


# batched variants used by the enumeration oracle ---------------------------


def _rows_distinct(codes):
    codes = np.sort(codes, axis=1)
    return np.all(codes[:, 1:] != codes[:, :-1], axis=1)


def resolving_mask(g, combos):
    """Vectorised ``is_resolving`` over the rows of an index array ``(count, k)``."""
    combos = np.asarray(combos, dtype=np.intp)
    count, k = combos.shape
    if k == 0:
        return np.full(count, g.size < 2)
    if not _packable(g, k):
        return np.array([is_resolving(g, [g.vertex(i) for i in row]) for row in combos])
    base = g.width + g.height - 1
    d = g.distances
    codes = np.zeros((count, g.size), dtype=np.int64)
    for i in range(k):
        codes += d[combos[:, i]] * base**i
    return _rows_distinct(codes)


def minimal_mask(g, combos):
    """Vectorised ``is_minimal`` over the rows of an index array ``(count, k)``."""
    combos = np.asarray(combos, dtype=np.intp)
    count, k = combos.shape
    if k == 0 or not _packable(g, k):
        return np.array([is_minimal(g, [g.vertex(i) for i in row]) for row in combos], dtype=bool)
    base = g.width + g.height - 1
    d = g.distances
    terms = [d[combos[:, i]] * base**i for i in range(k)]
    codes = np.zeros((count, g.size), dtype=np.int64)
    for t in terms:
        codes += t
    ok = _rows_distinct(codes)
    live = np.flatnonzero(ok)
    for i in range(k):
        if live.size == 0:
            break
        # dropping one digit keeps the packing injective for the rest
        still = _rows_distinct(codes[live] - terms[i][live])
        ok[live[still]] = False
        live = live[~still]
    return ok
