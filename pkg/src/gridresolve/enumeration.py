"""Brute-force catalogues of minimal resolving sets on small grids."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb

import numpy as np

from gridresolve.errors import InputError, ResourceError
from gridresolve.grid import set_key, vertex_set
from gridresolve.resolve import is_minimal, minimal_mask

DEFAULT_BUDGET = 10**8
_CHUNK = 20_000


class Mode(enum.Enum):
    PURE_ORACLE = "pure"
    THEOREM_PRUNED = "pruned"


@dataclass
class MinimalCatalog:
    grid: object
    k_max: int
    mode: Mode
    minimals: list = field(default_factory=list)

    @property
    def histogram(self):
        hist = {k: 0 for k in range(2, self.k_max + 1)}
        for s in self.minimals:
            hist[len(s)] = hist.get(len(s), 0) + 1
        return hist

    def of_size(self, k):
        return [s for s in self.minimals if len(s) == k]

    @property
    def largest(self):
        return max((len(s) for s in self.minimals), default=0)


def subset_count(g, k_max):
    return sum(comb(g.size, k) for k in range(2, min(k_max, g.size) + 1))


def _check_budget(g, k_max, budget):
    count = subset_count(g, k_max)
    if count > budget:
        raise ResourceError(
            f"{count} subsets of size 2..{k_max} on {g} exceed the budget of {budget}",
            count=count,
        )
    return count


def _chunks(n, k):
    it = combinations(range(n), k)
    while True:
        block = list(islice(it, _CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def _prune_mask(g, combos):
    """Rows that survive the no-three-collinear and opposite-sides filters."""
    coords = g.coords[combos]
    keep = np.ones(len(combos), dtype=bool)
    if combos.shape[1] >= 3:
        for axis in (0, 1):
            c = np.sort(coords[:, :, axis], axis=1)
            keep &= ~np.any(c[:, 2:] == c[:, :-2], axis=1)
    xs, ys = coords[:, :, 0], coords[:, :, 1]
    across = (np.any(xs == 0, axis=1) & np.any(xs == g.width - 1, axis=1)) | (
        np.any(ys == 0, axis=1) & np.any(ys == g.height - 1, axis=1)
    )
    return keep & across


def enumerate_minimals(g, k_max, mode=Mode.PURE_ORACLE, budget=DEFAULT_BUDGET):
    """Every minimal resolving set of size 2..k_max, in canonical order.

    ``PURE_ORACLE`` runs the minimality test on every subset.
    ``THEOREM_PRUNED`` first discards subsets with three members on a line or
    without members on two opposite sides.
    """
    mode = Mode(mode)
    if k_max < 2:
        raise InputError(f"k_max must be at least 2, got {k_max}")
    k_max = min(k_max, g.size)
    _check_budget(g, k_max, budget)
    found = []
    for k in range(2, k_max + 1):
        for combos in _chunks(g.size, k):
            if mode is Mode.THEOREM_PRUNED:
                combos = combos[_prune_mask(g, combos)]
                if not len(combos):
                    continue
            for row in combos[minimal_mask(g, combos)]:
                found.append(tuple(g.vertex(i) for i in row))
    found.sort(key=set_key)
    return MinimalCatalog(grid=g, k_max=k_max, mode=mode, minimals=found)


def find_special_minimal(g, k, predicate, budget=DEFAULT_BUDGET):
    """First k-subset in canonical order that is minimal and satisfies ``predicate``."""
    if k < 1 or k > g.size:
        return None
    if comb(g.size, k) > budget:
        raise ResourceError(f"{comb(g.size, k)} {k}-subsets on {g} exceed the budget", comb(g.size, k))
    for combo in combinations(g.vertices(), k):
        if predicate(combo) and is_minimal(g, combo):
            return vertex_set(g, combo)
    return None


def certify_bound(g, budget=DEFAULT_BUDGET):
    """Exhaustively confirm that the largest minimal has exactly 2n - 2 members.

    Scans all subsets up to size 2n, the bound implied by having at most two
    landmarks per line.
    """
    g.require_characterizable()
    catalog = enumerate_minimals(g, 2 * g.n, Mode.PURE_ORACLE, budget)
    return catalog.largest == 2 * g.n - 2
