"""Minimum-weight resolving sets as a weighted covering problem.

Each unordered vertex pair is a row that must be covered by some chosen
column (vertex) at different distances from the two. The covering rows are
exactly the integer program ``sum_k |d(i,k) - d(j,k)| x_k > 0``: the
coefficients are non-negative integers, so the strict inequality is the
same as asking for at least one covering column.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from gridresolve.enumeration import DEFAULT_BUDGET, Mode, enumerate_minimals
from gridresolve.errors import InputError, ResourceError
from gridresolve.grid import set_key, vertex_set

WEIGHT_LIMIT = 2**62
DEFAULT_NODE_BUDGET = 10**7


class Algorithm(enum.Enum):
    BRANCH_BOUND = "bb"
    EXHAUSTIVE_MINIMALS = "exhaustive"
    GREEDY = "greedy"


class Proof(enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE_ONLY = "feasible"


class Verdict(enum.Enum):
    MINIMAL = "minimal"
    RESOLVING_NOT_MINIMAL = "resolving_not_minimal"
    NOT_RESOLVING = "not_resolving"


@dataclass
class CoverInstance:
    grid: object
    rows: list  # (u, v) vertex pairs, u < v
    columns: list  # vertices in index order
    cover: np.ndarray  # bool, rows x columns
    row_cols: list = field(repr=False)  # per row: bitmask of covering columns
    col_rows: list = field(repr=False)  # per column: bitmask of covered rows

    def covers(self, column, row):
        return bool(self.cover[self.rows.index(row), self.columns.index(column)])


@dataclass
class Solution:
    chosen: tuple
    objective: int
    proof: Proof
    nodes: int = 0
    elapsed_ms: float = 0.0


def build_cover_instance(g):
    d = g.distances
    pairs = np.array(list(combinations(range(g.size), 2)), dtype=np.intp).reshape(-1, 2)
    cover = d[:, pairs[:, 0]].T != d[:, pairs[:, 1]].T
    row_cols = [int(sum(1 << int(c) for c in np.flatnonzero(r))) for r in cover]
    col_rows = [0] * g.size
    for r, cols in enumerate(cover):
        for c in np.flatnonzero(cols):
            col_rows[c] |= 1 << r
    return CoverInstance(
        grid=g,
        rows=[(g.vertex(a), g.vertex(b)) for a, b in pairs],
        columns=g.vertices(),
        cover=cover,
        row_cols=row_cols,
        col_rows=col_rows,
    )


def weight_vector(g, weights):
    """Validate a weight map (dict vertex -> int, or sequence in index order)."""
    if isinstance(weights, dict):
        vec = [None] * g.size
        for v, w in weights.items():
            vec[g.index(g.check(v))] = w
        missing = [g.vertex(i) for i, w in enumerate(vec) if w is None]
        if missing:
            raise InputError(f"no weight for vertex {missing[0]}")
    else:
        vec = list(weights)
        if len(vec) != g.size:
            raise InputError(f"expected {g.size} weights, got {len(vec)}")
    for w in vec:
        if isinstance(w, bool) or not isinstance(w, (int, np.integer)) or w < 0:
            raise InputError(f"weights must be non-negative integers, got {w!r}")
    vec = [int(w) for w in vec]
    if sum(vec) > WEIGHT_LIMIT:
        raise InputError("total weight exceeds 2**62")
    return vec


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _is_minimal_cover(inst, cols):
    full = (1 << len(inst.rows)) - 1
    for i in range(len(cols)):
        rest = 0
        for j, c in enumerate(cols):
            if j != i:
                rest |= inst.col_rows[c]
        if rest == full:
            return False
    return True


def _greedy(inst, w):
    uncovered = (1 << len(inst.rows)) - 1
    chosen = []
    while uncovered:
        best, best_gain, best_w = None, 0, 1
        for c in range(len(inst.columns)):
            gain = (inst.col_rows[c] & uncovered).bit_count()
            if gain == 0:
                continue
            # compare gain / w exactly; zero weight beats any positive weight
            if best is None or gain * best_w > best_gain * w[c]:
                best, best_gain, best_w = c, gain, w[c]
        chosen.append(best)
        uncovered &= ~inst.col_rows[best]
    return sorted(chosen)


class _BranchAndBound:
    def __init__(self, inst, w, node_budget):
        self.inst = inst
        self.w = w
        self.node_budget = node_budget
        self.nodes = 0
        self.best = None
        self.best_key = None
        self.best_set = None
        self.best_set_cost = None
        self.row_cols = inst.row_cols
        self.col_rows = inst.col_rows

    def run(self):
        greedy = _greedy(self.inst, self.w)
        self.best = sum(self.w[c] for c in greedy)
        all_cols = (1 << len(self.inst.columns)) - 1
        self._search([], 0, (1 << len(self.inst.rows)) - 1, all_cols)
        return self.best_set, self.best

    def _lower_bound(self, uncovered, allowed):
        """Cost of covering rows that share no available column."""
        rows = []
        for r in _bits(uncovered):
            cols = self.row_cols[r] & allowed
            if not cols:
                return None
            rows.append((cols.bit_count(), r, cols))
        rows.sort()
        used, bound = 0, 0
        for _, r, cols in rows:
            if cols & used:
                continue
            used |= cols
            bound += min(self.w[c] for c in _bits(cols))
        return bound, rows[0]

    def _search(self, chosen, cost, uncovered, allowed):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise ResourceError(f"branch and bound exceeded {self.node_budget} nodes", self.nodes)
        if not uncovered:
            self._record(chosen, cost)
            return
        lb = self._lower_bound(uncovered, allowed)
        if lb is None:
            return
        bound, (_, _, cols) = lb
        # ties are explored too, so the canonically smallest optimum is kept
        if cost + bound > self.best:
            return
        order = sorted(_bits(cols), key=lambda c: (self.w[c], c))
        for c in order:
            allowed &= ~(1 << c)
            self._search(chosen + [c], cost + self.w[c], uncovered & ~self.col_rows[c], allowed)

    def _record(self, chosen, cost):
        if cost < self.best:
            self.best = cost
        if not _is_minimal_cover(self.inst, chosen):
            return  # a minimal subset of it is reached on another branch
        key = set_key(tuple(sorted(chosen)))
        if self.best_set is None or (cost, key) < (self.best_set_cost, self.best_key):
            self.best_set, self.best_set_cost, self.best_key = sorted(chosen), cost, key


def solve_min_weight(
    g,
    weights,
    algorithm=Algorithm.BRANCH_BOUND,
    node_budget=DEFAULT_NODE_BUDGET,
    budget=DEFAULT_BUDGET,
):
    algorithm = Algorithm(algorithm)
    w = weight_vector(g, weights)
    start = time.perf_counter()
    nodes = 0
    if algorithm is Algorithm.GREEDY:
        cols = _greedy(build_cover_instance(g), w)
        proof = Proof.FEASIBLE_ONLY
    elif algorithm is Algorithm.BRANCH_BOUND:
        search = _BranchAndBound(build_cover_instance(g), w, node_budget)
        cols, _ = search.run()
        nodes = search.nodes
        proof = Proof.OPTIMAL
    else:
        k_max = 2 * g.n - 2 if g.n >= 3 else g.size
        catalog = enumerate_minimals(g, k_max, Mode.PURE_ORACLE, budget)
        best = min(
            catalog.minimals,
            key=lambda s: (sum(w[g.index(v)] for v in s), set_key(s)),
        )
        cols = [g.index(v) for v in best]
        nodes = len(catalog.minimals)
        proof = Proof.OPTIMAL
    chosen = tuple(g.vertex(c) for c in sorted(cols))
    return Solution(
        chosen=chosen,
        objective=sum(w[c] for c in cols),
        proof=proof,
        nodes=nodes,
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )


def minimality_by_weights(g, s, node_budget=DEFAULT_NODE_BUDGET):
    """Classify ``s`` by solving with weight 1 on ``s`` and ``|s| + 1`` elsewhere."""
    s = vertex_set(g, s)
    members = set(s)
    heavy = len(s) + 1
    weights = {v: 1 if v in members else heavy for v in g.vertices()}
    sol = solve_min_weight(g, weights, Algorithm.BRANCH_BOUND, node_budget=node_budget)
    if sol.objective == len(s):
        return Verdict.MINIMAL
    if sol.objective < len(s):
        if not set(sol.chosen) < members:
            raise AssertionError(f"optimum {sol.chosen} below |S| but not inside {s}")
        return Verdict.RESOLVING_NOT_MINIMAL
    return Verdict.NOT_RESOLVING
