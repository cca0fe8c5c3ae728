"""Exact reference solvers for desk-scale verification.

These are deliberately small-instance solvers: branch-and-bound over edge
orders, backtracking over discrete step assignments and 1D bit vectors, a
brute-force NAE-3-SAT checker, and an exact chromatic number search.  Size
caps default to desk scale and can be raised via SCANCOVER_ORACLE_LIMIT.
"""

from __future__ import annotations

import os
from itertools import product

from .errors import (
    CostsNotDiscrete,
    NoSolutionWithin,
    NotBipartite,
    TooLarge,
    TooManyVariables,
)
from .graphs import greedy_clique
from .model import TOL, Edge, Instance, angular_cost
from .schedule import ScanSchedule, schedule_from_order

DEFAULT_EDGE_LIMIT = 9
DEFAULT_1D_VERTEX_LIMIT = 10
DEFAULT_CHI_VERTEX_LIMIT = 14


def _env_limit(default: int, explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    raw = os.environ.get("SCANCOVER_ORACLE_LIMIT")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def exact_order_search(
    instance: Instance, edge_limit: int | None = None
) -> ScanSchedule:
    """Provably optimal schedule via branch-and-bound over edge orders.

    Children are expanded in lexicographic edge order and the first optimum
    found is kept, so the returned schedule is deterministic.
    """
    limit = _env_limit(DEFAULT_EDGE_LIMIT, edge_limit)
    edges = sorted(instance.edges)
    m = len(edges)
    if m > limit:
        raise TooLarge(f"{m} edges exceeds the oracle limit of {limit}")
    if m == 0:
        return ScanSchedule({}, "oracle")

    alpha: dict[tuple[int, int], float] = {}
    incident: list[list[int]] = [[] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if set(edges[i]) & set(edges[j]):
                a = angular_cost(instance, edges[i], edges[j])
                alpha[i, j] = alpha[j, i] = a
                incident[i].append(j)
                incident[j].append(i)

    # Incumbent from a cheap heuristic order keeps pruning tight from the start.
    heuristic = sorted(range(m), key=lambda i: (-len(incident[i]), i))
    best_times = _times_for(heuristic, alpha, incident)
    best = [max(best_times), [edges[i] for i in heuristic]]

    times = [0.0] * m
    earliest = [0.0] * m  # lower bound on each unscheduled edge's time
    in_order: list[int] = []
    used = [False] * m

    def dfs(makespan: float, lb: float) -> None:
        if len(in_order) == m:
            if makespan < best[0] - TOL:
                best[0] = makespan
                best[1] = [edges[i] for i in in_order]
            return
        if lb >= best[0] - TOL:
            return
        for i in range(m):
            if used[i]:
                continue
            t = earliest[i]
            used[i] = True
            in_order.append(i)
            times[i] = t
            touched = []
            for j in incident[i]:
                if not used[j]:
                    cand = t + alpha[i, j]
                    if cand > earliest[j]:
                        touched.append((j, earliest[j]))
                        earliest[j] = cand
            new_make = max(makespan, t)
            new_lb = max(
                new_make,
                max((earliest[j] for j in range(m) if not used[j]), default=0.0),
            )
            dfs(new_make, new_lb)
            for j, old in touched:
                earliest[j] = old
            in_order.pop()
            used[i] = False

    dfs(0.0, 0.0)
    order = best[1]
    schedule = schedule_from_order(instance, order)
    return ScanSchedule(schedule.times, "oracle")


def _times_for(order: list[int], alpha: dict, incident: list[list[int]]) -> list[float]:
    times = [0.0] * len(order)
    pos = {e: k for k, e in enumerate(order)}
    for k, i in enumerate(order):
        t = 0.0
        for j in incident[i]:
            if pos[j] < k:
                t = max(t, times[pos[j]] + alpha[i, j])
        times[k] = t
    return times


def discrete_step_oracle(
    instance: Instance, step: float, max_steps: int = 8
) -> tuple[int, dict[Edge, int]]:
    """Minimal number of time steps for a schedule on the grid {0..K}*step.

    Requires every incident-pair cost to be a multiple of `step`.  Returns
    (steps, assignment of step indices); steps = K + 1.
    """
    if step <= 0:
        raise CostsNotDiscrete("step must be positive")
    edges = sorted(instance.edges)
    if not edges:
        return 1, {}
    need: dict[tuple[int, int], int] = {}
    incident: list[list[int]] = [[] for _ in range(len(edges))]
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if set(edges[i]) & set(edges[j]):
                a = angular_cost(instance, edges[i], edges[j])
                k = round(a / step)
                if abs(k * step - a) > TOL:
                    raise CostsNotDiscrete(f"cost {a} is not a multiple of {step}")
                need[i, j] = need[j, i] = k
                incident[i].append(j)
                incident[j].append(i)

    for k_max in range(0, max_steps):
        assignment = _discrete_backtrack(len(edges), incident, need, k_max)
        if assignment is not None:
            return k_max + 1, {edges[i]: s for i, s in enumerate(assignment)}
    raise NoSolutionWithin(f"no discrete schedule with at most {max_steps} steps")


def _discrete_backtrack(
    m: int, incident: list[list[int]], need: dict, k_max: int
) -> list[int] | None:
    domains: list[set[int]] = [set(range(k_max + 1)) for _ in range(m)]
    assigned: list[int | None] = [None] * m

    def pick() -> int | None:
        best_i, best_sz = None, None
        for i in range(m):
            if assigned[i] is None:
                sz = len(domains[i])
                if best_sz is None or sz < best_sz:
                    best_i, best_sz = i, sz
        return best_i

    def run() -> bool:
        i = pick()
        if i is None:
            return True
        for val in sorted(domains[i]):
            assigned[i] = val
            pruned: list[tuple[int, int]] = []
            ok = True
            for j in incident[i]:
                if assigned[j] is None:
                    gap = need[i, j]
                    for w in list(domains[j]):
                        if abs(w - val) < gap:
                            domains[j].remove(w)
                            pruned.append((j, w))
                    if not domains[j]:
                        ok = False
                        break
            if ok and run():
                return True
            for j, w in pruned:
                domains[j].add(w)
            assigned[i] = None
        return False

    # Check already-assigned consistency is unnecessary: domains start full
    # and every assignment is filtered through its neighbors' needs.
    return [int(x) for x in assigned] if run() else None


def exact_1d(
    instance: Instance, vertex_limit: int | None = None
) -> tuple[int, dict[str, int]]:
    """Minimal number N of 180-degree steps for a 1D instance, with a witness
    assignment of N-bit heading vectors (bit i set = facing left at step i)."""
    limit = _env_limit(DEFAULT_1D_VERTEX_LIMIT, vertex_limit)
    if instance.dimension != 1:
        raise TooLarge("exact_1d only applies to 1D instances")
    n = len(instance.vertex_ids)
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds the oracle limit of {limit}")
    if not instance.edges:
        return 0, {v: 0 for v in instance.vertex_ids}
    rank = instance.line_order
    verts = sorted(instance.vertex_ids, key=lambda v: -len(instance.adjacency[v]))
    index = {v: i for i, v in enumerate(verts)}
    nbrs: list[list[tuple[int, bool]]] = [[] for _ in verts]
    for u, v in instance.edges:
        left, right = (u, v) if rank[u] < rank[v] else (v, u)
        # stored as (other-index, this-vertex-is-left)
        nbrs[index[left]].append((index[right], True))
        nbrs[index[right]].append((index[left], False))

    for n_steps in range(1, 10):
        vecs: list[int | None] = [None] * len(verts)
        full = (1 << n_steps) - 1

        def fits(i: int, vec: int) -> bool:
            for j, i_is_left in nbrs[i]:
                other = vecs[j]
                if other is None:
                    continue
                if i_is_left:
                    # need a step where i faces right (0) and j faces left (1)
                    if (~vec & other & full) == 0:
                        return False
                else:
                    if (~other & vec & full) == 0:
                        return False
            return True

        def search(i: int) -> bool:
            if i == len(verts):
                return True
            for vec in range(1 << n_steps):
                if fits(i, vec):
                    vecs[i] = vec
                    if search(i + 1):
                        return True
                    vecs[i] = None
            return False

        if search(0):
            return n_steps, {v: vecs[index[v]] for v in instance.vertex_ids}
    raise NoSolutionWithin("no 1D scan cover found within 9 steps")


def nae3sat_check(
    formula: list[tuple[tuple[str, bool], ...]]
) -> tuple[bool, dict[str, bool] | None]:
    """Brute-force NAE satisfiability: every clause needs a true and a false
    literal.  Literals are (variable, negated) pairs."""
    variables = sorted({var for clause in formula for var, _ in clause})
    if len(variables) > 20:
        raise TooManyVariables(f"{len(variables)} variables exceeds the cap of 20")
    for bits in product([True, False], repeat=len(variables)):
        value = dict(zip(variables, bits))
        ok = True
        for clause in formula:
            lits = [value[var] != neg for var, neg in clause]
            if all(lits) or not any(lits):
                ok = False
                break
        if ok:
            return True, value
    return False, None


def exact_chromatic(instance: Instance, vertex_limit: int | None = None) -> int:
    """Exact chromatic number by iterative-deepening backtracking."""
    limit = _env_limit(DEFAULT_CHI_VERTEX_LIMIT, vertex_limit)
    n = len(instance.vertex_ids)
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds the oracle limit of {limit}")
    if not instance.edges:
        return 1 if n else 0
    verts = sorted(instance.vertex_ids, key=lambda v: (-len(instance.adjacency[v]), v))
    index = {v: i for i, v in enumerate(verts)}
    nbrs = [
        [index[w] for w in instance.adjacency[v] if index[w] < index[v]]
        for v in verts
    ]
    lower = len(greedy_clique(instance))

    def colorable(k: int) -> bool:
        colors = [-1] * n

        def go(i: int, used: int) -> bool:
            if i == n:
                return True
            seen = {colors[j] for j in nbrs[i]}
            for c in range(min(used + 1, k)):
                if c not in seen:
                    colors[i] = c
                    if go(i + 1, max(used, c + 1)):
                        return True
            colors[i] = -1
            return False

        return go(0, 0)

    k = max(2, lower)
    while not colorable(k):
        k += 1
    return k
