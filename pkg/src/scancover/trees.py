"""Abstract-cost algorithms: star orders, tree scheduling, forest covers.

Scheduling a star's edges is a metric Path-TSP over its leaves.  Trees close
each vertex's best-found edge path into a cycle and phase-shift children so
parent and child agree on their shared edge's time; everything stays within
one cycle length of the costliest vertex.  General graphs decompose into
forests first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NotAStar, NotATree
from .graphs import acyclic, degeneracy_order, is_tree, star_center
from .model import TOL, Edge, Instance, angular_cost, canon_edge
from .schedule import ScanSchedule, merge_schedules, min_feasible_offset

# Largest degree solved exactly by the subset DP; beyond it the star order
# falls back to nearest-neighbor growth from the cheapest pair.
EXACT_THRESHOLD = 12


@dataclass(frozen=True)
class CyclicOrder:
    """A vertex's incident edges arranged in a cycle.

    positions[i] is the cumulative transition cost from edges[0] to edges[i]
    along the cycle; total adds the closing step from the last edge back to
    the first.
    """

    edges: tuple[Edge, ...]
    positions: tuple[float, ...]
    total: float


def _local_costs(instance: Instance, edges: list[Edge]) -> list[list[float]]:
    k = len(edges)
    cost = [[0.0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            cost[i][j] = cost[j][i] = angular_cost(instance, edges[i], edges[j])
    return cost


def _held_karp_path(cost: list[list[float]]) -> list[int]:
    """Minimum-cost Hamiltonian path with free endpoints, by subset DP."""
    k = len(cost)
    if k == 1:
        return [0]
    dp: dict[tuple[int, int], float] = {}
    parent: dict[tuple[int, int], int] = {}
    for i in range(k):
        dp[1 << i, i] = 0.0
    for mask in range(1, 1 << k):
        for last in range(k):
            key = (mask, last)
            if key not in dp:
                continue
            base = dp[key]
            for nxt in range(k):
                if mask & (1 << nxt):
                    continue
                nkey = (mask | (1 << nxt), nxt)
                cand = base + cost[last][nxt]
                if nkey not in dp or cand < dp[nkey] - 1e-15:
                    dp[nkey] = cand
                    parent[nkey] = last
    full = (1 << k) - 1
    last = min(range(k), key=lambda i: (dp[full, i], i))
    path = [last]
    mask = full
    while (mask, last) in parent:
        prev = parent[mask, last]
        mask ^= 1 << last
        path.append(prev)
        last = prev
    path.reverse()
    return path


def _greedy_path(cost: list[list[float]]) -> list[int]:
    """Nearest-neighbor growth from the cheapest pair, extending whichever
    end has the cheaper next hop."""
    k = len(cost)
    best_pair = min(
        ((i, j) for i in range(k) for j in range(i + 1, k)),
        key=lambda p: (cost[p[0]][p[1]], p),
    )
    path = deque(best_pair)
    remaining = set(range(k)) - set(best_pair)
    while remaining:
        front, back = path[0], path[-1]
        cf, vf = min((cost[front][v], v) for v in remaining)
        cb, vb = min((cost[back][v], v) for v in remaining)
        if (cf, vf) <= (cb, vb):
            path.appendleft(vf)
            remaining.remove(vf)
        else:
            path.append(vb)
            remaining.remove(vb)
    return list(path)


def star_order(
    instance: Instance, center: str, exact_threshold: int = EXACT_THRESHOLD
) -> list[Edge]:
    """Scan order for a star's edges: the minimum-cost path over the incident
    edges (exact up to `exact_threshold` edges, greedy beyond)."""
    if star_center(instance) is None:
        raise NotAStar("instance is not a star")
    edges = list(instance.edges_at[center])
    if not edges:
        return []
    if len(edges) == 1:
        return edges
    cost = _local_costs(instance, edges)
    if len(edges) <= exact_threshold:
        idx = _held_karp_path(cost)
    else:
        idx = _greedy_path(cost)
    return [edges[i] for i in idx]


def path_cost(instance: Instance, order: list[Edge]) -> float:
    return sum(
        angular_cost(instance, a, b) for a, b in zip(order, order[1:])
    )


def cyclic_order(
    instance: Instance,
    vertex: str,
    edges: list[Edge] | None = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> CyclicOrder:
    """Close the vertex's best-found edge path into a cycle; by metricity the
    closing step costs at most the path itself, so total <= 2 * path cost."""
    local = list(edges if edges is not None else instance.edges_at[vertex])
    if not local:
        return CyclicOrder((), (), 0.0)
    if len(local) == 1:
        return CyclicOrder((local[0],), (0.0,), 0.0)
    cost = _local_costs(instance, local)
    if len(local) <= exact_threshold:
        idx = _held_karp_path(cost)
    else:
        idx = _greedy_path(cost)
    positions = [0.0]
    for a, b in zip(idx, idx[1:]):
        positions.append(positions[-1] + cost[a][b])
    total = positions[-1] + cost[idx[-1]][idx[0]]
    return CyclicOrder(
        tuple(local[i] for i in idx), tuple(positions), total
    )


def _tree_schedule(
    instance: Instance,
    edges: list[Edge],
    root: str,
    exact_threshold: int = EXACT_THRESHOLD,
) -> tuple[ScanSchedule, dict[str, CyclicOrder]]:
    """Cycle-synchronized schedule of a tree given by `edges`, rooted at
    `root`.  Every edge is timed once, within [0, cycle length) of the vertex
    that schedules it, so the makespan never exceeds max_v total_v."""
    adj: dict[str, list[Edge]] = {}
    for e in edges:
        adj.setdefault(e[0], []).append(e)
        adj.setdefault(e[1], []).append(e)
    orders = {
        v: cyclic_order(instance, v, adj[v], exact_threshold) for v in adj
    }
    pos = {
        v: {e: orders[v].positions[i] for i, e in enumerate(orders[v].edges)}
        for v in adj
    }
    times: dict[Edge, float] = {}
    # (vertex, its already-timed parent edge or None for the root)
    queue: deque[tuple[str, Edge | None]] = deque([(root, None)])
    seen = {root}
    while queue:
        v, parent_edge = queue.popleft()
        cyc = orders[v]
        if parent_edge is None:
            shift = 0.0
        elif cyc.total <= TOL:
            shift = None  # all transitions free: reuse the parent edge's time
        else:
            shift = (times[parent_edge] - pos[v][parent_edge]) % cyc.total
        for e in cyc.edges:
            if e != parent_edge:
                if shift is None:
                    times[e] = times[parent_edge]
                else:
                    times[e] = (pos[v][e] + shift) % cyc.total if cyc.total > TOL else 0.0
            other = e[0] if e[1] == v else e[1]
            if other not in seen:
                seen.add(other)
                queue.append((other, e))
    horizon = max((o.total for o in orders.values()), default=0.0)
    schedule = ScanSchedule(times, "tree")
    assert schedule.makespan <= horizon + TOL
    return schedule, orders


def tree_approx(
    instance: Instance,
    root: str | None = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> ScanSchedule:
    """Schedule a tree by synchronized per-vertex cyclic orders.

    With exact star orders the makespan is at most twice the costliest
    vertex's optimal path, hence at most 2x the optimum; the greedy fallback
    above `exact_threshold` keeps validity but not that ratio.
    """
    if not is_tree(instance):
        raise NotATree("underlying graph is not a tree")
    if not instance.edges:
        return ScanSchedule({}, "tree")
    if root is None:
        root = min(v for v in instance.vertex_ids if instance.adjacency[v])
    schedule, _ = _tree_schedule(instance, list(instance.edges), root, exact_threshold)
    return schedule


def forest_decompose(instance: Instance) -> list[list[Edge]]:
    """Partition the edges into at most 2 * degeneracy forests.

    Orienting each edge away from its earlier vertex in the degeneracy order
    bounds out-degrees by the degeneracy; the i-th out-edges form one
    pseudoforest each, and each pseudoforest splits into at most two forests.
    """
    order, _ = degeneracy_order(instance)
    rank = {v: i for i, v in enumerate(order)}
    out: dict[str, list[Edge]] = {v: [] for v in instance.vertex_ids}
    for e in instance.edges:
        src = e[0] if rank[e[0]] < rank[e[1]] else e[1]
        out[src].append(e)
    layers: dict[int, list[Edge]] = {}
    for v in sorted(out):
        for i, e in enumerate(sorted(out[v])):
            layers.setdefault(i, []).append(e)
    forests: list[list[Edge]] = []
    for i in sorted(layers):
        parts: list[list[Edge]] = []
        for e in layers[i]:
            for part in parts:
                if acyclic(part + [e]):
                    part.append(e)
                    break
            else:
                parts.append([e])
        forests.extend(parts)
    return forests


def _edge_components(edges: list[Edge]) -> list[list[Edge]]:
    adj: dict[str, list[Edge]] = {}
    for e in edges:
        adj.setdefault(e[0], []).append(e)
        adj.setdefault(e[1], []).append(e)
    seen_edges: set[Edge] = set()
    comps = []
    for start in sorted(adj):
        if all(e in seen_edges for e in adj[start]):
            continue
        comp: list[Edge] = []
        queue = deque([start])
        visited = {start}
        while queue:
            v = queue.popleft()
            for e in adj[v]:
                if e not in seen_edges:
                    seen_edges.add(e)
                    comp.append(e)
                other = e[0] if e[1] == v else e[1]
                if other not in visited:
                    visited.add(other)
                    queue.append(other)
        if comp:
            comps.append(sorted(comp))
    return comps


def arboricity_approx(
    instance: Instance, exact_threshold: int = EXACT_THRESHOLD
) -> ScanSchedule:
    """Tree-schedule every component of every forest (components share no
    vertices, so they run in parallel), then chain the forests with the
    smallest offsets that keep all cross constraints valid."""
    if not instance.edges:
        return ScanSchedule({}, "arboricity")
    combined: ScanSchedule | None = None
    for forest in forest_decompose(instance):
        parts = []
        for comp in _edge_components(forest):
            root = min(min(e) for e in comp)
            sched, _ = _tree_schedule(instance, comp, root, exact_threshold)
            parts.append(sched)
        forest_schedule = merge_schedules(parts, "arboricity")
        if combined is None:
            combined = forest_schedule
        else:
            delta = min_feasible_offset(instance, combined, forest_schedule)
            combined = merge_schedules(
                [combined, forest_schedule.shifted(delta)], "arboricity"
            )
    return ScanSchedule(combined.times, "arboricity")
