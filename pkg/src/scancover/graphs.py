"""Plain graph predicates and orderings used by several algorithm modules.

All functions take an Instance and iterate vertices in id order, so results
are deterministic.
"""

from __future__ import annotations

from collections import deque

from .model import Edge, Instance


def bipartition(instance: Instance) -> tuple[set[str], set[str]] | None:
    """2-coloring of the underlying graph, or None if an odd cycle exists.

    The first class contains the smallest vertex id of each component.
    """
    color: dict[str, int] = {}
    for start in sorted(instance.vertex_ids):
        if start in color:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in instance.adjacency[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    p1 = {v for v, c in color.items() if c == 0}
    p2 = {v for v, c in color.items() if c == 1}
    return p1, p2


def is_bipartite(instance: Instance) -> bool:
    return bipartition(instance) is not None


def is_complete(instance: Instance) -> bool:
    n = len(instance.vertex_ids)
    return len(instance.edges) == n * (n - 1) // 2


def connected_components(instance: Instance) -> list[set[str]]:
    seen: set[str] = set()
    comps: list[set[str]] = []
    for start in sorted(instance.vertex_ids):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            u = queue.popleft()
            for w in instance.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def is_tree(instance: Instance) -> bool:
    n = len(instance.vertex_ids)
    if len(instance.edges) != n - 1:
        return False
    return len(connected_components(instance)) == 1


def star_center(instance: Instance) -> str | None:
    """Center of a star (all edges share one vertex), or None.

    A single-edge graph counts as a star centered at the smaller id.
    """
    if not instance.edges:
        return None
    common = set(instance.edges[0])
    for e in instance.edges[1:]:
        common &= set(e)
        if not common:
            return None
    return min(common)


def degeneracy_order(instance: Instance) -> tuple[list[str], int]:
    """Repeated minimum-degree removal order and the graph's degeneracy."""
    degree = {v: len(instance.adjacency[v]) for v in instance.vertex_ids}
    alive = set(instance.vertex_ids)
    order: list[str] = []
    degeneracy = 0
    while alive:
        v = min(alive, key=lambda x: (degree[x], x))
        degeneracy = max(degeneracy, degree[v])
        order.append(v)
        alive.remove(v)
        for w in instance.adjacency[v]:
            if w in alive:
                degree[w] -= 1
    return order, degeneracy


def acyclic(edges: list[Edge], vertices: set[str] | None = None) -> bool:
    """True iff the edge set contains no cycle (union-find)."""
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def greedy_clique(instance: Instance) -> list[str]:
    """Deterministic greedy clique, used as a chromatic lower bound."""
    adj = {v: set(instance.adjacency[v]) for v in instance.vertex_ids}
    best: list[str] = []
    seeds = sorted(instance.vertex_ids, key=lambda v: (-len(adj[v]), v))[:4]
    for seed in seeds:
        clique = [seed]
        cands = set(adj[seed])
        while cands:
            nxt = min(cands, key=lambda v: (-len(adj[v] & cands), v))
            clique.append(nxt)
            cands &= adj[nxt]
        if len(clique) > len(best):
            best = clique
    return best
