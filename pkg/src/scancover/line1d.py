"""Discrete 1D scan covers via 0/1 heading vectors.

On a line every scan happens at a multiple of 180 degrees, so a schedule is
an assignment of N-bit vectors to vertices (bit i set = facing left during
step i).  An edge uv with u left of v is covered at step i when u faces
right and v faces left.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil, comb, log2
from typing import Mapping

from .errors import (
    CoverViolation,
    ImproperColoring,
    NotBipartite,
    NotComplete,
)
from .graphs import bipartition, is_complete
from .model import Edge, Instance
from .schedule import ScanSchedule

STEP_DEGREES = 180.0


@dataclass(frozen=True)
class BitSchedule:
    """N-step heading vectors per vertex; scan time is 180*(N-1) degrees."""

    steps: int
    vectors: Mapping[str, tuple[int, ...]]

    @property
    def scan_time(self) -> float:
        return STEP_DEGREES * max(self.steps - 1, 0)


def _ordered(instance: Instance, u: str, v: str) -> tuple[str, str]:
    rank = instance.line_order
    return (u, v) if rank[u] < rank[v] else (v, u)


def check_cover(instance: Instance, bs: BitSchedule) -> list[Edge]:
    """Edges with no step where the left endpoint faces right and the right
    endpoint faces left."""
    bad = []
    for e in instance.edges:
        left, right = _ordered(instance, *e)
        sl, sr = bs.vectors[left], bs.vectors[right]
        if not any(a == 0 and b == 1 for a, b in zip(sl, sr)):
            bad.append(e)
    return bad


def solve_bipartite_1d(instance: Instance) -> BitSchedule:
    """Optimal bit schedule for bipartite 1D instances.

    One step suffices iff every vertex's neighbors are all on one side;
    otherwise two steps are needed and a proper 2-coloring provides them.
    """
    if instance.dimension != 1:
        raise NotBipartite("expected a 1D instance")
    parts = bipartition(instance)
    if parts is None:
        raise NotBipartite("underlying graph has an odd cycle")
    if not instance.edges:
        return BitSchedule(0, {v: () for v in instance.vertex_ids})
    rank = instance.line_order
    one_sided = True
    for v in instance.vertex_ids:
        sides = {rank[w] > rank[v] for w in instance.adjacency[v]}
        if len(sides) == 2:
            one_sided = False
            break
    if one_sided:
        vectors = {}
        for v in instance.vertex_ids:
            nbrs = instance.adjacency[v]
            facing_left = bool(nbrs) and rank[nbrs[0]] < rank[v]
            vectors[v] = (1,) if facing_left else (0,)
        return BitSchedule(1, vectors)
    coloring = {v: (0 if v in parts[0] else 1) for v in instance.vertex_ids}
    return vectors_from_coloring(instance, coloring)


def solve_complete_1d(instance: Instance) -> BitSchedule:
    """Optimal bit schedule for complete 1D instances: recursively split the
    line order into halves; step i separates the halves at depth i."""
    if instance.dimension != 1:
        raise NotComplete("expected a 1D instance")
    if not is_complete(instance) or len(instance.vertex_ids) < 2:
        raise NotComplete("underlying graph is not complete on >= 2 vertices")
    order = sorted(instance.vertex_ids, key=instance.line_order.get)
    n = len(order)
    steps = ceil(log2(n))
    bits: dict[str, list[int]] = {v: [] for v in order}
    blocks = [order]
    for _ in range(steps):
        nxt: list[list[str]] = []
        for block in blocks:
            half = (len(block) + 1) // 2
            left, right = block[:half], block[half:]
            for v in left:
                bits[v].append(0)
            for v in right:
                bits[v].append(1)
            nxt.extend(b for b in (left, right) if b)
        blocks = nxt
    return BitSchedule(steps, {v: tuple(b) for v, b in bits.items()})


def steps_for_colors(C: int) -> int:
    """Smallest vector length N such that C pairwise-incomparable vectors of
    weight floor(N/2) exist, never exceeding the
    ceil(log2 C + 0.5*log2 log2 C + 1) ceiling."""
    if C < 2:
        raise ValueError("need at least 2 colors")
    n = ceil(log2(C) + 0.5 * log2(log2(C)) + 1)
    if C > comb(n, n // 2):
        raise AssertionError(f"ceiling formula infeasible for C={C}")
    while n > 1 and C <= comb(n - 1, (n - 1) // 2):
        n -= 1
    return n


def _weight_vectors(n: int, k: int, count: int) -> list[tuple[int, ...]]:
    """First `count` weight-k vectors of length n in lexicographic order."""
    out = []
    for ones in combinations(range(n), k):
        vec = tuple(1 if i in ones else 0 for i in range(n))
        out.append(vec)
        if len(out) == count:
            break
    return out


def vectors_from_coloring(
    instance: Instance, coloring: Mapping[str, int]
) -> BitSchedule:
    """Bit schedule from a proper coloring: each color class receives a
    distinct constant-weight vector, so any two classes are incomparable."""
    if instance.dimension != 1:
        raise ImproperColoring("expected a 1D instance")
    for u, v in instance.edges:
        if coloring[u] == coloring[v]:
            raise ImproperColoring(f"adjacent vertices {u!r}, {v!r} share a color")
    classes = sorted(set(coloring.values()))
    if len(classes) < 2:
        # Edgeless graph: any single vector works; keep the N=2 convention.
        vecs = _weight_vectors(2, 1, 1)
        return BitSchedule(2, {v: vecs[0] for v in instance.vertex_ids})
    n = steps_for_colors(len(classes))
    vecs = _weight_vectors(n, n // 2, len(classes))
    by_color = dict(zip(classes, vecs))
    bs = BitSchedule(n, {v: by_color[coloring[v]] for v in instance.vertex_ids})
    bad = check_cover(instance, bs)
    if bad:
        raise CoverViolation(f"coloring construction failed to cover {bad}")
    return bs


def bitschedule_to_schedule(bs: BitSchedule, instance: Instance) -> ScanSchedule:
    """Each edge scanned at the earliest step where its endpoints face each
    other; step i maps to time 180*(i-1)."""
    times: dict[Edge, float] = {}
    for e in instance.edges:
        left, right = _ordered(instance, *e)
        sl, sr = bs.vectors[left], bs.vectors[right]
        step = next(
            (i for i, (a, b) in enumerate(zip(sl, sr)) if a == 0 and b == 1), None
        )
        if step is None:
            raise CoverViolation(f"no valid step for edge {e}")
        times[e] = STEP_DEGREES * step
    return ScanSchedule(times, "bits-1d")


def bits_to_strings(bs: BitSchedule) -> dict:
    """Serialized form used inside schedule files."""
    return {
        "steps": bs.steps,
        "vectors": {v: "".join(map(str, bits)) for v, bits in bs.vectors.items()},
    }
