"""Shared instance builders for the test suite."""

from __future__ import annotations

import math
import random
from itertools import combinations

import pytest

from scancover import make_instance
from scancover.model import Instance


def equilateral_triangle() -> Instance:
    return make_instance(
        2,
        {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (0.5, math.sqrt(3) / 2)},
        [("a", "b"), ("a", "c"), ("b", "c")],
    )


def path_1d() -> Instance:
    return make_instance(1, {"u": (0.0,), "v": (1.0,), "w": (2.0,)}, [("u", "v"), ("v", "w")])


def complete_1d(n: int) -> Instance:
    return make_instance(
        1,
        {f"v{i}": (float(i),) for i in range(n)},
        [(f"v{i}", f"v{j}") for i in range(n) for j in range(i + 1, n)],
    )


def star_2d(angles: list[float]) -> Instance:
    verts = {"c": (0.0, 0.0)}
    edges = []
    for i, a in enumerate(angles):
        rad = math.radians(a)
        verts[f"l{i}"] = (math.cos(rad), math.sin(rad))
        edges.append(("c", f"l{i}"))
    return make_instance(2, verts, edges)


def rand_1d_bipartite(n: int, seed: int) -> Instance:
    rng = random.Random(("1db", n, seed).__repr__())
    ids = [f"v{i}" for i in range(n)]
    coords = {v: (rng.uniform(0.0, 10.0),) for v in ids}
    half = (n + 1) // 2
    p1, p2 = ids[:half], ids[half:]
    cross = [(u, v) for u in p1 for v in p2]
    edges = rng.sample(cross, min(len(cross), rng.randint(1, max(1, 2 * n)))) if cross else []
    return make_instance(1, coords, edges)


def rand_1d_complete(n: int, seed: int) -> Instance:
    rng = random.Random(("1dc", n, seed).__repr__())
    ids = [f"v{i}" for i in range(n)]
    coords = {v: (rng.uniform(0.0, 10.0),) for v in ids}
    return make_instance(1, coords, list(combinations(ids, 2)))


def rand_separated_bipartite(n: int, seed: int) -> tuple[Instance, tuple[set, set]]:
    """Bipartite 2D instance whose classes live in disjoint vertical strips."""
    rng = random.Random(("sep", n, seed).__repr__())
    ids = [f"v{i}" for i in range(n)]
    half = (n + 1) // 2
    coords = {}
    for i, v in enumerate(ids):
        if i < half:
            coords[v] = (rng.uniform(0.0, 0.4), rng.uniform(0.0, 1.0))
        else:
            coords[v] = (rng.uniform(0.6, 1.0), rng.uniform(0.0, 1.0))
    p1, p2 = set(ids[:half]), set(ids[half:])
    cross = [(u, v) for u in sorted(p1) for v in sorted(p2)]
    edges = rng.sample(cross, min(len(cross), rng.randint(1, 2 * n)))
    return make_instance(2, coords, edges), (p1, p2)


def rand_formula(seed: int, max_vars: int = 4, max_clauses: int = 3):
    rng = random.Random(("nae", seed).__repr__())
    n_clauses = rng.randint(1, max_clauses)
    formula = []
    for _ in range(n_clauses):
        clause = tuple(
            (f"x{rng.randint(1, max_vars)}", rng.random() < 0.5) for _ in range(3)
        )
        formula.append(clause)
    return formula


@pytest.fixture
def triangle() -> Instance:
    return equilateral_triangle()


@pytest.fixture
def small_path() -> Instance:
    return path_1d()
