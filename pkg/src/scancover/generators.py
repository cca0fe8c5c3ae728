"""Instance generators: hardness gadgets, lower-bound families, random tests.

All generators are deterministic: identical arguments (including seeds)
produce identical instances.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

from .errors import DimensionMismatch, MalformedFormula, TooLarge
from .model import Edge, Instance, make_instance

Literal = tuple[str, bool]  # (variable name, negated)
Clause = tuple[Literal, Literal, Literal]

TURAN_VERTEX_CAP = 100_000


def parse_literal(text: str) -> Literal:
    text = text.strip()
    neg = text.startswith("!")
    name = text[1:] if neg else text
    if not name or not name.isidentifier():
        raise MalformedFormula(f"bad literal {text!r}")
    return name, neg


def parse_formula(text: str) -> list[Clause]:
    """Formula syntax: clauses as comma-separated literal triples, grouped by
    parentheses or separated by semicolons, e.g. "(x1,x2,!x3)(!x1,x2,x3)"."""
    chunks = []
    cleaned = text.replace(")(", ";").strip().strip("()")
    for chunk in cleaned.split(";"):
        chunk = chunk.strip().strip("()")
        if chunk:
            chunks.append(chunk)
    formula = []
    for chunk in chunks:
        lits = tuple(parse_literal(t) for t in chunk.split(","))
        if len(lits) != 3:
            raise MalformedFormula(f"clause {chunk!r} needs exactly 3 literals")
        formula.append(lits)
    if not formula:
        raise MalformedFormula("empty formula")
    return formula


def gen_nae_gadget(formula: list[Clause], phi: float = 120.0) -> Instance:
    """Clause-variable incidence gadget whose scan covers decide NAE-3-SAT.

    Per clause: a clause vertex joined to three entry vertices (clause
    edges).  Per variable: a variable vertex joined to two literal vertices
    (variable edges).  Each entry vertex connects to the literal vertex it
    represents (incidence edge).  Pair costs: phi if the pair contains a
    clause edge, 2*phi if it contains a variable edge, 0 otherwise.  The
    gadget has three-step scan covers exactly for satisfiable formulas.
    """
    if phi <= 0:
        raise MalformedFormula("phi must be positive")
    for clause in formula:
        if len(clause) != 3:
            raise MalformedFormula("every clause needs exactly 3 literals")
    variables = sorted({var for clause in formula for var, _ in clause})
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    clause_edges: set[Edge] = set()
    variable_edges: set[Edge] = set()

    def lit_vertex(var: str, neg: bool) -> str:
        return f"L:{var}:{'neg' if neg else 'pos'}"

    for var in variables:
        vv = f"V:{var}"
        vertices.extend([vv, lit_vertex(var, False), lit_vertex(var, True)])
        for neg in (False, True):
            e = tuple(sorted((vv, lit_vertex(var, neg))))
            edges.append(e)
            variable_edges.add(e)
    for ci, clause in enumerate(formula):
        cv = f"C{ci}"
        vertices.append(cv)
        for li, (var, neg) in enumerate(clause):
            ev = f"E{ci}.{li}"
            vertices.append(ev)
            ce = tuple(sorted((cv, ev)))
            edges.append(ce)
            clause_edges.add(ce)
            edges.append(tuple(sorted((ev, lit_vertex(var, neg)))))

    at: dict[str, list[Edge]] = {}
    for e in edges:
        at.setdefault(e[0], []).append(e)
        at.setdefault(e[1], []).append(e)
    costs = {}
    for es in at.values():
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                e1, e2 = es[i], es[j]
                if e1 in clause_edges or e2 in clause_edges:
                    c = phi
                elif e1 in variable_edges or e2 in variable_edges:
                    c = 2 * phi
                else:
                    c = 0.0
                costs[(e1, e2) if e1 <= e2 else (e2, e1)] = c
    return make_instance("abstract", vertices, edges, costs=costs)


def gen_turan_1d(ell: int) -> Instance:
    """Balanced complete multipartite graph on a line with n = 2^ell: 2^n
    color classes of size n, laid out as n consecutive blocks each holding
    one vertex of every color in order.  Grows as n * 2^n vertices."""
    if ell < 1:
        raise TooLarge("ell must be at least 1")
    n = 2**ell
    classes = 2**n
    total = n * classes
    if total > TURAN_VERTEX_CAP:
        raise TooLarge(f"{total} vertices exceeds the cap of {TURAN_VERTEX_CAP}")
    vertices: dict[str, tuple[float, ...]] = {}
    color: dict[str, int] = {}
    for block in range(n):
        for c in range(classes):
            vid = f"b{block}c{c}"
            vertices[vid] = (float(block * classes + c),)
            color[vid] = c
    ids = list(vertices)
    edges = [
        (u, v) for u, v in combinations(ids, 2) if color[u] != color[v]
    ]
    return make_instance(1, vertices, edges)


_ICOSA_PHI = (1 + math.sqrt(5)) / 2


def _icosahedron() -> tuple[list[tuple[float, float, float]], list[tuple[int, int, int]]]:
    p = _ICOSA_PHI
    raw = [
        (-1, p, 0), (1, p, 0), (-1, -p, 0), (1, -p, 0),
        (0, -1, p), (0, 1, p), (0, -1, -p), (0, 1, -p),
        (p, 0, -1), (p, 0, 1), (-p, 0, -1), (-p, 0, 1),
    ]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    return [_normalize(v) for v in raw], faces


def _normalize(v) -> tuple[float, float, float]:
    n = math.sqrt(sum(x * x for x in v))
    return (v[0] / n, v[1] / n, v[2] / n)


def gen_geodesic_star(subdivisions: int) -> Instance:
    """Star from the origin to the vertices of a subdivided icosahedron
    projected onto the unit sphere (12, 42, 162, ... leaves)."""
    if subdivisions < 0:
        raise TooLarge("subdivisions must be nonnegative")
    verts, faces = _icosahedron()
    for _ in range(subdivisions):
        cache: dict[tuple[int, int], int] = {}

        def midpoint(i: int, j: int) -> int:
            key = (i, j) if i < j else (j, i)
            if key not in cache:
                a, b = verts[i], verts[j]
                verts.append(
                    _normalize(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2))
                )
                cache[key] = len(verts) - 1
            return cache[key]

        nxt = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            nxt.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
        faces = nxt
    vertices = {"center": (0.0, 0.0, 0.0)}
    edges = []
    for i, v in enumerate(verts):
        vid = f"leaf{i:04d}"
        vertices[vid] = v
        edges.append(("center", vid))
    return make_instance(3, vertices, edges)


def gen_orthant_star(n: int, d: int) -> Instance:
    """Star whose leaf directions are pairwise orthogonal: on coordinate axes
    for d <= 3, as an abstract all-90-degree star beyond."""
    if n < 1 or d < 1 or (d <= 3 and n > d):
        raise DimensionMismatch(f"cannot place {n} orthogonal leaves in {d}D")
    if d <= 3:
        vertices = {"center": tuple(0.0 for _ in range(d))}
        edges = []
        for i in range(n):
            axis = tuple(1.0 if j == i else 0.0 for j in range(d))
            vid = f"leaf{i}"
            vertices[vid] = axis
            edges.append(("center", vid))
        return make_instance(d, vertices, edges)
    ids = ["center"] + [f"leaf{i}" for i in range(n)]
    edges = [("center", f"leaf{i}") for i in range(n)]
    costs = {}
    for i in range(n):
        for j in range(i + 1, n):
            costs[(("center", f"leaf{i}"), ("center", f"leaf{j}"))] = 90.0
    return make_instance("abstract", ids, edges, costs=costs)


RANDOM_KINDS = ("bipartite2d", "tree3d", "complete2d", "sparse2d")


def gen_random(
    kind: str, n: int, seed: int
) -> tuple[Instance, tuple[set[str], set[str]] | None]:
    """Seeded random instance; bipartite kinds also return their partition."""
    if kind not in RANDOM_KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {RANDOM_KINDS}")
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random((kind, n, seed).__repr__())
    ids = [f"p{i:03d}" for i in range(n)]

    def coords(dim: int) -> dict[str, tuple[float, ...]]:
        return {v: tuple(rng.uniform(0.0, 1.0) for _ in range(dim)) for v in ids}

    if kind == "complete2d":
        vertices = coords(2)
        edges = list(combinations(ids, 2))
        return make_instance(2, vertices, edges), None
    if kind == "tree3d":
        vertices = coords(3)
        shuffled = ids[:]
        rng.shuffle(shuffled)
        edges = [
            (shuffled[i], shuffled[rng.randrange(i)]) for i in range(1, n)
        ]
        return make_instance(3, vertices, edges), None
    if kind == "sparse2d":
        vertices = coords(2)
        pairs = list(combinations(ids, 2))
        want = min(len(pairs), rng.randint(max(1, n - 1), 2 * n))
        edges = rng.sample(pairs, want)
        return make_instance(2, vertices, edges), None
    # bipartite2d
    vertices = coords(2)
    half = (n + 1) // 2
    p1, p2 = set(ids[:half]), set(ids[half:])
    cross = [(u, v) for u in sorted(p1) for v in sorted(p2)]
    if cross:
        want = min(len(cross), rng.randint(max(1, n - 1), 2 * n))
        edges = rng.sample(cross, want)
    else:
        edges = []
    return make_instance(2, vertices, edges), (p1, p2)
