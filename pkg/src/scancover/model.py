"""Instance representation, angular transition costs, and instance file I/O.

An instance is a simple graph whose vertices either carry coordinates in
R^1/R^2/R^3 or, for abstract instances, a symmetric cost table over incident
edge pairs.  Costs are always expressed in degrees; one time unit equals one
degree of turning.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import DegenerateEdge, InstanceFormatError, NotIncident

# Absolute tolerance, in degrees, for every angle comparison in the package.
TOL = 1e-9

Edge = tuple[str, str]
Point = tuple[float, ...]

ABSTRACT = "abstract"


def canon_edge(u: str, v: str) -> Edge:
    """Canonical unordered edge key (endpoints sorted by id)."""
    return (u, v) if u <= v else (v, u)


def canon_pair(e1: Edge, e2: Edge) -> tuple[Edge, Edge]:
    """Canonical unordered key for a pair of edges."""
    return (e1, e2) if e1 <= e2 else (e2, e1)


def vec_sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def vec_norm(a: Point) -> float:
    return math.sqrt(sum(x * x for x in a))


def unit(a: Point) -> Point:
    n = vec_norm(a)
    if n == 0.0:
        raise DegenerateEdge("zero-length direction vector")
    return tuple(x / n for x in a)


def angle_between(a: Point, b: Point) -> float:
    """Angle in degrees between two vectors, in [0, 180].

    Uses atan2 of the cross/dot magnitudes, which stays accurate for nearly
    parallel and nearly opposite vectors where acos loses precision.
    """
    dot = sum(x * y for x, y in zip(a, b))
    if len(a) == 1:
        return 0.0 if dot > 0 else 180.0
    if len(a) == 2:
        cross = abs(a[0] * b[1] - a[1] * b[0])
    else:
        cx = a[1] * b[2] - a[2] * b[1]
        cy = a[2] * b[0] - a[0] * b[2]
        cz = a[0] * b[1] - a[1] * b[0]
        cross = math.sqrt(cx * cx + cy * cy + cz * cz)
    return math.degrees(math.atan2(cross, dot))


@dataclass(frozen=True)
class Instance:
    """A scan-cover problem instance.

    dimension is 1, 2, 3 or "abstract".  Geometric instances carry one
    coordinate tuple per vertex; abstract instances carry a cost table over
    incident edge pairs instead.  Immutable after construction.
    """

    dimension: int | str
    vertex_ids: tuple[str, ...]
    coords: Mapping[str, Point] | None
    edges: tuple[Edge, ...]
    abstract_costs: Mapping[tuple[Edge, Edge], float] | None = None

    def __post_init__(self) -> None:
        self._validate()

    # -- structural validation -------------------------------------------

    def _validate(self) -> None:
        if self.dimension not in (1, 2, 3, ABSTRACT):
            raise InstanceFormatError(f"bad dimension: {self.dimension!r}")
        if len(set(self.vertex_ids)) != len(self.vertex_ids):
            raise InstanceFormatError("duplicate vertex ids")
        known = set(self.vertex_ids)
        seen: set[Edge] = set()
        for u, v in self.edges:
            if u == v:
                raise InstanceFormatError(f"self-loop at {u!r}")
            if u not in known or v not in known:
                raise InstanceFormatError(f"edge ({u!r},{v!r}) uses unknown vertex")
            key = canon_edge(u, v)
            if key != (u, v):
                raise InstanceFormatError(f"edge ({u!r},{v!r}) not in canonical order")
            if key in seen:
                raise InstanceFormatError(f"duplicate edge {key}")
            seen.add(key)
        if self.is_geometric:
            if self.coords is None:
                raise InstanceFormatError("geometric instance needs coordinates")
            d = self.dimension
            for vid in self.vertex_ids:
                pt = self.coords.get(vid)
                if pt is None or len(pt) != d:
                    raise InstanceFormatError(
                        f"vertex {vid!r} needs exactly {d} coordinates"
                    )
            for u, v in self.edges:
                if vec_norm(vec_sub(self.coords[u], self.coords[v])) <= 0.0:
                    raise InstanceFormatError(
                        f"edge ({u!r},{v!r}) joins coincident points"
                    )
        else:
            if self.abstract_costs is None:
                raise InstanceFormatError("abstract instance needs a cost table")
            for e1, e2 in self.incident_pairs():
                cost = self.abstract_costs.get(canon_pair(e1, e2))
                if cost is None:
                    raise InstanceFormatError(f"missing cost for pair {e1}, {e2}")
                if cost < 0:
                    raise InstanceFormatError(f"negative cost for pair {e1}, {e2}")

    # -- basic accessors ---------------------------------------------------

    @property
    def is_geometric(self) -> bool:
        return self.dimension != ABSTRACT

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertex_ids}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @cached_property
    def edges_at(self) -> dict[str, tuple[Edge, ...]]:
        at: dict[str, list[Edge]] = {v: [] for v in self.vertex_ids}
        for e in self.edges:
            at[e[0]].append(e)
            at[e[1]].append(e)
        return {v: tuple(es) for v, es in at.items()}

    def incident_pairs(self) -> Iterable[tuple[Edge, Edge]]:
        """All unordered pairs of distinct edges sharing a vertex."""
        for v in self.vertex_ids:
            es = self.edges_at[v]
            for i in range(len(es)):
                for j in range(i + 1, len(es)):
                    yield es[i], es[j]

    def direction(self, frm: str, to: str) -> Point:
        """Unit vector from vertex `frm` toward vertex `to`."""
        return unit(vec_sub(self.coords[to], self.coords[frm]))

    @cached_property
    def line_order(self) -> dict[str, int]:
        """Rank of each vertex along the line (1D only); ties break by id."""
        ranked = sorted(self.vertex_ids, key=lambda v: (self.coords[v][0], v))
        return {v: i for i, v in enumerate(ranked)}

    @cached_property
    def _cost_cache(self) -> dict:
        return {}


def shared_vertex(e1: Edge, e2: Edge) -> str:
    """The single common endpoint of two incident edges."""
    common = set(e1) & set(e2)
    if len(common) != 1:
        raise NotIncident(f"edges {e1} and {e2} share {len(common)} vertices")
    return common.pop()


def angular_cost(instance: Instance, e1: Edge, e2: Edge) -> float:
    """Transition cost in degrees between two incident edges.

    Geometric: the smaller angle at the shared vertex between the two edge
    segments (1D collapses to 0 or 180).  Abstract: table lookup.
    """
    e1 = canon_edge(*e1)
    e2 = canon_edge(*e2)
    key = canon_pair(e1, e2)
    cached = instance._cost_cache.get(key)
    if cached is not None:
        return cached
    v = shared_vertex(e1, e2)
    if not instance.is_geometric:
        cost = instance.abstract_costs[key]
    else:
        u = e1[0] if e1[1] == v else e1[1]
        w = e2[0] if e2[1] == v else e2[1]
        cost = angle_between(instance.direction(v, u), instance.direction(v, w))
    instance._cost_cache[key] = cost
    return cost


def check_metric(instance: Instance, tol: float = TOL) -> list[tuple[Edge, Edge, Edge]]:
    """Report triangle-inequality violations of the incident-pair costs.

    Returns every triple (e1, e2, e3) of edges at a common vertex with
    cost(e1, e3) > cost(e1, e2) + cost(e2, e3) + tol.  Empty means metric.
    Works for abstract tables and for geometric instances (whose induced
    costs are always metric).
    """
    violations: list[tuple[Edge, Edge, Edge]] = []
    for v in instance.vertex_ids:
        es = instance.edges_at[v]
        if len(es) < 3:
            continue
        cost = {}
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                c = angular_cost(instance, es[i], es[j])
                cost[i, j] = cost[j, i] = c
        for i in range(len(es)):
            for j in range(len(es)):
                for k in range(len(es)):
                    if len({i, j, k}) < 3:
                        continue
                    if cost[i, k] > cost[i, j] + cost[j, k] + tol:
                        violations.append((es[i], es[j], es[k]))
    return violations


def as_abstract(instance: Instance) -> Instance:
    """Convert a geometric instance to an abstract one with the same costs."""
    costs = {
        canon_pair(e1, e2): angular_cost(instance, e1, e2)
        for e1, e2 in instance.incident_pairs()
    }
    return Instance(
        dimension=ABSTRACT,
        vertex_ids=instance.vertex_ids,
        coords=None,
        edges=instance.edges,
        abstract_costs=costs,
    )


def induced_instance(instance: Instance, edges: Iterable[Edge]) -> Instance:
    """Same vertices and geometry/costs, restricted to a subset of edges."""
    subset = tuple(sorted(canon_edge(*e) for e in edges))
    costs = None
    if not instance.is_geometric:
        pairs = set()
        for i in range(len(subset)):
            for j in range(i + 1, len(subset)):
                if set(subset[i]) & set(subset[j]):
                    pairs.add(canon_pair(subset[i], subset[j]))
        costs = {p: instance.abstract_costs[p] for p in pairs}
    return Instance(
        dimension=instance.dimension,
        vertex_ids=instance.vertex_ids,
        coords=instance.coords,
        edges=subset,
        abstract_costs=costs,
    )


def make_instance(
    dimension: int | str,
    vertices: Mapping[str, Point] | Iterable[str],
    edges: Iterable[tuple[str, str]],
    costs: Mapping[tuple[tuple[str, str], tuple[str, str]], float] | None = None,
) -> Instance:
    """Convenience constructor that canonicalizes edges and cost keys."""
    if isinstance(vertices, Mapping):
        ids = tuple(vertices.keys())
        coords = {v: tuple(float(x) for x in pt) for v, pt in vertices.items()}
    else:
        ids = tuple(vertices)
        coords = None
    canon = tuple(sorted(canon_edge(u, v) for u, v in edges))
    table = None
    if costs is not None:
        table = {}
        for (e1, e2), c in costs.items():
            key = canon_pair(canon_edge(*e1), canon_edge(*e2))
            prev = table.get(key)
            if prev is not None and abs(prev - c) > TOL:
                raise InstanceFormatError(f"asymmetric cost for pair {key}")
            table[key] = float(c)
    return Instance(
        dimension=dimension,
        vertex_ids=ids,
        coords=coords,
        edges=canon,
        abstract_costs=table,
    )


# -- instance file format --------------------------------------------------

_INSTANCE_FIELDS = {"version", "dimension", "vertices", "edges", "costs"}


def instance_to_dict(instance: Instance) -> dict:
    doc: dict = {
        "version": 1,
        "dimension": instance.dimension,
        "vertices": [
            {
                "id": v,
                "coords": list(instance.coords[v]) if instance.is_geometric else [],
            }
            for v in instance.vertex_ids
        ],
        "edges": [list(e) for e in instance.edges],
    }
    if not instance.is_geometric:
        doc["costs"] = [
            {"e1": list(e1), "e2": list(e2), "cost": c}
            for (e1, e2), c in sorted(instance.abstract_costs.items())
        ]
    return doc


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be an object")
    unknown = set(doc) - _INSTANCE_FIELDS
    if unknown:
        raise InstanceFormatError(f"unknown fields: {sorted(unknown)}")
    if doc.get("version") != 1:
        raise InstanceFormatError("unsupported or missing version")
    dim = doc.get("dimension")
    if dim not in (1, 2, 3, ABSTRACT):
        raise InstanceFormatError(f"bad dimension: {dim!r}")
    try:
        ids = []
        coords = {}
        for item in doc["vertices"]:
            extra = set(item) - {"id", "coords"}
            if extra:
                raise InstanceFormatError(f"unknown vertex fields: {sorted(extra)}")
            vid = item["id"]
            if not isinstance(vid, str):
                raise InstanceFormatError("vertex id must be a string")
            ids.append(vid)
            coords[vid] = tuple(float(x) for x in item.get("coords", []))
        edges = [(str(u), str(v)) for u, v in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"malformed instance document: {exc}") from exc
    costs = None
    if dim == ABSTRACT:
        if "costs" not in doc:
            raise InstanceFormatError("abstract instance needs a costs table")
        costs = {}
        for item in doc["costs"]:
            extra = set(item) - {"e1", "e2", "cost"}
            if extra:
                raise InstanceFormatError(f"unknown cost fields: {sorted(extra)}")
            e1 = canon_edge(str(item["e1"][0]), str(item["e1"][1]))
            e2 = canon_edge(str(item["e2"][0]), str(item["e2"][1]))
            costs[(tuple(e1), tuple(e2))] = float(item["cost"])
    elif "costs" in doc:
        raise InstanceFormatError("costs table only allowed for abstract instances")
    vertices = {v: coords[v] for v in ids} if dim != ABSTRACT else ids
    return make_instance(dim, vertices, edges, costs)


def save_instance(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(instance), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_instance(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceFormatError(f"cannot read instance: {exc}") from exc
    return instance_from_dict(doc)


def instance_hash(instance: Instance) -> str:
    """Stable content hash used to pair schedule files with instances."""
    doc = instance_to_dict(instance)
    doc["vertices"] = sorted(doc["vertices"], key=lambda it: it["id"])
    doc["edges"] = sorted(doc["edges"])
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]
