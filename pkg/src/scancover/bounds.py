"""Certified lower bounds, the quadrant cut-cover extraction, and colorings.

Every bound reported here is a true lower bound on the makespan of any valid
schedule, so `best_bound <= makespan` holds for every schedule the validator
accepts; tests compare them against exact optima.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import InvalidTrajectory, NotAStar, TooLarge
from .graphs import degeneracy_order, greedy_clique, star_center
from .model import TOL, Edge, Instance, Point, angular_cost
from .planar2d import lambda_cone
from .schedule import ScanSchedule, Trajectory, heading_at, validate_trajectory

RIGHT_ANGLE = 90.0


@dataclass(frozen=True)
class BoundReport:
    lambda_bound: float
    lambda_tag: str
    chromatic_bound: float
    chromatic_tag: str
    chi_lower: int
    chi_upper: int
    star_bound: float
    star_tag: str

    @property
    def best(self) -> float:
        return max(self.lambda_bound, self.chromatic_bound, self.star_bound)

    def as_dict(self) -> dict:
        return {
            "lambda": {"degrees": self.lambda_bound, "via": self.lambda_tag},
            "chromatic": {
                "degrees": self.chromatic_bound,
                "via": self.chromatic_tag,
                "chi_lower": self.chi_lower,
                "chi_upper": self.chi_upper,
            },
            "star": {"degrees": self.star_bound, "via": self.star_tag},
            "best": self.best,
        }


def chromatic_lower_bound(chi: int, d: int) -> float:
    """Makespan lower bound from the chromatic number in dimension d."""
    if d not in (2, 3):
        raise ValueError("chromatic bound applies to d in {2, 3}")
    if chi < 2:
        return 0.0
    return max(0.0, (math.ceil(math.log2(chi)) - d) / d * RIGHT_ANGLE)


def star_sequential_bound(instance: Instance) -> float:
    """For a star, all edges share the center, so consecutive scans are at
    least the cheapest transition apart: (n-1) * min pairwise cost."""
    center = star_center(instance)
    if center is None:
        raise NotAStar("instance is not a star")
    edges = instance.edges_at[center]
    n = len(edges)
    if n <= 1:
        return 0.0
    cheapest = min(
        angular_cost(instance, edges[i], edges[j])
        for i in range(n)
        for j in range(i + 1, n)
    )
    return (n - 1) * cheapest


def max_incident_cost(instance: Instance) -> float:
    """Largest transition cost over incident pairs; a universal lower bound."""
    best = 0.0
    for e1, e2 in instance.incident_pairs():
        best = max(best, angular_cost(instance, e1, e2))
    return best


def greedy_coloring(instance: Instance) -> dict[str, int]:
    """Smallest-available-color along the reverse degeneracy order; uses at
    most degeneracy + 1 colors."""
    order, _ = degeneracy_order(instance)
    coloring: dict[str, int] = {}
    for v in reversed(order):
        used = {coloring[w] for w in instance.adjacency[v] if w in coloring}
        c = 0
        while c in used:
            c += 1
        coloring[v] = c
    return coloring


def compute_bounds(instance: Instance, chi_vertex_limit: int = 14) -> BoundReport:
    """Collect every applicable certified lower bound for an instance."""
    from .oracle import exact_chromatic

    if instance.dimension == 2:
        lam, lam_tag = lambda_cone(instance), "cone-2d"
    else:
        lam, lam_tag = max_incident_cost(instance), "max-incident-pair"

    chi_upper = len(set(greedy_coloring(instance).values())) if instance.vertex_ids else 0
    try:
        chi_lower = exact_chromatic(instance, chi_vertex_limit)
        chi_tag = "exact-chi"
    except TooLarge:
        chi_lower = max(1, len(greedy_clique(instance)))
        chi_tag = "clique-greedy"
    if instance.dimension in (2, 3):
        chrom = chromatic_lower_bound(chi_lower, instance.dimension)
    elif instance.dimension == 1 and chi_lower >= 2:
        # In 1D a schedule with N steps induces a cut cover of size N, and
        # cut covers need ceil(log2 chi) parts, so T >= 180 * (that - 1).
        chrom = 180.0 * max(0, math.ceil(math.log2(chi_lower)) - 1)
        chi_tag += "+cut-cover-1d"
    else:
        chrom = 0.0

    center = star_center(instance)
    if center is not None:
        star, star_tag = star_sequential_bound(instance), "sequential-star"
    else:
        star, star_tag = 0.0, "n/a"

    return BoundReport(
        lambda_bound=lam,
        lambda_tag=lam_tag,
        chromatic_bound=chrom,
        chromatic_tag=chi_tag,
        chi_lower=chi_lower,
        chi_upper=chi_upper,
        star_bound=star,
        star_tag=star_tag,
    )


# -- cut-cover extraction ------------------------------------------------------


@dataclass(frozen=True)
class IntervalCut:
    """One time interval with each vertex's heading class at the midpoint."""

    start: float
    end: float
    classes: dict[str, int]


def _quadrant(heading: Point) -> int:
    angle = math.degrees(math.atan2(heading[1], heading[0])) % 360.0
    return int(angle // RIGHT_ANGLE) % 4


def _orthant_classes(
    headings: dict[str, Point], rng: random.Random, retries: int = 32
) -> dict[str, int]:
    """Orthant index per heading under a basis that avoids all coordinate
    subspaces; random rotation retries realize the basis existence argument."""
    for attempt in range(retries):
        if attempt == 0:
            rot = None
        else:
            rot = _random_rotation(rng)
        classes = {}
        ok = True
        for v, h in headings.items():
            w = h if rot is None else _apply(rot, h)
            if any(abs(x) < 1e-12 for x in w):
                ok = False
                break
            classes[v] = sum(1 << i for i, x in enumerate(w) if x < 0)
        if ok:
            return classes
    raise InvalidTrajectory("could not find a basis clear of all headings")


def _random_rotation(rng: random.Random) -> list[list[float]]:
    # Compose rotations about z, y, x with random angles.
    a, b, c = (rng.uniform(0.2, 3.0) for _ in range(3))
    rz = [[math.cos(a), -math.sin(a), 0], [math.sin(a), math.cos(a), 0], [0, 0, 1]]
    ry = [[math.cos(b), 0, math.sin(b)], [0, 1, 0], [-math.sin(b), 0, math.cos(b)]]
    rx = [[1, 0, 0], [0, math.cos(c), -math.sin(c)], [0, math.sin(c), math.cos(c)]]
    return _matmul(_matmul(rz, ry), rx)


def _matmul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)]
        for i in range(3)
    ]


def _apply(m, v):
    return tuple(sum(m[i][k] * v[k] for k in range(3)) for i in range(3))


def cut_cover_extract(
    instance: Instance, schedule: ScanSchedule, traj: Trajectory
) -> list[IntervalCut]:
    """Partition [0, T] into right-angle intervals and classify each vertex by
    the quadrant (2D) or orthant (3D) of its heading at the interval midpoint.

    No edge scanned inside an interval can join two same-class vertices, so
    the interval classes form a cut cover inducing a proper coloring with at
    most (2^d)^ceil(T/90) colors.
    """
    if instance.dimension not in (2, 3):
        raise InvalidTrajectory("cut-cover extraction needs a 2D or 3D instance")
    verdict = validate_trajectory(instance, schedule, traj)
    if not verdict.ok:
        raise InvalidTrajectory(f"trajectory invalid: {verdict.violations[:3]}")
    T = verdict.makespan
    count = max(1, math.ceil((T - TOL) / RIGHT_ANGLE))
    rng = random.Random(20201)
    cuts = []
    for k in range(count):
        lo = k * RIGHT_ANGLE
        hi = min((k + 1) * RIGHT_ANGLE, T) if k == count - 1 else (k + 1) * RIGHT_ANGLE
        mid = (lo + max(hi, lo)) / 2.0
        headings = {}
        for v, points in traj.waypoints.items():
            h = heading_at(points, mid)
            if h is not None:
                headings[v] = h
        if instance.dimension == 2:
            classes = {v: _quadrant(h) for v, h in headings.items()}
        else:
            classes = _orthant_classes(headings, rng)
        cuts.append(IntervalCut(lo, hi, classes))
    return cuts


def cut_cover_violations(
    instance: Instance, schedule: ScanSchedule, cuts: list[IntervalCut]
) -> list[tuple[Edge, int]]:
    """Scanned edges whose endpoints share a class within their interval."""
    bad = []
    count = len(cuts)
    for e in instance.edges:
        t = schedule.times[e]
        idx = min(int(t // RIGHT_ANGLE), count - 1)
        classes = cuts[idx].classes
        if e[0] in classes and e[1] in classes and classes[e[0]] == classes[e[1]]:
            bad.append((e, idx))
    return bad
