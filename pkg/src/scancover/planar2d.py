"""2D strategies built on synchronized rotations and alternate angles.

Headings are measured counterclockwise from the positive x axis, in degrees;
"clockwise" means decreasing heading.  Every edge between the two classes of
a bipartition is seen simultaneously by both endpoints when the classes
rotate in step with opposite start headings (alternate angles), which powers
all strategies here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotBipartitePartition, NotComplete
from .model import (
    TOL,
    Edge,
    Instance,
    Point,
    canon_edge,
    induced_instance,
)
from .schedule import (
    ScanSchedule,
    Trajectory,
    merge_schedules,
    min_feasible_offset,
)

GEOM_EPS = 1e-9


def direction_angle(instance: Instance, frm: str, to: str) -> float:
    """Heading angle in [0, 360) of the direction from `frm` to `to`."""
    dx = instance.coords[to][0] - instance.coords[frm][0]
    dy = instance.coords[to][1] - instance.coords[frm][1]
    return math.degrees(math.atan2(dy, dx)) % 360.0


def heading_vec(angle: float) -> Point:
    rad = math.radians(angle)
    return (math.cos(rad), math.sin(rad))


def lambda_cone(instance: Instance) -> float:
    """Minimum angle such that some cone of that width contains every
    vertex's incident edge directions; a lower bound on any makespan."""
    best = 0.0
    for v in instance.vertex_ids:
        nbrs = instance.adjacency[v]
        if not nbrs:
            continue
        angles = sorted(direction_angle(instance, v, w) for w in nbrs)
        gap = angles[0] + 360.0 - angles[-1]
        for a, b in zip(angles, angles[1:]):
            gap = max(gap, b - a)
        best = max(best, 360.0 - gap)
    return best


def vertex_cones(instance: Instance) -> dict[str, float]:
    """Per-vertex minimal enclosing cone width (edge-incident vertices only)."""
    cones = {}
    for v in instance.vertex_ids:
        nbrs = instance.adjacency[v]
        if not nbrs:
            continue
        angles = sorted(direction_angle(instance, v, w) for w in nbrs)
        gap = angles[0] + 360.0 - angles[-1]
        for a, b in zip(angles, angles[1:]):
            gap = max(gap, b - a)
        cones[v] = 360.0 - gap
    return cones


# -- strict line separation ---------------------------------------------------


@dataclass(frozen=True)
class SeparatingLine:
    """A directed line with the first point class strictly on its left."""

    point: tuple[float, float]
    angle: float  # direction of travel, degrees


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Andrew monotone chain; collinear inputs reduce to their extremes."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull_segments(hull: list) -> list[tuple[tuple, tuple]]:
    if len(hull) == 1:
        return [(hull[0], hull[0])]
    if len(hull) == 2:
        return [(hull[0], hull[1])]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def _on_segment(p, a, b) -> bool:
    if abs(_cross(a, b, p)) > GEOM_EPS:
        return False
    return (
        min(a[0], b[0]) - GEOM_EPS <= p[0] <= max(a[0], b[0]) + GEOM_EPS
        and min(a[1], b[1]) - GEOM_EPS <= p[1] <= max(a[1], b[1]) + GEOM_EPS
    )


def _segments_intersect(p1, p2, q1, q2) -> bool:
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    if ((d1 > GEOM_EPS and d2 < -GEOM_EPS) or (d1 < -GEOM_EPS and d2 > GEOM_EPS)) and (
        (d3 > GEOM_EPS and d4 < -GEOM_EPS) or (d3 < -GEOM_EPS and d4 > GEOM_EPS)
    ):
        return True
    return (
        _on_segment(p1, q1, q2)
        or _on_segment(p2, q1, q2)
        or _on_segment(q1, p1, p2)
        or _on_segment(q2, p1, p2)
    )


def _point_in_hull(p, hull) -> bool:
    if len(hull) == 1:
        return math.dist(p, hull[0]) <= GEOM_EPS
    if len(hull) == 2:
        return _on_segment(p, hull[0], hull[1])
    for i in range(len(hull)):
        if _cross(hull[i], hull[(i + 1) % len(hull)], p) < -GEOM_EPS:
            return False
    return True


def _closest_point_on_segment(p, a, b) -> tuple[float, float]:
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom <= 0:
        return a
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / denom
    t = min(1.0, max(0.0, t))
    return (ax + t * dx, ay + t * dy)


def detect_separating_line(
    points1: list[tuple[float, float]], points2: list[tuple[float, float]]
) -> SeparatingLine | None:
    """Strict line separator between two point sets, or None.

    Touching or overlapping convex hulls count as not separated.  The line
    returned is the perpendicular bisector of the closest hull pair, so the
    result is canonical.
    """
    if not points1 or not points2:
        return None
    h1 = convex_hull(points1)
    h2 = convex_hull(points2)
    segs1 = _hull_segments(h1)
    segs2 = _hull_segments(h2)
    for a, b in segs1:
        for c, d in segs2:
            if _segments_intersect(a, b, c, d):
                return None
    if _point_in_hull(h1[0], h2) or _point_in_hull(h2[0], h1):
        return None
    best = None
    for p in h1:
        for c, d in segs2:
            q = _closest_point_on_segment(p, c, d)
            dist = math.dist(p, q)
            if best is None or dist < best[0]:
                best = (dist, p, q)
    for q in h2:
        for a, b in segs1:
            p = _closest_point_on_segment(q, a, b)
            dist = math.dist(p, q)
            if best is None or dist < best[0]:
                best = (dist, p, q)
    dist, p, q = best
    if dist <= GEOM_EPS:
        return None
    mid = ((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0)
    normal = ((q[0] - p[0]) / dist, (q[1] - p[1]) / dist)
    # Rotating the outward normal by +90 degrees puts side 1 on the left.
    angle = math.degrees(math.atan2(normal[0], -normal[1])) % 360.0
    return SeparatingLine(mid, angle)


# -- synchronized rotations ---------------------------------------------------


def _check_partition(
    instance: Instance, partition: tuple[set[str], set[str]]
) -> tuple[set[str], set[str]]:
    p1, p2 = set(partition[0]), set(partition[1])
    if p1 & p2:
        raise NotBipartitePartition("classes overlap")
    for u, v in instance.edges:
        if u in p1 and v in p2 or u in p2 and v in p1:
            continue
        raise NotBipartitePartition(f"edge ({u!r},{v!r}) does not cross the classes")
    return p1, p2


def _rotation_core(
    instance: Instance,
    p1: set[str],
    p2: set[str],
    start1: float,
    window: float,
    tag: str,
    time_offset: float = 0.0,
) -> tuple[ScanSchedule, dict[str, list[tuple[float, float]]]]:
    """Everyone rotates clockwise by `window`, class 1 starting at `start1`
    and class 2 opposite.  Returns the schedule and per-vertex (time, angle)
    waypoints including the rotation start and end."""
    times: dict[Edge, float] = {}
    marks: dict[str, list[tuple[float, float]]] = {}
    for v in p1 | p2:
        if instance.adjacency.get(v):
            start = start1 if v in p1 else (start1 + 180.0) % 360.0
            marks[v] = [(time_offset, start), (time_offset + window, (start - window) % 360.0)]
    for e in instance.edges:
        u, v = e if e[0] in p1 else (e[1], e[0])
        theta = direction_angle(instance, u, v)
        rel = (start1 - theta) % 360.0
        if rel > window:
            if rel > 360.0 - 1e-6:
                rel = 0.0
            elif rel < window + 1e-6:
                rel = window
            else:
                raise AssertionError(
                    f"edge {e} at relative angle {rel} outside the {window} window"
                )
        t = time_offset + rel
        times[e] = t
        marks[u].append((t, theta))
        marks[v].append((t, (theta + 180.0) % 360.0))
    return ScanSchedule(times, tag), marks


def _marks_to_trajectory(
    marks: dict[str, list[tuple[float, float]]]
) -> Trajectory:
    out = {}
    for v, pts in marks.items():
        pts.sort(key=lambda p: p[0])
        merged: list[tuple[float, Point]] = []
        for t, ang in pts:
            if merged and abs(t - merged[-1][0]) <= TOL:
                continue
            merged.append((t, heading_vec(ang)))
        out[v] = tuple(merged)
    return Trajectory(out)


def bipartite_rotation(
    instance: Instance, partition: tuple[set[str], set[str]]
) -> tuple[ScanSchedule, Trajectory]:
    """Full-turn strategy: class 1 starts north, class 2 south, everyone
    rotates clockwise; alternate angles make both endpoints of an edge face
    each other at the same moment.  Completes within 360 degrees, or 180 when
    a line strictly separates the classes (start headings parallel to it)."""
    p1, p2 = _check_partition(instance, partition)
    with_edges = [v for v in instance.vertex_ids if instance.adjacency[v]]
    pts1 = [instance.coords[v] for v in with_edges if v in p1]
    pts2 = [instance.coords[v] for v in with_edges if v in p2]
    line = detect_separating_line(pts1, pts2)
    if line is not None:
        schedule, marks = _rotation_core(
            instance, p1, p2, line.angle, 180.0, "bip-rotation"
        )
    else:
        schedule, marks = _rotation_core(instance, p1, p2, 90.0, 360.0, "bip-rotation")
    return schedule, _marks_to_trajectory(marks)


# -- adaptive sector strategy -------------------------------------------------


def sector_approx(
    instance: Instance, partition: tuple[set[str], set[str]]
) -> tuple[ScanSchedule, Trajectory]:
    """Adaptive two-phase strategy with guaranteed makespan <= 4.5 * optimum.

    With Lambda the maximal per-vertex cone width, headings split into 2s
    sectors of width L' = 360/(2s) >= Lambda, s maximal.  Every vertex's
    edges then occupy at most two adjacent sectors, one of even and one of
    odd index at its class-1 endpoint.  Phase one sweeps the even sectors
    clockwise, phase two the odd sectors counterclockwise, with one sector
    width of turning in between: 3 L' < 4.5 Lambda total.  When Lambda >= 90
    the full-rotation strategy is already a 4-approximation.
    """
    p1, p2 = _check_partition(instance, partition)
    if not instance.edges:
        return ScanSchedule({}, "sector"), Trajectory({})
    lam = lambda_cone(instance)
    if lam <= TOL:
        # All of each vertex's edges share one direction; scan everything at 0.
        times = {e: 0.0 for e in instance.edges}
        marks: dict[str, list[tuple[float, float]]] = {}
        for e in instance.edges:
            u, v = e if e[0] in p1 else (e[1], e[0])
            theta = direction_angle(instance, u, v)
            marks.setdefault(u, []).append((0.0, theta))
            marks.setdefault(v, []).append((0.0, (theta + 180.0) % 360.0))
        return ScanSchedule(times, "sector"), _marks_to_trajectory(marks)
    if lam >= 90.0 - TOL:
        schedule, traj = bipartite_rotation(instance, partition)
        schedule = ScanSchedule(schedule.times, "sector")
        assert schedule.makespan <= 360.0 + TOL
        return schedule, traj

    s = int(180.0 / lam + 1e-12)
    width = 180.0 / s
    assert s >= 2 and width >= lam - TOL and width < 1.5 * lam + TOL

    times = {}
    sectors: dict[str, dict[int, int]] = {}  # vertex -> phase -> sector index
    scans: dict[str, list[tuple[float, float]]] = {}
    for e in instance.edges:
        u, v = e if e[0] in p1 else (e[1], e[0])
        theta = direction_angle(instance, u, v)
        i = int(theta / width)
        if i >= 2 * s:
            i = 0
        phase = i % 2
        iv = (i + s) % (2 * s)
        if phase == 0:
            t = (i + 1) * width - theta
        else:
            t = 2 * width + (theta - i * width)
        times[e] = t
        for vertex, idx in ((u, i), (v, iv)):
            prev = sectors.setdefault(vertex, {}).setdefault(phase, idx)
            if prev != idx:
                raise AssertionError(
                    f"vertex {vertex!r} needs two sectors in one phase"
                )
        scans.setdefault(u, []).append((t, theta))
        scans.setdefault(v, []).append((t, (theta + 180.0) % 360.0))

    for v, by_phase in sectors.items():
        if len(by_phase) == 2:
            a, b = by_phase[0], by_phase[1]
            if (a + 1) % (2 * s) != b and (b + 1) % (2 * s) != a:
                raise AssertionError(f"vertex {v!r} spans non-adjacent sectors")

    marks = {}
    for v, by_phase in sectors.items():
        pts = list(scans.get(v, ()))
        if 0 in by_phase:
            a = by_phase[0]
            pts.append((0.0, ((a + 1) * width) % 360.0))
            pts.append((width, (a * width) % 360.0))
        if 1 in by_phase:
            b = by_phase[1]
            pts.append((2 * width, (b * width) % 360.0))
            pts.append((3 * width, ((b + 1) * width) % 360.0))
        marks[v] = pts

    schedule = ScanSchedule(times, "sector")
    assert schedule.makespan <= 3 * width + TOL
    return schedule, _marks_to_trajectory(marks)


# -- coloring decomposition ---------------------------------------------------


def kcolor_decompose(
    instance: Instance, coloring: dict[str, int]
) -> ScanSchedule:
    """Split edges into bipartite layers by the lowest differing bit of their
    endpoint color indices, run the sector strategy per layer, and chain the
    layers with the smallest offsets that keep all cross constraints valid."""
    from .errors import ImproperColoring

    for u, v in instance.edges:
        if coloring[u] == coloring[v]:
            raise ImproperColoring(f"adjacent vertices {u!r}, {v!r} share a color")
    if not instance.edges:
        return ScanSchedule({}, "kcolor")
    index = {c: i for i, c in enumerate(sorted(set(coloring.values())))}
    code = {v: index[c] for v, c in coloring.items()}
    groups: dict[int, list[Edge]] = {}
    for e in instance.edges:
        diff = code[e[0]] ^ code[e[1]]
        bit = (diff & -diff).bit_length() - 1
        groups.setdefault(bit, []).append(e)

    combined: ScanSchedule | None = None
    for bit in sorted(groups):
        sub = induced_instance(instance, groups[bit])
        p1 = {v for v in code if not code[v] >> bit & 1}
        p2 = {v for v in code if code[v] >> bit & 1}
        phase, _ = sector_approx(sub, (p1, p2))
        if combined is None:
            combined = phase
        else:
            delta = min_feasible_offset(instance, combined, phase)
            combined = merge_schedules([combined, phase.shifted(delta)], "kcolor")
    return ScanSchedule(combined.times, "kcolor")


# -- recursive split for complete graphs --------------------------------------

LEVEL_SPAN = 180.0
LEVEL_GAP = 90.0


def complete_recursive_split(instance: Instance) -> tuple[ScanSchedule, Trajectory]:
    """Recursive median splits for complete graphs in 2D.

    Level l splits every block of the previous level at its median
    (orientation alternating between vertical and horizontal), and the two
    halves of each block scan their cross edges with the 180-degree separated
    strategy, simultaneously across blocks.  90 degrees of turning joins
    consecutive levels, which is exactly the switch between the alternating
    start headings, so the makespan never exceeds
    ceil(log2 n) * 180 + (ceil(log2 n) - 1) * 90.
    """
    if instance.dimension != 2:
        raise NotComplete("expected a 2D instance")
    n = len(instance.vertex_ids)
    if n < 2 or len(instance.edges) != n * (n - 1) // 2:
        raise NotComplete("underlying graph is not complete on >= 2 vertices")

    times: dict[Edge, float] = {}
    marks: dict[str, list[tuple[float, float]]] = {v: [] for v in instance.vertex_ids}
    blocks: list[list[str]] = [sorted(instance.vertex_ids)]
    level = 0
    while any(len(b) > 1 for b in blocks):
        t0 = level * (LEVEL_SPAN + LEVEL_GAP)
        axis = level % 2
        start1 = 90.0 if axis == 0 else 0.0
        nxt: list[list[str]] = []
        for block in blocks:
            if len(block) == 1:
                nxt.append(block)
                continue
            # Ties on the split key break by id, which only affects the split.
            ordered = sorted(block, key=lambda v: (instance.coords[v][axis], v))
            half = (len(ordered) + 1) // 2
            lower_half, upper_half = ordered[:half], ordered[half:]
            # Class 1 must lie left of the directed split line: west of a
            # north line for vertical splits, above an east line otherwise.
            p1, p2 = (lower_half, upper_half) if axis == 0 else (upper_half, lower_half)
            for v in block:
                start = start1 if v in p1 else (start1 + 180.0) % 360.0
                marks[v].append((t0, start))
                marks[v].append((t0 + LEVEL_SPAN, (start - LEVEL_SPAN) % 360.0))
            for u in p1:
                for v in p2:
                    theta = direction_angle(instance, u, v)
                    rel = (start1 - theta) % 360.0
                    if rel > LEVEL_SPAN:
                        if rel > 360.0 - 1e-6:
                            rel = 0.0
                        elif rel < LEVEL_SPAN + 1e-6:
                            rel = LEVEL_SPAN
                        else:
                            raise AssertionError(
                                f"cross edge ({u!r},{v!r}) outside the half-turn window"
                            )
                    t = t0 + rel
                    times[canon_edge(u, v)] = t
                    marks[u].append((t, theta))
                    marks[v].append((t, (theta + 180.0) % 360.0))
            nxt.extend([lower_half, upper_half])
        blocks = nxt
        level += 1

    assert len(times) == len(instance.edges)
    schedule = ScanSchedule(times, "complete-split")
    bound = level * LEVEL_SPAN + (level - 1) * LEVEL_GAP
    assert schedule.makespan <= bound + TOL
    return schedule, _marks_to_trajectory(marks)
