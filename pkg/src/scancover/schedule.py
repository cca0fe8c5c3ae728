"""Schedules from edge orders, schedule/trajectory validation, and file I/O.

The schedule recurrence assigns each edge the smallest time consistent with
all earlier incident edges, so any edge order induces a valid schedule.  A
trajectory witnesses feasibility: per-vertex waypoints joined by shortest
rotations at most at unit angular speed (one degree of turn per time unit).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    IncompleteOrder,
    InfeasibleSchedule,
    ScheduleFormatError,
)
from .model import (
    TOL,
    Edge,
    Instance,
    Point,
    angle_between,
    angular_cost,
    canon_edge,
    instance_hash,
    unit,
)


@dataclass(frozen=True)
class ScanSchedule:
    """Scan time per edge, in degrees, plus the producing algorithm's tag."""

    times: Mapping[Edge, float]
    algorithm_tag: str = "unknown"

    @property
    def makespan(self) -> float:
        return max(self.times.values(), default=0.0)

    def shifted(self, offset: float) -> "ScanSchedule":
        return ScanSchedule(
            {e: t + offset for e, t in self.times.items()}, self.algorithm_tag
        )


@dataclass(frozen=True)
class Trajectory:
    """Per-vertex waypoints (time, unit heading), strictly increasing in time."""

    waypoints: Mapping[str, tuple[tuple[float, Point], ...]]


@dataclass(frozen=True)
class ScheduleVerdict:
    ok: bool
    makespan: float
    violations: tuple = ()


def schedule_from_order(instance: Instance, order: Sequence[Edge]) -> ScanSchedule:
    """Pointwise-minimal schedule scanning edges in the given order."""
    canon = [canon_edge(*e) for e in order]
    if sorted(canon) != sorted(instance.edges):
        raise IncompleteOrder("order must be a permutation of the instance's edges")
    times: dict[Edge, float] = {}
    for e in canon:
        t = 0.0
        for f in times:
            if set(e) & set(f):
                t = max(t, times[f] + angular_cost(instance, e, f))
        times[e] = t
    return ScanSchedule(times, "from-order")


def order_from_schedule(schedule: ScanSchedule) -> list[Edge]:
    """Edges sorted by scan time; ties break by edge id."""
    return sorted(schedule.times, key=lambda e: (schedule.times[e], e))


def validate_schedule(
    instance: Instance, schedule: ScanSchedule, tol: float = TOL
) -> ScheduleVerdict:
    """Check the separation inequality for every incident edge pair."""
    missing = set(instance.edges) - set(schedule.times)
    if missing:
        return ScheduleVerdict(False, 0.0, tuple(("missing", e) for e in sorted(missing)))
    violations = []
    for e1, e2 in instance.incident_pairs():
        need = angular_cost(instance, e1, e2)
        got = abs(schedule.times[e1] - schedule.times[e2])
        if got < need - tol:
            violations.append((e1, e2, need, got))
    makespan = max((schedule.times[e] for e in instance.edges), default=0.0)
    return ScheduleVerdict(not violations, makespan, tuple(violations))


# -- trajectories ------------------------------------------------------------


def _slerp(h1: Point, h2: Point, frac: float) -> Point:
    """Point at `frac` of the shortest rotation from h1 to h2."""
    omega = math.radians(angle_between(h1, h2))
    if omega < 1e-12:
        return h1
    if len(h1) == 1:
        # No continuous path inside R^1; headings switch at the far endpoint.
        return h1 if frac < 1.0 else h2
    if abs(omega - math.pi) < 1e-9:
        # Antipodal: route through a deterministic orthogonal midpoint.
        mid = _orthogonal(h1)
        if frac <= 0.5:
            return _slerp(h1, mid, 2 * frac)
        return _slerp(mid, h2, 2 * frac - 1)
    s = math.sin(omega)
    a = math.sin((1 - frac) * omega) / s
    b = math.sin(frac * omega) / s
    return unit(tuple(a * x + b * y for x, y in zip(h1, h2)))


def _orthogonal(h: Point) -> Point:
    if len(h) == 2:
        return (-h[1], h[0])
    axis = min(range(3), key=lambda i: abs(h[i]))
    e = [0.0, 0.0, 0.0]
    e[axis] = 1.0
    proj = sum(e[i] * h[i] for i in range(3))
    return unit(tuple(e[i] - proj * h[i] for i in range(3)))


def heading_at(
    waypoints: Sequence[tuple[float, Point]], t: float
) -> Point | None:
    """Interpolated heading at time t: constant-rate shortest rotation
    between waypoints, held constant before the first and after the last.
    A waypoint time itself returns the waypoint heading."""
    if not waypoints:
        return None
    if t <= waypoints[0][0]:
        return waypoints[0][1]
    for (t1, h1), (t2, h2) in zip(waypoints, waypoints[1:]):
        if t < t2:
            if t <= t1:
                return h1
            return _slerp(h1, h2, (t - t1) / (t2 - t1))
        if t == t2:
            return h2
    return waypoints[-1][1]


def trajectory_from_schedule(instance: Instance, schedule: ScanSchedule) -> Trajectory:
    """Per-vertex waypoints at each edge's scan time, facing the partner.

    Raises InfeasibleSchedule if two scan times at one vertex are closer than
    the turn they require, which cannot happen for valid schedules.
    """
    out: dict[str, tuple[tuple[float, Point], ...]] = {}
    for v in instance.vertex_ids:
        points: list[tuple[float, Point]] = []
        for e in instance.edges_at[v]:
            partner = e[0] if e[1] == v else e[1]
            points.append((schedule.times[e], instance.direction(v, partner)))
        points.sort(key=lambda p: p[0])
        merged: list[tuple[float, Point]] = []
        for t, h in points:
            if merged and abs(t - merged[-1][0]) <= TOL:
                if angle_between(h, merged[-1][1]) > 1e-6:
                    raise InfeasibleSchedule(
                        f"vertex {v!r} must face two directions at time {t}"
                    )
                continue
            merged.append((t, h))
        for (t1, h1), (t2, h2) in zip(merged, merged[1:]):
            if angle_between(h1, h2) > (t2 - t1) + TOL:
                raise InfeasibleSchedule(
                    f"vertex {v!r} cannot turn fast enough between {t1} and {t2}"
                )
        if merged:
            out[v] = tuple(merged)
    return Trajectory(out)


def validate_trajectory(
    instance: Instance,
    schedule: ScanSchedule,
    traj: Trajectory,
    tol: float = 1e-6,
) -> ScheduleVerdict:
    """Accept iff scans see both endpoints facing each other and every
    waypoint leg respects unit angular speed."""
    violations = []
    for v, points in traj.waypoints.items():
        for (t1, h1), (t2, h2) in zip(points, points[1:]):
            if t2 <= t1:
                violations.append(("nonincreasing-times", v, t1, t2))
            elif angle_between(h1, h2) > (t2 - t1) + tol:
                violations.append(("too-fast", v, t1, t2))
    for e in instance.edges:
        t = schedule.times.get(e)
        if t is None:
            violations.append(("unscheduled", e))
            continue
        for v in e:
            partner = e[0] if e[1] == v else e[1]
            h = heading_at(traj.waypoints.get(v, ()), t)
            want = instance.direction(v, partner)
            if h is None or angle_between(h, want) > tol:
                violations.append(("not-facing", e, v, t))
    makespan = max((schedule.times.get(e, 0.0) for e in instance.edges), default=0.0)
    return ScheduleVerdict(not violations, makespan, tuple(violations))


# -- combining partial schedules --------------------------------------------


def min_feasible_offset(
    instance: Instance,
    base: ScanSchedule,
    addition: ScanSchedule,
    lower: float = 0.0,
) -> float:
    """Smallest offset >= lower so base and shifted addition satisfy every
    cross incident-pair separation constraint.

    Each cross pair forbids an open interval of offsets; the answer is the
    first point at or above `lower` outside their union.
    """
    forbidden: list[tuple[float, float]] = []
    for e, te in base.times.items():
        for f, tf in addition.times.items():
            if not set(e) & set(f):
                continue
            alpha = angular_cost(instance, e, f)
            if alpha <= TOL:
                continue
            forbidden.append((te - tf - alpha, te - tf + alpha))
    cur = lower
    for lo, hi in sorted(forbidden):
        if lo + TOL < cur < hi - TOL:
            cur = hi
    return cur


def merge_schedules(
    parts: Iterable[ScanSchedule], algorithm_tag: str
) -> ScanSchedule:
    times: dict[Edge, float] = {}
    for part in parts:
        overlap = set(times) & set(part.times)
        if overlap:
            raise ScheduleFormatError(f"duplicate edges when merging: {overlap}")
        times.update(part.times)
    return ScanSchedule(times, algorithm_tag)


# -- schedule file format -----------------------------------------------------

_SCHEDULE_FIELDS = {"instance_hash", "algorithm_tag", "times", "trajectory", "bits"}


def schedule_to_dict(
    instance: Instance,
    schedule: ScanSchedule,
    traj: Trajectory | None = None,
    bits: dict | None = None,
) -> dict:
    doc: dict = {
        "instance_hash": instance_hash(instance),
        "algorithm_tag": schedule.algorithm_tag,
        "times": [
            {"edge": list(e), "t": schedule.times[e]} for e in sorted(schedule.times)
        ],
    }
    if traj is not None:
        doc["trajectory"] = {
            v: [{"t": t, "heading": list(h)} for t, h in points]
            for v, points in sorted(traj.waypoints.items())
        }
    if bits is not None:
        doc["bits"] = bits
    return doc


def schedule_from_dict(doc: dict) -> tuple[str, ScanSchedule, Trajectory | None]:
    if not isinstance(doc, dict):
        raise ScheduleFormatError("schedule document must be an object")
    unknown = set(doc) - _SCHEDULE_FIELDS
    if unknown:
        raise ScheduleFormatError(f"unknown fields: {sorted(unknown)}")
    try:
        ihash = str(doc["instance_hash"])
        tag = str(doc["algorithm_tag"])
        times = {
            canon_edge(str(it["edge"][0]), str(it["edge"][1])): float(it["t"])
            for it in doc["times"]
        }
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ScheduleFormatError(f"malformed schedule document: {exc}") from exc
    traj = None
    if "trajectory" in doc:
        try:
            traj = Trajectory(
                {
                    v: tuple(
                        (float(it["t"]), tuple(float(x) for x in it["heading"]))
                        for it in points
                    )
                    for v, points in doc["trajectory"].items()
                }
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScheduleFormatError(f"malformed trajectory: {exc}") from exc
    return ihash, ScanSchedule(times, tag), traj


def save_schedule(
    path: str,
    instance: Instance,
    schedule: ScanSchedule,
    traj: Trajectory | None = None,
    bits: dict | None = None,
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(
            schedule_to_dict(instance, schedule, traj, bits),
            fh,
            indent=2,
            sort_keys=True,
        )
        fh.write("\n")


def load_schedule(path: str) -> tuple[str, ScanSchedule, Trajectory | None]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ScheduleFormatError(f"cannot read schedule: {exc}") from exc
    return schedule_from_dict(doc)
