"""Static SVG rendering of an instance plus one of its schedules.

Two panels: the embedded graph with edges colored by scan time, and a
per-vertex timeline with a tick at each of its edges' scan times.
"""

from __future__ import annotations

import math

from .model import Instance
from .schedule import ScanSchedule

CANVAS = 420.0
MARGIN = 30.0
ROW_H = 22.0


def _layout(instance: Instance) -> dict[str, tuple[float, float]]:
    """2D positions: native for 2D, x/y projection for 3D, the line itself
    for 1D, and a circle for abstract instances."""
    if instance.dimension == 1:
        return {v: (instance.coords[v][0], 0.0) for v in instance.vertex_ids}
    if instance.is_geometric:
        return {v: (instance.coords[v][0], instance.coords[v][1]) for v in instance.vertex_ids}
    n = max(1, len(instance.vertex_ids))
    return {
        v: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
        for i, v in enumerate(instance.vertex_ids)
    }


def _fit(points: dict[str, tuple[float, float]]) -> dict[str, tuple[float, float]]:
    xs = [p[0] for p in points.values()]
    ys = [p[1] for p in points.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    scale = (CANVAS - 2 * MARGIN) / span
    return {
        v: (
            MARGIN + (p[0] - min(xs)) * scale,
            CANVAS - MARGIN - (p[1] - min(ys)) * scale,
        )
        for v, p in points.items()
    }


def _time_color(t: float, horizon: float) -> str:
    frac = t / horizon if horizon > 0 else 0.0
    hue = 240.0 * (1.0 - frac)  # blue (early) to red (late)
    return f"hsl({hue:.0f},85%,45%)"


def render_svg(instance: Instance, schedule: ScanSchedule) -> str:
    pos = _fit(_layout(instance))
    horizon = schedule.makespan
    rows = [v for v in sorted(instance.vertex_ids) if instance.adjacency[v]]
    gantt_h = MARGIN + ROW_H * (len(rows) + 1)
    height = CANVAS + gantt_h
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {CANVAS:.0f} {height:.0f}">',
        f'<rect width="{CANVAS:.0f}" height="{height:.0f}" fill="white"/>',
    ]
    for e in sorted(schedule.times):
        (x1, y1), (x2, y2) = pos[e[0]], pos[e[1]]
        color = _time_color(schedule.times[e], horizon)
        out.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{color}" stroke-width="2"><title>{e[0]}-{e[1]} @ '
            f"{schedule.times[e]:.2f}</title></line>"
        )
    for v, (x, y) in sorted(pos.items()):
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3.5" fill="black"/>')
        out.append(
            f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="9" '
            f'font-family="sans-serif">{v}</text>'
        )
    # timeline panel
    t_left = MARGIN + 60.0
    t_width = CANVAS - t_left - MARGIN
    base = CANVAS + MARGIN

    def tx(t: float) -> float:
        return t_left + (t / horizon * t_width if horizon > 0 else 0.0)

    out.append(
        f'<text x="{MARGIN:.0f}" y="{base - 8:.0f}" font-size="10" '
        f'font-family="sans-serif">scan times (0 .. {horizon:.1f} deg)</text>'
    )
    for i, v in enumerate(rows):
        y = base + ROW_H * (i + 1)
        out.append(
            f'<text x="{MARGIN:.0f}" y="{y + 4:.0f}" font-size="9" '
            f'font-family="sans-serif">{v}</text>'
        )
        out.append(
            f'<line x1="{t_left:.1f}" y1="{y:.1f}" x2="{t_left + t_width:.1f}" '
            f'y2="{y:.1f}" stroke="#ccc" stroke-width="1"/>'
        )
        for e in instance.edges_at[v]:
            t = schedule.times.get(e)
            if t is None:
                continue
            x = tx(t)
            color = _time_color(t, horizon)
            out.append(
                f'<rect x="{x - 2:.2f}" y="{y - 6:.1f}" width="4" height="12" '
                f'fill="{color}"><title>{e[0]}-{e[1]} @ {t:.2f}</title></rect>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
