"""Capability-compass rendering: a radar chart as a standalone SVG string.

Pure function of (values, labels, model id): identical input gives
identical bytes. Axis k points at angle 2*pi*k/n, counter-clockwise from
the positive x axis; a value v maps to the point
(cx + R*v*cos(theta), cy - R*v*sin(theta)).
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

VIEW_SIZE = 420.0
RADIUS = 160.0
GRID_LEVELS = (0.25, 0.5, 0.75, 1.0)


def vertex(value: float, index: int, count: int) -> tuple[float, float]:
    """Viewport coordinates of one axis vertex for a value in [0, 1]."""
    theta = 2.0 * math.pi * index / count
    cx = cy = VIEW_SIZE / 2.0
    return (
        cx + RADIUS * value * math.cos(theta),
        cy - RADIUS * value * math.sin(theta),
    )


def _points(values) -> str:
    count = len(values)
    return " ".join(
        f"{x:.6f},{y:.6f}" for x, y in (vertex(v, k, count) for k, v in enumerate(values))
    )


def render_compass(values, labels, model_id: str) -> str:
    """Render the radar chart; values must lie in [0, 1], 3 to 8 axes."""
    values = list(values)
    labels = list(labels)
    if len(values) != len(labels):
        raise ValueError("values and labels must have the same length")
    if not 3 <= len(values) <= 8:
        raise ValueError("compass supports between 3 and 8 dimensions")
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"dimension value {v} outside [0, 1]")

    n = len(values)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW_SIZE:.0f}" '
        f'height="{VIEW_SIZE:.0f}" viewBox="0 0 {VIEW_SIZE:.0f} {VIEW_SIZE:.0f}">',
        f'  <title>{escape(model_id)}</title>',
        f'  <rect width="{VIEW_SIZE:.0f}" height="{VIEW_SIZE:.0f}" fill="white"/>',
    ]
    for level in GRID_LEVELS:
        lines.append(
            f'  <polygon points="{_points([level] * n)}" fill="none" '
            'stroke="#cccccc" stroke-width="1"/>'
        )
    for k in range(n):
        x, y = vertex(1.0, k, n)
        cx = cy = VIEW_SIZE / 2.0
        lines.append(
            f'  <line x1="{cx:.6f}" y1="{cy:.6f}" x2="{x:.6f}" y2="{y:.6f}" '
            'stroke="#cccccc" stroke-width="1"/>'
        )
    lines.append(
        f'  <polygon class="model" points="{_points(values)}" '
        'fill="#1f77b4" fill-opacity="0.35" stroke="#1f77b4" stroke-width="2"/>'
    )
    for k, label in enumerate(labels):
        x, y = vertex(1.12, k, n)
        anchor = "middle"
        if x > VIEW_SIZE / 2.0 + 1.0:
            anchor = "start"
        elif x < VIEW_SIZE / 2.0 - 1.0:
            anchor = "end"
        lines.append(
            f'  <text x="{x:.6f}" y="{y:.6f}" font-family="sans-serif" '
            f'font-size="14" text-anchor="{anchor}" dominant-baseline="middle">'
            f"{escape(label)}</text>"
        )
    lines.append(
        f'  <text x="{VIEW_SIZE / 2.0:.6f}" y="24" font-family="sans-serif" '
        f'font-size="16" text-anchor="middle">{escape(model_id)}</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
