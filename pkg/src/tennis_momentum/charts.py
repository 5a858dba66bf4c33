"""Minimal SVG line charts for momentum series.

Hand-rolled on purpose: the output contract is two polylines per panel
(one per player) with deterministic bytes, which a plotting library does
not guarantee. The series file remains the authoritative output; these
charts are illustrative.
"""
from __future__ import annotations

from typing import Sequence

from .momentum import MomentumSample

PANEL_WIDTH = 840
PANEL_HEIGHT = 180
MARGIN = 40
COLORS = ("#1f6fb4", "#c23b3b")  # p1, p2


def _polyline(values: Sequence[float], lo: float, hi: float, y_offset: int, n: int) -> str:
    span = hi - lo if hi > lo else 1.0
    inner_w = PANEL_WIDTH - 2 * MARGIN
    inner_h = PANEL_HEIGHT - 2 * MARGIN
    pts = []
    for i, v in enumerate(values):
        x = MARGIN + inner_w * (i / max(1, n - 1))
        y = y_offset + MARGIN + inner_h * (1.0 - (v - lo) / span)
        pts.append(f"{x:.2f},{y:.2f}")
    return " ".join(pts)


def _panel(title: str, series: tuple[list[float], list[float]], y_offset: int) -> list[str]:
    n = len(series[0])
    lo = min(min(s) for s in series if s) if n else 0.0
    hi = max(max(s) for s in series if s) if n else 1.0
    lo, hi = min(lo, 0.0), max(hi, 1.0)
    parts = [
        f'<rect x="{MARGIN}" y="{y_offset + MARGIN}" width="{PANEL_WIDTH - 2 * MARGIN}" '
        f'height="{PANEL_HEIGHT - 2 * MARGIN}" fill="none" stroke="#999"/>',
        f'<text x="{MARGIN}" y="{y_offset + MARGIN - 8}" font-size="13" '
        f'font-family="sans-serif">{title}</text>',
    ]
    for values, color in zip(series, COLORS):
        points = _polyline(values, lo, hi, y_offset, n)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )
    return parts


def momentum_chart_svg(samples: Sequence[MomentumSample]) -> str:
    """Three stacked panels: long-term probability, smoothed efficiency, tmm.

    Two polyline series per panel, players distinguished by color.
    """
    panels = [
        ("long-term scoring probability", "p_ltm"),
        ("smoothed efficiency", "efficiency_smoothed"),
        ("momentum (tmm)", "tmm"),
    ]
    total_height = PANEL_HEIGHT * len(panels)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{PANEL_WIDTH}" '
        f'height="{total_height}" viewBox="0 0 {PANEL_WIDTH} {total_height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for i, (title, attr) in enumerate(panels):
        series = (
            [getattr(s.players[0], attr) for s in samples],
            [getattr(s.players[1], attr) for s in samples],
        )
        parts.extend(_panel(title, series, i * PANEL_HEIGHT))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
