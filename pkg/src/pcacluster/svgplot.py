"""Self-contained SVG 1.1 figure builders.

All builders are pure string producers: same inputs, same bytes. Text
labels are emitted as plain <text> nodes so tests can assert on them
without rasterizing. Colors come from a fixed palette indexed by
cluster id.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .hclust import Dendrogram

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
)

_FONT = 'font-family="Helvetica, Arial, sans-serif"'


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def cluster_color(cluster_id: int) -> str:
    return PALETTE[(cluster_id - 1) % len(PALETTE)]


def _document(width: int, height: int, body: list[str]) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _text(x: float, y: float, content: str, size: float = 11, anchor: str = "middle",
          extra: str = "") -> str:
    return (
        f'<text x="{x:.2f}" y="{y:.2f}" text-anchor="{anchor}" '
        f'font-size="{size:g}" {_FONT}{extra}>{_esc(content)}</text>'
    )


def _line(x1: float, y1: float, x2: float, y2: float, stroke: str = "#000000",
          width: float = 1.0, dash: str = "") -> str:
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (
        f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
        f'stroke="{stroke}" stroke-width="{width:g}"{dash_attr}/>'
    )


def _scale(lo: float, hi: float, px_lo: float, px_hi: float) -> Callable[[float], float]:
    span = hi - lo
    if span == 0.0:
        span = 1.0
    ratio = (px_hi - px_lo) / span
    return lambda v: px_lo + (v - lo) * ratio


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw_step = (hi - lo) / target
    magnitude = 10.0 ** math.floor(math.log10(raw_step))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = magnitude * mult
        if (hi - lo) / step <= target:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + step * 1e-9:
        ticks.append(0.0 if abs(value) < step * 1e-9 else value)
        value += step
    return ticks


def _tick_label(value: float) -> str:
    return f"{value:g}"


def scree_svg(eigenvalues: Sequence[float]) -> str:
    """Eigenvalue against component number, with the retain-above-1 level."""
    vals = [float(v) for v in eigenvalues]
    p = len(vals)
    width, height = 640, 420
    left, right, top, bottom = 70, 610, 50, 360
    x_of = _scale(1, max(p, 2), left, right)
    y_hi = max(max(vals), 1.0) * 1.08
    y_of = _scale(0.0, y_hi, bottom, top)
    body = [_text(width / 2, 28, "Scree plot", 16)]
    for tick in _nice_ticks(0.0, y_hi):
        body.append(_line(left, y_of(tick), right, y_of(tick), "#dddddd"))
        body.append(_text(left - 8, y_of(tick) + 4, _tick_label(tick), 10, "end"))
    body.append(_line(left, bottom, right, bottom))
    body.append(_line(left, top, left, bottom))
    one = y_of(1.0)
    body.append(_line(left, one, right, one, "#888888", 1.0, "5,4"))
    body.append(_text(right, one - 5, "eigenvalue = 1", 10, "end", ' fill="#555555"'))
    points = " ".join(f"{x_of(i + 1):.2f},{y_of(v):.2f}" for i, v in enumerate(vals))
    body.append(f'<polyline fill="none" stroke="{PALETTE[0]}" stroke-width="2" points="{points}"/>')
    for i, v in enumerate(vals):
        body.append(f'<circle cx="{x_of(i + 1):.2f}" cy="{y_of(v):.2f}" r="3.5" fill="{PALETTE[0]}"/>')
        body.append(_text(x_of(i + 1), bottom + 16, str(i + 1), 9))
    body.append(_text((left + right) / 2, bottom + 34, "component", 11))
    body.append(_text(18, (top + bottom) / 2, "eigenvalue", 11,
                      extra=f' transform="rotate(-90 18 {(top + bottom) / 2:.2f})"'))
    return _document(width, height, body)


def parallel_coordinates_svg(
    z_values: np.ndarray,
    indicator_labels: Sequence[str],
    assignment: Sequence[int],
    row_order: Sequence[int],
) -> str:
    """One polyline per region over the standardized indicator axes."""
    n, p = z_values.shape
    width, height = 900, 480
    left, right, top, bottom = 60, 860, 50, 360
    x_of = _scale(0, max(p - 1, 1), left, right)
    lo = float(z_values.min())
    hi = float(z_values.max())
    pad = 0.05 * (hi - lo if hi > lo else 1.0)
    y_of = _scale(lo - pad, hi + pad, bottom, top)
    body = [_text(width / 2, 28, "Parallel coordinates", 16)]
    for tick in _nice_ticks(lo, hi, 6):
        body.append(_line(left, y_of(tick), right, y_of(tick), "#eeeeee"))
        body.append(_text(left - 8, y_of(tick) + 4, _tick_label(tick), 10, "end"))
    for j, label in enumerate(indicator_labels):
        body.append(_line(x_of(j), top, x_of(j), bottom, "#cccccc"))
        body.append(_text(
            x_of(j), bottom + 12, label, 8, "end",
            extra=f' transform="rotate(-55 {x_of(j):.2f} {bottom + 12:.2f})"',
        ))
    for i in row_order:
        color = cluster_color(assignment[i])
        points = " ".join(f"{x_of(j):.2f},{y_of(z_values[i, j]):.2f}" for j in range(p))
        body.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1" '
            f'stroke-opacity="0.55" points="{points}"/>'
        )
    for cluster_id in sorted(set(assignment)):
        y = top + 14 * cluster_id
        body.append(_line(width - 120, y, width - 96, y, cluster_color(cluster_id), 3))
        body.append(_text(width - 90, y + 4, f"cluster {cluster_id}", 10, "start"))
    body.append(_text(18, (top + bottom) / 2, "z-score", 11,
                      extra=f' transform="rotate(-90 18 {(top + bottom) / 2:.2f})"'))
    return _document(width, height, body)


def _diverging_color(t: float) -> str:
    """t in [-1, 1]: blue through white to red."""
    t = max(-1.0, min(1.0, t))
    if t < 0:
        frac = 1.0 + t
        rgb = tuple(round(c0 + (255 - c0) * frac) for c0 in (33, 102, 172))
    else:
        frac = 1.0 - t
        rgb = tuple(round(c0 + (255 - c0) * frac) for c0 in (178, 24, 43))
    return f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"


HEATMAP_CLIP = 3.0


def heatmap_svg(
    z_values: np.ndarray,
    region_labels: Sequence[str],
    indicator_labels: Sequence[str],
    row_order: Sequence[int],
) -> str:
    """Grid of z-scores, symmetric color scale clipped at +-3 sd,
    rows in dendrogram leaf order."""
    n, p = z_values.shape
    cell_w, cell_h = 26, max(6, min(16, 560 // max(n, 1)))
    left, top = 150, 120
    width = left + p * cell_w + 40
    height = top + n * cell_h + 30
    label_size = max(4, min(9, cell_h - 1))
    body = [_text(width / 2, 28, "Heatmap of standardized indicators", 16)]
    for j, label in enumerate(indicator_labels):
        x = left + (j + 0.5) * cell_w
        body.append(_text(x, top - 6, label, 8, "start",
                          extra=f' transform="rotate(-60 {x:.2f} {top - 6:.2f})"'))
    for row, i in enumerate(row_order):
        y = top + row * cell_h
        body.append(_text(left - 5, y + cell_h * 0.75, region_labels[i], label_size, "end"))
        for j in range(p):
            color = _diverging_color(float(z_values[i, j]) / HEATMAP_CLIP)
            body.append(
                f'<rect x="{left + j * cell_w:.2f}" y="{y:.2f}" width="{cell_w}" '
                f'height="{cell_h}" fill="{color}"/>'
            )
    return _document(width, height, body)


def loadings_svg(entries: np.ndarray, labels: Sequence[str], axis_names: Sequence[str]) -> str:
    """Scatter of per-variable loadings on the first two components,
    with the unit correlation circle."""
    width, height = 640, 640
    left, right, top, bottom = 70, 590, 60, 580
    limit = max(1.0, float(np.abs(entries).max())) * 1.1
    x_of = _scale(-limit, limit, left, right)
    y_of = _scale(-limit, limit, bottom, top)
    cx, cy = x_of(0.0), y_of(0.0)
    radius = abs(x_of(1.0) - cx)
    body = [_text(width / 2, 28, "Loadings plot", 16)]
    body.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{radius:.2f}" '
                f'fill="none" stroke="#bbbbbb" stroke-dasharray="4,3"/>')
    body.append(_line(left, cy, right, cy, "#999999"))
    body.append(_line(cx, top, cx, bottom, "#999999"))
    for x, y, label in zip(entries[:, 0], entries[:, 1], labels):
        px, py = x_of(float(x)), y_of(float(y))
        body.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="{PALETTE[1]}"/>')
        body.append(_text(px + 5, py - 4, label, 8, "start"))
    body.append(_text((left + right) / 2, height - 14, axis_names[0], 11))
    body.append(_text(20, (top + bottom) / 2, axis_names[1], 11,
                      extra=f' transform="rotate(-90 20 {(top + bottom) / 2:.2f})"'))
    return _document(width, height, body)


def biplot_svg(
    score_xy: np.ndarray,
    score_clusters: Sequence[int],
    arrow_xy: np.ndarray,
    arrow_labels: Sequence[str],
    axis_names: Sequence[str],
) -> str:
    """Score points with pre-scaled loading arrows sharing the frame."""
    width, height = 720, 720
    left, right, top, bottom = 70, 670, 60, 660
    extent = max(float(np.abs(score_xy).max()), float(np.abs(arrow_xy).max()), 1e-9) * 1.1
    x_of = _scale(-extent, extent, left, right)
    y_of = _scale(-extent, extent, bottom, top)
    cx, cy = x_of(0.0), y_of(0.0)
    body = [_text(width / 2, 28, "Biplot", 16)]
    body.append(_line(left, cy, right, cy, "#999999"))
    body.append(_line(cx, top, cx, bottom, "#999999"))
    for (x, y), cluster_id in zip(score_xy, score_clusters):
        body.append(
            f'<circle cx="{x_of(float(x)):.2f}" cy="{y_of(float(y)):.2f}" r="3" '
            f'fill="{cluster_color(cluster_id)}" fill-opacity="0.75"/>'
        )
    for (x, y), label in zip(arrow_xy, arrow_labels):
        tip_x, tip_y = x_of(float(x)), y_of(float(y))
        body.append(_line(cx, cy, tip_x, tip_y, "#333333", 1.2))
        angle = math.atan2(tip_y - cy, tip_x - cx)
        for side in (angle + 2.6, angle - 2.6):
            body.append(_line(tip_x, tip_y, tip_x + 7 * math.cos(side),
                              tip_y + 7 * math.sin(side), "#333333", 1.2))
        body.append(_text(tip_x + 6, tip_y - 5, label, 8, "start"))
    body.append(_text((left + right) / 2, height - 14, axis_names[0], 11))
    body.append(_text(20, (top + bottom) / 2, axis_names[1], 11,
                      extra=f' transform="rotate(-90 20 {(top + bottom) / 2:.2f})"'))
    return _document(width, height, body)


def _dendrogram_panel(dend: Dendrogram, title: str, x0: float, panel_w: float,
                      top: float, bottom: float) -> list[str]:
    n = dend.n_leaves
    order = dend.leaf_order()
    slot = {leaf: pos for pos, leaf in enumerate(order)}
    gap = panel_w / max(n, 1)
    leaf_x = lambda leaf: x0 + (slot[leaf] + 0.5) * gap
    max_h = max((m.height for m in dend.merges), default=1.0) or 1.0
    y_of = _scale(0.0, max_h * 1.05, bottom, top)
    body = [_text(x0 + panel_w / 2, top - 12, title, 12)]
    coords: dict[int, tuple[float, float]] = {}
    for leaf in range(n):
        coords[-(leaf + 1)] = (leaf_x(leaf), bottom)
    for step, merge in enumerate(dend.merges, start=1):
        lx, ly = coords[merge.left]
        rx, ry = coords[merge.right]
        h = y_of(merge.height)
        body.append(_line(lx, ly, lx, h, "#333333"))
        body.append(_line(rx, ry, rx, h, "#333333"))
        body.append(_line(lx, h, rx, h, "#333333"))
        coords[step] = ((lx + rx) / 2.0, h)
    if n <= 40:
        for leaf in range(n):
            x = leaf_x(leaf)
            body.append(_text(x, bottom + 10, dend.labels[leaf], 7, "end",
                              extra=f' transform="rotate(-60 {x:.2f} {bottom + 10:.2f})"'))
    return body


def dendrograms_svg(panels: Sequence[tuple[str, Dendrogram]]) -> str:
    """Side-by-side dendrogram panels sharing one canvas."""
    count = max(len(panels), 1)
    panel_w = 520.0
    width = int(40 + count * (panel_w + 40))
    height = 520
    top, bottom = 70, 430
    body = [_text(width / 2, 28, "Hierarchical clustering", 16)]
    for idx, (title, dend) in enumerate(panels):
        x0 = 40 + idx * (panel_w + 40)
        body.extend(_dendrogram_panel(dend, title, x0, panel_w, top, bottom))
    return _document(width, height, body)
