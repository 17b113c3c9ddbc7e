"""Minimal deterministic SVG line plots from scan CSV files."""

from __future__ import annotations

import csv
import math
import os
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 170, 30, 55
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + k * step for k in range(n)]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def read_series(csv_path, x: str, y: str, series: list[str]) -> dict[str, list[tuple[float, float]]]:
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in (x, y, *series) if c not in header]
        if missing:
            raise KeyError(f"columns not in CSV: {', '.join(missing)}")
        out: dict[str, list[tuple[float, float]]] = {}
        for row in reader:
            try:
                xv, yv = float(row[x]), float(row[y])
            except ValueError:
                if row[y] == "" or row[x] == "":
                    continue
                raise ValueError(f"non-numeric value in {x!r}/{y!r}: {row[x]!r}, {row[y]!r}")
            if not (math.isfinite(xv) and math.isfinite(yv)):
                continue
            name = ", ".join(f"{c}={row[c]}" for c in series) if series else y
            out.setdefault(name, []).append((xv, yv))
    return out


def render_svg(data: dict[str, list[tuple[float, float]]], x_label: str, y_label: str, title: str = "") -> str:
    pts = [p for s in data.values() for p in s]
    if not pts:
        raise ValueError("nothing to plot")
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x0 == x1:
        x0, x1 = x0 - 1, x1 + 1
    if y0 == y1:
        y0, y1 = y0 - 1, y1 + 1
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(v):
        return MARGIN_L + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return MARGIN_T + ph - (v - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        px = _fmt(sx(t))
        out.append(f'<line x1="{px}" y1="{MARGIN_T + ph}" x2="{px}" y2="{MARGIN_T + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px}" y="{MARGIN_T + ph + 18}" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        py = _fmt(sy(t))
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{py}" x2="{MARGIN_L}" y2="{py}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_L - 8}" y="{py}" text-anchor="end" dominant-baseline="middle">{t:.4g}</text>')
    out.append(
        f'<text x="{MARGIN_L + pw / 2:.2f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(x_label)}</text>'
    )
    cy = MARGIN_T + ph / 2
    out.append(
        f'<text x="18" y="{cy:.2f}" text-anchor="middle" transform="rotate(-90 18 {cy:.2f})">{escape(y_label)}</text>'
    )
    if title:
        out.append(f'<text x="{MARGIN_L + pw / 2:.2f}" y="18" text-anchor="middle">{escape(title)}</text>')

    for i, (name, series) in enumerate(data.items()):
        color = PALETTE[i % len(PALETTE)]
        series = sorted(series)
        if len(series) > 1:
            coords = " ".join(f"{_fmt(sx(a))},{_fmt(sy(b))}" for a, b in series)
            out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for a, b in series:
            out.append(f'<circle cx="{_fmt(sx(a))}" cy="{_fmt(sy(b))}" r="3" fill="{color}"/>')
        ly = MARGIN_T + 12 + 18 * i
        lx = MARGIN_L + pw + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly}" dominant-baseline="middle">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(csv_path, x: str, y: str, out_path, series: list[str] | None = None, title: str = "") -> str:
    """Render ``y`` against ``x`` with one line per distinct ``series`` tuple.

    Returns the SVG text after writing it to ``out_path``.
    """
    data = read_series(csv_path, x, y, list(series or []))
    svg = render_svg(data, x, y, title)
    directory = os.path.dirname(os.fspath(out_path))
    if directory and not os.path.isdir(directory):
        raise OSError(f"output directory does not exist: {directory}")
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    return svg
