"""Minimal deterministic SVG emitter for curve overlays and elbow plots.

Pure string building with fixed float formatting: identical inputs give
byte-identical files, which keeps rendered artifacts diffable.
"""

import numpy as np

WIDTH = 720
HEIGHT = 480
MARGIN = 48

GREY = "#b8b8b8"
COLORS = ["#1f3b99", "#c23b22", "#1e7d32", "#7b1fa2", "#c77700", "#00838f",
          "#5d4037", "#37474f", "#ad1457", "#558b2f"]


def _fmt(x):
    return f"{x:.2f}"


def _scale(lo, hi):
    if hi <= lo:
        hi = lo + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


class _Frame:
    def __init__(self, xlim, ylim):
        self.x0, self.x1 = _scale(*xlim)
        self.y0, self.y1 = _scale(*ylim)

    def x(self, v):
        return MARGIN + (v - self.x0) / (self.x1 - self.x0) * (WIDTH - 2 * MARGIN)

    def y(self, v):
        return HEIGHT - MARGIN - (v - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2 * MARGIN)


def _header(title):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{_escape(title)}</text>',
    ]


def _axes(frame, xlabel, ylabel):
    x0, y0 = frame.x(frame.x0), frame.y(frame.y0)
    x1, y1 = frame.x(frame.x1), frame.y(frame.y1)
    parts = [
        f'<rect x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(x1 - x0)}" '
        f'height="{_fmt(y0 - y1)}" fill="none" stroke="#444" stroke-width="1"/>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{_escape(xlabel)}</text>',
        f'<text x="14" y="{HEIGHT // 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 14 {HEIGHT // 2})">{_escape(ylabel)}</text>',
    ]
    return parts


def _escape(text):
    return (
        str(text)
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _path(frame, xs, ys, stroke, width, dash=None):
    pts = " ".join(
        ("M" if i == 0 else "L") + f"{_fmt(frame.x(x))} {_fmt(frame.y(y))}"
        for i, (x, y) in enumerate(zip(xs, ys))
    )
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (
        f'<path d="{pts}" fill="none" stroke="{stroke}" '
        f'stroke-width="{width}"{dash_attr}/>'
    )


def curves_svg(grid, data_curves, archetype_curves=(), archetypoid_curves=(),
               title="", xlabel="t", ylabel="value"):
    """Overlay plot: data curves grey, archetypes solid, archetypoids dashed.

    Each curve argument is a sequence of value arrays over ``grid``.
    """
    grid = np.asarray(grid, dtype=float)
    all_vals = [np.asarray(c, dtype=float) for group in
                (data_curves, archetype_curves, archetypoid_curves) for c in group]
    if not all_vals:
        raise ValueError("nothing to draw")
    lo = min(float(v.min()) for v in all_vals)
    hi = max(float(v.max()) for v in all_vals)
    frame = _Frame((float(grid.min()), float(grid.max())), (lo, hi))
    parts = _header(title)
    parts += _axes(frame, xlabel, ylabel)
    for vals in data_curves:
        parts.append(_path(frame, grid, vals, GREY, 1))
    for j, vals in enumerate(archetype_curves):
        parts.append(_path(frame, grid, vals, COLORS[j % len(COLORS)], 2))
    for j, vals in enumerate(archetypoid_curves):
        parts.append(_path(frame, grid, vals, COLORS[j % len(COLORS)], 2, dash="6 4"))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def elbow_svg(ks, rss_values, title="RSS by number of archetypes"):
    """Line plot of RSS against k, drawn as a single polyline."""
    ks = np.asarray(ks, dtype=float)
    rss_values = np.asarray(rss_values, dtype=float)
    finite = rss_values[np.isfinite(rss_values)]
    lo = float(finite.min()) if finite.size else 0.0
    hi = float(finite.max()) if finite.size else 1.0
    frame = _Frame((float(ks.min()), float(ks.max())), (min(lo, 0.0), hi))
    parts = _header(title)
    parts += _axes(frame, "k", "RSS")
    pts = " ".join(
        f"{_fmt(frame.x(k))},{_fmt(frame.y(r))}"
        for k, r in zip(ks, rss_values)
        if np.isfinite(r)
    )
    parts.append(
        f'<polyline points="{pts}" fill="none" stroke="{COLORS[0]}" stroke-width="2"/>'
    )
    for k, r in zip(ks, rss_values):
        if np.isfinite(r):
            parts.append(
                f'<circle cx="{_fmt(frame.x(k))}" cy="{_fmt(frame.y(r))}" r="3" '
                f'fill="{COLORS[0]}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
