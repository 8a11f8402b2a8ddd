"""Self-contained SVG plotting: polyline charts, path overlays, box plots.

No plotting dependency; shapes are written with fixed decimal formatting,
so identical inputs produce byte-identical files.  Three chart kinds
cover the harness: plot_xy (optionally log-log, with optional dashed
per-series mean lines), plot_paths (equal-aspect overlay of polylines
and circles), and plot_boxes (quartile boxes per group).
"""

from __future__ import annotations

import math

import numpy as np

PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
           "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"]

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 70, 20, 40, 55  # margins: left/right/top/bottom


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Canvas:
    def __init__(self, width=_W, height=_H):
        self.width = width
        self.height = height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        ]

    def line(self, x1, y1, x2, y2, color="#000000", width=1.0, dashed=False):
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{color}" stroke-width="{width}"{dash}/>')

    def polyline(self, pts, color, width=1.5, dashed=False):
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"{dash}/>')

    def circle(self, cx, cy, r, color="#000000", fill="none", width=1.5):
        self.parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
            f'stroke="{color}" stroke-width="{width}" fill="{fill}"/>')

    def rect(self, x, y, w, h, color="#000000", fill="none", width=1.0):
        self.parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" '
            f'stroke="{color}" stroke-width="{width}" fill="{fill}"/>')

    def text(self, x, y, s, size=12, anchor="middle", color="#000000", rotate=None):
        rot = f' transform="rotate({rotate} {_fmt(x)} {_fmt(y)})"' if rotate is not None else ""
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor="{anchor}" fill="{color}"{rot}>{s}</text>')

    def write(self, fname):
        self.parts.append("</svg>")
        with open(fname, "w", newline="\n") as fh:
            fh.write("\n".join(self.parts) + "\n")


class _Axis:
    """Maps one data coordinate to pixels, linear or base-10 log."""

    def __init__(self, lo, hi, px_lo, px_hi, log=False):
        if log:
            if lo <= 0:
                raise ValueError("log axis needs positive data")
            lo, hi = math.log10(lo), math.log10(hi)
        if hi <= lo:
            hi = lo + 1.0
        pad = 0.05 * (hi - lo)
        self.lo, self.hi = lo - pad, hi + pad
        self.px_lo, self.px_hi = px_lo, px_hi
        self.log = log

    def to_px(self, v):
        t = math.log10(v) if self.log else v
        frac = (t - self.lo) / (self.hi - self.lo)
        return self.px_lo + frac * (self.px_hi - self.px_lo)

    def ticks(self):
        if self.log:
            lo_d, hi_d = math.ceil(self.lo), math.floor(self.hi)
            return [(10.0 ** d, f"1e{d}") for d in range(lo_d, hi_d + 1)]
        span = self.hi - self.lo
        step = 10.0 ** math.floor(math.log10(span / 4))
        for mult in (1, 2, 5, 10):
            if span / (step * mult) <= 6:
                step *= mult
                break
        first = math.ceil(self.lo / step) * step
        out = []
        v = first
        while v <= self.hi + 1e-9 * span:
            out.append((v, f"{v:.6g}"))
            v += step
        return out


def _frame(canvas, xaxis, yaxis, x_label, y_label, title):
    canvas.rect(_ML, _MT, canvas.width - _ML - _MR, canvas.height - _MT - _MB)
    for v, lab in xaxis.ticks():
        px = xaxis.to_px(v)
        canvas.line(px, canvas.height - _MB, px, canvas.height - _MB + 5)
        canvas.text(px, canvas.height - _MB + 18, lab, size=11)
    for v, lab in yaxis.ticks():
        py = yaxis.to_px(v)
        canvas.line(_ML - 5, py, _ML, py)
        canvas.text(_ML - 8, py + 4, lab, size=11, anchor="end")
    canvas.text(canvas.width / 2, canvas.height - 12, x_label, size=13)
    canvas.text(16, canvas.height / 2, y_label, size=13, rotate=-90)
    if title:
        canvas.text(canvas.width / 2, 22, title, size=14)


def _legend(canvas, labels_colors, dashed_flags=None):
    x0 = canvas.width - _MR - 150
    y = _MT + 16
    for i, (label, color) in enumerate(labels_colors):
        dashed = bool(dashed_flags[i]) if dashed_flags else False
        canvas.line(x0, y - 4, x0 + 24, y - 4, color=color, width=2, dashed=dashed)
        canvas.text(x0 + 30, y, label, size=11, anchor="start")
        y += 16


def plot_xy(fname, series, x_label="", y_label="", title="",
            xlog=False, ylog=False, mean_lines=False):
    """Line chart of (x, y) series; series is a list of dicts with keys
    label, x, y and optional color/dashed.  mean_lines adds a dashed line
    through the per-x mean of each series (collapsing repeated x).
    """
    if not series:
        raise ValueError("no series to plot")
    xs = np.concatenate([np.asarray(s["x"], float) for s in series])
    ys = np.concatenate([np.asarray(s["y"], float) for s in series])
    if xs.size == 0:
        raise ValueError("empty series")
    canvas = _Canvas()
    xaxis = _Axis(xs.min(), xs.max(), _ML, canvas.width - _MR, log=xlog)
    yaxis = _Axis(ys.min(), ys.max(), canvas.height - _MB, _MT, log=ylog)
    _frame(canvas, xaxis, yaxis, x_label, y_label, title)
    labels = []
    for i, s in enumerate(series):
        color = s.get("color", PALETTE[i % len(PALETTE)])
        x = np.asarray(s["x"], float)
        y = np.asarray(s["y"], float)
        pts = [(xaxis.to_px(a), yaxis.to_px(b)) for a, b in zip(x, y)]
        if s.get("scatter"):
            for px, py in pts:
                canvas.circle(px, py, 2.5, color=color, fill=color, width=0.5)
        else:
            canvas.polyline(pts, color, dashed=s.get("dashed", False))
        if mean_lines:
            ux = np.unique(x)
            my = np.array([y[x == v].mean() for v in ux])
            mpts = [(xaxis.to_px(a), yaxis.to_px(b)) for a, b in zip(ux, my)]
            canvas.polyline(mpts, color, width=1.2, dashed=True)
        labels.append((s["label"], color))
    _legend(canvas, labels)
    canvas.write(fname)


def plot_paths(fname, polylines, circles=(), points=(), title=""):
    """Equal-aspect overlay of paths (dicts: label, points), circles
    (dicts: center, radius, optional color/fill) and marker points
    (dicts: xy, label).
    """
    if not polylines and not circles and not points:
        raise ValueError("nothing to plot")
    all_pts = [np.asarray(p["points"], float) for p in polylines]
    for c in circles:
        cx, cy = c["center"]
        r = c["radius"]
        all_pts.append(np.array([[cx - r, cy - r], [cx + r, cy + r]]))
    for p in points:
        all_pts.append(np.asarray(p["xy"], float).reshape(1, 2))
    stack = np.vstack(all_pts)
    lo = stack.min(axis=0)
    hi = stack.max(axis=0)
    span = max(float((hi - lo).max()), 1e-9)
    mid = 0.5 * (lo + hi)
    canvas = _Canvas(560, 560)
    px_span = min(canvas.width - _ML - _MR, canvas.height - _MT - _MB)

    def to_px(xy):
        fx = (xy[0] - mid[0]) / (1.1 * span) + 0.5
        fy = (xy[1] - mid[1]) / (1.1 * span) + 0.5
        return (_ML + fx * px_span, canvas.height - _MB - fy * px_span)

    if title:
        canvas.text(canvas.width / 2, 22, title, size=14)
    for c in circles:
        px, py = to_px(np.asarray(c["center"], float))
        pr = c["radius"] / (1.1 * span) * px_span
        canvas.circle(px, py, pr, color=c.get("color", "#444444"),
                      fill=c.get("fill", "none"))
    labels = []
    for i, p in enumerate(polylines):
        color = p.get("color", PALETTE[i % len(PALETTE)])
        pts = [to_px(xy) for xy in np.asarray(p["points"], float)]
        if len(pts) == 1:
            canvas.circle(pts[0][0], pts[0][1], 3, color=color, fill=color)
        else:
            canvas.polyline(pts, color)
        labels.append((p["label"], color))
    for p in points:
        px, py = to_px(np.asarray(p["xy"], float))
        canvas.circle(px, py, 4, color="#000000", fill="#000000")
        canvas.text(px + 8, py + 4, p.get("label", ""), size=11, anchor="start")
    _legend(canvas, labels)
    canvas.write(fname)


def plot_boxes(fname, groups, x_label="", y_label="", title="", ylog=False):
    """Quartile box plot; groups is a list of dicts with label, values."""
    if not groups:
        raise ValueError("no groups to plot")
    vals = np.concatenate([np.asarray(g["values"], float) for g in groups])
    if vals.size == 0:
        raise ValueError("empty groups")
    canvas = _Canvas()
    yaxis = _Axis(vals.min(), vals.max(), canvas.height - _MB, _MT, log=ylog)
    xaxis = _Axis(0.0, float(len(groups)), _ML, canvas.width - _MR)
    canvas.rect(_ML, _MT, canvas.width - _ML - _MR, canvas.height - _MT - _MB)
    for v, lab in yaxis.ticks():
        py = yaxis.to_px(v)
        canvas.line(_ML - 5, py, _ML, py)
        canvas.text(_ML - 8, py + 4, lab, size=11, anchor="end")
    canvas.text(canvas.width / 2, canvas.height - 12, x_label, size=13)
    canvas.text(16, canvas.height / 2, y_label, size=13, rotate=-90)
    if title:
        canvas.text(canvas.width / 2, 22, title, size=14)
    for i, g in enumerate(groups):
        v = np.asarray(g["values"], float)
        q1, q2, q3 = (float(np.percentile(v, q)) for q in (25, 50, 75))
        lo, hi = float(v.min()), float(v.max())
        cx = xaxis.to_px(i + 0.5)
        half = 0.3 * (xaxis.to_px(1) - xaxis.to_px(0))
        color = g.get("color", PALETTE[i % len(PALETTE)])
        canvas.line(cx, yaxis.to_px(lo), cx, yaxis.to_px(hi), color=color)
        canvas.rect(cx - half, yaxis.to_px(q3), 2 * half,
                    yaxis.to_px(q1) - yaxis.to_px(q3), color=color)
        canvas.line(cx - half, yaxis.to_px(q2), cx + half, yaxis.to_px(q2),
                    color=color, width=2)
        canvas.text(cx, canvas.height - _MB + 34, g["label"], size=11)
    canvas.write(fname)
