"""A minimal self-contained SVG line plot (no plotting library needed)."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

W, H, PAD = 640, 400, 56


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def line_plot(xs, series: dict, title: str = "", xlabel: str = "", ylabel: str = "", logy: bool = True) -> str:
    """``series`` maps a label to y values aligned with ``xs``; nonpositive values are dropped on a log axis."""
    pts = {}
    for name, ys in series.items():
        row = []
        for x, y in zip(xs, ys):
            if y is None or not math.isfinite(y) or (logy and y <= 0):
                continue
            row.append((float(x), math.log10(y) if logy else float(y)))
        pts[name] = row
    allp = [p for row in pts.values() for p in row]
    if not allp:
        allp = [(0.0, 0.0), (1.0, 1.0)]
    x0, x1 = min(p[0] for p in allp), max(p[0] for p in allp)
    y0, y1 = min(p[1] for p in allp), max(p[1] for p in allp)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def sx(x):
        return PAD + (x - x0) / (x1 - x0) * (W - 2 * PAD)

    def sy(y):
        return H - PAD - (y - y0) / (y1 - y0) * (H - 2 * PAD)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<line x1="{PAD}" y1="{H - PAD}" x2="{W - PAD}" y2="{H - PAD}" stroke="black"/>',
           f'<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{H - PAD}" stroke="black"/>']
    for t in _ticks(x0, x1):
        out.append(f'<text x="{sx(t):.1f}" y="{H - PAD + 16}" font-size="11" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y0, y1):
        lab = f"1e{t:.1f}" if logy else f"{t:.3g}"
        out.append(f'<text x="{PAD - 6}" y="{sy(t) + 4:.1f}" font-size="11" text-anchor="end">{lab}</text>')
    for k, (name, row) in enumerate(pts.items()):
        col = colors[k % len(colors)]
        if len(row) > 1:
            path = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for x, y in row)
            out.append(f'<polyline fill="none" stroke="{col}" stroke-width="1.5" points="{path}"/>')
        for x, y in row:
            out.append(f'<circle cx="{sx(x):.1f}" cy="{sy(y):.1f}" r="3" fill="{col}"/>')
        out.append(f'<text x="{W - PAD}" y="{PAD + 14 * k}" font-size="11" fill="{col}" '
                   f'text-anchor="end">{escape(name)}</text>')
    out.append(f'<text x="{W / 2}" y="{PAD / 2}" font-size="14" text-anchor="middle">{escape(title)}</text>')
    out.append(f'<text x="{W / 2}" y="{H - 12}" font-size="12" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="14" y="{H / 2}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 14 {H / 2})">{escape(ylabel)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_plot(path: str, *args, **kwargs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(line_plot(*args, **kwargs))
