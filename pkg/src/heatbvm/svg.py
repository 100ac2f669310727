"""Minimal deterministic SVG plots: histogram with density overlay, trace plot."""
from __future__ import annotations

from typing import Callable, Optional

import numpy as np

W, H = 640, 400
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 30, 50


class _Frame:
    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo, self.xhi, self.ylo, self.yhi = xlo, xhi, ylo, yhi

    def px(self, x):
        return LEFT + (np.asarray(x) - self.xlo) / (self.xhi - self.xlo) * (W - LEFT - RIGHT)

    def py(self, y):
        return H - BOTTOM - (np.asarray(y) - self.ylo) / (self.yhi - self.ylo) * (H - TOP - BOTTOM)


def _f(v) -> str:
    return f"{float(v):.2f}"


def _axes(fr: _Frame, title: str, xlabel: str, ylabel: str) -> list[str]:
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<text x="{W / 2}" y="18" text-anchor="middle" font-family="sans-serif" font-size="14">{title}</text>',
        f'<line x1="{LEFT}" y1="{H - BOTTOM}" x2="{W - RIGHT}" y2="{H - BOTTOM}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{H - BOTTOM}" stroke="black"/>',
    ]
    for x in np.linspace(fr.xlo, fr.xhi, 5):
        out.append(
            f'<text x="{_f(fr.px(x))}" y="{H - BOTTOM + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{x:.4g}</text>'
        )
    for y in np.linspace(fr.ylo, fr.yhi, 5):
        out.append(
            f'<text x="{LEFT - 4}" y="{_f(fr.py(y) + 3)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{y:.4g}</text>'
        )
    out.append(f'<text x="{W / 2}" y="{H - 10}" text-anchor="middle" font-family="sans-serif" font-size="12">{xlabel}</text>')
    out.append(
        f'<text x="14" y="{H / 2}" text-anchor="middle" font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 14 {H / 2})">{ylabel}</text>'
    )
    return out


def _vline(fr: _Frame, x, color) -> str:
    return f'<line x1="{_f(fr.px(x))}" y1="{TOP}" x2="{_f(fr.px(x))}" y2="{H - BOTTOM}" stroke="{color}" stroke-width="1.5"/>'


def histogram_svg(
    samples,
    density: Optional[Callable] = None,
    truth: Optional[float] = None,
    bins: int = 50,
    title: str = "",
    xlabel: str = "theta",
) -> str:
    """Density-normalised histogram, optional analytic density curve (512 points) and red truth line."""
    x = np.asarray(samples, dtype=float)
    lo, hi = float(x.min()), float(x.max())
    if truth is not None:
        lo, hi = min(lo, truth), max(hi, truth)
    if hi <= lo:
        lo, hi = lo - 0.5 * max(abs(lo), 1e-12), hi + 0.5 * max(abs(hi), 1e-12)
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    heights, edges = np.histogram(x, bins=bins, range=(lo, hi), density=True)
    grid = np.linspace(lo, hi, 512)
    curve = density(grid) if density is not None else None
    ymax = max(heights.max(), curve.max() if curve is not None else 0.0) * 1.05
    fr = _Frame(lo, hi, 0.0, ymax)
    out = _axes(fr, title, xlabel, "density")
    base = fr.py(0.0)
    for h, a, b in zip(heights, edges[:-1], edges[1:]):
        top = fr.py(h)
        out.append(
            f'<rect x="{_f(fr.px(a))}" y="{_f(top)}" width="{_f(fr.px(b) - fr.px(a))}" '
            f'height="{_f(base - top)}" fill="#9ecae1" stroke="#3182bd" stroke-width="0.5"/>'
        )
    if curve is not None:
        pts = " ".join(f"{_f(px)},{_f(py)}" for px, py in zip(fr.px(grid), fr.py(curve)))
        out.append(f'<polyline points="{pts}" fill="none" stroke="blue" stroke-width="2"/>')
    if truth is not None:
        out.append(_vline(fr, truth, "red"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def trace_svg(samples, burn_in: int = 0, title: str = "", max_points: int = 4000) -> str:
    """Trace plot with a blue line at the end of burn-in; long chains are thinned evenly for drawing."""
    y = np.asarray(samples, dtype=float)
    t = np.arange(1, y.size + 1)
    stride = max(1, -(-y.size // max_points))
    t, y_draw = t[::stride], y[::stride]
    lo, hi = float(y.min()), float(y.max())
    if hi <= lo:
        lo, hi = lo - 0.5 * max(abs(lo), 1e-12), hi + 0.5 * max(abs(hi), 1e-12)
    pad = 0.05 * (hi - lo)
    fr = _Frame(1, max(y.size, 2), lo - pad, hi + pad)
    out = _axes(fr, title, "iteration", "theta")
    pts = " ".join(f"{_f(px)},{_f(py)}" for px, py in zip(fr.px(t), fr.py(y_draw)))
    out.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="0.6"/>')
    if burn_in > 0:
        out.append(_vline(fr, burn_in, "blue"))
    out.append("</svg>")
    return "\n".join(out) + "\n"
