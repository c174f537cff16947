"""SVG figures: the domain P, its tessellation, the flat slits, and the exponential-sum curve.

Output is plain SVG 1.1 text with fixed number formatting, so identical
inputs give byte-identical files.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .group import DEFAULT_WORD_CAP, Variant, iter_words
from .mobius import Circle, GeneralizedCircle, VerticalLine, circle_image
from .slit import Crossing, GeodesicTrace, SlitSurface, slit_span

PAIR_COLOURS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def curve_points(n_max: int) -> np.ndarray:
    """Partial sums s_k = sum_{n<=k} exp(2 pi i (ln n)^4), k = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return np.cumsum(curve_terms(n_max))


def curve_terms(n_max: int) -> np.ndarray:
    n = np.arange(1, n_max + 1, dtype=float)
    phase = np.log(n) ** 4
    # reduce mod 1 before scaling: (ln n)^4 reaches ~5700 at n = 6000
    phase -= np.floor(phase)
    return np.exp(2j * np.pi * phase)


def _num(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass(frozen=True)
class ViewBox:
    x0: float
    x1: float
    y0: float
    y1: float

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0


class SvgCanvas:
    """Collects elements in math coordinates (y up) and writes them y-flipped."""

    def __init__(self, view: ViewBox, width_px: int = 960):
        self.view = view
        self.scale = width_px / view.width
        self.width_px = width_px
        self.height_px = max(1, round(view.height * self.scale))
        self.body: list[str] = []

    def px(self, x: float, y: float) -> tuple[str, str]:
        return _num((x - self.view.x0) * self.scale), _num((self.view.y1 - y) * self.scale)

    def add(self, element: str) -> None:
        self.body.append(element)

    def line(self, a, b, stroke="#000", width=1.0, dash: str | None = None, cls: str = "") -> None:
        (x1, y1), (x2, y2) = self.px(*a), self.px(*b)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        cattr = f' class="{cls}"' if cls else ""
        self.add(
            f'<line{cattr} x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" '
            f'stroke-width="{_num(width)}"{extra}/>'
        )

    def half_circle(self, c: Circle, stroke="#000", width=1.0, fill="none", cls: str = "") -> None:
        (ax, ay), (bx, by) = self.px(c.center - c.radius, 0.0), self.px(c.center + c.radius, 0.0)
        r = _num(c.radius * self.scale)
        cattr = f' class="{cls}"' if cls else ""
        self.add(
            f'<path{cattr} d="M {ax} {ay} A {r} {r} 0 0 1 {bx} {by}" fill="{fill}" '
            f'stroke="{stroke}" stroke-width="{_num(width)}"/>'
        )

    def polyline(self, pts, stroke="#000", width=1.0) -> None:
        coords = " ".join(",".join(self.px(x, y)) for x, y in pts)
        self.add(f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{_num(width)}"/>')

    def text(self, x: float, y: float, s: str, size: float = 12, fill="#000") -> None:
        px, py = self.px(x, y)
        self.add(f'<text x="{px}" y="{py}" font-size="{_num(size)}" font-family="sans-serif" fill="{fill}">{s}</text>')

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.width_px}" '
            f'height="{self.height_px}" viewBox="0 0 {self.width_px} {self.height_px}">\n'
            f'<rect width="{self.width_px}" height="{self.height_px}" fill="#fff"/>\n'
        )
        return head + "\n".join(self.body) + "\n</svg>\n"

    def write(self, out: str | os.PathLike) -> Path:
        path = Path(out)
        try:
            path.write_text(self.render(), encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
        return path


# --- hyperbolic scenes ---------------------------------------------------


def hyperbolic_view(window: int) -> ViewBox:
    return ViewBox(-2.0, 16.0 * window + 14.0, 0.0, 4.0)


def domain_view(window: int) -> ViewBox:
    return ViewBox(-4.0 * window - 2.0, 4.0 * window + 2.0, 0.0, 4.0)


def render_domain_svg(window: int, out, view: ViewBox | None = None, width_px: int = 960) -> Path:
    """The circles C_{4n}, |n| <= window, with the domain P shaded."""
    if window < 0:
        raise ValueError("window must be non-negative")
    view = view or domain_view(window)
    canvas = SvgCanvas(view, width_px)
    # P: the view rectangle minus the disks, drawn as one path with even-odd holes
    corners = [canvas.px(view.x0, view.y0), canvas.px(view.x1, view.y0), canvas.px(view.x1, view.y1), canvas.px(view.x0, view.y1)]
    d = ["M " + " L ".join(f"{x} {y}" for x, y in corners) + " Z"]
    ns = range(-window, window + 1)
    for n in ns:
        (ax, ay), (bx, by) = canvas.px(4 * n - 1, 0.0), canvas.px(4 * n + 1, 0.0)
        r = _num(canvas.scale)
        d.append(f"M {ax} {ay} A {r} {r} 0 0 1 {bx} {by} Z")
    canvas.add(f'<path class="domain" d="{" ".join(d)}" fill="#cfe3f7" fill-rule="evenodd" stroke="none"/>')
    canvas.line((view.x0, 0.0), (view.x1, 0.0), stroke="#555", cls="axis")
    for n in ns:
        canvas.add(_circle_element(canvas, 4 * n))
    return canvas.write(out)


def _circle_element(canvas: SvgCanvas, center: float) -> str:
    cx, cy = canvas.px(center, 0.0)
    r = _num(canvas.scale)
    return f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#000" stroke-width="1.5"/>'


@dataclass(frozen=True)
class TessellationStats:
    base_circles: int
    words: int
    arcs_before_clip: int
    arcs_drawn: int


def tessellation_geodesics(
    window: int, depth: int, view: ViewBox, variant: Variant = Variant.CORRECTED, cap: int = DEFAULT_WORD_CAP
) -> tuple[list[int], list[GeneralizedCircle]]:
    """Images of the in-view circles C_{4n} under every word, in enumeration order."""
    base = [n for n in range(math.ceil((view.x0 - 1) / 4), math.floor((view.x1 + 1) / 4) + 1)]
    images: list[GeneralizedCircle] = []
    for _, t in iter_words(window, depth, variant, cap):
        for n in base:
            images.append(circle_image(t, Circle(4.0 * n, 1.0)))
    return base, images


def render_tessellation_svg(
    window: int,
    depth: int,
    out,
    view: ViewBox | None = None,
    clip: float = 1e-3,
    width_px: int = 960,
    cap: int = DEFAULT_WORD_CAP,
) -> TessellationStats:
    if window < 0 or depth < 0:
        raise ValueError("window and depth must be non-negative")
    view = view or hyperbolic_view(window)
    base, images = tessellation_geodesics(window, depth, view, cap=cap)
    canvas = SvgCanvas(view, width_px)
    canvas.line((view.x0, 0.0), (view.x1, 0.0), stroke="#555", cls="axis")
    drawn = 0
    for g in images:
        if isinstance(g, VerticalLine):
            if view.x0 <= g.x0 <= view.x1:
                canvas.line((g.x0, clip), (g.x0, view.y1), width=0.5, cls="geodesic")
                drawn += 1
        elif g.radius >= clip and g.center + g.radius >= view.x0 and g.center - g.radius <= view.x1:
            canvas.half_circle(g, width=0.5, cls="geodesic")
            drawn += 1
    canvas.write(out)
    return TessellationStats(len(base), len(images) // max(1, len(base)), len(images), drawn)


# --- flat scene ----------------------------------------------------------


def flat_view(k: int) -> ViewBox:
    return ViewBox(0.0, 8.0 * k + 4.0, -4.0, 4.0)


def render_flat_svg(
    s: SlitSurface, out, trace: GeodesicTrace | None = None, view: ViewBox | None = None, width_px: int = 960
) -> Path:
    """Slits coloured by pair with matching labels; an optional trace, with gluing jumps dashed."""
    if s.k < 1:
        raise ValueError("need at least one slit pair")
    view = view or flat_view(s.k)
    canvas = SvgCanvas(view, width_px)
    for i in range(1, s.i_max + 1):
        pair = (i + 1) // 2
        colour = PAIR_COLOURS[(pair - 1) % len(PAIR_COLOURS)]
        lo, hi = slit_span(i)
        canvas.line((lo, 0.0), (hi, 0.0), stroke=colour, width=3, cls="slit")
        canvas.text(lo + 0.25, 0.3, f"l{i}", fill=colour)
    if trace is not None:
        for a, b in trace.polyline:
            canvas.line(a, b, stroke="#333", width=1.5, cls="trace")
        for e in trace.events:
            if isinstance(e, Crossing):
                canvas.line(e.entry, e.exit, stroke="#333", width=1, dash="4 3", cls="jump")
    return canvas.write(out)


# --- curve ---------------------------------------------------------------


def render_curve_svg(n_max: int, out, width_px: int = 960) -> Path:
    pts = np.concatenate([[0j], curve_points(n_max)])
    pad = 1.0
    view = ViewBox(
        float(pts.real.min()) - pad, float(pts.real.max()) + pad, float(pts.imag.min()) - pad, float(pts.imag.max()) + pad
    )
    canvas = SvgCanvas(view, width_px)
    canvas.polyline([(p.real, p.imag) for p in pts], width=0.6)
    return canvas.write(out)
