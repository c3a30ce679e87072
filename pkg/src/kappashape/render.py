"""Deterministic SVG plots of sampled curves.

Curves are drawn as polylines, either overlaid in one panel or one panel per
curve on a shared scale.  1-D curves are plotted as value against ``t``, 2-D
curves in the plane, 3-D curves projected on two axes, optionally colored by
the remaining coordinate on a dark-blue to yellow ramp.  Coordinates are
printed with a fixed number of decimals, so equal inputs give equal bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from ._validation import DomainError

__all__ = ["Series", "render_svg", "color_ramp", "PROJECTIONS", "PALETTE"]

PALETTE = ("#000000", "#1f4fd8", "#d62728", "#2ca02c", "#9467bd", "#8c564b")
PROJECTIONS = {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2)}
_RAMP = ((0.0, (0, 0, 139)), (0.5, (0, 160, 160)), (1.0, (255, 230, 0)))
_RAMP_LEVELS = 32

PANEL = 300.0
MARGIN = 30.0
TITLE = 20.0


@dataclass
class Series:
    """One curve to draw: times, points of shape (n, D), and a label."""

    t: np.ndarray
    points: np.ndarray
    label: str = ""


def color_ramp(u: float) -> str:
    u = min(max(float(u), 0.0), 1.0)
    for (u0, c0), (u1, c1) in zip(_RAMP, _RAMP[1:]):
        if u <= u1:
            f = (u - u0) / (u1 - u0)
            rgb = [round(a + f * (b - a)) for a, b in zip(c0, c1)]
            return "#{:02x}{:02x}{:02x}".format(*rgb)
    return "#{:02x}{:02x}{:02x}".format(*_RAMP[-1][1])


def _f(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _planar(s: Series, proj):
    pts = np.asarray(s.points, float)
    if pts.shape[1] == 1:
        return np.column_stack([np.asarray(s.t, float), pts[:, 0]]), None
    if pts.shape[1] == 2:
        return pts, None
    i, j = proj
    k = ({0, 1, 2} - {i, j}).pop()
    return pts[:, [i, j]], pts[:, k]


class _Frame:
    """Data-to-pixel map for one panel; equal axis scales unless stretched."""

    def __init__(self, xy_all, x0, y0, stretch=False):
        self.lo = xy_all.min(axis=0)
        span = xy_all.max(axis=0) - self.lo
        span = np.where(span > 0, span, 1.0)
        box = PANEL - 2 * MARGIN
        if stretch:
            self.s = box / span
        else:
            self.s = np.full(2, box / span.max())
        used = span * self.s
        self.ox = x0 + MARGIN + (box - used[0]) / 2
        self.oy = y0 + TITLE + MARGIN + (box - used[1]) / 2
        self.h = used[1]

    def map(self, xy):
        px = self.ox + (xy[:, 0] - self.lo[0]) * self.s[0]
        # svg y grows downwards
        py = self.oy + self.h - (xy[:, 1] - self.lo[1]) * self.s[1]
        return np.column_stack([px, py])


def _path(pix) -> str:
    return " ".join(f"{_f(x)},{_f(y)}" for x, y in pix)


def _polyline(pix, color, width=1.2) -> str:
    return (f'<polyline fill="none" stroke="{color}" stroke-width="{width}" '
            f'stroke-linejoin="round" points="{_path(pix)}"/>')


def _colored(pix, z, zlo, zhi) -> list[str]:
    """Split a polyline into runs of equal quantized color."""
    span = zhi - zlo if zhi > zlo else 1.0
    zs = 0.5 * (z[:-1] + z[1:])
    levels = np.minimum((np.clip((zs - zlo) / span, 0, 1) * _RAMP_LEVELS).astype(int), _RAMP_LEVELS - 1)
    out = []
    start = 0
    for i in range(1, len(levels) + 1):
        if i == len(levels) or levels[i] != levels[start]:
            color = color_ramp((levels[start] + 0.5) / _RAMP_LEVELS)
            out.append(_polyline(pix[start:i + 1], color, 1.6))
            start = i
    return out


def render_svg(series, layout="overlay", projection="xy", color_by_z=False,
               landmarks=None, hull=None, title=None, columns=None) -> str:
    """SVG document for ``series`` (a list of :class:`Series`).

    ``layout`` is ``"overlay"`` (one panel, curves in :data:`PALETTE` colors)
    or ``"panels"`` (one panel per series on a shared scale).  ``landmarks``
    (n, D) are drawn as dots; ``hull`` (k, 2) as a shaded polygon.
    """
    series = list(series)
    if not series:
        raise DomainError("nothing to render")
    if layout not in ("overlay", "panels"):
        raise DomainError(f"layout must be 'overlay' or 'panels', got {layout!r}")
    dims = {np.asarray(s.points).shape[1] for s in series}
    if len(dims) != 1:
        raise DomainError(f"curves have mixed dimensions {sorted(dims)}; render them separately")
    dim = dims.pop()
    if dim > 3:
        raise DomainError("only 1-, 2- and 3-D curves can be rendered")
    if projection not in PROJECTIONS:
        raise DomainError(f"projection must be one of {sorted(PROJECTIONS)}")
    proj = PROJECTIONS[projection]
    if dim < 3:
        color_by_z = False

    planar = [_planar(s, proj) for s in series]
    extra = []
    if landmarks is not None and dim > 1:
        extra.append(_planar(Series(np.zeros(len(landmarks)), np.asarray(landmarks, float)), proj)[0])
    if hull is not None and len(hull):
        extra.append(np.asarray(hull, float))
    every = np.vstack([p for p, _ in planar] + extra)
    zs = [z for _, z in planar if z is not None]
    zlo = min(z.min() for z in zs) if zs else 0.0
    zhi = max(z.max() for z in zs) if zs else 1.0

    n_panels = len(series) if layout == "panels" else 1
    cols = columns or min(n_panels, 4)
    rows = -(-n_panels // cols)
    width, height = cols * PANEL, rows * (PANEL + TITLE) + (TITLE if title else 0)
    top = TITLE if title else 0.0

    body = []
    if title:
        body.append(f'<text x="{_f(width / 2)}" y="15" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for p in range(n_panels):
        x0 = (p % cols) * PANEL
        y0 = top + (p // cols) * (PANEL + TITLE)
        frame = _Frame(every, x0, y0, stretch=dim == 1)
        members = range(len(series)) if layout == "overlay" else [p]
        body.append(f'<g id="panel{p}">')
        body.append(f'<rect x="{_f(x0 + 1)}" y="{_f(y0 + TITLE + 1)}" width="{_f(PANEL - 2)}" '
                    f'height="{_f(PANEL - 2)}" fill="none" stroke="#cccccc"/>')
        label = _panel_label(series, members, layout)
        if label:
            body.append(f'<text x="{_f(x0 + PANEL / 2)}" y="{_f(y0 + TITLE - 4)}" '
                        f'text-anchor="middle" font-size="12">{escape(label)}</text>')
        if hull is not None and len(hull) >= 3:
            body.append(f'<polygon fill="#e8e8e8" stroke="#999999" stroke-width="0.8" '
                        f'points="{_path(frame.map(np.asarray(hull, float)))}"/>')
        for i in members:
            xy, z = planar[i]
            pix = frame.map(xy)
            if color_by_z:
                body.extend(_colored(pix, z, zlo, zhi))
            else:
                body.append(_polyline(pix, PALETTE[i % len(PALETTE)] if layout == "overlay" else PALETTE[0]))
        if landmarks is not None and dim > 1:
            for cx, cy in frame.map(extra[0]):
                body.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="2" fill="#d62728"/>')
        body.append("</g>")

    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
            f'viewBox="0 0 {_f(width)} {_f(height)}">')
    return "\n".join(['<?xml version="1.0" encoding="UTF-8"?>', head,
                      '<rect width="100%" height="100%" fill="#ffffff"/>', *body, "</svg>"]) + "\n"


def _panel_label(series, members, layout) -> str:
    labels = [series[i].label for i in members if series[i].label]
    if layout == "panels":
        return labels[0] if labels else ""
    return ", ".join(labels)
