"""Deterministic SVG pictures of planar flipped polytopes."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .configuration import VectorConfiguration
from .exact import rat_str, solve
from .polyhedra import FlippedPolytope, basis_solutions

WIDTH = 480
PAD = Fraction(1, 5)


class DimensionUnsupported(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _foot(cfg: VectorConfiguration, chi, i: int) -> tuple:
    """Point of the line x . a_i + chi_i = 0 closest to the origin."""
    a = [Fraction(x) for x in cfg.a[i - 1]]
    s = -Fraction(chi[i - 1]) / sum(x * x for x in a)
    return tuple(s * x for x in a)


def _viewport(P: FlippedPolytope):
    pts = [x for _, x in basis_solutions(P.cfg, P.chi)]
    pts += [_foot(P.cfg, P.chi, i) for i in range(1, P.cfg.n + 1)]
    pts.append((Fraction(0), Fraction(0)))
    lo = [min(p[r] for p in pts) for r in range(2)]
    hi = [max(p[r] for p in pts) for r in range(2)]
    span = [max(h - l, Fraction(1)) for l, h in zip(lo, hi)]
    return [l - PAD * s for l, s in zip(lo, span)], [h + PAD * s for h, s in zip(hi, span)]


def _clip_polygon(P: FlippedPolytope, lo, hi) -> list[tuple]:
    """Vertices of P intersected with the viewport box, counter-clockwise."""
    lines = [(P.normal(i), -P.eps(i) * P.chi[i - 1]) for i in range(1, P.cfg.n + 1)]
    lines += [([1, 0], lo[0]), ([-1, 0], -hi[0]), ([0, 1], lo[1]), ([0, -1], -hi[1])]
    pts = set()
    for (u, s), (v, t) in combinations(lines, 2):
        if u[0] * v[1] - u[1] * v[0] == 0:
            continue
        x = solve([u, v], [s, t])
        if all(w[0] * x[0] + w[1] * x[1] >= r for w, r in lines):
            pts.add(tuple(x))
    if len(pts) < 3:
        return []
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    # exact angular sort by half-plane then cross product
    def key(p):
        dx, dy = p[0] - cx, p[1] - cy
        half = 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1
        return half, _Angle(dx, dy)

    return sorted(pts, key=key)


class _Angle:
    __slots__ = ("dx", "dy")

    def __init__(self, dx, dy):
        self.dx, self.dy = dx, dy

    def __lt__(self, other):
        return self.dx * other.dy - self.dy * other.dx > 0

    def __eq__(self, other):
        return self.dx * other.dy - self.dy * other.dx == 0


def render_svg(cfg: VectorConfiguration, chi: Sequence, A=()) -> str:
    if cfg.d != 2:
        raise DimensionUnsupported(f"SVG rendering needs d = 2, got d = {cfg.d}")
    P = FlippedPolytope(cfg, chi, A)
    lo, hi = _viewport(P)
    scale = WIDTH / float(hi[0] - lo[0])
    height = float(hi[1] - lo[1]) * scale

    def px(p) -> tuple[str, str]:
        return _fmt(float(p[0] - lo[0]) * scale), _fmt(float(hi[1] - p[1]) * scale)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{_fmt(height)}" viewBox="0 0 {WIDTH} {_fmt(height)}">',
        f"<title>{cfg.name}: chi=({','.join(rat_str(c) for c in P.chi)}), "
        f"A={{{','.join(map(str, sorted(P.A)))}}}</title>",
    ]
    poly = _clip_polygon(P, lo, hi)
    if poly:
        verts = [v.point for v in P.vertices()]
        pts = " ".join(",".join(px(p)) for p in poly)
        exact = " ".join(f"{rat_str(p[0])},{rat_str(p[1])}" for p in verts)
        out.append(
            f'<polygon class="delta" points="{pts}" data-vertices="{exact}" '
            'fill="#9ecae1" fill-opacity="0.6" stroke="none"/>'
        )
    edges = [([1, 0], lo[0]), ([1, 0], hi[0]), ([0, 1], lo[1]), ([0, 1], hi[1])]
    for i in range(1, cfg.n + 1):
        a = list(cfg.a[i - 1])
        ends = set()
        for e, val in edges:
            if a[0] * e[1] - a[1] * e[0] == 0:
                continue
            x = solve([a, e], [-P.chi[i - 1], val])
            if lo[0] <= x[0] <= hi[0] and lo[1] <= x[1] <= hi[1]:
                ends.add(tuple(x))
        ends = sorted(ends)
        if len(ends) < 2:
            continue
        (x1, y1), (x2, y2) = px(ends[0]), px(ends[-1])
        out.append(
            f'<line class="wall" data-index="{i}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            'stroke="#333" stroke-width="1.5"/>'
        )
        tx, ty = px([e0 + (e1 - e0) * Fraction(9, 10) for e0, e1 in zip(ends[0], ends[-1])])
        out.append(
            f'<text x="{tx}" y="{ty}" font-size="14" font-family="sans-serif">'
            f"{i}({rat_str(P.chi[i - 1])})</text>"
        )
    ox, oy = px((0, 0))
    out.append(f'<circle class="origin" cx="{ox}" cy="{oy}" r="4" fill="#000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
