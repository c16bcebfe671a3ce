"""Static SVG pictures of alcove walks for rank 1 and rank 2.

Weight space is drawn with the W0-invariant form ``sum_gamma <x,gamma>^2``
over positive coroots, embedded in the plane by a Cholesky factor, so the
walls ``<x, gamma> = k`` meet at their true angles.  Output is plain text with
every coordinate printed to three decimals, so equal inputs give equal files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .affine import simple_reflection
from .rootsys import RootSystem
from .walks import AlcoveWalk

SCALE = 60.0
MARGIN = 0.6
ROW = 1.0
PALETTE = ("#1f5fa8", "#c2410c", "#15803d", "#7e22ce", "#b91c1c", "#0e7490", "#a16207", "#be185d")

STYLE = """
.wall { stroke: #9ca3af; stroke-width: 1; }
.wall-k0 { stroke: #374151; stroke-width: 1.5; }
.alcove { fill: #e5e7eb; fill-opacity: 0.6; stroke: none; }
.start { fill: #fde68a; fill-opacity: 0.8; stroke: none; }
.walk { fill: none; stroke-width: 2; stroke-linejoin: round; }
.fold { stroke-width: 0; }
.label { font: 10px sans-serif; fill: #111827; }
""".strip()


class RankTooLargeForSvg(ValueError):
    pass


@dataclass
class Hyperplanes:
    gamma: tuple
    ks: range


@dataclass
class WalkPicture:
    points: list  # embedded polyline
    folds: list  # (embedded point, sign)
    colour: str


@dataclass
class RenderScene:
    rank: int
    hyperplanes: list
    alcoves: list  # list of (vertex list, css class)
    walks: list = field(default_factory=list)
    sheet: tuple = ()
    box: tuple = (0.0, 0.0, 1.0, 1.0)


def _fundamental_vertices(rs: RootSystem) -> list[tuple]:
    """``0`` and ``w_i / a_i`` where ``phi^vee = sum a_i alpha_i^vee``."""
    a = rs.highest_coroot
    verts = [tuple(Fraction(0) for _ in range(rs.rank))]
    for i in range(rs.rank):
        verts.append(tuple(Fraction(1, a[i]) if c == i else Fraction(0) for c in range(rs.rank)))
    return verts


def _embedding(rs: RootSystem) -> np.ndarray:
    gram = np.zeros((rs.rank, rs.rank))
    for g in rs.positive_coroots:
        v = np.array(g, dtype=float)
        gram += np.outer(v, v)
    return np.linalg.cholesky(gram).T


def _centre(pts) -> tuple:
    n = len(pts)
    return tuple(sum(p[c] for p in pts) / n for c in range(len(pts[0])))


def build_scene(rs: RootSystem, walks: list[AlcoveWalk]) -> RenderScene:
    if rs.rank > 2:
        raise RankTooLargeForSvg(f"cannot draw rank {rs.rank}")
    emb = _embedding(rs)
    fverts = _fundamental_vertices(rs)
    facet_mid = {j: _centre([v for i, v in enumerate(fverts) if i != j]) for j in range(rs.rank + 1)}
    centre0 = _centre(fverts)
    one_d = rs.rank == 1

    def place(x, row=0):
        y = emb @ np.array([float(c) for c in x])
        if one_d:
            return (float(y[0]), row * ROW)
        return (float(y[0]), -float(y[1]))

    visited: dict = {}
    pictures = []
    for n, walk in enumerate(walks):
        row = n if one_d else 0
        cur = walk.start
        visited.setdefault((cur, row), "start")
        pts = [place(cur.act_on_point(centre0), row)]
        folds = []
        for step in walk.steps:
            wall_pt = place(cur.act_on_point(facet_mid[step.i]), row)
            here = pts[-1]
            if step.kind == "crossing":
                cur = cur * simple_reflection(rs, step.i)
                visited.setdefault((cur, row), "alcove")
                pts += [wall_pt, place(cur.act_on_point(centre0), row)]
            else:
                tip = (here[0] + 0.85 * (wall_pt[0] - here[0]), here[1] + 0.85 * (wall_pt[1] - here[1]))
                pts += [tip, here]
                folds.append((tip, step.sign))
        pictures.append(WalkPicture(pts, folds, PALETTE[n % len(PALETTE)]))

    alcoves = []
    for (z, row), cls in sorted(visited.items(), key=lambda kv: (kv[0][1], kv[0][0].mu, kv[0][0].w._key)):
        alcoves.append(([place(z.act_on_point(v), row) for v in fverts], cls))

    xs = [p[0] for vs, _ in alcoves for p in vs] or [0.0]
    ys = [p[1] for vs, _ in alcoves for p in vs] or [0.0]
    box = (min(xs) - MARGIN, min(ys) - MARGIN, max(xs) + MARGIN, max(ys) + MARGIN)

    inv = np.linalg.inv(emb)
    planes = []
    for g in rs.positive_coroots:
        # range of <x, gamma> over the picture, computed back in weight coordinates
        ks = []
        for px in (box[0], box[2]):
            for py in (box[1], box[3]):
                y = np.array([px] if one_d else [px, -py])
                ks.append(float(np.array(g, dtype=float) @ (inv @ y)))
        planes.append(Hyperplanes(tuple(g), range(math.floor(min(ks)), math.ceil(max(ks)) + 1)))

    sheet = walks[0].start.sheet() if walks else ()
    return RenderScene(rs.rank, planes, alcoves, pictures, sheet, box)


def _f(x: float) -> str:
    s = f"{x * SCALE:.3f}"
    return "0.000" if s == "-0.000" else s


def _clip_line(a: np.ndarray, k: float, box) -> list[tuple] | None:
    """Segment of ``a . y = k`` inside the box, or None."""
    x0, y0, x1, y1 = box
    pts = []
    if abs(a[1]) > 1e-12:
        for x in (x0, x1):
            y = (k - a[0] * x) / a[1]
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                pts.append((x, y))
    if abs(a[0]) > 1e-12:
        for y in (y0, y1):
            x = (k - a[1] * y) / a[0]
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                pts.append((x, y))
    pts = sorted(set((round(p[0], 9), round(p[1], 9)) for p in pts))
    if len(pts) < 2:
        return None
    return [pts[0], pts[-1]]


def render_svg(rs: RootSystem, scene: RenderScene) -> str:
    x0, y0, x1, y1 = scene.box
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_f(x0)} {_f(y0)} {_f(x1 - x0)} {_f(y1 - y0)}"'
        f' width="{_f(x1 - x0)}" height="{_f(y1 - y0)}">',
        f"<style>\n{STYLE}\n</style>",
    ]
    for vs, cls in scene.alcoves:
        if scene.rank == 1:
            (ax, ay), (bx, by) = vs
            out.append(
                f'<rect class="{cls}" x="{_f(min(ax, bx))}" y="{_f(ay - 0.3)}" width="{_f(abs(bx - ax))}" height="{_f(0.6)}"/>'
            )
        else:
            pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in vs)
            out.append(f'<polygon class="{cls}" points="{pts}"/>')

    emb = _embedding(rs)
    inv = np.linalg.inv(emb)
    out.append('<g id="walls">')
    for hp in scene.hyperplanes:
        g = np.array(hp.gamma, dtype=float)
        for k in hp.ks:
            cls = "wall-k0" if k == 0 else "wall"
            tag = f'data-gamma="{",".join(str(c) for c in hp.gamma)}" data-k="{k}"'
            if scene.rank == 1:
                x = k / float(g @ inv[:, 0])
                if x0 <= x <= x1:
                    out.append(f'<line class="{cls}" {tag} x1="{_f(x)}" y1="{_f(y0)}" x2="{_f(x)}" y2="{_f(y1)}"/>')
                continue
            # embedded coordinates (u, -v): <x, gamma> = gamma . inv (u, v)
            a = g @ inv
            seg = _clip_line(np.array([a[0], -a[1]]), float(k), scene.box)
            if seg:
                (ax, ay), (bx, by) = seg
                out.append(f'<line class="{cls}" {tag} x1="{_f(ax)}" y1="{_f(ay)}" x2="{_f(bx)}" y2="{_f(by)}"/>')
    out.append("</g>")

    for n, pic in enumerate(scene.walks):
        pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in pic.points)
        out.append(f'<g id="walk{n}">')
        out.append(f'<polyline class="walk" stroke="{pic.colour}" points="{pts}"/>')
        for (fx, fy), sign in pic.folds:
            out.append(f'<circle class="fold" fill="{pic.colour}" cx="{_f(fx)}" cy="{_f(fy)}" r="3.000"/>')
            out.append(f'<text class="label" x="{_f(fx + 0.08)}" y="{_f(fy - 0.08)}">{"+" if sign > 0 else "-"}</text>')
        out.append("</g>")
    if scene.sheet:
        label = ",".join(str(c) for c in scene.sheet)
        out.append(f'<text class="label" x="{_f(x0 + 0.1)}" y="{_f(y1 - 0.1)}">sheet ({label})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def walks_svg(rs: RootSystem, walks: list[AlcoveWalk]) -> str:
    return render_svg(rs, build_scene(rs, walks))

