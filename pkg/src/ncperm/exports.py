"""File exports: OFF meshes, the stereographic rank-3 picture as SVG, and
the float scene-building shared with the matplotlib figures.

All writers emit deterministic bytes for fixed inputs: stable orderings and
fixed decimal precision everywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import absolute, cambrian, geometry
from .errors import InvalidInputError


# -- OFF ----------------------------------------------------------------------


def off_text(tri):
    """OFF (rank 3) or nOFF dump of the permutahedron vertices and the cell
    vertex-index lists.  Exact rational coordinates for degree-1 fields,
    decimal approximations (with a disclaimer) otherwise."""
    system = tri.system
    verts = geometry.vertex_points(system, tri.base_point)
    r = system.rank
    exact = system.field.degree == 1
    lines = []
    if r == 3:
        lines.append("OFF")
    else:
        lines.append("nOFF")
    lines.append(f"# group {system.type_label}, coxeter element "
                 f"{system.word_str(tri.c)}")
    if exact:
        lines.append("# coordinates: exact rationals")
    else:
        lines.append(f"# coordinates: decimal approximations "
                     f"(field degree {system.field.degree}); exactness "
                     f"disclaimer: exact values live in the power basis")
    if r != 3:
        lines.append(str(r))
    lines.append(f"{system.order} {len(tri.cells)} 0")
    for w in range(system.order):
        coords = []
        for x in verts[w]:
            if exact:
                coords.append(str(x.as_fraction()))
            else:
                coords.append(f"{float(x):.12g}")
        lines.append(" ".join(coords))
    for cell in tri.cells:
        lines.append(str(r + 1) + " " + " ".join(str(w) for w in cell.elements))
    return "\n".join(lines) + "\n"


# -- shared float scene for the rank-3 disk picture ------------------------------


def _invariant_gram(system):
    """Symmetric positive-definite W-invariant form on V, float precision.

    Root-length weights are propagated over the (forest) Coxeter graph so
    that l_i * A_ij = l_j * A_ji; then G_ij = A_ij / l_i is symmetric.
    """
    r = system.rank
    a = [[float(system.pairing[i][j]) for j in range(r)] for i in range(r)]
    lengths = [0.0] * r
    for start in range(r):
        if lengths[start]:
            continue
        lengths[start] = 1.0
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if i != j and a[i][j] != 0 and not lengths[j]:
                    lengths[j] = lengths[i] * a[j][i] / a[i][j]
                    stack.append(j)
    return [[a[i][j] / lengths[i] for j in range(r)] for i in range(r)]


def _cholesky(g):
    n = len(g)
    low = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = sum(low[i][k] * low[j][k] for k in range(j))
            if i == j:
                low[i][j] = math.sqrt(g[i][i] - s)
            else:
                low[i][j] = (g[i][j] - s) / low[j][j]
    return low


class DiskScene:
    """Float data for the stereographic picture of the cone of a rank-3
    group: great circles, chamber triangles for the positive bases, cluster
    triangles, and the labeled distinguished vertices."""

    def __init__(self, circles, chamber_arcs, cluster_arcs, cone_arcs,
                 delta_points, chamber_labels):
        self.circles = circles                  # list of [(x, y), ...]
        self.chamber_arcs = chamber_arcs        # list of [(x, y), ...]
        self.cluster_arcs = cluster_arcs
        self.cone_arcs = cone_arcs
        self.delta_points = delta_points        # list of (x, y, label)
        self.chamber_labels = chamber_labels    # list of (x, y, label)


def _unit(vec):
    norm = math.sqrt(sum(x * x for x in vec))
    return tuple(x / norm for x in vec)


def build_disk_scene(system, c, clip=8.0, samples=192):
    """Stereographic projection of the rank-3 arrangement picture."""
    if system.rank != 3:
        raise InvalidInputError("the disk picture needs a rank-3 group")
    low = _cholesky(_invariant_gram(system))

    def embed(vec):
        x = [float(v) for v in vec]
        return _unit([sum(low[k][i] * x[i] for i in range(3)) for k in range(3)])

    y_dir = embed(geometry.base_point(system))
    pole = tuple(-v for v in y_dir)
    # orthonormal frame perpendicular to the pole
    seed = (1.0, 0.0, 0.0) if abs(pole[0]) < 0.9 else (0.0, 1.0, 0.0)
    e1 = _unit([seed[i] - sum(seed[k] * pole[k] for k in range(3)) * pole[i]
                for i in range(3)])
    e2 = (pole[1] * e1[2] - pole[2] * e1[1],
          pole[2] * e1[0] - pole[0] * e1[2],
          pole[0] * e1[1] - pole[1] * e1[0])

    def project(point):
        d = 1.0 - sum(point[k] * pole[k] for k in range(3))
        if abs(d) < 1e-9:
            return None
        u = sum(point[k] * e1[k] for k in range(3)) / d
        v = sum(point[k] * e2[k] for k in range(3)) / d
        if u * u + v * v > clip * clip:
            return None
        return (u, v)

    def polylines(points3):
        runs, cur = [], []
        for p in points3:
            q = project(p)
            if q is None:
                if len(cur) > 1:
                    runs.append(cur)
                cur = []
            else:
                cur.append(q)
        if len(cur) > 1:
            runs.append(cur)
        return runs

    circles = []
    low_inv_rows = _pair_normal_rows(system, low)
    for t in range(system.num_positive_roots):
        n = _unit(low_inv_rows[t])
        u1 = _unit(_orthogonal(n))
        u2 = (n[1] * u1[2] - n[2] * u1[1],
              n[2] * u1[0] - n[0] * u1[2],
              n[0] * u1[1] - n[1] * u1[0])
        pts = []
        for k in range(samples + 1):
            ang = 2 * math.pi * k / samples
            pts.append(tuple(math.cos(ang) * u1[i] + math.sin(ang) * u2[i]
                             for i in range(3)))
        circles.extend(polylines(pts))

    def arc(a, b, steps=48):
        dot = max(-1.0, min(1.0, sum(a[k] * b[k] for k in range(3))))
        omega = math.acos(dot)
        if omega < 1e-9:
            return [a, b]
        pts = []
        for k in range(steps + 1):
            t = k / steps
            w1 = math.sin((1 - t) * omega) / math.sin(omega)
            w2 = math.sin(t * omega) / math.sin(omega)
            pts.append(_unit([w1 * a[i] + w2 * b[i] for i in range(3)]))
        return pts

    delta = geometry.delta_vertices(system, c)
    delta_dirs = {t: embed(v) for t, v in delta.items()}

    cone_arcs = []
    simple_refl = [system.root_of_reflection[system.reflection[s]]
                   for s in range(3)]
    for i in range(3):
        for j in range(i + 1, 3):
            cone_arcs.extend(polylines(arc(delta_dirs[simple_refl[i]],
                                           delta_dirs[simple_refl[j]])))

    chamber_arcs = []
    chamber_labels = []
    for u in cambrian.enumerate_w_c_plus(system, c):
        uinv = system.inverse[u]
        rays = [embed(system.act(uinv, system.weights[s])) for s in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                chamber_arcs.extend(polylines(arc(rays[i], rays[j])))
        center = _unit([rays[0][k] + rays[1][k] + rays[2][k] for k in range(3)])
        spot = project(center)
        if spot is not None:
            chamber_labels.append((spot[0], spot[1], system.word_str(uinv)))

    cluster_arcs = []
    seq = absolute.sorted_position_word(system, c)
    for face in absolute.positive_cluster_complex(system, c):
        roots = [seq[i - 1] for i in face]
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                cluster_arcs.extend(polylines(arc(delta_dirs[roots[i]],
                                                  delta_dirs[roots[j]])))

    delta_points = []
    for t in sorted(delta_dirs):
        spot = project(delta_dirs[t])
        if spot is not None:
            delta_points.append((spot[0], spot[1],
                                 system.word_str(system.reflection[t])))

    return DiskScene(circles, chamber_arcs, cluster_arcs, cone_arcs,
                     delta_points, chamber_labels)


def _pair_normal_rows(system, low):
    """Normals of the reflection hyperplanes in the orthonormal coordinates:
    the pairing row of each root pulled back through the Cholesky factor."""
    rows = []
    n = 3
    # solve L^T m = row for each pairing row
    for t in range(system.num_positive_roots):
        row = [float(x) for x in system._pair_rows[t]]
        m = [0.0] * n
        for i in range(n - 1, -1, -1):
            s = sum(low[k][i] * m[k] for k in range(i + 1, n))
            m[i] = (row[i] - s) / low[i][i]
        rows.append(tuple(m))
    return rows


def _orthogonal(n):
    if abs(n[0]) < 0.9:
        v = (1.0, 0.0, 0.0)
    else:
        v = (0.0, 1.0, 0.0)
    d = sum(v[k] * n[k] for k in range(3))
    return tuple(v[k] - d * n[k] for k in range(3))


def svg_text(system, c, scene=None):
    """Deterministic SVG 1.1 of the rank-3 stereographic picture."""
    if scene is None:
        scene = build_disk_scene(system, c)
    size, scale = 900.0, 130.0

    def fmt(x, y):
        return f"{size / 2 + scale * x:.4f},{size / 2 - scale * y:.4f}"

    def path(points, stroke, width, dash=None):
        d = "M " + " L ".join(fmt(x, y) for x, y in points)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        return (f'<path d="{d}" fill="none" stroke="{stroke}" '
                f'stroke-width="{width}"{dash_attr}/>')

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {size:.0f} {size:.0f}">',
        f'<rect width="{size:.0f}" height="{size:.0f}" fill="white"/>',
        f'<!-- group {system.type_label}, coxeter element '
        f'{system.word_str(c)} -->',
    ]
    for pts in scene.circles:
        parts.append(path(pts, "#c8c8c8", 0.8))
    for pts in scene.chamber_arcs:
        parts.append(path(pts, "#3b6ea5", 1.2))
    for pts in scene.cone_arcs:
        parts.append(path(pts, "#111111", 2.2))
    for pts in scene.cluster_arcs:
        parts.append(path(pts, "#c03030", 1.6, dash="6,3"))
    for x, y, label in scene.delta_points:
        cx, cy = fmt(x, y).split(",")
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="4.5" fill="#ffffff" '
                     f'stroke="#000000" stroke-width="1.2"/>')
        parts.append(f'<text x="{float(cx) + 6:.4f}" y="{float(cy) - 6:.4f}" '
                     f'font-size="11" font-family="monospace">{label}</text>')
    for x, y, label in scene.chamber_labels:
        cx, cy = fmt(x, y).split(",")
        parts.append(f'<text x="{cx}" y="{cy}" font-size="10" '
                     f'font-family="monospace" text-anchor="middle" '
                     f'fill="#3b6ea5">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- report serialization ----------------------------------------------------------


def fraction_str(x):
    return str(Fraction(x))


def scalar_repr(x):
    """JSON value for a field scalar: exact string when rational, else the
    power-basis coefficients plus a decimal rendering."""
    if x.field.degree == 1:
        return str(x.as_fraction())
    return {"coeffs": [str(c) for c in x.coeffs], "approx": f"{float(x):.12g}"}
