"""Matplotlib renderings written next to the delimited report output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import geometry
from .exports import build_disk_scene


def _save(fig, path):
    fig.savefig(path, dpi=144, metadata={})
    plt.close(fig)


def cells_by_base_figure(tri, path):
    """Bar chart of cell counts per base element, grouped by Cambrian class
    via the shared counts."""
    system = tri.system
    counts = {}
    for cell in tri.cells:
        counts[cell.base] = counts.get(cell.base, 0) + 1
    bases = sorted(counts, key=lambda u: (system.length[u], u))
    labels = [system.word_str(system.inverse[u]) for u in bases]
    values = [counts[u] for u in bases]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(bases)), 3.2))
    ax.bar(range(len(bases)), values, color="#3b6ea5")
    ax.set_xticks(range(len(bases)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("cells")
    ax.set_title(f"{system.type_label}, c = {system.word_str(tri.c)}: "
                 f"{len(tri.cells)} cells by inverse base")
    fig.tight_layout()
    _save(fig, path)


def triangulation_figure_2d(tri, path):
    """The rank-2 permutahedron with its triangulating segments from the
    two base vertices."""
    system = tri.system
    verts = geometry.vertex_points(system, tri.base_point)
    pts = {w: (float(verts[w][0]), float(verts[w][1]))
           for w in range(system.order)}
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    cmap = plt.get_cmap("tab10")
    for idx, cell in enumerate(tri.cells):
        xs = [pts[w][0] for w in cell.elements]
        ys = [pts[w][1] for w in cell.elements]
        ax.fill(xs, ys, color=cmap(idx % 10), alpha=0.35)
        ax.plot(xs + xs[:1], ys + ys[:1], color="black", linewidth=0.8)
    for w, (x, y) in pts.items():
        ax.annotate(system.word_str(w), (x, y), fontsize=7,
                    textcoords="offset points", xytext=(3, 3))
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.set_title(f"{system.type_label}, c = {system.word_str(tri.c)}")
    fig.tight_layout()
    _save(fig, path)


def disk_figure_3d(system, c, path):
    """The stereographic rank-3 picture rendered via matplotlib."""
    scene = build_disk_scene(system, c)
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    for pts in scene.circles:
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                color="0.8", linewidth=0.6)
    for pts in scene.chamber_arcs:
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                color="#3b6ea5", linewidth=1.0)
    for pts in scene.cluster_arcs:
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                color="#c03030", linewidth=1.2, linestyle="--")
    for pts in scene.cone_arcs:
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                color="black", linewidth=1.8)
    for x, y, label in scene.delta_points:
        ax.plot([x], [y], marker="o", markersize=4, color="white",
                markeredgecolor="black")
        ax.annotate(label, (x, y), fontsize=6,
                    textcoords="offset points", xytext=(4, 4))
    lim = 3.2
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.set_title(f"{system.type_label}, c = {system.word_str(c)}")
    fig.tight_layout()
    _save(fig, path)


def volume_histogram(tri, path):
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    vols = sorted(float(cell.volume) for cell in tri.cells
                  if cell.volume is not None)
    ax.hist(vols, bins=min(24, max(4, len(set(vols)))), color="#3b6ea5")
    ax.set_xlabel("cell volume (unnormalized)")
    ax.set_ylabel("count")
    ax.set_title(f"{system_label(tri)}: cell volume spread")
    fig.tight_layout()
    _save(fig, path)


def system_label(tri):
    return f"{tri.system.type_label}, c = {tri.system.word_str(tri.c)}"


def render_report_figures(tri, out_prefix):
    """Figures for the report path; returns the written file names."""
    written = []
    system = tri.system
    path = f"{out_prefix}-cells.png"
    cells_by_base_figure(tri, path)
    written.append(path)
    if system.rank == 2:
        path = f"{out_prefix}-triangulation.png"
        triangulation_figure_2d(tri, path)
        written.append(path)
    elif system.rank == 3:
        path = f"{out_prefix}-cone.png"
        disk_figure_3d(system, tri.c, path)
        written.append(path)
    else:
        path = f"{out_prefix}-volumes.png"
        volume_histogram(tri, path)
        written.append(path)
    return written
