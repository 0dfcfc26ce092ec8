"""Figures written next to the JSON reports.

Uses the object-oriented matplotlib API with the Agg canvas, so nothing
touches pyplot state or needs a display.
"""

from __future__ import annotations

import os

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from . import graph6

DPI = 150


def _save(fig: Figure, path: str | os.PathLike):
    FigureCanvasAgg(fig)
    fig.savefig(path, dpi=DPI, bbox_inches="tight", metadata={"Software": None})


def plot_operator(M, path: str | os.PathLike):
    """Heatmap of an operator matrix, axes labeled by graph6 of the catalog reps."""
    dense = M.to_dense()
    rows, cols = len(M.rows), len(M.cols)
    fig = Figure(figsize=(max(3.0, 0.35 * cols + 1.5), max(2.5, 0.35 * rows + 1.0)))
    ax = fig.add_subplot()
    im = ax.imshow(dense, cmap="viridis", interpolation="nearest", aspect="auto")
    fig.colorbar(im, ax=ax, shrink=0.8)
    order = "" if M.order is None else M.order
    ax.set_title(f"{M.kind}{order}  n={M.cols.n}  U({M.rows.m}) <- U({M.cols.m})")
    if cols <= 40:
        ax.set_xticks(range(cols), [graph6.encode(g) for g in M.cols], rotation=90, fontsize=6)
    if rows <= 40:
        ax.set_yticks(range(rows), [graph6.encode(g) for g in M.rows], fontsize=6)
    if rows * cols <= 400:
        top = max((max(r) for r in dense), default=0)
        for r in range(rows):
            for c in range(cols):
                if dense[r][c]:
                    ax.text(c, r, str(dense[r][c]), ha="center", va="center",
                            fontsize=6, color="k" if dense[r][c] > top / 2 else "w")
    _save(fig, path)


def plot_spectrum(cert, path: str | os.PathLike):
    """Stem plot of eigenvalue multiplicities from a spectrum certificate."""
    fig = Figure(figsize=(5, 3))
    ax = fig.add_subplot()
    ax.stem(cert.predicted, cert.multiplicities)
    for lam, k in zip(cert.predicted, cert.multiplicities):
        ax.annotate(str(k), (lam, k), textcoords="offset points", xytext=(0, 4),
                    ha="center", fontsize=7)
    ax.set_xlabel("eigenvalue of m I + J(N, m)")
    ax.set_ylabel("multiplicity")
    status = "certified" if cert.valid else "NOT certified"
    ax.set_title(f"N={cert.N}, m={cert.m}, dim={cert.dim} ({status})")
    _save(fig, path)
