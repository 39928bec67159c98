"""Render detection-ratio and density figures from scan CSV files.

Pure post-processing: every panel plots columns of a CSV produced by the
``bunching`` CLI, with no smoothing or resampling -- undefined (empty) cells
are simply dropped from the line. Line styles follow the figure captions:
the point-detector ratio is solid and the wide-detector ratio dashed; the
order-4 curve is dashed and the order-5 curve solid.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureSpec", "MissingColumn", "FIGURES", "load_table", "clean_series", "render"]


class MissingColumn(KeyError):
    """An input CSV lacks a column the figure needs; message names it."""

    def __init__(self, column: str, path: str):
        super().__init__(column)
        self.column = column
        self.path = path

    def __str__(self) -> str:
        return f"column '{self.column}' missing from {self.path}"


@dataclass(frozen=True)
class FigureSpec:
    """One renderable figure: id, its input CSV path(s), the image path."""

    figure_id: str
    inputs: tuple[str, ...]
    output: str
    dpi: int = 150


# per-figure layout: (panels, required columns per input CSV)
FIGURES = {
    "2": {"inputs": 1, "columns": ("x", "rho_point", "rho_wide")},
    "4": {"inputs": 1, "columns": ("x", "p_one", "p_ni", "p_boson", "p_fermion")},
    "5": {"inputs": 1, "columns": ("x", "p_one", "p_ni", "p_boson", "p_fermion")},
    "6": {"inputs": 2, "columns": ("x", "rho_b")},
    "7": {"inputs": 2, "columns": ("x", "rho_f")},
    "B1": {"inputs": 1, "columns": ("x", "rho_n4", "rho_n5")},
}


def load_table(path: str) -> dict[str, list[str]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        cols: dict[str, list[str]] = {h: [] for h in header}
        for row in reader:
            for h, cell in zip(header, row):
                cols[h].append(cell)
    return cols


def clean_series(cols: dict[str, list[str]], x: str, y: str, path: str = "<csv>"):
    """Paired x/y float arrays, dropping rows whose y cell is empty or not finite."""
    for name in (x, y):
        if name not in cols:
            raise MissingColumn(name, path)
    xs, ys = [], []
    for xc, yc in zip(cols[x], cols[y]):
        if yc == "":
            continue
        yv = float(yc)
        if not math.isfinite(yv):
            continue
        xs.append(float(xc))
        ys.append(yv)
    return np.asarray(xs), np.asarray(ys)


def _plot(ax, cols, path, ycol, style, label):
    xs, ys = clean_series(cols, "x", ycol, path)
    ax.plot(xs, ys, style, label=label)


def render(spec: FigureSpec) -> str:
    """Render the figure and return the written image path."""
    if spec.figure_id not in FIGURES:
        raise ValueError(f"unknown figure id {spec.figure_id!r}; known: {', '.join(FIGURES)}")
    layout = FIGURES[spec.figure_id]
    if len(spec.inputs) != layout["inputs"]:
        raise ValueError(
            f"figure {spec.figure_id} needs {layout['inputs']} input CSV(s), "
            f"got {len(spec.inputs)}"
        )
    tables = [load_table(p) for p in spec.inputs]
    for path, cols in zip(spec.inputs, tables):
        for name in layout["columns"]:
            if name not in cols:
                raise MissingColumn(name, path)

    fid = spec.figure_id
    if fid == "2":
        fig, ax = plt.subplots(figsize=(6, 4))
        _plot(ax, tables[0], spec.inputs[0], "rho_point", "-", "point detectors")
        _plot(ax, tables[0], spec.inputs[0], "rho_wide", "--", "wide detector")
        ax.set_xlabel("x")
        ax.set_ylabel(r"$\rho$")
        ax.legend()
    elif fid in ("4", "5"):
        fig, (top, bottom) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
        _plot(top, tables[0], spec.inputs[0], "p_one", "-", None)
        top.set_ylabel("one-particle density")
        _plot(bottom, tables[0], spec.inputs[0], "p_boson", "-", "bosons")
        _plot(bottom, tables[0], spec.inputs[0], "p_ni", "--", "distinguishable")
        bottom.set_xlabel("x")
        bottom.set_ylabel("joint density")
        bottom.legend()
    elif fid in ("6", "7"):
        ycol = "rho_b" if fid == "6" else "rho_f"
        fig, (top, bottom) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
        _plot(top, tables[0], spec.inputs[0], ycol, "-", None)
        _plot(bottom, tables[1], spec.inputs[1], ycol, "-", None)
        for ax in (top, bottom):
            ax.set_ylabel(r"$\rho$")
            ax.set_ylim(-0.05, 2.1)
        bottom.set_xlabel("x")
    else:  # B1
        fig, ax = plt.subplots(figsize=(6, 4))
        _plot(ax, tables[0], spec.inputs[0], "rho_n4", "--", "n = 4")
        _plot(ax, tables[0], spec.inputs[0], "rho_n5", "-", "n = 5")
        ax.set_xlabel("x")
        ax.set_ylabel(r"$\rho$")
        ax.legend()

    fig.tight_layout()
    fig.savefig(spec.output, dpi=spec.dpi)
    plt.close(fig)
    return spec.output
