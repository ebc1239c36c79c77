"""Static figure rendering for the CSV files emitted by the tuecount CLI.

Pure viewers: every number plotted here was computed by the primary
package and read back from disk.  Three figure kinds are supported:

* ``scatter`` -- eigenvalue clouds (columns re, im), one panel per input
  file, unit circle overlaid in red;
* ``curves``  -- coefficient curves (column t plus one column per alpha),
  one panel per input file;
* ``loglog``  -- a convergence study (columns n, exact, predicted,
  abs_error and a trailing comment with the fitted slope), drawn on
  log-log axes with the fitted and predicted slopes annotated.

Rendering is deterministic: fixed figure geometry, no timestamps.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("scatter", "curves", "loglog")


@dataclass(frozen=True)
class FigureSpec:
    input_paths: list
    kind: str
    output_path: str


class SchemaError(ValueError):
    """An input file does not match its documented CSV schema."""


def _read_csv(path: str, required: tuple) -> tuple:
    if not os.path.exists(path):
        raise SchemaError(f"{path}: file does not exist")
    with open(path) as fh:
        lines = [l.strip() for l in fh if l.strip()]
    comments = [l for l in lines if l.startswith("#")]
    rows = [l for l in lines if not l.startswith("#")]
    header = rows[0].split(",")
    for col in required:
        if col not in header:
            raise SchemaError(f"{path}: missing required column {col!r}")
    try:
        data = np.array([[float(x) for x in r.split(",")] for r in rows[1:]])
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric cell ({exc})") from exc
    if data.ndim != 2 or data.shape[1] != len(header):
        raise SchemaError(f"{path}: ragged rows")
    return header, data, comments


def _panel_label(path: str) -> str:
    stem = os.path.splitext(os.path.basename(path))[0]
    if "alpha" in stem:
        return "alpha = " + stem.split("alpha")[-1].lstrip("_")
    return stem


def _render_scatter(spec: FigureSpec) -> None:
    k = len(spec.input_paths)
    fig, axes = plt.subplots(1, k, figsize=(4.0 * k, 4.0))
    axes = np.atleast_1d(axes)
    theta = np.linspace(0.0, 2.0 * np.pi, 512)
    for ax, path in zip(axes, spec.input_paths):
        header, data, _ = _read_csv(path, ("re", "im"))
        re = data[:, header.index("re")]
        im = data[:, header.index("im")]
        ax.scatter(re, im, s=4.0, c="black", linewidths=0.0)
        ax.plot(np.cos(theta), np.sin(theta), color="red", linewidth=1.0)
        ax.set_xlim(-1.15, 1.15)
        ax.set_ylim(-1.15, 1.15)
        ax.set_aspect("equal")
        ax.set_title(_panel_label(path))
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)


_CURVE_TITLES = {
    "fig3_b1": "mean coefficient per eigenvalue",
    "fig3_b11": "variance coefficient per eigenvalue",
}


def _render_curves(spec: FigureSpec) -> None:
    k = len(spec.input_paths)
    fig, axes = plt.subplots(1, k, figsize=(5.0 * k, 4.0))
    axes = np.atleast_1d(axes)
    for ax, path in zip(axes, spec.input_paths):
        header, data, _ = _read_csv(path, ("t",))
        t = data[:, header.index("t")]
        for idx, col in enumerate(header):
            if col == "t":
                continue
            ax.plot(t, data[:, idx], label=col.replace("_", " = "))
        ax.set_xscale("log")
        ax.set_xlabel("t")
        stem = os.path.splitext(os.path.basename(path))[0]
        ax.set_title(_CURVE_TITLES.get(stem, stem))
        ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)


def _render_loglog(spec: FigureSpec) -> None:
    path = spec.input_paths[0]
    header, data, comments = _read_csv(path, ("n", "abs_error"))
    n = data[:, header.index("n")]
    err = data[:, header.index("abs_error")]
    fitted = predicted = None
    for c in comments:
        for piece in c.lstrip("# ").split(","):
            if piece.startswith("fitted_slope=") and "noise" not in piece:
                fitted = float(piece.split("=")[1])
            elif piece.startswith("predicted_slope="):
                predicted = float(piece.split("=")[1])
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    ax.loglog(n, err, "o-", color="black", label="measured")
    anchor = err[0] * 1.5
    for slope, color, name in ((fitted, "tab:blue", "fitted"),
                               (predicted, "tab:red", "predicted")):
        if slope is not None:
            ax.loglog(n, anchor * (n / n[0]) ** slope, "--", color=color,
                      label=f"{name} slope {slope:.2f}")
    ax.set_xlabel("n")
    ax.set_ylabel("|ln E_n - (C1 n + C2)|")
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)


def render(spec: FigureSpec) -> str:
    """Render the figure described by ``spec``; returns the output path."""
    if spec.kind not in KINDS:
        raise SchemaError(f"unknown figure kind {spec.kind!r}")
    if not spec.input_paths:
        raise SchemaError("no input files given")
    {"scatter": _render_scatter,
     "curves": _render_curves,
     "loglog": _render_loglog}[spec.kind](spec)
    return spec.output_path
