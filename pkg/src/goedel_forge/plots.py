"""Derivation reports: a CSV of memberships and a heatmap per variable."""

from __future__ import annotations

import csv
from pathlib import Path

from .printer import format_value


def write_csv(d, path) -> Path:
    path = Path(path)
    elements = d.base.universe.elements
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["time", "variable"] + [format_value(u) for u in elements])
        for k, e in enumerate(d.states):
            for x in d.base.variables:
                w.writerow([k, x] + [format_value(v) for v in e[x].values])
    return path


def write_heatmap(d, path) -> Path:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    variables = d.base.variables
    elements = [format_value(u) for u in d.base.universe.elements]
    fig, axes = plt.subplots(1, len(variables), figsize=(2.2 * len(variables), 0.25 * len(d) + 1.5),
                             sharey=True, squeeze=False)
    for ax, x in zip(axes[0], variables):
        grid = [[float(v) for v in e[x].values] for e in d.states]
        im = ax.imshow(grid, vmin=0, vmax=1, cmap="viridis", aspect="auto")
        ax.set_title(x)
        ax.set_xticks(range(len(elements)), elements)
    axes[0][0].set_ylabel("time")
    fig.colorbar(im, ax=axes[0].tolist(), shrink=0.8, label="membership")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(d, directory) -> list:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    return [write_csv(d, out / "derivation.csv"), write_heatmap(d, out / "derivation.png")]
