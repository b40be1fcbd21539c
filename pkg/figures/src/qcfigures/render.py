"""Render qchaos experiment CSV outputs to static SVG or PNG figures.

This package is a read-only consumer of the versioned CSV files written
by the qchaos command line (``fig1.csv``, ``fig2.csv``, ``fig3.csv``).
It never recomputes statistics; every plotted value, including the
entropy reference line, comes from the input file.
"""

from __future__ import annotations

import dataclasses
import pathlib

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

#: CSV schema identifier expected on the first line of each input kind.
SCHEMAS = {
    "fig1": "qchaos.fig1.v1",
    "fig2": "qchaos.fig2.v1",
    "fig3": "qchaos.fig3.v1",
}

_FORMATS = (".svg", ".png")

# Fixed styling seed: matplotlib derives SVG element ids from this salt,
# which keeps repeated renders byte-identical.
_HASHSALT = "qcfigures-v1"


@dataclasses.dataclass(frozen=True)
class FigureSpec:
    """One figure-rendering request.

    kind selects the renderer (``fig1``, ``fig2``, ``fig3``), input_csv
    names the CSV written by the matching qchaos experiment, and output
    names the image file to create (suffix .svg or .png).
    """

    kind: str
    input_csv: str | pathlib.Path
    output: str | pathlib.Path
    dpi: int = 150
    title: str | None = None

    def __post_init__(self):
        if self.kind not in SCHEMAS:
            raise ValueError(
                f"unknown figure kind {self.kind!r}; expected one of {sorted(SCHEMAS)}"
            )
        suffix = pathlib.Path(self.output).suffix.lower()
        if suffix not in _FORMATS:
            raise ValueError(
                f"unsupported output format {suffix!r}; expected one of {_FORMATS}"
            )


def load_rows(path: str | pathlib.Path, kind: str) -> np.ndarray:
    """Parse one versioned CSV into a named structured array.

    Raises ValueError when the schema line does not match the requested
    kind or when the file holds no data rows.
    """
    want = SCHEMAS[kind]
    with open(path) as fh:
        first = fh.readline().strip()
        if first != f"# schema: {want}":
            raise ValueError(
                f"schema mismatch in {path}: expected '# schema: {want}', found {first!r}"
            )
        rows = np.genfromtxt(fh, delimiter=",", names=True, ndmin=1)
    if rows.size == 0:
        raise ValueError(f"no data rows in {path}")
    return rows


def _eps_series(rows: np.ndarray):
    """Sorted distinct error rates with their blue-to-green colors."""
    eps = np.unique(rows["eps"])
    cmap = matplotlib.colormaps["winter"]
    span = max(len(eps) - 1, 1)
    return [(float(e), cmap(i / span)) for i, e in enumerate(eps)]


def _eps_label(e: float) -> str:
    return f"ε = {e:g}"


def _render_fig1(rows: np.ndarray, ax) -> None:
    refs = np.unique(rows["pt_entropy_ref"])
    if len(refs) != 1:
        raise ValueError(
            f"fig1 input mixes runs with different entropy references: {refs}"
        )
    ref = float(refs[0])
    gammas = np.unique(rows["gamma"])
    lo = min(float(rows["entropy"].min()), ref)
    hi = max(float(rows["entropy"].max()), ref)
    pad = 0.05 * (hi - lo) if hi > lo else 0.5
    bins = np.linspace(lo - pad, hi + pad, 41)
    cmap = matplotlib.colormaps["viridis"]
    span = max(len(gammas) - 1, 1)
    for i, g in enumerate(gammas):
        ents = rows["entropy"][rows["gamma"] == g]
        ax.hist(
            ents,
            bins=bins,
            alpha=0.6,
            color=cmap(i / span),
            label=f"γ = {g:g}",
        )
    ax.axvline(ref, color="black", linestyle="--", linewidth=1.2, label="PT reference")
    ax.set_xlabel("output entropy (nats)")
    ax.set_ylabel("instances")
    ax.legend(fontsize=8)


def _render_fig2(rows: np.ndarray, ax) -> None:
    series = _eps_series(rows)
    width = 0.7
    for i, (e, color) in enumerate(series):
        sel = rows[rows["eps"] == e]
        offset = (i / max(len(series) - 1, 1) - 0.5) * width if len(series) > 1 else 0.0
        ax.scatter(
            sel["weight"] + offset,
            sel["rescaled"],
            s=3,
            color=color,
            alpha=0.5,
            linewidths=0,
            label=_eps_label(e),
        )
    ax.axhline(0.0, color="black", linewidth=0.6)
    ax.set_xlabel("Hamming weight of the mask")
    ax.set_ylabel("rescaled Fourier component (dimensionless)")
    ax.set_xticks(np.unique(rows["weight"]).astype(int))
    ax.legend(fontsize=7, markerscale=3, ncols=2)


def _render_fig3(rows: np.ndarray, ax) -> None:
    series = _eps_series(rows)
    for e, color in series:
        sel = rows[rows["eps"] == e]
        order = np.argsort(sel["weight"])
        ax.plot(
            sel["weight"][order],
            sel["std_rescaled"][order],
            marker="o",
            markersize=3,
            color=color,
            label=_eps_label(e),
        )
    ax.set_yscale("log")
    ax.set_xlabel("Hamming weight of the mask")
    ax.set_ylabel("rescaled component std (dimensionless)")
    ax.set_xticks(np.unique(rows["weight"]).astype(int))
    ax.legend(fontsize=7, ncols=2)


_RENDERERS = {"fig1": _render_fig1, "fig2": _render_fig2, "fig3": _render_fig3}


def render(spec: FigureSpec) -> str:
    """Render one figure and return the output path.

    The input is validated before any drawing starts, so a schema
    mismatch or empty CSV never leaves a partial output file behind.
    """
    rows = load_rows(spec.input_csv, spec.kind)
    rc = {"svg.hashsalt": _HASHSALT, "svg.fonttype": "none"}
    with plt.rc_context(rc):
        fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=spec.dpi)
        try:
            _RENDERERS[spec.kind](rows, ax)
            if spec.title:
                ax.set_title(spec.title)
            fig.tight_layout()
            fig.savefig(spec.output, metadata={"Date": None})
        finally:
            plt.close(fig)
    return str(spec.output)
