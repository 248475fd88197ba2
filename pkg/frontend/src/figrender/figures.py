"""Figure assembly: which CSV columns land on which panel, and how.

Each figure id maps to a declarative layout over columns that must already
exist in the input files; nothing is recomputed here. Rendering is a pure
function of the CSV content and the job, so re-rendering identical inputs
plots identical data series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .io import CurveFile, CurveFileError, read_curve_file

__all__ = ["FIGURE_IDS", "FigureJob", "RenderResult", "render"]

FIGURE_IDS = ("fig1", "fig2", "fig3_ml_comparison", "fig4")
FORMATS = ("png", "svg")

_TRUTH = dict(color="#1f3d7a", lw=1.6)
_FLOOR_MT = dict(color="#c23b22", lw=1.2, ls="--")
_FLOOR_ML = dict(color="#2e7d32", lw=1.2, ls="-.")
_CEILING = dict(color="#c23b22", lw=1.2, ls="--")
_MARKER_LINE = dict(color="0.4", lw=0.9, ls=":")


@dataclass(frozen=True)
class FigureJob:
    """One rendering task: input CSVs, figure id, output path, image format."""

    csv_paths: tuple[str, ...]
    figure: str
    out_path: str
    format: str = "png"

    def __post_init__(self) -> None:
        if not self.csv_paths:
            raise ValueError("at least one CSV path is required")
        if self.figure not in FIGURE_IDS:
            raise ValueError(f"unknown figure id {self.figure!r}, expected one of {FIGURE_IDS}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}, expected one of {FORMATS}")


@dataclass
class RenderResult:
    """What a render actually drew: series name -> (x, y) arrays."""

    out_path: str
    figure: str
    series: dict = field(default_factory=dict)


def _vertical_marker(ax, value: float | None, label: str):
    if value is not None and value > 0:
        ax.axvline(value, **_MARKER_LINE)
        ax.text(
            value, 0.02, label, transform=ax.get_xaxis_transform(),
            ha="left", va="bottom", fontsize=8, color="0.3",
        )


def _plot(ax, result: RenderResult, t, values, name: str, label: str, **style):
    ax.plot(t, values, label=label, **style)
    result.series[name] = (t, values)


def _render_autocorr_panels(
    curve: CurveFile, result: RenderResult, suffix: str = ""
) -> plt.Figure:
    cols = [c + suffix for c in ("re_C", "im_C", "mt_floor", "ml_floor", "im_ceiling")]
    curve.require(["t", *cols])
    t = curve.column("t")
    fig, (ax_re, ax_im) = plt.subplots(2, 1, figsize=(5.2, 6.2), sharex=True)
    _plot(ax_re, result, t, curve.column("re_C" + suffix), "re_C" + suffix, "Re C(t)", **_TRUTH)
    _plot(ax_re, result, t, curve.column("mt_floor" + suffix), "mt_floor" + suffix,
          "quadratic floor", **_FLOOR_MT)
    _plot(ax_re, result, t, curve.column("ml_floor" + suffix), "ml_floor" + suffix,
          "linear floor", **_FLOOR_ML)
    _vertical_marker(ax_re, curve.metadata_float("tau_c"), r"$\tau_c$")
    lo = min(0.0, float(curve.column("re_C" + suffix).min())) - 0.05
    ax_re.set_ylim(lo, 1.08 * float(curve.column("re_C" + suffix).max()))
    ax_re.set_ylabel("Re C(t)")
    ax_re.legend(loc="lower left", fontsize=8)
    ax_re.set_title("(a) symmetric part and decay floors", fontsize=9, loc="left")

    im = curve.column("im_C" + suffix)
    ceiling = curve.column("im_ceiling" + suffix)
    _plot(ax_im, result, t, im, "im_C" + suffix, "Im C(t)", **_TRUTH)
    _plot(ax_im, result, t, ceiling, "im_ceiling" + suffix, "linear ceiling", **_CEILING)
    ax_im.plot(t, -ceiling, **_CEILING)
    span = max(float(abs(im).max()), 1e-12)
    ax_im.set_ylim(-3.0 * span, 3.0 * span)
    ax_im.set_xlabel("t")
    ax_im.set_ylabel("Im C(t)")
    ax_im.legend(loc="lower left", fontsize=8)
    ax_im.set_title("(b) antisymmetric part and its ceiling", fontsize=9, loc="left")
    return fig


def _render_fig1(files: list[CurveFile], result: RenderResult) -> plt.Figure:
    return _render_autocorr_panels(files[0], result)


def _render_fig2(files: list[CurveFile], result: RenderResult) -> plt.Figure:
    return _render_autocorr_panels(files[0], result, suffix="_norm")


def _render_fig3(files: list[CurveFile], result: RenderResult) -> plt.Figure:
    curve = files[0]
    curve.require(["t", "re_C", "ml_floor", "ml_floor_liouvillian"])
    t = curve.column("t")
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    _plot(ax, result, t, curve.column("re_C"), "re_C", "Re C(t)", **_TRUTH)
    _plot(ax, result, t, curve.column("ml_floor"), "ml_floor",
          "linear floor (ground-anchored)", **_FLOOR_ML)
    _plot(ax, result, t, curve.column("ml_floor_liouvillian"), "ml_floor_liouvillian",
          "linear floor (gap form)", color="#9467bd", lw=1.2, ls="--")
    ax.set_xlabel("t")
    ax.set_ylabel("Re C(t)")
    ax.set_title("two formulations of the linear bound", fontsize=9, loc="left")
    ax.legend(loc="lower left", fontsize=8)
    return fig


def _render_fig4(files: list[CurveFile], result: RenderResult) -> plt.Figure:
    curve = files[0]
    curve.require(["t", "fidelity", "ml_floor"])
    t = curve.column("t")
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    _plot(ax, result, t, curve.column("fidelity"), "fidelity",
          r"$|\langle\psi_0|\psi_t\rangle|$", **_TRUTH)
    _plot(ax, result, t, curve.column("ml_floor"), "ml_floor", "linear floor", **_FLOOR_ML)
    _vertical_marker(ax, curve.metadata_float("tau"), r"$\tau$")
    ax.set_xlabel("t")
    ax.set_ylabel("fidelity")
    ax.set_ylim(min(0.0, float(curve.column("ml_floor").min())) - 0.05, 1.05)
    ax.set_title("coherent-Gibbs overlap and its floor", fontsize=9, loc="left")
    ax.legend(loc="lower left", fontsize=8)
    return fig


_RENDERERS = {
    "fig1": _render_fig1,
    "fig2": _render_fig2,
    "fig3_ml_comparison": _render_fig3,
    "fig4": _render_fig4,
}


def render(job: FigureJob) -> RenderResult:
    """Render one figure; the output file is written only after validation.

    Raises
    ------
    CurveFileError
        Empty input or a column/figure-id mismatch; names the offending
        columns. Nothing is written in that case.
    """
    files = [read_curve_file(p) for p in job.csv_paths]
    result = RenderResult(out_path=job.out_path, figure=job.figure)
    fig = _RENDERERS[job.figure](files, result)
    try:
        fig.tight_layout()
        out = Path(job.out_path)
        if out.parent != Path(""):
            out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, format=job.format, dpi=150)
    finally:
        plt.close(fig)
    return result
