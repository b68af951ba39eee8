"""Figure reproduction: spectral-picture files and weight tables.

Writes, for each of the three concrete spectral pictures, a deterministic SVG
and a matplotlib PNG rendering, and for each concrete weight diagram a text
table (rows printed top-down so the j = 0 row sits at the bottom, matching the
diagram layout) plus a delimited CSV of the weights and moments.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .lattice import (
    WeightDiagram2D,
    make_example_bergman,
    make_example_exof1atom,
    make_example_stair,
    make_thm_khypo,
)
from .spectra import (
    GeometricFamily,
    Interval,
    PictureSet,
    Point,
    picture_example_exof1atom,
    picture_thm_important,
    picture_thm_khypo,
)
from .svgplot import GEOM_MEMBERS, render_svg

PNG_DPI = 100
KHYPO_KAPPA = 2.0
KHYPO_Y0 = 0.5**0.5
IMPORTANT_ELLS = (4, 3, 2)
EXOF_ALPHA, EXOF_BETA = 0.5, 0.8
STAIR_A = 0.5


def weight_table_text(d: WeightDiagram2D, region: int = 6) -> str:
    """Aligned alpha/beta table over region x region, rows bottom-to-top."""
    lines = [f"family: {d.family.tag}  params: {_fmt_params(d.family.params)}"]
    for j in reversed(range(region)):
        alphas = "  ".join(f"{d.alpha(i, j):8.6f}" for i in range(region))
        betas = "  ".join(f"{d.beta(i, j):8.6f}" for i in range(region))
        lines.append(f"j={j}  alpha: {alphas}")
        lines.append(f"     beta:  {betas}")
    return "\n".join(lines) + "\n"


def _fmt_params(params: dict) -> str:
    items = sorted(params.items())
    return "{" + ", ".join(f"{k}={v}" for k, v in items) + "}"


def weight_table_csv(d: WeightDiagram2D, region: int = 6) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "alpha", "beta", "gamma"])
    for i in range(region):
        for j in range(region):
            w.writerow(
                [i, j, f"{d.alpha(i, j):.6f}", f"{d.beta(i, j):.6f}", f"{d.gamma((i, j)):.6f}"]
            )
    return buf.getvalue()


def _plot_radial_product(ax, p, q, base_layer: bool):
    color = "0.55" if base_layer else "black"
    gp, gq = isinstance(p, GeometricFamily), isinstance(q, GeometricFamily)
    if gp or gq:
        fam, other, axis = (p, q, 0) if gp else (q, p, 1)
        for r in fam.members(GEOM_MEMBERS):
            pt = Point(r)
            _plot_radial_product(ax, *(pt, other) if axis == 0 else (other, pt), base_layer)
        anchor = other.lo if isinstance(other, Interval) else other.r
        xy = ((0.0, anchor), (fam.members(GEOM_MEMBERS)[-1], anchor))
        if axis == 1:
            xy = tuple((a, b) for b, a in xy)
        ax.plot(*zip(*xy), linestyle=":", linewidth=1.0, color=color)
        ax.plot([xy[0][0]], [xy[0][1]], marker="o", mfc="none", mec=color, ms=5)
        return
    if isinstance(p, Interval) and isinstance(q, Interval):
        ax.add_patch(
            Rectangle((p.lo, q.lo), p.hi - p.lo, q.hi - q.lo, facecolor="0.85", edgecolor="none")
        )
        return
    if isinstance(p, Interval):
        ax.plot([p.lo, p.hi], [q.r, q.r], color=color, linewidth=2.0)
        return
    if isinstance(q, Interval):
        ax.plot([p.r, p.r], [q.lo, q.hi], color=color, linewidth=2.0)
        return
    ax.plot([p.r], [q.r], marker="o", color=color, ms=4)


def render_png(pictures: PictureSet, title: str, path: Path):
    fig, ax = plt.subplots(figsize=(6, 4), dpi=PNG_DPI)
    for pic, base in ((pictures.sigma_t.normal_form(), True), (pictures.sigma_te.normal_form(), False)):
        for p, q in pic.primitives:
            _plot_radial_product(ax, p, q, base)
    ax.set_title(title, fontsize=10)
    ax.set_xlabel("|z1|")
    ax.set_ylabel("|z2|")
    ax.set_xlim(left=-0.05)
    ax.set_ylim(bottom=-0.05)
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": "shiftspec"})
    plt.close(fig)


def reproduce_figures(out_dir) -> list[Path]:
    """Write the three spectral pictures (SVG + PNG) and four weight tables (TXT + CSV).

    Output is deterministic: identical bytes on every run with the same inputs.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    figures = [
        (
            "spectrum_khypo_kappa2",
            picture_thm_khypo(KHYPO_KAPPA),
            f"two-atom row family, kappa={KHYPO_KAPPA:g}",
        ),
        (
            "spectrum_important_k3",
            picture_thm_important(IMPORTANT_ELLS, 1.0),
            f"bergman-like rows {IMPORTANT_ELLS}, c=1",
        ),
        (
            "spectrum_exof1atom",
            picture_example_exof1atom(EXOF_ALPHA, EXOF_BETA),
            f"one-atom slices, alpha={EXOF_ALPHA:g}, beta={EXOF_BETA:g}",
        ),
    ]
    for stem, pics, title in figures:
        svg_path = out / f"{stem}.svg"
        svg_path.write_text(render_svg(pics, title))
        written.append(svg_path)
        png_path = out / f"{stem}.png"
        render_png(pics, title, png_path)
        written.append(png_path)

    diagrams = [
        ("weights_example_bergman", make_example_bergman()),
        ("weights_exof1atom", make_example_exof1atom(EXOF_ALPHA, EXOF_BETA)),
        ("weights_stair", make_example_stair(STAIR_A)),
        ("weights_khypo", make_thm_khypo(KHYPO_KAPPA, KHYPO_Y0)),
    ]
    for stem, d in diagrams:
        txt_path = out / f"{stem}.txt"
        txt_path.write_text(weight_table_text(d))
        written.append(txt_path)
        csv_path = out / f"{stem}.csv"
        csv_path.write_text(weight_table_csv(d))
        written.append(csv_path)
    return written
