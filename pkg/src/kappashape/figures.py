"""Command sequences reproducing the example figures as SVG files.

Each figure is a short list of CLI invocations (generate, eval, render) that
writes its intermediate landmark and curve files next to the SVG, so the
whole pipeline can be rerun or inspected step by step.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

__all__ = ["FigureSpec", "Panel", "FIGURES", "figure_commands", "figure_outputs"]


@dataclass(frozen=True)
class Panel:
    """One landmark set drawn at several kappas."""

    name: str
    generate: tuple[str, ...]
    kappas: tuple[float, ...]
    samples: int | None = None


@dataclass(frozen=True)
class FigureSpec:
    title: str
    svg: str
    panels: tuple[Panel, ...]
    layout: str = "panels"
    render: tuple[str, ...] = ()
    columns: int | None = None
    show_landmarks: bool = False


KAPPAS_FOUR = (0.01, 0.3, 0.5, 1.0)

FIGURES: dict[int, FigureSpec] = {
    1: FigureSpec(
        "logistic map landmarks, mu=3.5, y0=0.3, 149 iterations",
        "fig1_logistic.svg",
        (Panel("logistic", ("logistic", "--mu", "3.5", "--y0", "0.3", "--n", "150"),
               (0.01, 0.1, 0.5, 1.0, 2.0, 5.0)),),
        columns=3,
    ),
    2: FigureSpec(
        "periodic waveform from landmarks (1, 4, 2, 2, 1)",
        "fig2_waveform.svg",
        (Panel("waveform", ("waveform",), KAPPAS_FOUR, 201),),
    ),
    3: FigureSpec(
        "50 uniform random landmarks in the unit square with their convex hull",
        "fig3_random50.svg",
        (Panel("random50", ("random", "--n", "50", "--d", "2", "--seed", "0"), (0.01, 0.1, 0.5, 1.0, 5.0, 10.0)),),
        render=("--hull",),
        columns=3,
        show_landmarks=True,
    ),
    4: FigureSpec(
        "closed polygons and graphs at kappa 0.01, 0.3, 0.5, 1",
        "fig4_polygons.svg",
        (
            Panel("A_triangle", ("triangle",), KAPPAS_FOUR, 301),
            Panel("B_repeated_triangle", ("repeated-triangle",), KAPPAS_FOUR, 501),
            Panel("C_hexagon", ("polygon", "--p", "6"), KAPPAS_FOUR, 601),
            Panel("D_star6", ("star", "--p", "6"), KAPPAS_FOUR, 1201),
            Panel("E_planar_graph", ("planar-graph",), KAPPAS_FOUR, None),
        ),
        layout="overlay",
    ),
    5: FigureSpec(
        "lemniscates at kappa 0.01, 0.3, 0.5, 1",
        "fig5_lemniscates.svg",
        (
            Panel("A_lemniscate_square", ("lemniscate-square",), KAPPAS_FOUR, 401),
            Panel("B_lemniscate_six", ("lemniscate-six",), KAPPAS_FOUR, 601),
        ),
        layout="overlay",
    ),
    6: FigureSpec(
        "Hilbert curve landmarks, Q=5",
        "fig6_hilbert.svg",
        (Panel("hilbert5", ("hilbert", "--q", "5"), (0.01, 0.3, 1.0, 4.0)),),
        columns=2,
    ),
    7: FigureSpec(
        "Hilbert curve landmarks, Q=5, kappa growing by a factor of four",
        "fig7_hilbert_sweep.svg",
        (Panel("hilbert5", ("hilbert", "--q", "5"), (0.1, 0.4, 1.6, 6.4)),),
        columns=2,
    ),
    8: FigureSpec(
        "trefoil knot projected on the xy plane, colored by height",
        "fig8_trefoil.svg",
        (Panel("trefoil", ("trefoil",), (0.01, 0.3, 0.55, 1.0), 2001),),
        render=("--color-by-z",),
        columns=2,
    ),
    9: FigureSpec(
        "Lorenz landmarks, N=1000, delta=0.01, rho=28, sigma=10, beta=8/3, z against x",
        "fig9_lorenz.svg",
        (Panel("lorenz", ("lorenz",), (0.01, 1.0, 5.0, 20.0)),),
        render=("--projection", "xz"),
        columns=2,
    ),
}


def figure_commands(number: int, out_dir) -> list[list[str]]:
    """CLI argument lists that build figure ``number`` inside ``out_dir``."""
    spec = FIGURES[number]
    out = Path(out_dir) / f"fig{number}"
    cmds: list[list[str]] = []
    for panel in spec.panels:
        lm = out / f"{panel.name}.json"
        cmds.append(["generate", *panel.generate, "--out", str(lm)])
        kappas = ",".join(f"{k:g}" for k in panel.kappas)
        ev = ["eval", str(lm), "--kappas", kappas, "--out", str(out / f"{panel.name}_k{{kappa}}.csv")]
        if panel.samples:
            ev += ["--samples", str(panel.samples)]
        cmds.append(ev)
        curves = [str(out / f"{panel.name}_k{k:g}.csv") for k in panel.kappas]
        labels = ",".join(f"kappa={k:g}" for k in panel.kappas)
        if spec.layout == "overlay":
            svg = Path(out_dir) / f"{Path(spec.svg).stem}_{panel.name}.svg"
            r = ["render", *curves, "--layout", "overlay", "--labels", labels, "--title", panel.name.replace("_", " ")]
        else:
            svg = Path(out_dir) / spec.svg
            r = ["render", *curves, "--layout", "panels", "--labels", labels, "--title", spec.title]
            if spec.columns:
                r += ["--columns", str(spec.columns)]
        if spec.show_landmarks:
            r += ["--landmarks", str(lm)]
        r += [*spec.render, "--out", str(svg)]
        cmds.append(r)
    return cmds


def figure_outputs(number: int, out_dir) -> list[Path]:
    """SVG files written by :func:`figure_commands`."""
    return [Path(c[-1]) for c in figure_commands(number, out_dir) if c[0] == "render"]
