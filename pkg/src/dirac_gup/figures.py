"""Thermodynamic curves over T/m for several deformation strengths, as CSV and SVG."""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from dirac_gup.algebra import OscillatorParams
from dirac_gup.statmech import (
    Convention,
    Method,
    Variant,
    partition_evaluator,
    thermo_sweep,
)

FIG1_ALPHAS = (0.05, 0.1, 0.2, 0.3)
QUANTITIES = ("F", "U", "S", "C_V")
# solid, dash-dotted, dashed, dotted
LINESTYLES = ("-", "-.", "--", ":")


def format_float(x) -> str:
    """Shortest decimal that round-trips; locale independent."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def _column_name(quantity: str) -> str:
    return f"{quantity}_over_m" if quantity in ("F", "U") else quantity


def fig1_curves(
    params: OscillatorParams,
    temperatures,
    method=Method.DIRECT_SUM,
    convention=Convention.CONSISTENT,
    variant=Variant.MAX_MOMENTUM,
    e_cut=None,
) -> dict[str, np.ndarray]:
    """Arrays F/m, U/m, S, C_V over ``temperatures`` (absolute T); nan marks breakdown."""
    z_fn = partition_evaluator(params, method, convention, variant, e_cut)
    points = thermo_sweep(z_fn, temperatures)
    m = params.m
    nan = float("nan")
    return {
        "F": np.array([pt.f / m if pt else nan for pt in points]),
        "U": np.array([pt.u / m if pt else nan for pt in points]),
        "S": np.array([pt.s if pt else nan for pt in points]),
        "C_V": np.array([pt.c_v if pt else nan for pt in points]),
    }


def _write_csv(path: Path, t_over_m, quantity, values):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["T_over_m", _column_name(quantity)])
        for t, v in zip(t_over_m, values):
            writer.writerow([format_float(t), format_float(v)])


def _write_svg(path: Path, t_over_m, curves_by_alpha, quantity):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "dirac-gup", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(5, 3.5))
        for (alpha, values), style in zip(curves_by_alpha.items(), LINESTYLES * 4):
            ax.plot(t_over_m, values, style, color="k", label=f"alpha={alpha:g}")
        ax.set_xlabel("T/m")
        ax.set_ylabel(_column_name(quantity).replace("_over_", "/"))
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def emit_fig1_bundle(
    outdir,
    m: float = 1.0,
    omega: float = 2.0,
    alphas=FIG1_ALPHAS,
    t_over_m=None,
    method=Method.DIRECT_SUM,
    convention=Convention.CONSISTENT,
    variant=Variant.MAX_MOMENTUM,
    svg: bool = True,
) -> list[Path]:
    """Write ``fig1_<Q>_alpha<a>.csv`` for every quantity and alpha, plus ``fig1_<Q>.svg``.

    Temperatures where the partition function is not positive are written as
    ``nan`` and show up as gaps in the plots.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if t_over_m is None:
        t_over_m = np.linspace(0.1, 5.0, 50)
    t_over_m = np.asarray(t_over_m, dtype=float)
    written = []
    by_quantity: dict[str, dict[float, np.ndarray]] = {q: {} for q in QUANTITIES}
    for alpha in alphas:
        params = OscillatorParams(m=m, omega=omega, alpha=alpha, gamma=1.0)
        curves = fig1_curves(params, t_over_m * m, method, convention, variant)
        for q in QUANTITIES:
            path = outdir / f"fig1_{q}_alpha{alpha:g}.csv"
            _write_csv(path, t_over_m, q, curves[q])
            by_quantity[q][alpha] = curves[q]
            written.append(path)
    if svg:
        for q in QUANTITIES:
            path = outdir / f"fig1_{q}.svg"
            _write_svg(path, t_over_m, by_quantity[q], q)
            written.append(path)
    return written


def undeformed_deviation(
    alphas,
    temperatures,
    quantity: str = "U",
    m: float = 1.0,
    omega: float = 2.0,
    reference_e_cut: float = 200.0,
) -> list[float]:
    """max_T |Q(alpha) - Q(0)| for each alpha, direct sum, default cutoffs for alpha > 0."""
    ref = fig1_curves(OscillatorParams(m=m, omega=omega, alpha=0.0), temperatures, e_cut=reference_e_cut)
    out = []
    for alpha in alphas:
        cur = fig1_curves(OscillatorParams(m=m, omega=omega, alpha=alpha), temperatures)
        out.append(float(np.max(np.abs(cur[quantity] - ref[quantity]))))
    return out
