# greatroot/commands/checks.py
"""Convergence-rate checks of the edge approximations; each writes a RateReport CSV."""
import logging
from pathlib import Path
from typing import List, Optional

import typer
from typing_extensions import Annotated

from greatroot.cache import write_frame
from greatroot.commands.options import OutOpt
from greatroot.commands.output import emit_frame, handle_errors
from greatroot.liouville_green import airy_overlay, airy_rate_report, kernel_rate_report
from greatroot.models.enums import ScaleKind
from greatroot.params import jacobi_from_ab
from greatroot.schemas.lg import RateReport

logger = logging.getLogger(__name__)

DEFAULT_DEGREES = [50, 100, 200]

DegreesOpt = Annotated[Optional[List[int]], typer.Option("--N", min=1, help="Degrees, increasing.")]
AOpt = Annotated[float, typer.Option("--a", min=0.0, help="alpha = (N + 1/2) a.")]
BOpt = Annotated[float, typer.Option("--b", min=0.0, help="beta = (N + 1/2) b.")]
EdgeScaleOpt = Annotated[ScaleKind, typer.Option("--scale", help="Abscissa of the Airy comparison: x or u.")]


def _report_frame(report: RateReport):
    frame = report.to_frame()
    logger.info("%s: fitted exponent %s", report.label, report.fitted_exponent)
    return frame


@handle_errors
def lg_check(
    degrees: DegreesOpt = None,
    a: AOpt = 2.0,
    b: BOpt = 1.0,
    derivative: Annotated[bool, typer.Option("--derivative", help="Check the s-derivative against Ai'.")] = False,
    scale: EdgeScaleOpt = ScaleKind.X,
    plot_data: Annotated[
        Optional[Path], typer.Option("--plot-data", help="Also write (s, phi_check, airy) at the largest N.")
    ] = None,
    out: OutOpt = None,
):
    """Airy approximation of the scaled edge function across N."""
    degrees = degrees or DEFAULT_DEGREES
    report = airy_rate_report(degrees, a, b, derivative, scale_kind=scale)
    if plot_data is not None:
        j = jacobi_from_ab(max(degrees), a, b)
        write_frame(airy_overlay(j.N, j.alpha, j.beta, scale_kind=scale), plot_data)
    emit_frame(_report_frame(report), out)


@handle_errors
def kernel_check(
    degrees: DegreesOpt = None,
    a: AOpt = 2.0,
    b: BOpt = 1.0,
    naive: Annotated[bool, typer.Option("--naive", help="Use the degree-N u-scaling instead of the paired one.")] = False,
    out: OutOpt = None,
):
    """Airy-kernel approximation of the scaled Christoffel-Darboux kernel across N."""
    report = kernel_rate_report(degrees or DEFAULT_DEGREES, a, b, paired=not naive)
    emit_frame(_report_frame(report), out)
