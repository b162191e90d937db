# greatroot/commands/tables.py
"""tw: Tracy-Widom values and percentiles. table: simulated coverage at the Tracy-Widom percentiles."""
from typing import List, Optional

import numpy as np
import pandas as pd
import typer
from typing_extensions import Annotated

from greatroot.commands.options import (
    ChunksOpt, EnsembleOpt, MOpt, NOpt, OutOpt, POpt, ScaleOpt, SeedOpt, ThreadsOpt,
    sim_config, stat_params_from_options,
)
from greatroot.commands.output import emit_frame, emit_json, handle_errors
from greatroot.models.enums import Caveat, Ensemble, ScaleKind, Setting
from greatroot.montecarlo import TABLE_LEVELS, empirical_table
from greatroot.special import tw_cdf, tw_cdf_flagged, tw_quantile

# -6(0.1)6
TW_GRID = np.round(np.linspace(-6.0, 6.0, 121), 10)


@handle_errors
def tw(
    beta: Annotated[int, typer.Option("--beta", min=1, max=2, help="1 for real, 2 for complex data.")] = 1,
    s: Annotated[Optional[List[float]], typer.Option("--s", help="Points at which to evaluate F.")] = None,
    quantile: Annotated[Optional[List[float]], typer.Option("--quantile", help="Probabilities to invert.")] = None,
    out: OutOpt = None,
):
    """F_beta at points, percentiles of F_beta, or (with neither) a CSV over -6(0.1)6."""
    if not s and not quantile:
        emit_frame(pd.DataFrame({"s": TW_GRID, "F": tw_cdf(beta, TW_GRID)}), out)
        return

    values, caveats = [], []
    for point in s or []:
        F, extrapolated = tw_cdf_flagged(beta, point)
        values.append({"s": point, "F": F, "extrapolated": extrapolated})
        if extrapolated and Caveat.EXTRAPOLATED_TAIL not in caveats:
            caveats.append(Caveat.EXTRAPOLATED_TAIL)
    quantiles = [{"prob": prob, "s": tw_quantile(beta, prob)} for prob in quantile or []]
    emit_json(
        "tw",
        {"beta": beta, "s": list(s or []), "quantile": list(quantile or [])},
        {"cdf": values, "quantiles": quantiles},
        caveats,
    )


@handle_errors
def table(
    p: POpt = None,
    m: MOpt = None,
    n: NOpt = None,
    reps: Annotated[int, typer.Option("--reps", min=1, help="Monte Carlo replications.")] = 10_000,
    seed: SeedOpt = 0,
    chunks: ChunksOpt = None,
    threads: ThreadsOpt = None,
    ensemble: EnsembleOpt = Ensemble.REAL,
    scale: ScaleOpt = ScaleKind.THETA,
    percentile: Annotated[
        Optional[List[float]], typer.Option("--percentile", help="Tracy-Widom probability levels of the rows.")
    ] = None,
    out: OutOpt = None,
):
    """Estimated P(standardised root <= TW percentile) at each level, with binomial standard errors."""
    params = stat_params_from_options(Setting.RAW, p=p, m=m, n=n)
    cfg = sim_config(params, ensemble, reps, seed, chunks, threads, scale)
    result = empirical_table(cfg, levels=percentile or TABLE_LEVELS)
    emit_frame(result.to_frame(), out)

