# greatroot/commands/simulation.py
import numpy as np
import typer
from scipy import stats
from typing_extensions import Annotated

from greatroot import approx, montecarlo
from greatroot.commands.options import (
    ChunksOpt, EnsembleOpt, MOpt, NOpt, OutOpt, POpt, ScaleOpt, SeedOpt, ThreadsOpt,
    sim_config, stat_params_from_options,
)
from greatroot.commands.output import emit_frame, emit_json, handle_errors
from greatroot.models.enums import Ensemble, ScaleKind, Setting


@handle_errors
def simulate(
    p: POpt = None,
    m: MOpt = None,
    n: NOpt = None,
    reps: Annotated[int, typer.Option("--reps", min=1, help="Monte Carlo replications.")] = 10_000,
    seed: SeedOpt = 0,
    chunks: ChunksOpt = None,
    threads: ThreadsOpt = None,
    ensemble: EnsembleOpt = Ensemble.REAL,
    scale: ScaleOpt = ScaleKind.LOGIT,
    plot_data: Annotated[
        bool, typer.Option("--plot-data", help="Write sorted draws against Tracy-Widom quantiles instead.")
    ] = False,
    out: OutOpt = None,
):
    """Simulate the greatest root and compare with the Tracy-Widom law."""
    params = stat_params_from_options(Setting.RAW, p=p, m=m, n=n)
    cfg = sim_config(params, ensemble, reps, seed, chunks, threads, scale)
    if plot_data:
        emit_frame(montecarlo.prob_plot_data(cfg), out)
    else:
        emit_frame(montecarlo.empirical_table(cfg).to_frame(), out)


@handle_errors
def spectrum(
    p: POpt = None,
    m: MOpt = None,
    n: NOpt = None,
    draws: Annotated[int, typer.Option("--draws", min=1, help="Simulated matrices.")] = 50,
    seed: SeedOpt = 0,
    chunks: ChunksOpt = None,
    threads: ThreadsOpt = None,
    ensemble: EnsembleOpt = Ensemble.REAL,
):
    """Pooled simulated spectrum against the Wachter limit."""
    params = stat_params_from_options(Setting.RAW, p=p, m=m, n=n)
    cfg = sim_config(params, ensemble, draws, seed, chunks, threads)
    values = np.sort(montecarlo.simulate_spectra(cfg).ravel())
    d = approx.wachter(params)
    ks = stats.kstest(values, approx.wachter_cdf_interpolant(d))
    emit_json(
        "spectrum",
        {"p": p, "m": m, "n": n, "draws": draws, "seed": seed, "chunks": cfg.chunk_count, "ensemble": ensemble.value},
        {
            "theta_minus": d.theta_minus,
            "theta_plus": d.theta_plus,
            "normalization": d.normalization,
            "printed_constant_ratio": d.printed_constant_ratio,
            "ks_distance": float(ks.statistic),
            "empirical_mean": float(values.mean()),
            "wachter_mean": approx.wachter_mean(d),
        },
    )
