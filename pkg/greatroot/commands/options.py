# greatroot/commands/options.py
"""Options shared by several commands and the reduction of setting options to (p, m, n)."""
from pathlib import Path
from typing import Dict, List, Optional

import typer
from typing_extensions import Annotated

from greatroot.approx import stat_params_for
from greatroot.models.enums import Ensemble, ScaleKind, Setting
from greatroot.schemas.montecarlo import SimConfig
from greatroot.schemas.params import StatParams
from greatroot.utils.errors import DomainError

SettingOpt = Annotated[Setting, typer.Option("--setting", help="Statistical setting the triple is derived from.")]
POpt = Annotated[Optional[int], typer.Option("--p", help="Dimension (raw, cov_equal, discrim, subspace).")]
MOpt = Annotated[Optional[int], typer.Option("--m", help="Error degrees of freedom (raw).")]
NOpt = Annotated[Optional[int], typer.Option("--n", help="Hypothesis df (raw) or ambient dimension (subspace).")]
PVarsOpt = Annotated[Optional[int], typer.Option("--pvars", help="First variable count (cca).")]
QVarsOpt = Annotated[Optional[int], typer.Option("--qvars", help="Second variable count (cca).")]
NObsOpt = Annotated[Optional[int], typer.Option("--nobs", help="Observations (cca, mlm, discrim).")]
MeanCorrectOpt = Annotated[bool, typer.Option("--mean-correct/--no-mean-correct", help="Centered data (cca).")]
ROpt = Annotated[Optional[int], typer.Option("--r", help="Responses (mlm).")]
GOpt = Annotated[Optional[int], typer.Option("--g", help="Hypothesis df (mlm) or groups (discrim).")]
QOpt = Annotated[Optional[int], typer.Option("--q", help="Regressors (mlm) or fixed subspace dimension (subspace).")]
N1Opt = Annotated[Optional[int], typer.Option("--n1", help="First sample df (cov_equal).")]
N2Opt = Annotated[Optional[int], typer.Option("--n2", help="Second sample df (cov_equal).")]

EnsembleOpt = Annotated[Ensemble, typer.Option("--ensemble", help="real or complex data.")]
ScaleOpt = Annotated[ScaleKind, typer.Option("--scale", help="Scale on which the statistic is standardised: logit or theta.")]
OutOpt = Annotated[Optional[Path], typer.Option("--out", help="CSV destination; standard output when absent.")]
ThreadsOpt = Annotated[Optional[int], typer.Option("--threads", min=1, help="Worker threads for simulation chunks.")]
SeedOpt = Annotated[int, typer.Option("--seed", min=0, help="Seed of the chunk streams.")]
ChunksOpt = Annotated[Optional[int], typer.Option("--chunks", min=1, help="Independent random streams.")]

# option values each setting needs, keyed by the builder's argument name
SETTING_OPTIONS: Dict[Setting, Dict[str, str]] = {
    Setting.RAW: {"p": "p", "m": "m", "n": "n"},
    Setting.CCA: {"p": "pvars", "q": "qvars", "n": "nobs"},
    Setting.MLM: {"r": "r", "g": "g", "q": "q", "n": "nobs"},
    Setting.COV_EQUAL: {"p": "p", "n1": "n1", "n2": "n2"},
    Setting.DISCRIM: {"p": "p", "g": "g", "n": "nobs"},
    Setting.SUBSPACE: {"p": "p", "q": "q", "n": "n"},
}


def stat_params_from_options(setting: Setting, mean_correct: bool = True, **values: Optional[int]) -> StatParams:
    wanted = SETTING_OPTIONS[setting]
    missing: List[str] = [f"--{opt}" for opt in wanted.values() if values.get(opt) is None]
    if missing:
        raise DomainError(f"setting {setting.value} requires {', '.join(missing)}")
    kwargs = {arg: values[opt] for arg, opt in wanted.items()}
    if setting is Setting.CCA:
        kwargs["mean_corrected"] = mean_correct
    return stat_params_for(setting, **kwargs)


def setting_inputs(setting: Setting, mean_correct: bool = True, **values: Optional[int]) -> dict:
    """Input echo restricted to the options the setting uses."""
    echo = {"setting": setting.value}
    echo.update({opt: values.get(opt) for opt in SETTING_OPTIONS[setting].values()})
    if setting is Setting.CCA:
        echo["mean_correct"] = mean_correct
    return echo


def sim_config(
    params: StatParams,
    ensemble: Ensemble,
    reps: int,
    seed: int,
    chunks: Optional[int],
    threads: Optional[int],
    scale: ScaleKind = ScaleKind.LOGIT,
) -> SimConfig:
    """SimConfig from command options; unset chunk and thread counts fall back to settings."""
    fields = dict(params=params, ensemble=ensemble, reps=reps, seed=seed, scale_kind=scale)
    if chunks is not None:
        fields["chunk_count"] = chunks
    if threads is not None:
        fields["threads"] = threads
    return SimConfig(**fields)
