# greatroot/commands/inference.py
"""pvalue and crit: the Tracy-Widom test of the greatest root in a statistical setting."""
import typer
from typing_extensions import Annotated

from greatroot.approx import greatest_root_quantile, greatest_root_test
from greatroot.commands.options import (
    EnsembleOpt, GOpt, MeanCorrectOpt, MOpt, N1Opt, N2Opt, NObsOpt, NOpt, POpt, PVarsOpt, QOpt, QVarsOpt,
    ROpt, ScaleOpt, SettingOpt, setting_inputs, stat_params_from_options,
)
from greatroot.commands.output import emit_json, handle_errors
from greatroot.edge_scaling import greatest_root_scaling
from greatroot.models.enums import Ensemble, ScaleKind, Setting
from greatroot.special import tw_quantile
from greatroot.utils.errors import DomainError


def _check_scale(scale: ScaleKind) -> None:
    if scale not in (ScaleKind.LOGIT, ScaleKind.THETA):
        raise DomainError(f"--scale must be logit or theta (got {scale.value})")


@handle_errors
def pvalue(
    theta: Annotated[float, typer.Option("--theta", help="Observed greatest root, in (0, 1).")],
    setting: SettingOpt = Setting.RAW,
    p: POpt = None,
    m: MOpt = None,
    n: NOpt = None,
    pvars: PVarsOpt = None,
    qvars: QVarsOpt = None,
    nobs: NObsOpt = None,
    mean_correct: MeanCorrectOpt = True,
    r: ROpt = None,
    g: GOpt = None,
    q: QOpt = None,
    n1: N1Opt = None,
    n2: N2Opt = None,
    ensemble: EnsembleOpt = Ensemble.REAL,
    scale: ScaleOpt = ScaleKind.LOGIT,
):
    """Approximate p-value of an observed greatest root."""
    _check_scale(scale)
    values = dict(p=p, m=m, n=n, pvars=pvars, qvars=qvars, nobs=nobs, r=r, g=g, q=q, n1=n1, n2=n2)
    s = stat_params_from_options(setting, mean_correct, **values)
    result = greatest_root_test(s, theta, ensemble, scale)
    inputs = setting_inputs(setting, mean_correct, **values)
    inputs.update(theta=theta, ensemble=ensemble.value, scale=scale.value)
    emit_json(
        "pvalue",
        inputs,
        {
            "p": s.p, "m": s.m, "n": s.n,
            "mu": result.scaling.center,
            "sigma": result.scaling.scale,
            "s": result.s_value,
            "log_cdf": result.log_cdf,
            "p_value": result.p_value,
        },
        result.caveats,
    )


@handle_errors
def crit(
    alpha: Annotated[float, typer.Option("--alpha", help="Test level.")] = 0.05,
    setting: SettingOpt = Setting.RAW,
    p: POpt = None,
    m: MOpt = None,
    n: NOpt = None,
    pvars: PVarsOpt = None,
    qvars: QVarsOpt = None,
    nobs: NObsOpt = None,
    mean_correct: MeanCorrectOpt = True,
    r: ROpt = None,
    g: GOpt = None,
    q: QOpt = None,
    n1: N1Opt = None,
    n2: N2Opt = None,
    ensemble: EnsembleOpt = Ensemble.REAL,
    scale: ScaleOpt = ScaleKind.LOGIT,
):
    """Critical value of the greatest root at level alpha."""
    _check_scale(scale)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"--alpha must lie in (0, 1) (got {alpha})")
    values = dict(p=p, m=m, n=n, pvars=pvars, qvars=qvars, nobs=nobs, r=r, g=g, q=q, n1=n1, n2=n2)
    s = stat_params_from_options(setting, mean_correct, **values)
    scaling = greatest_root_scaling(s, ensemble, scale)
    inputs = setting_inputs(setting, mean_correct, **values)
    inputs.update(alpha=alpha, ensemble=ensemble.value, scale=scale.value)
    emit_json(
        "crit",
        inputs,
        {
            "p": s.p, "m": s.m, "n": s.n,
            "mu": scaling.center,
            "sigma": scaling.scale,
            "s": tw_quantile(ensemble.beta_index, 1.0 - alpha),
            "theta": greatest_root_quantile(s, 1.0 - alpha, ensemble, scale),
        },
        s.caveats(ensemble),
    )
