# greatroot/approx.py
"""
Tracy-Widom approximations for the greatest and smallest roots, the settings
that reduce to a (p, m, n) triple, and the limiting Wachter density of the bulk.
"""
import logging
import math
from typing import Callable, Dict, Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.special import expit, logit

from greatroot.edge_scaling import greatest_root_scaling, smallest_root_scaling
from greatroot.models.enums import CAVEAT_MESSAGES, Caveat, Ensemble, ScaleKind, Setting
from greatroot.params import angles_from_stat
from greatroot.schemas.approx import TestResult, WachterDensity
from greatroot.schemas.params import StatParams
from greatroot.schemas.scaling import EdgeScaling
from greatroot.special import tw_log_cdf, tw_quantile, tw_table
from greatroot.utils.errors import DomainError
from greatroot.utils.quadrature import adaptive_gauss_legendre

logger = logging.getLogger(__name__)

WACHTER_TOL = 1e-12


def _statistic(theta: float, scale_kind: ScaleKind) -> float:
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (0, 1) (got {theta})")
    if ScaleKind(scale_kind) is ScaleKind.LOGIT:
        return float(logit(theta))
    return float(theta)


def _standardized(s: StatParams, theta: float, ensemble: Ensemble, scale_kind: ScaleKind) -> Tuple[EdgeScaling, float]:
    scaling = greatest_root_scaling(s, ensemble, scale_kind)
    return scaling, scaling.standardize(_statistic(theta, scale_kind))


# ================================
# GREATEST AND SMALLEST ROOT
# ================================

def greatest_root_log_cdf(
    s: StatParams,
    theta: float,
    ensemble: Ensemble = Ensemble.REAL,
    scale_kind: ScaleKind = ScaleKind.LOGIT,
) -> float:
    """log P(greatest root <= theta); strictly increasing in theta where the cdf itself rounds to 1."""
    _, z = _standardized(s, theta, ensemble, scale_kind)
    return float(tw_log_cdf(Ensemble(ensemble).beta_index, z))


def greatest_root_cdf(
    s: StatParams,
    theta: float,
    ensemble: Ensemble = Ensemble.REAL,
    scale_kind: ScaleKind = ScaleKind.LOGIT,
) -> float:
    return math.exp(greatest_root_log_cdf(s, theta, ensemble, scale_kind))


def greatest_root_pvalue(
    s: StatParams,
    theta: float,
    ensemble: Ensemble = Ensemble.REAL,
    scale_kind: ScaleKind = ScaleKind.LOGIT,
) -> float:
    return -math.expm1(greatest_root_log_cdf(s, theta, ensemble, scale_kind))


def greatest_root_quantile(
    s: StatParams,
    prob: float,
    ensemble: Ensemble = Ensemble.REAL,
    scale_kind: ScaleKind = ScaleKind.LOGIT,
) -> float:
    """theta with greatest_root_cdf(theta) = prob."""
    scaling = greatest_root_scaling(s, ensemble, scale_kind)
    value = scaling.unstandardize(tw_quantile(Ensemble(ensemble).beta_index, prob))
    if ScaleKind(scale_kind) is ScaleKind.LOGIT:
        return float(expit(value))
    if not 0.0 < value < 1.0:
        raise DomainError(
            f"the theta-scale quantile {value:.6g} falls outside (0, 1); use the logit scale",
            {"prob": prob, "center": scaling.center, "scale": scaling.scale},
        )
    return value


def smallest_root_cdf(
    s: StatParams,
    theta: float,
    ensemble: Ensemble = Ensemble.REAL,
    scale_kind: ScaleKind = ScaleKind.LOGIT,
) -> float:
    """P(smallest root <= theta) = 1 - F((center - w) / scale) with the reflected scaling."""
    scaling = smallest_root_scaling(s, ensemble, scale_kind)
    z = scaling.standardize(_statistic(theta, scale_kind))
    return -math.expm1(tw_log_cdf(Ensemble(ensemble).beta_index, z))


def greatest_root_test(
    s: StatParams,
    theta: float,
    ensemble: Ensemble = Ensemble.REAL,
    scale_kind: ScaleKind = ScaleKind.LOGIT,
) -> TestResult:
    ensemble = Ensemble(ensemble)
    scaling, z = _standardized(s, theta, ensemble, scale_kind)
    caveats = s.caveats(ensemble)
    if tw_table(ensemble.beta_index).is_extrapolated(z):
        caveats.append(Caveat.EXTRAPOLATED_TAIL)
    for caveat in caveats:
        logger.info("%s: %s", caveat.value, CAVEAT_MESSAGES[caveat])
    log_cdf = float(tw_log_cdf(ensemble.beta_index, z))
    return TestResult(
        params=s,
        statistic_theta=theta,
        s_value=z,
        log_cdf=log_cdf,
        p_value=-math.expm1(log_cdf),
        scaling=scaling,
        caveats=caveats,
    )


# ================================
# STATISTICAL SETTINGS
# ================================

def _triple(setting: Setting, p: int, m: int, n: int, m_rule: str) -> StatParams:
    if p < 1 or n < 1:
        raise DomainError(f"{setting.value}: dimension and hypothesis df must be positive (got p={p}, n={n})")
    if m < p:
        raise DomainError(
            f"{setting.value}: error df {m_rule} = {m} must be at least p = {p}",
            {"p": p, "m": m, "n": n},
        )
    return StatParams(p=p, m=m, n=n)


def from_raw(p: int, m: int, n: int) -> StatParams:
    return _triple(Setting.RAW, p, m, n, "m")


def from_cca(p: int, q: int, n: int, mean_corrected: bool = True) -> StatParams:
    """Canonical correlations of p and q variables on n observations: (p, n' - q, q)."""
    n_eff = n - 1 if mean_corrected else n
    return _triple(Setting.CCA, p, n_eff - q, q, "n' - q" if mean_corrected else "n - q")


def from_mlm(r: int, g: int, q: int, n: int) -> StatParams:
    """Multivariate linear model, r responses, g hypothesis df, q regressors, n observations."""
    return _triple(Setting.MLM, r, n - q, g, "n - q")


def from_cov_equal(p: int, n1: int, n2: int) -> StatParams:
    return _triple(Setting.COV_EQUAL, p, n1, n2, "n1")


def from_discrim(p: int, g: int, n: int) -> StatParams:
    if g < 2:
        raise DomainError(f"discrim: at least two groups are required (got g={g})")
    return _triple(Setting.DISCRIM, p, n - g, g - 1, "n - g")


def from_subspaces(p: int, q: int, n: int) -> StatParams:
    """Principal angles between a random p-dimensional subspace and a fixed q-dimensional one in R^n."""
    if p + q > n:
        raise DomainError(f"subspace: p + q must not exceed n (got p={p}, q={q}, n={n})")
    return _triple(Setting.SUBSPACE, p, n - q, q, "n - q")


SETTING_BUILDERS: Dict[Setting, Callable[..., StatParams]] = {
    Setting.RAW: from_raw,
    Setting.CCA: from_cca,
    Setting.MLM: from_mlm,
    Setting.COV_EQUAL: from_cov_equal,
    Setting.DISCRIM: from_discrim,
    Setting.SUBSPACE: from_subspaces,
}


def stat_params_for(setting: Setting, **kwargs) -> StatParams:
    return SETTING_BUILDERS[Setting(setting)](**kwargs)


# ================================
# WACHTER DENSITY
# ================================

def wachter(s: StatParams) -> WachterDensity:
    a = angles_from_stat(s)
    lo = math.sin(0.5 * (a.phi - a.gamma)) ** 2
    hi = math.sin(0.5 * (a.phi + a.gamma)) ** 2
    mass = _wachter_integral(lo, hi, 0.5 * math.pi, power=0)
    return WachterDensity(theta_minus=lo, theta_plus=hi, normalization=1.0 / mass, gamma=a.gamma)


def _wachter_integral(lo: float, hi: float, v_top: float, power: int) -> float:
    """int theta^power sqrt((hi - theta)(theta - lo)) / (theta (1 - theta)) over theta = lo + (hi - lo) sin^2 v."""
    width = hi - lo

    def integrand(v):
        sv, cv = np.sin(v), np.cos(v)
        theta = lo + width * sv * sv
        return 2.0 * width * width * sv * sv * cv * cv * theta ** (power - 1) / (1.0 - theta)

    return adaptive_gauss_legendre(integrand, 0.0, v_top, tol=WACHTER_TOL)


def wachter_eval(d: WachterDensity, theta):
    theta_arr = np.asarray(theta, dtype=float)
    inside = (theta_arr > d.theta_minus) & (theta_arr < d.theta_plus)
    safe = np.where(inside, theta_arr, 0.5 * (d.theta_minus + d.theta_plus))
    values = d.normalization * np.sqrt((d.theta_plus - safe) * (safe - d.theta_minus)) / (safe * (1.0 - safe))
    out = np.where(inside, values, 0.0)
    return float(out) if out.ndim == 0 else out


def wachter_cdf(d: WachterDensity, theta: float) -> float:
    if theta <= d.theta_minus:
        return 0.0
    if theta >= d.theta_plus:
        return 1.0
    v_top = math.asin(math.sqrt((theta - d.theta_minus) / d.width))
    return min(d.normalization * _wachter_integral(d.theta_minus, d.theta_plus, v_top, power=0), 1.0)


def wachter_mean(d: WachterDensity) -> float:
    return d.normalization * _wachter_integral(d.theta_minus, d.theta_plus, 0.5 * math.pi, power=1)


def wachter_cdf_interpolant(d: WachterDensity, points: int = 401) -> Callable[[np.ndarray], np.ndarray]:
    """Monotone interpolant of wachter_cdf on a grid clustered at both endpoints, clipped to [0, 1]."""
    v = np.linspace(0.0, 0.5 * math.pi, points)
    grid = d.theta_minus + d.width * np.sin(v) ** 2
    values = np.array([wachter_cdf(d, t) for t in grid[1:-1]])
    curve = PchipInterpolator(grid, np.concatenate([[0.0], values, [1.0]]), extrapolate=False)

    def cdf(theta):
        theta = np.asarray(theta, dtype=float)
        return np.where(theta <= d.theta_minus, 0.0, np.where(theta >= d.theta_plus, 1.0, curve(theta)))

    return cdf
