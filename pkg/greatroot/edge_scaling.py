# greatroot/edge_scaling.py
"""
Centering and scaling constants for the upper edge.

x-scale:   x_N = -cos(phi + gamma),  sigma_N^3 = 2 sin^4(phi + gamma) / (kappa^2 sin(phi) sin(gamma))
u-scale:   u_N = atanh(x_N),         tau_N = sigma_N / (1 - x_N^2)
logit:     (mu_p, sigma_p) = 2 (u, tau); real case at (min(p, n) - 1, m - p, |n - p|),
           complex case from the tau-weighted average of degrees N and N - 1
theta:     mu_theta = logistic(mu_p), sigma_theta = mu_theta (1 - mu_theta) sigma_p
"""
import math
from typing import Optional

from scipy.special import expit

from greatroot.jacobi import a_N
from greatroot.models.enums import Ensemble, ScaleKind
from greatroot.params import angles_from_jacobi, to_jacobi
from greatroot.schemas.params import Angles, JacobiParams, StatParams
from greatroot.schemas.scaling import DegreeStepDiagnostics, EdgeScaling
from greatroot.utils.errors import DomainError, HardEdgeError


def _edge_angles(j: JacobiParams) -> Angles:
    if j.alpha <= 0.0:
        raise HardEdgeError(
            "alpha = 0 (m = p) puts the upper turning point at x = 1; no soft-edge scaling exists",
            {"N": j.N, "alpha": j.alpha, "beta": j.beta},
        )
    return angles_from_jacobi(j)


# ================================
# x AND u SCALES
# ================================

def x_scale(j: JacobiParams) -> EdgeScaling:
    a = _edge_angles(j)
    total = a.phi + a.gamma
    cube = 2.0 * math.sin(total) ** 4 / (j.kappa ** 2 * math.sin(a.phi) * math.sin(a.gamma))
    return EdgeScaling(
        center=-math.cos(total),
        scale=cube ** (1.0 / 3.0),
        scale_kind=ScaleKind.X,
        ensemble=j.ensemble,
    )


def u_scale(j: JacobiParams) -> EdgeScaling:
    a = _edge_angles(j)
    total = a.phi + a.gamma
    sigma = x_scale(j).scale
    return EdgeScaling(
        center=math.log(math.tan(0.5 * total)),
        scale=sigma / math.sin(total) ** 2,
        scale_kind=ScaleKind.U,
        ensemble=j.ensemble,
    )


def paired_u_scale(j: JacobiParams) -> EdgeScaling:
    """u-scale centering and scaling shared by degrees N and N - 1 (alpha, beta fixed).

    mu = (u_N / tau_N + u_{N-1} / tau_{N-1}) / (1 / tau_N + 1 / tau_{N-1}),
    1 / sigma = (1 / tau_N + 1 / tau_{N-1}) / 2
    """
    if j.N < 2:
        raise DomainError(f"the degree N - 1 edge needs N >= 2 (got N={j.N})")
    top, below = u_scale(j), u_scale(j.lowered())
    w_top, w_below = 1.0 / top.scale, 1.0 / below.scale
    return EdgeScaling(
        center=(w_top * top.center + w_below * below.center) / (w_top + w_below),
        scale=2.0 / (w_top + w_below),
        scale_kind=ScaleKind.U,
        ensemble=j.ensemble,
    )


# ================================
# LOGIT AND THETA SCALES
# ================================

def real_logit_scaling(s: StatParams) -> EdgeScaling:
    u = u_scale(to_jacobi(s, Ensemble.REAL))
    return EdgeScaling(center=2.0 * u.center, scale=2.0 * u.scale, scale_kind=ScaleKind.LOGIT, ensemble=Ensemble.REAL)


def complex_logit_scaling(s: StatParams) -> EdgeScaling:
    j = to_jacobi(s, Ensemble.COMPLEX)
    if j.N < 2:
        raise DomainError(
            f"the complex approximation averages degrees N and N - 1 and needs min(p, n) >= 2 (got {j.N})"
        )
    u = paired_u_scale(j)
    return EdgeScaling(center=2.0 * u.center, scale=2.0 * u.scale, scale_kind=ScaleKind.LOGIT, ensemble=Ensemble.COMPLEX)


def logit_scaling(s: StatParams, ensemble: Ensemble = Ensemble.REAL) -> EdgeScaling:
    if Ensemble(ensemble) is Ensemble.COMPLEX:
        return complex_logit_scaling(s)
    return real_logit_scaling(s)


def theta_scaling(s: StatParams, ensemble: Ensemble = Ensemble.REAL) -> EdgeScaling:
    """Delta-method image of the logit scaling on the eigenvalue scale itself."""
    logit = logit_scaling(s, ensemble)
    center = float(expit(logit.center))
    return EdgeScaling(
        center=center,
        scale=center * (1.0 - center) * logit.scale,
        scale_kind=ScaleKind.THETA,
        ensemble=logit.ensemble,
    )


def greatest_root_scaling(
    s: StatParams,
    ensemble: Ensemble = Ensemble.REAL,
    scale_kind: ScaleKind = ScaleKind.LOGIT,
) -> EdgeScaling:
    scale_kind = ScaleKind(scale_kind)
    if scale_kind is ScaleKind.LOGIT:
        return logit_scaling(s, ensemble)
    if scale_kind is ScaleKind.THETA:
        return theta_scaling(s, ensemble)
    raise DomainError(f"greatest-root scalings are logit or theta (got {scale_kind.value})")


def smallest_root_scaling(
    s: StatParams,
    ensemble: Ensemble = Ensemble.REAL,
    scale_kind: ScaleKind = ScaleKind.LOGIT,
) -> EdgeScaling:
    """Reflected scaling for the smallest root, from the largest root with m and n swapped."""
    if s.n < s.p:
        raise DomainError(f"n < p makes the smallest root exactly 0 (got p={s.p}, n={s.n})")
    swapped = greatest_root_scaling(StatParams(p=s.p, m=s.n, n=s.m), ensemble, scale_kind)
    center = -swapped.center
    if ScaleKind(scale_kind) is ScaleKind.THETA:
        center = 1.0 - swapped.center
    return swapped.model_copy(update={"center": center, "reflected": True})


# ================================
# DEGREE N VERSUS N - 1
# ================================

def degree_step_diagnostics(j: JacobiParams) -> DegreeStepDiagnostics:
    if j.N < 2:
        raise DomainError(f"N >= 2 is required (got N={j.N})")
    lower = j.lowered()
    x_top, x_below = x_scale(j), x_scale(lower)
    u_top, u_below = u_scale(j), u_scale(lower)
    omega_top = 1.0 / (1.0 - x_top.center ** 2)
    omega_below = 1.0 / (1.0 - x_below.center ** 2)

    a = angles_from_jacobi(j)
    sin_prod = math.sin(a.phi) * math.sin(a.gamma)
    kappa = j.kappa
    u_diff = u_top.center - u_below.center
    return DegreeStepDiagnostics(
        N=j.N,
        delta_N=u_diff / u_below.scale,
        sigma_ratio=x_top.scale / x_below.scale,
        tau_ratio=u_top.scale / u_below.scale,
        omega_ratio=omega_top / omega_below,
        u_diff=u_diff,
        u_diff_predicted=2.0 / (kappa * sin_prod),
        x_derivative=2.0 * math.sin(a.phi + a.gamma) ** 2 / (kappa * sin_prod),
        gamma_derivative=2.0 * math.cos(a.gamma) / (kappa * math.sin(a.gamma)),
        phi_derivative=2.0 * math.cos(a.phi) / (kappa * math.sin(a.phi)),
    )


def e_N(j: JacobiParams, scale: Optional[float] = None) -> float:
    """sigma^2 (kappa_N - 1) a_N sqrt(sigma_N sigma_{N-1} kappa_N kappa_{N-1}); tends to 1 at rate 1/N.

    scale defaults to the paired u-scale sigma.
    """
    if j.N < 2:
        raise DomainError(f"N >= 2 is required (got N={j.N})")
    sigma = paired_u_scale(j).scale if scale is None else scale
    lower = j.lowered()
    return (
        sigma ** 2 * (j.kappa - 1.0) * a_N(j.N, j.alpha, j.beta)
        * math.sqrt(x_scale(j).scale * x_scale(lower).scale * j.kappa * lower.kappa)
    )
