# greatroot/liouville_green.py
"""
Liouville-Green transform of the Jacobi equation near its upper turning point.

The weighted polynomial solves y'' = {kappa^2 f(x) + g(x)} y with

    f(x) = (x - x_-)(x - x_+) / (4 (1 - x^2)^2),    g(x) = -(3 + x^2) / (4 (1 - x^2)^2),

and the new variable zeta is fixed by (2/3) zeta^{3/2} = int_{x_+}^{x} sqrt(f). Above x_+
the integral has a closed form in logarithms; below it is computed by quadrature. The
Airy comparisons and their convergence rates live at the bottom of this module.
"""
import logging
import math
from typing import Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy import special as sc

from greatroot.edge_scaling import paired_u_scale, u_scale, x_scale
from greatroot.jacobi import a_N, kernel_hat, phi_check, phi_check_prime
from greatroot.models.enums import CAVEAT_MESSAGES, Caveat, ScaleKind
from greatroot.params import jacobi_from_ab, lg_params, turning_points_algebraic
from greatroot.schemas.lg import AiryErrorEntry, KernelErrorEntry, LGTransform, RateReport
from greatroot.schemas.params import JacobiParams, LGParams
from greatroot.special import airy_kernel
from greatroot.utils.errors import DomainError
from greatroot.utils.quadrature import adaptive_gauss_legendre

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

DEFAULT_S_LOW = -2.0
DEFAULT_S_CAP = 4.0
DEFAULT_GRID_POINTS = 121
KERNEL_GRID = (-2.0, 4.0, 25)
ZETA_QUAD_TOL = 1e-14


class EdgeWidth(NamedTuple):
    identity: float      # (x_+ - x_-) / 4 * kappa^2 sigma_N^3 omega_N^2, equal to 1
    recurrence: float    # same with a_N in place of (x_+ - x_-) / 4, tends to 1 at rate 1/N


# ================================
# f, g AND THE TURNING POINTS
# ================================

def _turning(lg: LGParams) -> Tuple[float, float]:
    tp = turning_points_algebraic(lg)
    if lg.lam <= 0.0 or tp.x_plus >= 1.0:
        raise DomainError("lambda = 0 puts the upper turning point at x = 1", {"lam": lg.lam, "mu": lg.mu_lg})
    return tp.x_plus, tp.x_minus


def f_g(x: ArrayLike, lg: LGParams) -> Tuple[ArrayLike, ArrayLike]:
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) >= 1.0):
        raise DomainError("f and g are defined for |x| < 1")
    tp = turning_points_algebraic(lg)
    denom = 4.0 * (1.0 - x_arr * x_arr) ** 2
    f = (x_arr - tp.x_minus) * (x_arr - tp.x_plus) / denom
    g = -(3.0 + x_arr * x_arr) / denom
    if f.ndim == 0:
        return float(f), float(g)
    return f, g


def f_quartic(x: ArrayLike, lg: LGParams) -> ArrayLike:
    """f with the numerator expanded in lambda and mu."""
    x_arr = np.asarray(x, dtype=float)
    lam2, mu2 = lg.lam ** 2, lg.mu_lg ** 2
    out = (x_arr * x_arr + 2.0 * (lam2 - mu2) * x_arr + 2.0 * lam2 + 2.0 * mu2 - 1.0) / (
        4.0 * (1.0 - x_arr * x_arr) ** 2
    )
    return float(out) if out.ndim == 0 else out


# ================================
# zeta
# ================================

def _upper_integral(x: np.ndarray, lg: LGParams) -> np.ndarray:
    """int_{x_+}^{x} sqrt(f) in closed form, x in [x_+, 1)."""
    x_plus, x_minus = _turning(lg)
    s, t = 1.0 + x, 1.0 - x
    s_hi, s_lo = 1.0 + x_plus, 1.0 + x_minus
    t_hi, t_lo = 1.0 - x_minus, 1.0 - x_plus
    s_bar, s_hat = 0.5 * (s_hi + s_lo), math.sqrt(s_hi * s_lo)
    t_bar, t_hat = 0.5 * (t_hi + t_lo), math.sqrt(t_hi * t_lo)
    delta = 2.0 / (x_plus - x_minus)
    r = np.sqrt(np.maximum((x - x_plus) * (x - x_minus), 0.0))

    four_i = (
        -sc.xlogy(s_hat, delta / s * (s_bar * s - s_hat * s_hat - s_hat * r))
        - s_bar * np.log(delta * (s - s_bar + r))
        + sc.xlogy(t_hat, delta / t * (t_hat * t_hat + t_hat * r - t_bar * t))
        + t_bar * np.log(delta * (t_bar - t - r))
    )
    return np.maximum(0.25 * four_i, 0.0)


def _lower_integral(x: float, lg: LGParams) -> float:
    """int_x^{x_+} sqrt(-f) with x = x_+ - v^2, removing the square-root endpoint."""
    x_plus, x_minus = _turning(lg)

    def integrand(v):
        y = x_plus - v * v
        return v * v * np.sqrt(y - x_minus) / (1.0 - y * y)

    return adaptive_gauss_legendre(integrand, 0.0, math.sqrt(x_plus - x), tol=ZETA_QUAD_TOL)


def _check_domain(x: np.ndarray, lg: LGParams) -> Tuple[float, float]:
    x_plus, x_minus = _turning(lg)
    x_zero = 0.5 * (x_plus + x_minus)
    if np.any((x <= x_zero) | (x >= 1.0)):
        raise DomainError(f"zeta is defined on ({x_zero:.6g}, 1)", {"x_zero": x_zero})
    return x_plus, x_minus


def zeta(x: ArrayLike, lg: LGParams) -> ArrayLike:
    x_arr = np.asarray(x, dtype=float)
    x_plus, _ = _check_domain(x_arr, lg)
    flat = np.atleast_1d(x_arr).astype(float)
    out = np.empty_like(flat)

    upper = flat >= x_plus
    if np.any(upper):
        out[upper] = (1.5 * _upper_integral(flat[upper], lg)) ** (2.0 / 3.0)
    for i in np.flatnonzero(~upper):
        out[i] = -((1.5 * _lower_integral(flat[i], lg)) ** (2.0 / 3.0))
    return float(out[0]) if x_arr.ndim == 0 else out.reshape(x_arr.shape)


def zeta_by_quadrature(x: float, lg: LGParams) -> float:
    """zeta from direct quadrature of sqrt(|f|) on either side of x_+."""
    x = float(x)
    x_plus, x_minus = _check_domain(np.asarray(x), lg)
    if x < x_plus:
        return -((1.5 * _lower_integral(x, lg)) ** (2.0 / 3.0))

    def integrand(v):
        y = x_plus + v * v
        return v * v * np.sqrt(y - x_minus) / (1.0 - y * y)

    integral = adaptive_gauss_legendre(integrand, 0.0, math.sqrt(x - x_plus), tol=ZETA_QUAD_TOL)
    return (1.5 * integral) ** (2.0 / 3.0)


def zeta_dot_at_turning_point(lg: LGParams) -> float:
    """k^{1/3} with k = (x_+ - x_-) / (4 (1 - x_+^2)^2)."""
    x_plus, x_minus = _turning(lg)
    k = (x_plus - x_minus) / (4.0 * (1.0 - x_plus * x_plus) ** 2)
    return k ** (1.0 / 3.0)


def zeta_dot_numeric(lg: LGParams, h: float = 1e-4) -> float:
    """Richardson-extrapolated central difference of zeta at x_+."""
    x_plus, x_minus = _turning(lg)
    h = min(h, 0.25 * (x_plus - x_minus), 0.25 * (1.0 - x_plus))

    def central(step):
        return (zeta(x_plus + step, lg) - zeta(x_plus - step, lg)) / (2.0 * step)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def lg_transform(j: JacobiParams) -> LGTransform:
    lg = lg_params(j)
    x_plus, x_minus = _turning(lg)
    zeta_dot = zeta_dot_at_turning_point(lg)
    return LGTransform(
        params=lg,
        x_plus=x_plus,
        x_minus=x_minus,
        zeta_dot_at_xplus=zeta_dot,
        sigma_N=1.0 / (lg.kappa ** (2.0 / 3.0) * zeta_dot),
    )


# ================================
# TAIL CONSTANT
# ================================

def c0N(a: float, b: float) -> float:
    """Limit of 4 I(x) - (2a / (2 + a + b)) log(1 / (1 - x)) as x -> 1."""
    if a <= 0.0 or b < 0.0:
        raise DomainError(f"a > 0 and b >= 0 are required (got a={a}, b={b})")
    log_ratio = (
        sc.xlogy(a, 2.0 * a * a)
        + sc.xlogy(1.0 + b, 1.0 + b)
        - sc.xlogy(1.0 + a, 1.0 + a)
        - sc.xlogy(1.0 + a + b, 1.0 + a + b)
    )
    return float(2.0 / (2.0 + a + b) * log_ratio)


def c0N_assembly(lg: LGParams) -> float:
    """The same constant assembled from the x -> 1 limits of the four logarithms in 4 I(x)."""
    x_plus, x_minus = _turning(lg)
    s_hi, s_lo = 1.0 + x_plus, 1.0 + x_minus
    t_hi, t_lo = 1.0 - x_minus, 1.0 - x_plus
    s_bar, s_hat = 0.5 * (s_hi + s_lo), math.sqrt(s_hi * s_lo)
    t_bar, t_hat = 0.5 * (t_hi + t_lo), math.sqrt(t_hi * t_lo)
    delta = 2.0 / (x_plus - x_minus)

    t1 = 0.5 * delta * (2.0 * s_bar - s_hat * s_hat - s_hat * t_hat)
    t2 = delta * (t_bar + t_hat)
    t3 = 2.0 * delta * t_hat * t_hat
    t4 = delta * (t_bar - t_hat)
    return float(-sc.xlogy(s_hat, t1) - s_bar * math.log(t2) + sc.xlogy(t_hat, t3) + t_bar * math.log(t4))


def ab_from_lg(lg: LGParams) -> Tuple[float, float]:
    rest = 1.0 - lg.lam - lg.mu_lg
    if rest <= 0.0:
        raise DomainError("lambda + mu = 1 has no finite (a, b)")
    return 2.0 * lg.lam / rest, 2.0 * lg.mu_lg / rest


def log_tail_coefficient(lg: LGParams) -> float:
    """2a / (2 + a + b), which reduces to 2 lambda."""
    return 2.0 * lg.lam


def edge_width_ratio(j: JacobiParams) -> EdgeWidth:
    tp = turning_points_algebraic(lg_params(j))
    xs = x_scale(j)
    omega = 1.0 / (1.0 - xs.center ** 2)
    chain = j.kappa ** 2 * xs.scale ** 3 * omega ** 2
    return EdgeWidth(
        identity=0.25 * (tp.x_plus - tp.x_minus) * chain,
        recurrence=a_N(j.N, j.alpha, j.beta) * chain,
    )


# ================================
# AIRY APPROXIMATION
# ================================

def default_s_grid(N: int, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    return np.linspace(DEFAULT_S_LOW, min(DEFAULT_S_CAP, N ** (1.0 / 6.0)), points)


def _edge_points(
    j: JacobiParams, s_grid: Optional[Sequence[float]], scale_kind: ScaleKind
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Standardised points s, their x = x(s), and dx/ds at each point.

    On the x scale x = x_N + sigma_N s, on the u scale x = tanh(u_N + tau_N s).
    """
    scale_kind = ScaleKind(scale_kind)
    if scale_kind not in (ScaleKind.X, ScaleKind.U):
        raise DomainError(f"Airy comparisons run on the x or u scale (got {scale_kind.value})")
    s = default_s_grid(j.N) if s_grid is None else np.asarray(s_grid, dtype=float)
    if scale_kind is ScaleKind.U:
        us = u_scale(j)
        x = np.tanh(us.center + us.scale * s)
        return s, x, us.scale * (1.0 - x * x)
    xs = x_scale(j)
    x = xs.center + xs.scale * s
    if np.any(np.abs(x) >= 1.0):
        raise DomainError("s grid reaches outside (-1, 1) on the x scale", {"s_min": float(s.min()), "s_max": float(s.max())})
    return s, x, np.full_like(s, xs.scale)


def airy_overlay(
    N: int,
    alpha: float,
    beta: float,
    s_grid: Optional[Sequence[float]] = None,
    scale_kind: ScaleKind = ScaleKind.U,
) -> pd.DataFrame:
    j = JacobiParams(N=N, alpha=alpha, beta=beta)
    s, x, _ = _edge_points(j, s_grid, scale_kind)
    ai = sc.airy(s)[0]
    return pd.DataFrame({"s": s, "phi_check": phi_check(N, alpha, beta, x), "airy": ai})


def lg_airy_error(
    N: int,
    alpha: float,
    beta: float,
    s_grid: Optional[Sequence[float]] = None,
    scale_kind: ScaleKind = ScaleKind.U,
) -> AiryErrorEntry:
    """Weighted sup distance between the scaled edge function (and its s-derivative) and Ai (and Ai')."""
    j = JacobiParams(N=N, alpha=alpha, beta=beta)
    scale_kind = ScaleKind(scale_kind)
    s, x, dx_ds = _edge_points(j, s_grid, scale_kind)
    ai, ai_prime, _, _ = sc.airy(s)
    sigma = x_scale(j).scale
    values = np.atleast_1d(phi_check(N, alpha, beta, x, sigma=sigma))
    # phi_check_prime is sigma_N d/dx
    slopes = np.atleast_1d(phi_check_prime(N, alpha, beta, x, sigma=sigma)) * dx_ds / sigma
    weight = np.exp(0.5 * s)

    underflow = bool(np.any((values == 0.0) & (np.abs(ai) > 1e-300)))
    if underflow:
        logger.warning("%s (N=%d)", CAVEAT_MESSAGES[Caveat.UNDERFLOW], N)
    entry = AiryErrorEntry(
        N=N,
        sup_error=float(np.max(np.abs(values - ai) * weight)),
        sup_derivative_error=float(np.max(np.abs(slopes - ai_prime) * weight)),
        s_min=float(s.min()),
        s_max=float(s.max()),
        scale_kind=scale_kind,
        underflow=underflow,
    )
    logger.debug(
        "Airy error at N=%d on the %s scale: %.3e (derivative %.3e)",
        N, scale_kind.value, entry.sup_error, entry.sup_derivative_error,
    )
    return entry


def kernel_edge_error(
    N: int,
    alpha: float,
    beta: float,
    s_grid: Optional[Sequence[float]] = None,
    t_grid: Optional[Sequence[float]] = None,
    paired: bool = True,
) -> KernelErrorEntry:
    """sup |sigma S_hat_N(mu + sigma s, mu + sigma t) - S_A(s, t)| e^{(s + t) / 4}.

    sigma S_hat is the kernel seen through tau(s) = tanh(mu + sigma s). The paired scaling
    shares (mu, sigma) between degrees N and N - 1; otherwise the degree N u-scale is used.
    """
    j = JacobiParams(N=N, alpha=alpha, beta=beta)
    lo, hi, count = KERNEL_GRID
    s = np.linspace(lo, hi, count) if s_grid is None else np.asarray(s_grid, dtype=float)
    t = s if t_grid is None else np.asarray(t_grid, dtype=float)
    if min(s.min(), t.min()) < lo or max(s.max(), t.max()) > hi:
        raise DomainError(f"kernel grids must lie within [{lo:g}, {hi:g}]")

    scaling = paired_u_scale(j) if paired else u_scale(j)
    ss, tt = np.meshgrid(s, t, indexing="ij")
    mu, sigma = scaling.center, scaling.scale
    scaled = sigma * np.asarray(kernel_hat(N, alpha, beta, mu + sigma * ss, mu + sigma * tt))
    error = np.abs(scaled - airy_kernel(ss, tt)) * np.exp(0.25 * (ss + tt))
    return KernelErrorEntry(N=N, sup_error=float(error.max()), center=mu, scale=sigma, paired=paired)


# ================================
# RATES
# ================================

def rate_report(errors_by_N: Mapping[int, float], label: str = "sup_error") -> RateReport:
    N_values = sorted(errors_by_N)
    return RateReport.fit(N_values, [errors_by_N[n] for n in N_values], label=label)


def airy_rate_report(
    N_values: Sequence[int],
    a: float,
    b: float,
    derivative: bool = False,
    scale_kind: ScaleKind = ScaleKind.X,
) -> RateReport:
    errors = {}
    for N in N_values:
        j = jacobi_from_ab(N, a, b)
        entry = lg_airy_error(N, j.alpha, j.beta, scale_kind=scale_kind)
        errors[N] = entry.sup_derivative_error if derivative else entry.sup_error
    return rate_report(errors, label="sup_derivative_error" if derivative else "sup_error")


def kernel_rate_report(N_values: Sequence[int], a: float, b: float, paired: bool = True) -> RateReport:
    errors = {}
    for N in N_values:
        j = jacobi_from_ab(N, a, b)
        errors[N] = kernel_edge_error(N, j.alpha, j.beta, paired=paired).sup_error
    report = rate_report(errors, label="paired" if paired else "naive")
    logger.info("kernel error ratios %s", ", ".join(f"{r:.3f}" for r in report.ratios))
    return report
