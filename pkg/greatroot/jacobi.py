# greatroot/jacobi.py
"""
Jacobi polynomials and the orthonormal functions built from them.

With weight w(x) = (1 - x)^alpha (1 + x)^beta on (-1, 1) and L2 norms h_k,

    phi_k(x) = h_k^{-1/2} w(x)^{1/2} P_k^{alpha,beta}(x).

Everything is evaluated through the orthonormal three-term recurrence
x p_k = a_{k+1} p_{k+1} + b_k p_k + a_k p_{k-1} with a running log-scale, so
degrees and parameters in the hundreds stay finite until a single final
exponentiation. The recurrence is differentiated alongside for phi_k'.
"""
import logging
import math
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy import special as sc

from greatroot.models.enums import CAVEAT_MESSAGES, Caveat
from greatroot.params import angles_from_jacobi
from greatroot.schemas.jacobi import KernelRepCheck, NormConstants, PolyValue
from greatroot.schemas.params import JacobiParams
from greatroot.utils.errors import ConvergenceError, DomainError
from greatroot.utils.quadrature import adaptive_gauss_legendre

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

RESCALE_HIGH = 1e100
RESCALE_LOW = 1e-100
KERNEL_DIAGONAL_GAP = 1e-6
LOG2 = math.log(2.0)

# u-range scanned for the support of phi_hat, and the dynamic range kept
U_SCAN_LIMIT = 60.0
U_SCAN_STEP = 0.05
U_LOG_RANGE = 45.0


class _Scan(NamedTuple):
    log_scale: np.ndarray
    top: np.ndarray        # degree N
    below: np.ndarray      # degree N - 1
    d_top: np.ndarray
    d_below: np.ndarray


# ================================
# COEFFICIENTS AND NORMS
# ================================

def _b(k: int, alpha: float, beta: float) -> float:
    s = alpha + beta
    if k == 0:
        return (beta - alpha) / (s + 2.0)
    return (beta * beta - alpha * alpha) / ((2 * k + s) * (2 * k + s + 2.0))


def _a(k: int, alpha: float, beta: float) -> float:
    """Off-diagonal recurrence coefficient between degrees k - 1 and k."""
    if k == 0:
        return 0.0
    s = alpha + beta
    t = 2 * k + s
    return math.sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + s) / (t * t * (t + 1.0) * (t - 1.0)))


def log_h(N: int, alpha: float, beta: float) -> float:
    s = alpha + beta
    return float(
        (s + 1.0) * LOG2 - math.log(2 * N + s + 1.0)
        + sc.gammaln(N + alpha + 1.0) + sc.gammaln(N + beta + 1.0)
        - sc.gammaln(N + 1.0) - sc.gammaln(N + s + 1.0)
    )


def log_l(N: int, alpha: float, beta: float) -> float:
    """Log of the leading coefficient of P_N^{alpha,beta}."""
    s = alpha + beta
    return float(-N * LOG2 + sc.gammaln(2 * N + s + 1.0) - sc.gammaln(N + 1.0) - sc.gammaln(N + s + 1.0))


def a_N(N: int, alpha: float, beta: float) -> float:
    return _a(N, alpha, beta)


def a_N_from_norms(N: int, alpha: float, beta: float) -> float:
    """a_N = (h_N / h_{N-1})^{1/2} l_{N-1} / l_N."""
    if N < 1:
        raise DomainError("a_N from norms needs N >= 1")
    return math.exp(
        0.5 * (log_h(N, alpha, beta) - log_h(N - 1, alpha, beta))
        + log_l(N - 1, alpha, beta) - log_l(N, alpha, beta)
    )


def norms(N: int, alpha: float, beta: float) -> NormConstants:
    if N < 1:
        raise DomainError(f"norming constants are reported for N >= 1 (got N={N})")
    angles = angles_from_jacobi(JacobiParams(N=N, alpha=alpha, beta=beta))
    a = a_N(N, alpha, beta)
    return NormConstants(
        N=N,
        log_h_N=log_h(N, alpha, beta),
        log_l_N=log_l(N, alpha, beta),
        a_N=a,
        edge_ratio=a / (0.5 * math.sin(angles.phi) * math.sin(angles.gamma)),
    )


# ================================
# RECURRENCE SCAN
# ================================

def _endpoint_logs(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    with np.errstate(divide="ignore"):
        return np.log1p(-x), np.log1p(x)


def _tanh_logs(u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """log(1 - tanh u), log(1 + tanh u) without cancellation."""
    return LOG2 + sc.log_expit(-2.0 * u), LOG2 + sc.log_expit(2.0 * u)


def _log_half_weight(alpha: float, beta: float, log1mx: np.ndarray, log1px: np.ndarray) -> np.ndarray:
    out = np.zeros_like(log1mx)
    if alpha:
        out = out + 0.5 * alpha * log1mx
    if beta:
        out = out + 0.5 * beta * log1px
    return out


def _scan(N: int, alpha: float, beta: float, x: np.ndarray, log_prefactor: ArrayLike = 0.0) -> _Scan:
    """Orthonormal p_N, p_{N-1} and their derivatives as exp(log_scale) * (top, below)."""
    top = np.ones_like(x)
    below = np.zeros_like(x)
    d_top = np.zeros_like(x)
    d_below = np.zeros_like(x)
    log_scale = np.zeros_like(x) + log_prefactor - 0.5 * log_h(0, alpha, beta)

    for k in range(N):
        a_next, a_k = _a(k + 1, alpha, beta), _a(k, alpha, beta)
        shift = x - _b(k, alpha, beta)
        nxt = (shift * top - a_k * below) / a_next
        d_nxt = (shift * d_top + top - a_k * d_below) / a_next
        below, top = top, nxt
        d_below, d_top = d_top, d_nxt

        size = np.maximum(np.abs(top), np.abs(below))
        rescale = (size > RESCALE_HIGH) | (size < RESCALE_LOW)
        if np.any(rescale):
            factor = np.where(rescale, size, 1.0)
            top, below = top / factor, below / factor
            d_top, d_below = d_top / factor, d_below / factor
            log_scale = log_scale + np.log(factor)

    return _Scan(log_scale, top, below, d_top, d_below)


def _signed_exp(log_scale: np.ndarray, values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", over="ignore"):
        return np.sign(values) * np.exp(log_scale + np.log(np.abs(values)))


def _out(arr: np.ndarray) -> ArrayLike:
    return float(arr) if np.ndim(arr) == 0 else arr


def _closed_interval(x: ArrayLike) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise DomainError("Jacobi functions are evaluated on [-1, 1]")
    return x


def _open_interval(x: ArrayLike) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0):
        raise DomainError("this function is defined on the open interval (-1, 1)")
    return x


def _weighted_scan(N: int, alpha: float, beta: float, x: np.ndarray, extra_power: float = 0.0) -> _Scan:
    """Scan of phi_N, phi_{N-1} times (1 - x^2)^extra_power."""
    log1mx, log1px = _endpoint_logs(x)
    prefactor = _log_half_weight(alpha, beta, log1mx, log1px)
    if extra_power:
        prefactor = prefactor + extra_power * (log1mx + log1px)
    return _scan(N, alpha, beta, x, prefactor)


# ================================
# POLYNOMIALS AND WEIGHTED FUNCTIONS
# ================================

def log_P(N: int, alpha: float, beta: float, x: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """log|P_N^{alpha,beta}(x)| and its sign."""
    x = _closed_interval(x)
    scan = _scan(N, alpha, beta, x)
    with np.errstate(divide="ignore"):
        log_mag = scan.log_scale + np.log(np.abs(scan.top)) + 0.5 * log_h(N, alpha, beta)
    return log_mag, np.sign(scan.top)


def eval_P(N: int, alpha: float, beta: float, x: float) -> PolyValue:
    log_mag, sign = log_P(N, alpha, beta, float(x))
    return PolyValue(log_magnitude=float(log_mag), sign=int(sign))


def phi(k: int, alpha: float, beta: float, x: ArrayLike) -> ArrayLike:
    x = _closed_interval(x)
    scan = _weighted_scan(k, alpha, beta, x)
    return _out(_signed_exp(scan.log_scale, scan.top))


def phi_prime(k: int, alpha: float, beta: float, x: ArrayLike) -> ArrayLike:
    x = _open_interval(x)
    scan = _weighted_scan(k, alpha, beta, x)
    weight_slope = 0.5 * (beta / (1.0 + x) - alpha / (1.0 - x))
    return _out(_signed_exp(scan.log_scale, scan.d_top + scan.top * weight_slope))


def phi_tilde(N: int, alpha: float, beta: float, x: ArrayLike) -> ArrayLike:
    """phi_N / sqrt(1 - x^2)."""
    x = _open_interval(x)
    scan = _weighted_scan(N, alpha, beta, x, extra_power=-0.5)
    return _out(_signed_exp(scan.log_scale, scan.top))


def w_fn(N: int, alpha: float, beta: float, x: ArrayLike) -> ArrayLike:
    """w_N(x) = (1 - x)^{(alpha+1)/2} (1 + x)^{(beta+1)/2} P_N(x)."""
    x = _closed_interval(x)
    scan = _weighted_scan(N, alpha, beta, x, extra_power=0.5)
    return _out(_signed_exp(scan.log_scale + 0.5 * log_h(N, alpha, beta), scan.top))


def _sigma_N(N: int, alpha: float, beta: float) -> float:
    from greatroot.edge_scaling import x_scale

    return x_scale(JacobiParams(N=N, alpha=alpha, beta=beta)).scale


def phi_check(N: int, alpha: float, beta: float, x: ArrayLike, sigma: Optional[float] = None) -> ArrayLike:
    """(1 - x^2)^{1/2} phi_N(x) / sqrt(kappa sigma_N), close to Ai(s) at x = x_N + sigma_N s."""
    x = _closed_interval(x)
    sigma = _sigma_N(N, alpha, beta) if sigma is None else sigma
    kappa = 2 * N + alpha + beta + 1.0
    scan = _weighted_scan(N, alpha, beta, x, extra_power=0.5)
    return _out(_signed_exp(scan.log_scale - 0.5 * math.log(kappa * sigma), scan.top))


def phi_check_prime(N: int, alpha: float, beta: float, x: ArrayLike, sigma: Optional[float] = None) -> ArrayLike:
    """Derivative of phi_check in s, i.e. sigma_N times its x-derivative."""
    x = _open_interval(x)
    sigma = _sigma_N(N, alpha, beta) if sigma is None else sigma
    kappa = 2 * N + alpha + beta + 1.0
    scan = _weighted_scan(N, alpha, beta, x, extra_power=0.5)
    slope = 0.5 * (beta / (1.0 + x) - alpha / (1.0 - x)) - x / (1.0 - x * x)
    values = scan.d_top + scan.top * slope
    return _out(_signed_exp(scan.log_scale + math.log(sigma) - 0.5 * math.log(kappa * sigma), values))


def _phi_hat_scan(N: int, alpha: float, beta: float, u: np.ndarray) -> _Scan:
    log1mx, log1px = _tanh_logs(u)
    prefactor = _log_half_weight(alpha, beta, log1mx, log1px) + 0.5 * (log1mx + log1px)
    return _scan(N, alpha, beta, np.tanh(u), prefactor)


def phi_hat(N: int, alpha: float, beta: float, u: ArrayLike) -> ArrayLike:
    """phi_N(tanh u) / cosh u."""
    u = np.asarray(u, dtype=float)
    scan = _phi_hat_scan(N, alpha, beta, u)
    return _out(_signed_exp(scan.log_scale, scan.top))


def weighted_polynomial_curve(N: int, alpha: float, beta: float, x_grid) -> pd.DataFrame:
    """w_N on a grid, normalised to max |w_N| = 1."""
    x = _closed_interval(x_grid)
    scan = _weighted_scan(N, alpha, beta, x, extra_power=0.5)
    with np.errstate(divide="ignore"):
        log_mag = scan.log_scale + np.log(np.abs(scan.top))
    peak = np.max(log_mag[np.isfinite(log_mag)])
    values = _signed_exp(scan.log_scale - peak, scan.top)

    interior = np.abs(x) < 1.0
    underflow = int(np.count_nonzero((values == 0.0) & interior))
    if underflow:
        logger.warning("%s (%d points)", CAVEAT_MESSAGES[Caveat.UNDERFLOW], underflow)
    return pd.DataFrame({"x": x, "w_N": values})


# ================================
# CHRISTOFFEL-DARBOUX KERNEL
# ================================

def _cd_parts(scan_x: _Scan, scan_y: _Scan) -> Tuple[np.ndarray, np.ndarray]:
    return scan_x.log_scale + scan_y.log_scale, scan_x.top * scan_y.below - scan_x.below * scan_y.top


def _cd_diagonal(scan: _Scan) -> Tuple[np.ndarray, np.ndarray]:
    # the weight derivative terms cancel in phi_N' phi_{N-1} - phi_{N-1}' phi_N
    return 2.0 * scan.log_scale, scan.d_top * scan.below - scan.d_below * scan.top


def kernel_cd(N: int, alpha: float, beta: float, x: ArrayLike, y: ArrayLike) -> ArrayLike:
    """S_N(x, y) = sum_{k<N} phi_k(x) phi_k(y) in Christoffel-Darboux form."""
    if N < 1:
        raise DomainError("the kernel needs N >= 1")
    x_arr, y_arr = np.broadcast_arrays(_open_interval(x), _open_interval(y))
    a = a_N(N, alpha, beta)
    close = np.abs(x_arr - y_arr) < KERNEL_DIAGONAL_GAP

    log_num, num = _cd_parts(_weighted_scan(N, alpha, beta, x_arr), _weighted_scan(N, alpha, beta, y_arr))
    out = a * _signed_exp(log_num, num) / np.where(close, 1.0, x_arr - y_arr)
    if np.any(close):
        log_d, d = _cd_diagonal(_weighted_scan(N, alpha, beta, 0.5 * (x_arr + y_arr)))
        out = np.where(close, a * _signed_exp(log_d, d), out)
    return _out(out)


def kernel_hat(N: int, alpha: float, beta: float, u: ArrayLike, v: ArrayLike) -> ArrayLike:
    """S_N(tanh u, tanh v) / (cosh u cosh v), using tanh u - tanh v = sinh(u - v) / (cosh u cosh v)."""
    if N < 1:
        raise DomainError("the kernel needs N >= 1")
    u_arr, v_arr = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    a = a_N(N, alpha, beta)
    close = np.abs(u_arr - v_arr) < KERNEL_DIAGONAL_GAP

    def plain_scan(w):
        log1mx, log1px = _tanh_logs(w)
        return _scan(N, alpha, beta, np.tanh(w), _log_half_weight(alpha, beta, log1mx, log1px))

    log_num, num = _cd_parts(plain_scan(u_arr), plain_scan(v_arr))
    out = a * _signed_exp(log_num, num) / np.where(close, 1.0, np.sinh(u_arr - v_arr))
    if np.any(close):
        mid = 0.5 * (u_arr + v_arr)
        log_d, d = _cd_diagonal(plain_scan(mid))
        log1mx, log1px = _tanh_logs(mid)
        out = np.where(close, a * _signed_exp(log_d + log1mx + log1px, d), out)
    return _out(out)


def kernel_integral_rep_check(
    N: int,
    alpha: float,
    beta: float,
    u: float,
    v: float,
    truncation: Optional[float] = None,
) -> KernelRepCheck:
    """Compare the u-scale kernel with its half-line integral representation.

    S_hat(u, v) = (kappa - 1) a_N / 2 * int_0^inf [phi_hat_N(u+w) phi_hat_{N-1}(v+w)
                                                  + phi_hat_{N-1}(u+w) phi_hat_N(v+w)] dw
    """
    if N < 2:
        raise DomainError(f"the integral representation check needs N >= 2 (got N={N})")
    kappa = JacobiParams(N=N, alpha=alpha, beta=beta).kappa
    width = 40.0 / N ** (1.0 / 3.0) if truncation is None else truncation

    def integrand(w):
        su = _phi_hat_scan(N, alpha, beta, u + w)
        sv = _phi_hat_scan(N, alpha, beta, v + w)
        return _signed_exp(su.log_scale + sv.log_scale, su.top * sv.below + su.below * sv.top)

    integral = adaptive_gauss_legendre(integrand, 0.0, width, tol=1e-13)
    tail = float(np.abs(integrand(np.array([width])))[0])
    if tail > 1e-12:
        logger.warning("integrand is %.3e at the truncation point w = %g", tail, width)

    represented = 0.5 * (kappa - 1.0) * a_N(N, alpha, beta) * integral
    direct = float(kernel_hat(N, alpha, beta, u, v))
    return KernelRepCheck(
        u=u,
        v=v,
        direct=direct,
        integral=represented,
        residual=abs(direct - represented),
        truncation=width,
        tail_magnitude=tail,
    )


# ================================
# INTEGRAL OF PHI_TILDE
# ================================

def integral_phi_tilde(N: int, alpha: float, beta: float) -> float:
    """int_{-1}^{1} phi_N(x) / sqrt(1 - x^2) dx, computed as int phi_hat_N(u) du with x = tanh u."""
    JacobiParams(N=N, alpha=alpha, beta=beta)
    u_grid = np.arange(-U_SCAN_LIMIT, U_SCAN_LIMIT + 0.5 * U_SCAN_STEP, U_SCAN_STEP)
    scan = _phi_hat_scan(N, alpha, beta, u_grid)
    with np.errstate(divide="ignore"):
        log_mag = scan.log_scale + np.log(np.abs(scan.top))
    peak = float(np.max(log_mag))
    keep = np.flatnonzero(log_mag > peak - U_LOG_RANGE)
    if keep[0] == 0 or keep[-1] == u_grid.size - 1:
        raise ConvergenceError(
            "phi_hat has not decayed inside the scanned u-range; the endpoint behaviour is too heavy",
            {"N": N, "alpha": alpha, "beta": beta, "u_limit": U_SCAN_LIMIT},
        )
    lo, hi = u_grid[keep[0] - 1], u_grid[keep[-1] + 1]
    logger.debug("integral_phi_tilde N=%d: u-support [%g, %g]", N, lo, hi)

    def integrand(u):
        s = _phi_hat_scan(N, alpha, beta, u)
        return _signed_exp(s.log_scale, s.top)

    return adaptive_gauss_legendre(integrand, lo, hi, tol=1e-12 * math.exp(peak) * (hi - lo))


def _log_r(x: float) -> float:
    return float(sc.gammaln(0.5 * (x + 1.0)) - 0.5 * sc.gammaln(x + 1.0))


def integral_phi_tilde_exact(N: int, alpha: float, beta: float) -> float:
    """Closed form of integral_phi_tilde: 0 for odd N, a ratio of gamma functions for even N."""
    if N % 2 == 1:
        return 0.0
    kappa = 2 * N + alpha + beta + 1.0
    log_value = (
        0.5 * math.log(kappa / (2.0 * (N + 1.0) * (N + alpha + beta + 1.0)))
        + _log_r(N + alpha) + _log_r(N + beta) - _log_r(N + 1.0) - _log_r(N + alpha + beta + 1.0)
    )
    return math.exp(log_value)
