# greatroot/special.py
"""
Airy function, Airy kernel and the Tracy-Widom laws F1 and F2.

With q the Hastings-McLeod solution of q'' = s q + 2 q^3,

    U(s) = int_s^inf (x - s) q(x)^2 dx,    V(s) = int_s^inf q(x) dx,
    F2(s) = exp(-U(s)),                     F1(s) = exp(-(U(s) + V(s)) / 2).

U and V are carried as extra components of the Painleve ODE state, started
from their closed Airy forms at s = TW_ODE_START. Below TW_ODE_STOP the
backward integration is unstable, so q is continued by its left asymptotic
series and only U, V are integrated further.
"""
import logging
import math
import threading
from pathlib import Path
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import ValidationError
from scipy import special as sc
from scipy.integrate import quad, solve_ivp
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from greatroot.cache import cache_path, read_frame, write_frame
from greatroot.config import settings
from greatroot.schemas.special import AiryValue, TWTable
from greatroot.utils.errors import DomainError, PainleveDivergenceError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

KERNEL_DIAGONAL_GAP = 1e-4
JOIN_TOLERANCE = 0.05
ODE_ATOL = 1e-40
TABLE_COLUMNS = ["s", "q", "F1", "F2", "logF1", "logF2"]

_TABLES: Dict[Tuple[float, ...], Dict[int, TWTable]] = {}
_TABLES_LOCK = threading.Lock()


# ================================
# AIRY FUNCTION AND KERNEL
# ================================

def airy(s: float) -> AiryValue:
    ai, ai_prime, _, _ = sc.airy(float(s))
    return AiryValue(s=float(s), ai=float(ai), ai_prime=float(ai_prime))


def airy_kernel(s: ArrayLike, t: ArrayLike) -> ArrayLike:
    """S_A(s, t) = (Ai(s) Ai'(t) - Ai(t) Ai'(s)) / (s - t), broadcasting over arrays."""
    s_arr, t_arr = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
    ai_s, aip_s, _, _ = sc.airy(s_arr)
    ai_t, aip_t, _, _ = sc.airy(t_arr)
    diff = s_arr - t_arr
    close = np.abs(diff) < KERNEL_DIAGONAL_GAP

    # symmetric in (s, t), so the diagonal form at the midpoint is O(|s - t|^2) accurate
    mid = 0.5 * (s_arr + t_arr)
    ai_m, aip_m, _, _ = sc.airy(mid)
    diagonal = aip_m * aip_m - mid * ai_m * ai_m

    off_diagonal = (ai_s * aip_t - ai_t * aip_s) / np.where(close, 1.0, diff)
    out = np.where(close, diagonal, off_diagonal)
    return float(out) if out.ndim == 0 else out


# ================================
# HASTINGS-MCLEOD SOLUTION
# ================================

def _painleve_rhs(s, y):
    q, dq, u, du, v = y
    return [dq, s * q + 2.0 * q ** 3, du, q * q, -q]


def _airy_boundary(s0: float) -> np.ndarray:
    """State (q, q', U, U', V) at s0 with q = Ai."""
    ai, aip, _, _ = sc.airy(s0)
    u = (2.0 * s0 * s0 * ai * ai - 2.0 * s0 * aip * aip - ai * aip) / 3.0
    du = -(aip * aip - s0 * ai * ai)
    v, _ = quad(lambda x: sc.airy(x)[0], s0, np.inf, epsabs=0.0, epsrel=1e-12, limit=200)
    return np.array([ai, aip, u, du, v])


def hastings_mcleod_left(s: ArrayLike) -> ArrayLike:
    """Left asymptotic series q(s) ~ sqrt(-s/2) (1 + s^-3/8 - 73 s^-6/128 + 10657 s^-9/1024)."""
    s = np.asarray(s, dtype=float)
    r = 1.0 / s ** 3
    out = np.sqrt(-0.5 * s) * (1.0 + r / 8.0 - 73.0 * r * r / 128.0 + 10657.0 * r ** 3 / 1024.0)
    return float(out) if out.ndim == 0 else out


def _solve_painleve(s_points: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """q, U, V at the given points (any order)."""
    s_points = np.asarray(s_points, dtype=float)
    start, stop, rtol = settings.TW_ODE_START, settings.TW_ODE_STOP, settings.TW_RTOL
    if s_points.max() > start:
        raise DomainError(f"Painleve points must not exceed the start point s = {start}")

    q = np.empty_like(s_points)
    u = np.empty_like(s_points)
    v = np.empty_like(s_points)

    upper = s_points >= stop
    t_eval = np.unique(np.concatenate([s_points[upper], [stop]]))[::-1]
    sol = solve_ivp(
        _painleve_rhs, (start, stop), _airy_boundary(start),
        method="DOP853", t_eval=t_eval, rtol=rtol, atol=ODE_ATOL,
    )
    if sol.status != 0 or not np.all(np.isfinite(sol.y)):
        raise PainleveDivergenceError(
            f"backward Painleve integration failed: {sol.message}",
            {"start": start, "stop": stop, "rtol": rtol},
        )

    t_asc, y_asc = sol.t[::-1], sol.y[:, ::-1]
    if np.any(y_asc[0] <= 0.0):
        bad = float(t_asc[np.argmax(y_asc[0] <= 0.0)])
        raise PainleveDivergenceError(
            "the solution left the Hastings-McLeod branch (q <= 0)",
            {"first_nonpositive_s": bad, "rtol": rtol},
        )

    idx = np.searchsorted(t_asc, s_points[upper])
    q[upper], u[upper], v[upper] = y_asc[0, idx], y_asc[2, idx], y_asc[4, idx]

    q_join, q_series = float(y_asc[0, 0]), hastings_mcleod_left(stop)
    mismatch = abs(q_join / q_series - 1.0)
    logger.debug("Painleve join at s=%g: relative mismatch %.3e (%d steps)", stop, mismatch, sol.t.size)
    if mismatch > JOIN_TOLERANCE:
        raise PainleveDivergenceError(
            "backward Painleve solution disagrees with the left asymptotic branch",
            {"s": stop, "q_ode": q_join, "q_series": q_series, "mismatch": mismatch},
        )

    lower = ~upper
    if np.any(lower):
        t_low = np.unique(s_points[lower])[::-1]

        def tail_rhs(s, y):
            qs = hastings_mcleod_left(s)
            return [y[1], qs * qs, -qs]

        sol_low = solve_ivp(
            tail_rhs, (stop, float(t_low[-1])), [y_asc[2, 0], y_asc[3, 0], y_asc[4, 0]],
            method="DOP853", t_eval=t_low, rtol=rtol, atol=ODE_ATOL,
        )
        if sol_low.status != 0:
            raise PainleveDivergenceError(f"left continuation failed: {sol_low.message}")
        t_low_asc, y_low_asc = sol_low.t[::-1], sol_low.y[:, ::-1]
        idx = np.searchsorted(t_low_asc, s_points[lower])
        q[lower] = hastings_mcleod_left(s_points[lower])
        u[lower], v[lower] = y_low_asc[0, idx], y_low_asc[2, idx]

    return q, u, v


def hastings_mcleod(s_grid) -> np.ndarray:
    """Hastings-McLeod solution q(s) ~ Ai(s) as s -> +inf, at the points of s_grid."""
    q, _, _ = _solve_painleve(np.asarray(s_grid, dtype=float))
    return q


# ================================
# TRACY-WIDOM TABLES
# ================================

def _grid_key() -> Tuple[float, ...]:
    return (
        settings.TW_GRID_MIN, settings.TW_GRID_MAX, settings.TW_GRID_STEP,
        settings.TW_ODE_START, settings.TW_ODE_STOP, settings.TW_RTOL,
    )


def _cache_name(key: Tuple[float, ...]) -> str:
    return "tw_" + "_".join(f"{k:g}" for k in key) + ".csv"


def table_cache_path() -> Path:
    """Cache file of the tables for the current grid settings."""
    return cache_path(_cache_name(_grid_key()))


def tw_grid() -> np.ndarray:
    count = int(round((settings.TW_GRID_MAX - settings.TW_GRID_MIN) / settings.TW_GRID_STEP)) + 1
    return np.linspace(settings.TW_GRID_MIN, settings.TW_GRID_MAX, count)


def build_tw_tables() -> Dict[int, TWTable]:
    """Both tables from a single Painleve solve."""
    s = tw_grid()
    logger.info("building Tracy-Widom tables on %d points [%g, %g]", s.size, s[0], s[-1])
    q, u, v = _solve_painleve(s)
    grid, q_values = tuple(s.tolist()), tuple(q.tolist())
    return {
        1: TWTable(beta_index=1, s_grid=grid, log_F_values=tuple((-0.5 * (u + v)).tolist()), q_values=q_values),
        2: TWTable(beta_index=2, s_grid=grid, log_F_values=tuple((-u).tolist()), q_values=q_values),
    }


def tables_to_frame(tables: Dict[int, TWTable]) -> pd.DataFrame:
    t1, t2 = tables[1], tables[2]
    return pd.DataFrame({
        "s": t1.s_grid,
        "q": t1.q_values,
        "F1": t1.F_values,
        "F2": t2.F_values,
        "logF1": t1.log_F_values,
        "logF2": t2.log_F_values,
    })[TABLE_COLUMNS]


def tables_from_frame(frame: pd.DataFrame) -> Dict[int, TWTable]:
    grid, q_values = tuple(frame["s"].tolist()), tuple(frame["q"].tolist())
    return {
        1: TWTable(beta_index=1, s_grid=grid, log_F_values=tuple(frame["logF1"].tolist()), q_values=q_values),
        2: TWTable(beta_index=2, s_grid=grid, log_F_values=tuple(frame["logF2"].tolist()), q_values=q_values),
    }


def _load_or_build(key: Tuple[float, ...], use_cache: bool) -> Dict[int, TWTable]:
    path = cache_path(_cache_name(key)) if use_cache else None
    if path is not None:
        frame = read_frame(path)
        if frame is not None:
            try:
                return tables_from_frame(frame)
            except (KeyError, ValidationError) as e:
                logger.warning("rebuilding Tracy-Widom tables, cache %s is invalid: %s", path, e)

    tables = build_tw_tables()
    if path is not None:
        write_frame(tables_to_frame(tables), path)
    return tables


def tw_table(beta_index: int, use_cache: Optional[bool] = None) -> TWTable:
    """Lazily built table for the current grid settings, shared by every caller."""
    if beta_index not in (1, 2):
        raise DomainError(f"beta_index must be 1 or 2 (got {beta_index})")
    key = _grid_key()
    with _TABLES_LOCK:
        tables = _TABLES.get(key)
        if tables is None:
            tables = _load_or_build(key, settings.USE_CACHE if use_cache is None else use_cache)
            _TABLES[key] = tables
    return tables[beta_index]


def clear_table_memo() -> None:
    with _TABLES_LOCK:
        _TABLES.clear()


# ================================
# DISTRIBUTION AND QUANTILES
# ================================

@lru_cache(maxsize=8)
def _log_cdf_interpolant(table: TWTable) -> PchipInterpolator:
    return PchipInterpolator(np.asarray(table.s_grid), np.asarray(table.log_F_values), extrapolate=False)


def _left_tail_shape(beta_index: int, s: np.ndarray) -> np.ndarray:
    x = -s
    if beta_index == 2:
        return -x ** 3 / 12.0 - np.log(x) / 8.0
    return -x ** 3 / 24.0 - x ** 1.5 / (3.0 * math.sqrt(2.0)) - np.log(x) / 16.0


def _right_tail(beta_index: int, s: np.ndarray) -> np.ndarray:
    """1 - F(s) for large s."""
    r = s ** 1.5
    if beta_index == 2:
        return np.exp(-4.0 * r / 3.0) / (16.0 * math.pi * r)
    return np.exp(-2.0 * r / 3.0) / (4.0 * math.sqrt(math.pi) * s ** 0.75)


def tw_log_cdf(beta_index: int, s: ArrayLike, table: Optional[TWTable] = None) -> ArrayLike:
    table = table or tw_table(beta_index)
    s_arr = np.asarray(s, dtype=float)
    out = np.empty(s_arr.shape)

    inside = (s_arr >= table.s_min) & (s_arr <= table.s_max)
    left = s_arr < table.s_min
    right = s_arr > table.s_max
    if np.any(inside):
        out[inside] = _log_cdf_interpolant(table)(s_arr[inside])
    if np.any(left):
        edge = np.asarray(table.s_min)
        out[left] = (
            table.log_F_values[0]
            + _left_tail_shape(table.beta_index, s_arr[left])
            - _left_tail_shape(table.beta_index, edge)
        )
    if np.any(right):
        # asymptotic shape scaled to the tabulated 1 - F at s_max
        edge_mass = -math.expm1(table.log_F_values[-1]) / _right_tail(table.beta_index, np.asarray(table.s_max))
        out[right] = np.log1p(-edge_mass * _right_tail(table.beta_index, s_arr[right]))
    if np.any(left | right):
        logger.debug("Tracy-Widom beta=%d evaluated outside the table by tail asymptotics", table.beta_index)
    return float(out) if out.ndim == 0 else out


def tw_cdf(beta_index: int, s: ArrayLike, table: Optional[TWTable] = None) -> ArrayLike:
    return np.exp(tw_log_cdf(beta_index, s, table))


def tw_cdf_flagged(beta_index: int, s: float) -> Tuple[float, bool]:
    """F_beta(s) and whether it came from the tail extrapolation."""
    table = tw_table(beta_index)
    return float(tw_cdf(beta_index, s, table)), table.is_extrapolated(float(s))


def tw_quantile(beta_index: int, prob: float) -> float:
    if not 0.0 < prob < 1.0:
        raise DomainError(f"probability must lie in (0, 1) (got {prob})")
    table = tw_table(beta_index)
    target = math.log(prob)

    def gap(x):
        return tw_log_cdf(beta_index, x, table) - target

    lo, hi = table.s_min, table.s_max
    while gap(lo) > 0.0:
        lo -= 10.0
    while gap(hi) < 0.0:
        hi += 10.0
    return brentq(gap, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=500)


@lru_cache(maxsize=8)
def _inverse_interpolant(table: TWTable) -> PchipInterpolator:
    return PchipInterpolator(np.asarray(table.log_F_values), np.asarray(table.s_grid), extrapolate=False)


def tw_quantiles(beta_index: int, probs) -> np.ndarray:
    """Vectorised quantiles by inverting the tabulated log F; root finding only outside the table."""
    probs = np.asarray(probs, dtype=float)
    if np.any((probs <= 0.0) | (probs >= 1.0)):
        raise DomainError("probabilities must lie in (0, 1)")
    table = tw_table(beta_index)
    out = np.atleast_1d(_inverse_interpolant(table)(np.log(probs)))
    for i in np.flatnonzero(~np.isfinite(out)):
        out[i] = tw_quantile(beta_index, float(np.atleast_1d(probs)[i]))
    return out.reshape(probs.shape)
