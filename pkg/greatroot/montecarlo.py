# greatroot/montecarlo.py
"""
Double Wishart simulation of the roots of det[B - theta (A + B)] = 0.

A = X^H X and B = Y^H Y with X (m x p) and Y (n x p) standard Gaussian; complex
entries have independent real and imaginary parts of variance 1/2. The pencil is
reduced with the Cholesky factor L of A + B to the Hermitian matrix L^{-1} B L^{-H}.

Draws are split into chunk_count independent PCG64 streams spawned from the seed,
so results depend on (seed, chunk_count, reps) and not on the number of threads.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from numpy.random import PCG64, Generator, SeedSequence
from scipy import linalg
from scipy.special import logit

from greatroot.config import settings
from greatroot.edge_scaling import greatest_root_scaling
from greatroot.models.enums import Ensemble, ScaleKind
from greatroot.schemas.montecarlo import EmpiricalCDF, SimConfig
from greatroot.special import tw_quantiles
from greatroot.utils.errors import DomainError, FactorizationError

logger = logging.getLogger(__name__)

# probabilities of the reference percentile columns
TABLE_LEVELS = (0.01, 0.05, 0.10, 0.30, 0.50, 0.70, 0.90, 0.95, 0.99)
PROB_PLOT_MIN_REPS = 100


# ================================
# SINGLE DRAWS
# ================================

def generators(cfg: SimConfig) -> List[Generator]:
    return [Generator(PCG64(child)) for child in SeedSequence(cfg.seed).spawn(cfg.chunk_count)]


def chunk_sizes(reps: int, chunk_count: int) -> List[int]:
    base, extra = divmod(reps, chunk_count)
    return [base + (1 if i < extra else 0) for i in range(chunk_count)]


def _gaussian(rng: Generator, rows: int, cols: int, ensemble: Ensemble) -> np.ndarray:
    if ensemble is Ensemble.COMPLEX:
        return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)
    return rng.standard_normal((rows, cols))


def _spectrum_once(cfg: SimConfig, rng: Generator) -> np.ndarray:
    p, m, n = cfg.params.p, cfg.params.m, cfg.params.n
    x = _gaussian(rng, m, p, cfg.ensemble)
    y = _gaussian(rng, n, p, cfg.ensemble)
    a = x.conj().T @ x
    b = y.conj().T @ y
    lower = linalg.cholesky(a + b, lower=True)
    half = linalg.solve_triangular(lower, b, lower=True)
    reduced = linalg.solve_triangular(lower, half.conj().T, lower=True)
    return linalg.eigvalsh(0.5 * (reduced + reduced.conj().T))


def _spectrum_with_retries(cfg: SimConfig, rng: Generator) -> Tuple[np.ndarray, int]:
    failures = 0
    while True:
        try:
            return _spectrum_once(cfg, rng), failures
        except (linalg.LinAlgError, ValueError) as e:
            failures += 1
            logger.debug("resampling after factorisation failure %d: %s", failures, e)
            if failures >= settings.SIM_MAX_FAILURES:
                raise FactorizationError(
                    f"A + B was numerically singular in {failures} consecutive draws",
                    {"params": cfg.params.model_dump(), "failures": failures},
                )


def sample_spectrum(cfg: SimConfig, rng: Optional[Generator] = None) -> np.ndarray:
    """All p roots of one draw, ascending."""
    rng = rng if rng is not None else generators(cfg)[0]
    return _spectrum_with_retries(cfg, rng)[0]


def sample_largest_root(cfg: SimConfig, rng: Optional[Generator] = None) -> float:
    return float(sample_spectrum(cfg, rng)[-1])


# ================================
# REPLICATION
# ================================

def _run_chunk(cfg: SimConfig, rng: Generator, size: int, full: bool) -> Tuple[np.ndarray, int]:
    out = np.empty((size, cfg.params.p)) if full else np.empty(size)
    resampled = 0
    for i in range(size):
        spectrum, failures = _spectrum_with_retries(cfg, rng)
        resampled += failures
        out[i] = spectrum if full else spectrum[-1]
    return out, resampled


def _replicate(cfg: SimConfig, draws: int, full: bool) -> np.ndarray:
    sizes = chunk_sizes(draws, cfg.chunk_count)
    rngs = generators(cfg)
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        results = list(pool.map(lambda job: _run_chunk(cfg, job[0], job[1], full), zip(rngs, sizes)))
    resampled = sum(r for _, r in results)
    if resampled:
        logger.warning("resampled %d draws after factorisation failures", resampled)
    logger.info(
        "simulated %d draws of (p, m, n) = (%d, %d, %d), %s, in %d chunks",
        draws, cfg.params.p, cfg.params.m, cfg.params.n, cfg.ensemble.value, cfg.chunk_count,
    )
    return np.concatenate([values for values, _ in results])


def simulate_largest_roots(cfg: SimConfig) -> np.ndarray:
    return _replicate(cfg, cfg.reps, full=False)


def simulate_spectra(cfg: SimConfig, draws: Optional[int] = None) -> np.ndarray:
    """(draws, p) array of ascending spectra; draws defaults to cfg.reps."""
    return _replicate(cfg, cfg.reps if draws is None else draws, full=True)


# ================================
# REDUCTIONS
# ================================

def standardized(cfg: SimConfig, roots: np.ndarray) -> np.ndarray:
    scaling = greatest_root_scaling(cfg.params, cfg.ensemble, cfg.scale_kind)
    values = logit(roots) if cfg.scale_kind is ScaleKind.LOGIT else roots
    return scaling.standardize(values)


def _binomial_se(estimates: np.ndarray, reps: int) -> np.ndarray:
    return np.sqrt(estimates * (1.0 - estimates) / reps)


def empirical_table(
    cfg: SimConfig,
    tw_percentiles: Optional[Sequence[float]] = None,
    roots: Optional[np.ndarray] = None,
    levels: Optional[Sequence[float]] = None,
) -> EmpiricalCDF:
    """Fraction of standardised draws at or below each Tracy-Widom percentile.

    tw_percentiles defaults to the Tracy-Widom quantiles of levels (TABLE_LEVELS
    when not given), which are then reported as the nominal levels.
    """
    nominal = None
    if tw_percentiles is None:
        nominal = tuple(float(v) for v in (TABLE_LEVELS if levels is None else levels))
        tw_percentiles = tw_quantiles(cfg.ensemble.beta_index, nominal)
    reference = np.asarray(tw_percentiles, dtype=float)
    roots = simulate_largest_roots(cfg) if roots is None else roots
    draws = np.sort(standardized(cfg, roots))
    estimates = np.searchsorted(draws, reference, side="right") / len(draws)
    return EmpiricalCDF(
        reference_s=tuple(reference.tolist()),
        estimates=tuple(estimates.tolist()),
        reps=len(draws),
        standard_errors=tuple(_binomial_se(estimates, len(draws)).tolist()),
        nominal=nominal,
    )


def empirical_cdf_at(cfg: SimConfig, thetas: Sequence[float], roots: Optional[np.ndarray] = None) -> np.ndarray:
    """Empirical CDF of the largest root on the theta scale."""
    roots = np.sort(simulate_largest_roots(cfg) if roots is None else roots)
    return np.searchsorted(roots, np.asarray(thetas, dtype=float), side="right") / len(roots)


def prob_plot_data(cfg: SimConfig, roots: Optional[np.ndarray] = None) -> pd.DataFrame:
    """Sorted standardised draws against F^{-1}((i - 0.5) / R)."""
    if cfg.reps < PROB_PLOT_MIN_REPS:
        raise DomainError(f"probability plots need reps >= {PROB_PLOT_MIN_REPS} (got {cfg.reps})")
    roots = simulate_largest_roots(cfg) if roots is None else roots
    draws = np.sort(standardized(cfg, roots))
    levels = (np.arange(1, len(draws) + 1) - 0.5) / len(draws)
    return pd.DataFrame({"empirical": draws, "tracy_widom": tw_quantiles(cfg.ensemble.beta_index, levels)})
