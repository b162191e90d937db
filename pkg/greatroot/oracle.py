# greatroot/oracle.py
"""
Independent reference values for the edge approximations.

p = 1:  theta ~ Beta(n/2, m/2).
p = 2:  ratio of integrals of the unnormalised joint density of (theta_1, theta_2),
        prod theta_i^b (1 - theta_i)^a |theta_1 - theta_2|^k with
        (a, b, k) = ((m - 3)/2, (n - 3)/2, 1) real and (m - 2, n - 2, 2) complex.
F2:     Fredholm determinant of the Airy kernel on (s0, inf) by Gauss-Legendre Nystrom.
"""
import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy import linalg
from scipy import special as sc
from scipy.integrate import dblquad
from scipy.optimize import brentq

from greatroot.config import settings
from greatroot.models.enums import Ensemble
from greatroot.special import airy_kernel
from greatroot.utils.errors import ConvergenceError, DomainError
from greatroot.utils.quadrature import gauss_legendre

logger = logging.getLogger(__name__)

P2_TOLERANCE = 1e-8
FREDHOLM_TOLERANCE = 1e-8
FREDHOLM_TAIL = 12.0
FREDHOLM_RANGE = (-8.0, 6.0)


def exact_cdf_p1(m: int, n: int, x: float) -> float:
    if m < 1 or n < 1:
        raise DomainError(f"m, n >= 1 are required (got m={m}, n={n})")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1] (got {x})")
    return float(sc.betainc(0.5 * n, 0.5 * m, x))


# ================================
# p = 2
# ================================

def _p2_exponents(m: int, n: int, ensemble: Ensemble) -> Tuple[float, float, int]:
    if Ensemble(ensemble) is Ensemble.COMPLEX:
        a, b, k = m - 2.0, n - 2.0, 2
    else:
        a, b, k = 0.5 * (m - 3), 0.5 * (n - 3), 1
    if a <= -1.0 or b <= -1.0:
        raise DomainError(
            f"the p = 2 joint density is not integrable for m={m}, n={n}",
            {"m": m, "n": n, "ensemble": Ensemble(ensemble).value},
        )
    return a, b, k


def p2_joint_mass(m: int, n: int, x: float, ensemble: Ensemble = Ensemble.REAL, largest_first: bool = True) -> Tuple[float, float]:
    """Unnormalised mass of {theta_2 <= theta_1 <= x} and its quadrature error.

    theta = sin^2 u removes the endpoint singularities of theta^b (1 - theta)^a.
    largest_first runs the outer integral over the larger root; otherwise over the smaller.
    """
    a, b, k = _p2_exponents(m, n, ensemble)
    top = math.asin(math.sqrt(x))

    def marginal(u):
        return 2.0 * math.sin(u) ** (2.0 * b + 1.0) * math.cos(u) ** (2.0 * a + 1.0)

    def density(inner, outer):
        gap = abs(math.sin(outer) ** 2 - math.sin(inner) ** 2)
        return marginal(outer) * marginal(inner) * gap ** k

    if largest_first:
        inner_lo, inner_hi = 0.0, (lambda outer: outer)
    else:
        inner_lo, inner_hi = (lambda outer: outer), top
    mass, error = dblquad(density, 0.0, top, inner_lo, inner_hi, epsabs=0.0, epsrel=1e-11)
    return mass, error


@lru_cache(maxsize=64)
def _total_mass(m: int, n: int, ensemble: Ensemble) -> Tuple[float, float]:
    return p2_joint_mass(m, n, 1.0, ensemble)


def exact_cdf_p2(m: int, n: int, x: float, ensemble: Ensemble = Ensemble.REAL) -> float:
    """P(theta_1 <= x) for p = 2."""
    if not 0.0 < x <= 1.0:
        raise DomainError(f"x must lie in (0, 1] (got {x})")
    total, total_err = _total_mass(m, n, Ensemble(ensemble))
    if x == 1.0:
        return 1.0
    part, part_err = p2_joint_mass(m, n, x, ensemble)
    ratio = part / total
    achieved = ratio * (part_err / part + total_err / total) if part > 0 else total_err / total
    if achieved > P2_TOLERANCE:
        raise ConvergenceError(
            "p = 2 quadrature did not reach the requested tolerance",
            {"estimate": ratio, "achieved": achieved, "tol": P2_TOLERANCE},
        )
    return min(max(ratio, 0.0), 1.0)


def exact_quantile_p2(m: int, n: int, prob: float, ensemble: Ensemble = Ensemble.REAL) -> float:
    if not 0.0 < prob < 1.0:
        raise DomainError(f"probability must lie in (0, 1) (got {prob})")
    return brentq(lambda x: exact_cdf_p2(m, n, x, ensemble) - prob, 1e-12, 1.0, xtol=1e-10)


# ================================
# FREDHOLM DETERMINANT
# ================================

def _airy_determinant(s0: float, nodes: int) -> float:
    x, w = gauss_legendre(nodes, s0, max(s0, 0.0) + FREDHOLM_TAIL)
    root_w = np.sqrt(w)
    kernel = root_w[:, None] * airy_kernel(x[:, None], x[None, :]) * root_w[None, :]
    return float(linalg.det(np.eye(nodes) - kernel))


def fredholm_f2(s0: float) -> float:
    """F2(s0) = det(I - S_A) on L^2(s0, inf), doubling the node count until it settles."""
    lo, hi = FREDHOLM_RANGE
    if not lo <= s0 <= hi:
        raise DomainError(f"s0 must lie in [{lo:g}, {hi:g}] (got {s0})")
    nodes = settings.FREDHOLM_MIN_NODES
    previous = _airy_determinant(s0, nodes)
    while nodes * 2 <= settings.FREDHOLM_MAX_NODES:
        nodes *= 2
        current = _airy_determinant(s0, nodes)
        if abs(current - previous) < FREDHOLM_TOLERANCE:
            logger.debug("Fredholm determinant at s0=%g converged with %d nodes", s0, nodes)
            return current
        previous = current
    raise ConvergenceError(
        "Fredholm determinant did not settle",
        {"s0": s0, "estimate": previous, "nodes": nodes},
    )
