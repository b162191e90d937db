# greatroot/utils/quadrature.py
import logging
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy.special import roots_legendre

from greatroot.utils.errors import ConvergenceError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def _reference_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_legendre(order)
    return nodes, weights


def gauss_legendre(order: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the order-point Gauss-Legendre rule on [a, b]."""
    nodes, weights = _reference_rule(order)
    half = 0.5 * (b - a)
    return half * nodes + 0.5 * (a + b), half * weights


def fixed_gauss_legendre(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, order: int = 32) -> float:
    x, w = gauss_legendre(order, a, b)
    return float(np.dot(w, f(x)))


def adaptive_gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-12,
    order: int = 32,
    max_depth: int = 40,
) -> float:
    """Globally adaptive bisection with a fixed-order Gauss-Legendre panel rule.

    A panel is accepted when its value and the sum over its two halves agree
    within an absolute share of tol proportional to the panel width.
    """
    if a == b:
        return 0.0
    total_width = abs(b - a)
    stack = [(a, b, fixed_gauss_legendre(f, a, b, order), 0)]
    result = 0.0
    panels = 0
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = fixed_gauss_legendre(f, lo, mid, order)
        right = fixed_gauss_legendre(f, mid, hi, order)
        share = tol * abs(hi - lo) / total_width
        if abs(left + right - whole) <= max(share, 1e-15 * abs(left + right)):
            result += left + right
            panels += 1
            continue
        if depth >= max_depth:
            raise ConvergenceError(
                "adaptive Gauss-Legendre quadrature did not converge",
                {"interval": (lo, hi), "estimate": result + left + right, "tol": tol},
            )
        stack.append((lo, mid, left, depth + 1))
        stack.append((mid, hi, right, depth + 1))
    logger.debug("adaptive quadrature on [%g, %g] used %d panels", a, b, panels)
    return result
