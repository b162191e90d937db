# greatroot/params.py
"""
Parameter systems for the double Wishart problem and conversions among them.

The statistical triple (p, m, n), the Jacobi ensemble parameters (N, alpha, beta),
the Liouville-Green parameters (kappa, lambda, mu) and the angles (gamma, phi)
describe the same problem; the turning points x_-, x_+ follow from the angles.
"""
import logging
import math

from greatroot.models.enums import Ensemble
from greatroot.schemas.params import Angles, JacobiParams, LGParams, StatParams, TurningPoints

logger = logging.getLogger(__name__)


def dual(s: StatParams) -> StatParams:
    """(p, m, n) -> (n, m + n - p, p); the greatest-root law is unchanged."""
    return StatParams(p=s.n, m=s.m + s.n - s.p, n=s.p)


def to_jacobi(s: StatParams, ensemble: Ensemble = Ensemble.REAL) -> JacobiParams:
    ensemble = Ensemble(ensemble)
    if s.m == s.p:
        logger.warning(
            "m = p = %d gives alpha = 0: the upper turning point sits at x = 1 and no soft-edge scaling exists",
            s.p,
        )

    size = min(s.p, s.n)
    N = size if ensemble is Ensemble.COMPLEX else size - 1
    return JacobiParams(N=N, alpha=s.m - s.p, beta=abs(s.n - s.p), ensemble=ensemble)


def jacobi_from_ab(N: int, a: float, b: float, ensemble: Ensemble = Ensemble.REAL) -> JacobiParams:
    """Variant parameterisation alpha = (N + 1/2) a, beta = (N + 1/2) b."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
    n_plus = N + 0.5
    return JacobiParams(N=N, alpha=n_plus * a, beta=n_plus * b, ensemble=ensemble)


def _angles_from_half_angle_ratios(r_gamma: float, r_phi: float) -> Angles:
    gamma = 2.0 * math.asin(math.sqrt(r_gamma))
    phi = 2.0 * math.asin(math.sqrt(r_phi))
    return Angles(gamma=gamma, phi=phi)


def angles_from_jacobi(j: JacobiParams) -> Angles:
    kappa = j.kappa
    return _angles_from_half_angle_ratios((j.N + 0.5) / kappa, (j.N + j.beta + 0.5) / kappa)


def angles_from_stat(s: StatParams) -> Angles:
    total = s.m + s.n - 1.0
    return _angles_from_half_angle_ratios(
        (min(s.p, s.n) - 0.5) / total,
        (max(s.p, s.n) - 0.5) / total,
    )


def lg_params(j: JacobiParams) -> LGParams:
    kappa = j.kappa
    return LGParams(kappa=kappa, lam=j.alpha / kappa, mu_lg=j.beta / kappa)


def turning_points(a: Angles) -> TurningPoints:
    return TurningPoints(
        x_minus=-math.cos(a.phi - a.gamma),
        x_plus=-math.cos(a.phi + a.gamma),
    )


def turning_points_algebraic(lg: LGParams) -> TurningPoints:
    """Same points from lambda and mu directly."""
    lam, mu = lg.lam, lg.mu_lg
    center = mu * mu - lam * lam
    root = math.sqrt(max((1.0 - (lam + mu) ** 2) * (1.0 - (lam - mu) ** 2), 0.0))
    return TurningPoints(x_minus=max(center - root, -1.0), x_plus=min(center + root, 1.0))
