import numpy as np
import pytest

from greatroot import oracle
from greatroot.models.enums import Ensemble
from greatroot.special import tw_cdf
from greatroot.utils.errors import DomainError


# ================================
# p = 1
# ================================

@pytest.mark.parametrize("x", [0.0, 0.1, 0.37, 0.5, 0.93, 1.0])
def test_p1_uniform_case(x):
    assert oracle.exact_cdf_p1(2, 2, x) == pytest.approx(x, abs=1e-15)


def test_p1_endpoints():
    assert oracle.exact_cdf_p1(40, 4, 0.0) == 0.0
    assert oracle.exact_cdf_p1(40, 4, 1.0) == 1.0


def test_p1_rejects_outside_unit_interval():
    with pytest.raises(DomainError):
        oracle.exact_cdf_p1(4, 4, 1.5)


# ================================
# p = 2
# ================================

def test_p2_total_mass_gives_one():
    assert oracle.exact_cdf_p2(16, 4, 1.0) == 1.0


def test_p2_both_orderings_agree():
    for x in (0.2, 0.5, 0.8):
        first, _ = oracle.p2_joint_mass(16, 4, x, largest_first=True)
        second, _ = oracle.p2_joint_mass(16, 4, x, largest_first=False)
        assert first == pytest.approx(second, rel=1e-9)


def test_p2_cdf_is_nondecreasing():
    grid = np.linspace(0.02, 0.98, 50)
    values = [oracle.exact_cdf_p2(16, 4, x) for x in grid]
    assert np.all(np.diff(values) >= 0)
    assert 0.0 <= values[0] < values[-1] <= 1.0


def test_p2_real_and_complex_differ():
    grid = np.linspace(0.05, 0.6, 12)
    real = np.array([oracle.exact_cdf_p2(16, 4, x, Ensemble.REAL) for x in grid])
    complex_ = np.array([oracle.exact_cdf_p2(16, 4, x, Ensemble.COMPLEX) for x in grid])
    assert np.max(np.abs(real - complex_)) > 5 * oracle.P2_TOLERANCE


def test_p2_quantile_round_trip():
    x = oracle.exact_quantile_p2(16, 4, 0.95)
    assert 0 < x < 1
    assert oracle.exact_cdf_p2(16, 4, x) == pytest.approx(0.95, abs=1e-8)


@pytest.mark.parametrize("ensemble", [Ensemble.REAL, Ensemble.COMPLEX])
def test_p2_rejects_non_integrable_exponents(ensemble):
    with pytest.raises(DomainError):
        oracle.exact_cdf_p2(16, 1, 0.5, ensemble)


# ================================
# FREDHOLM DETERMINANT
# ================================

def test_fredholm_limits():
    assert oracle.fredholm_f2(6.0) >= 1 - 1e-6
    assert oracle.fredholm_f2(-8.0) <= 1e-3


@pytest.mark.parametrize("s", [-4.0, -2.0, 0.0, 2.0])
def test_fredholm_matches_painleve_route(s):
    assert oracle.fredholm_f2(s) == pytest.approx(tw_cdf(2, s), abs=1e-6)


def test_fredholm_is_increasing():
    values = [oracle.fredholm_f2(s) for s in np.linspace(-6.0, 4.0, 21)]
    assert np.all(np.diff(values) > 0)


def test_fredholm_range():
    with pytest.raises(DomainError):
        oracle.fredholm_f2(7.5)
