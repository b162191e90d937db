import math

import hypothesis as hyp
import hypothesis.strategies as hyp_st
import pytest
from pydantic import ValidationError

from greatroot.models.enums import Caveat, Ensemble
from greatroot.params import (
    angles_from_jacobi,
    angles_from_stat,
    dual,
    jacobi_from_ab,
    lg_params,
    to_jacobi,
    turning_points,
    turning_points_algebraic,
)
from greatroot.schemas.params import Angles, JacobiParams, StatParams


@hyp_st.composite
def stat_params(draw, max_dim=60):
    p = draw(hyp_st.integers(1, max_dim))
    m = draw(hyp_st.integers(p, 8 * max_dim))
    n = draw(hyp_st.integers(1, 4 * max_dim))
    return StatParams(p=p, m=m, n=n)


def test_dual_examples():
    assert dual(StatParams(p=5, m=40, n=10)) == StatParams(p=10, m=45, n=5)
    assert dual(StatParams(p=7, m=30, n=7)) == StatParams(p=7, m=30, n=7)
    assert dual(StatParams(p=2, m=16, n=4)) == StatParams(p=4, m=18, n=2)


@hyp.given(s=stat_params())
def test_dual_is_an_involution(s):
    assert dual(dual(s)) == s


def test_stat_params_rejects_singular_error_matrix():
    with pytest.raises(ValidationError, match="m >= p"):
        StatParams(p=10, m=9, n=3)


def test_to_jacobi_identifications():
    s = StatParams(p=5, m=40, n=10)
    real = to_jacobi(s, Ensemble.REAL)
    assert (real.N, real.alpha, real.beta) == (4, 35.0, 5.0)
    cplx = to_jacobi(s, Ensemble.COMPLEX)
    assert (cplx.N, cplx.alpha, cplx.beta) == (5, 35.0, 5.0)


def test_to_jacobi_hard_edge_warns(caplog):
    s = StatParams(p=6, m=6, n=6)
    with caplog.at_level("WARNING", logger="greatroot"):
        j = to_jacobi(s, Ensemble.REAL)
    assert j.alpha == 0.0
    assert "alpha = 0" in caplog.text
    assert Caveat.HARD_EDGE in s.caveats()


def test_caveats_follow_effective_dimension():
    assert Caveat.P_ODD in StatParams(p=5, m=40, n=10).caveats(Ensemble.REAL)
    assert Caveat.P_ODD not in StatParams(p=5, m=40, n=10).caveats(Ensemble.COMPLEX)
    assert StatParams(p=20, m=160, n=40).caveats(Ensemble.REAL) == []


def test_angles_at_reference_triple():
    a = angles_from_stat(StatParams(p=5, m=40, n=10))
    assert math.cos(a.gamma) == pytest.approx(40 / 49, abs=1e-13)
    assert math.cos(a.phi) == pytest.approx(30 / 49, abs=1e-13)
    assert a.gamma == pytest.approx(0.6158, abs=1e-3)
    assert a.phi == pytest.approx(0.912, abs=1e-3)


def test_symmetric_jacobi_has_right_angle_phi():
    a = angles_from_jacobi(JacobiParams(N=10, alpha=7.0, beta=7.0))
    assert a.phi == pytest.approx(math.pi / 2, abs=1e-14)


def test_lg_params_reference():
    lg = lg_params(JacobiParams(N=4, alpha=35, beta=5))
    assert lg.kappa == 49.0
    assert lg.lam == pytest.approx(35 / 49, abs=1e-15)
    assert lg.mu_lg == pytest.approx(5 / 49, abs=1e-15)


@hyp.given(s=stat_params())
def test_angle_constructions_agree(s):
    a_stat = angles_from_stat(s)
    a_jac = angles_from_jacobi(to_jacobi(s, Ensemble.REAL))
    assert a_stat.gamma == pytest.approx(a_jac.gamma, abs=1e-12)
    assert a_stat.phi == pytest.approx(a_jac.phi, abs=1e-12)


@hyp.given(s=stat_params())
def test_dual_invariance_of_angles(s):
    a, b = angles_from_stat(s), angles_from_stat(dual(s))
    assert a.gamma == pytest.approx(b.gamma, abs=1e-12)
    assert a.phi == pytest.approx(b.phi, abs=1e-12)


@hyp.given(s=stat_params())
def test_lg_identities(s):
    j = to_jacobi(s, Ensemble.REAL)
    lg, a = lg_params(j), angles_from_jacobi(j)
    assert lg.lam + lg.mu_lg == pytest.approx(math.cos(a.gamma), abs=1e-14)
    assert lg.lam - lg.mu_lg == pytest.approx(math.cos(a.phi), abs=1e-14)


@hyp.settings(max_examples=1000)
@hyp.given(s=stat_params(max_dim=200))
def test_turning_point_gap_and_ordering(s):
    j = to_jacobi(s, Ensemble.REAL)
    a = angles_from_jacobi(j)
    tp = turning_points(a)
    assert -1.0 <= tp.x_minus < tp.x_plus <= 1.0
    assert tp.x_plus - tp.x_minus == pytest.approx(2 * math.sin(a.phi) * math.sin(a.gamma), abs=1e-12)
    alg = turning_points_algebraic(lg_params(j))
    assert alg.x_plus == pytest.approx(tp.x_plus, abs=1e-12)
    assert alg.x_minus == pytest.approx(tp.x_minus, abs=1e-12)


def test_symmetric_turning_points():
    a = angles_from_jacobi(JacobiParams(N=3, alpha=4.0, beta=4.0))
    tp = turning_points(a)
    assert tp.x_plus == pytest.approx(math.sin(a.gamma), abs=1e-14)
    assert tp.x_minus == pytest.approx(-math.sin(a.gamma), abs=1e-14)


def test_turning_points_coalesce_as_gamma_vanishes():
    tp = turning_points(Angles(gamma=1e-9, phi=1.1))
    assert tp.x_plus - tp.x_minus < 1e-8
    assert tp.x_plus == pytest.approx(-math.cos(1.1), abs=1e-8)


def test_reference_upper_turning_point():
    a = angles_from_stat(StatParams(p=5, m=40, n=10))
    tp = turning_points(a)
    assert tp.x_plus == pytest.approx(-math.cos(a.gamma + a.phi), abs=1e-15)
    assert a.gamma + a.phi == pytest.approx(1.528, abs=2e-3)


def test_edges_reach_the_interval_ends_only_at_zero_exponents():
    hard = turning_points(angles_from_jacobi(JacobiParams(N=5, alpha=0.0, beta=3.0)))
    soft = turning_points(angles_from_jacobi(JacobiParams(N=5, alpha=1.0, beta=3.0)))
    assert hard.x_plus == pytest.approx(1.0, abs=1e-15)
    assert soft.x_plus < 1.0

    low_hard = turning_points(angles_from_jacobi(JacobiParams(N=5, alpha=3.0, beta=0.0)))
    low_soft = turning_points(angles_from_jacobi(JacobiParams(N=5, alpha=3.0, beta=1.0)))
    assert low_hard.x_minus == pytest.approx(-1.0, abs=1e-15)
    assert low_soft.x_minus > -1.0


def test_jacobi_from_ab():
    j = jacobi_from_ab(50, 2.0, 1.0)
    assert (j.alpha, j.beta) == (101.0, 50.5)
