import math

import hypothesis as hyp
import hypothesis.strategies as hyp_st
import pytest

from greatroot import edge_scaling as es
from greatroot.models.enums import Ensemble, ScaleKind
from greatroot.params import angles_from_jacobi, angles_from_stat, dual, jacobi_from_ab, to_jacobi
from greatroot.schemas.params import JacobiParams, StatParams
from greatroot.utils.errors import DomainError, HardEdgeError


@hyp_st.composite
def soft_edge_params(draw, max_dim=80):
    p = draw(hyp_st.integers(1, max_dim))
    m = draw(hyp_st.integers(p + 1, 8 * max_dim))
    n = draw(hyp_st.integers(1, 4 * max_dim))
    return StatParams(p=p, m=m, n=n)


REFERENCE = StatParams(p=5, m=40, n=10)


def test_x_scale_defining_identity():
    j = to_jacobi(REFERENCE)
    a = angles_from_jacobi(j)
    total = a.phi + a.gamma
    x = es.x_scale(j)
    assert x.center == pytest.approx(-math.cos(total), abs=1e-15)
    ratio = x.scale ** 3 * j.kappa ** 2 * math.sin(a.phi) * math.sin(a.gamma) / (2 * math.sin(total) ** 4)
    assert ratio == pytest.approx(1.0, abs=1e-12)


def test_symmetric_case_centers_at_sin_gamma():
    j = JacobiParams(N=10, alpha=7.0, beta=7.0)
    a = angles_from_jacobi(j)
    assert es.x_scale(j).center == pytest.approx(math.sin(a.gamma), abs=1e-14)


def test_u_scale_identities():
    j = to_jacobi(REFERENCE)
    a = angles_from_jacobi(j)
    total = a.phi + a.gamma
    x, u = es.x_scale(j), es.u_scale(j)
    assert u.center == pytest.approx(math.atanh(x.center), abs=1e-12)
    e2 = math.exp(2 * u.center)
    assert math.sin(0.5 * total) ** 2 == pytest.approx(e2 / (1 + e2), abs=1e-12)
    cube = 2.0 / (j.kappa ** 2 * math.sin(total) ** 2 * math.sin(a.phi) * math.sin(a.gamma))
    assert u.scale ** 3 / cube == pytest.approx(1.0, abs=1e-12)
    assert u.scale == pytest.approx(x.scale / (1 - x.center ** 2), rel=1e-12)


def test_hard_edge_has_no_soft_scaling():
    with pytest.raises(HardEdgeError):
        es.x_scale(JacobiParams(N=4, alpha=0.0, beta=3.0))
    with pytest.raises(HardEdgeError):
        es.real_logit_scaling(StatParams(p=6, m=6, n=9))


def test_real_logit_reference_identity():
    s = REFERENCE
    a = angles_from_stat(s)
    total = a.phi + a.gamma
    logit = es.real_logit_scaling(s)
    assert logit.center == pytest.approx(2 * math.log(math.tan(0.5 * total)), abs=1e-12)
    assert logit.center == pytest.approx(2 * math.atanh(-math.cos(total)), abs=1e-12)
    value = logit.scale ** 3 * (s.m + s.n - 1) ** 2 * math.sin(total) ** 2 * math.sin(a.phi) * math.sin(a.gamma)
    assert value == pytest.approx(16.0, rel=1e-12)


@hyp.given(s=soft_edge_params())
def test_real_logit_is_dual_invariant(s):
    left, right = es.real_logit_scaling(s), es.real_logit_scaling(dual(s))
    assert left.center == pytest.approx(right.center, abs=1e-12)
    assert left.scale == pytest.approx(right.scale, rel=1e-12)


@hyp.given(s=soft_edge_params())
def test_scales_are_positive(s):
    assert es.real_logit_scaling(s).scale > 0
    assert es.theta_scaling(s).scale > 0


def _theta_closed_form(s):
    a = angles_from_stat(s)
    total = a.phi + a.gamma
    center = math.sin(0.5 * total) ** 2
    cube = math.sin(total) ** 4 / (4 * (s.m + s.n - 1) ** 2 * math.sin(a.phi) * math.sin(a.gamma))
    return center, cube ** (1.0 / 3.0)


def test_theta_scaling_two_forms_agree_at_reference():
    theta = es.theta_scaling(REFERENCE)
    center, scale = _theta_closed_form(REFERENCE)
    assert theta.center == pytest.approx(center, abs=1e-12)
    assert theta.scale == pytest.approx(scale, rel=1e-12)
    assert theta.scale_kind is ScaleKind.THETA


@hyp.given(s=soft_edge_params())
def test_theta_scaling_two_forms_agree(s):
    theta = es.theta_scaling(s)
    center, scale = _theta_closed_form(s)
    assert 0 < theta.center < 1
    assert theta.center == pytest.approx(center, abs=1e-12)
    assert theta.scale == pytest.approx(scale, rel=1e-10)


def test_complex_center_is_a_convex_combination():
    s = REFERENCE
    j = to_jacobi(s, Ensemble.COMPLEX)
    top, below = es.u_scale(j), es.u_scale(j.lowered())
    logit = es.complex_logit_scaling(s)
    lo, hi = sorted([2 * top.center, 2 * below.center])
    assert lo < logit.center < hi
    assert logit.ensemble is Ensemble.COMPLEX


def test_complex_scale_close_to_degree_N_scale():
    s = StatParams(p=100, m=800, n=200)
    j = to_jacobi(s, Ensemble.COMPLEX)
    ratio = es.complex_logit_scaling(s).scale / (2 * es.u_scale(j).scale)
    assert abs(ratio - 1.0) <= 2.0 / j.N


def test_complex_needs_two_dimensions():
    with pytest.raises(DomainError):
        es.complex_logit_scaling(StatParams(p=1, m=20, n=5))


def test_greatest_root_scaling_dispatch():
    assert es.greatest_root_scaling(REFERENCE) == es.real_logit_scaling(REFERENCE)
    assert es.greatest_root_scaling(REFERENCE, Ensemble.COMPLEX, ScaleKind.THETA) == es.theta_scaling(
        REFERENCE, Ensemble.COMPLEX
    )
    with pytest.raises(DomainError):
        es.greatest_root_scaling(REFERENCE, scale_kind=ScaleKind.X)


def test_smallest_root_scaling_reflects():
    s = StatParams(p=5, m=40, n=40)
    small = es.smallest_root_scaling(s)
    large = es.real_logit_scaling(s)
    assert small.reflected
    assert small.center == pytest.approx(-large.center, abs=1e-14)
    assert small.scale == pytest.approx(large.scale, rel=1e-14)
    assert small.standardize(small.center - small.scale) == pytest.approx(1.0)


def test_smallest_root_needs_n_at_least_p():
    with pytest.raises(DomainError):
        es.smallest_root_scaling(StatParams(p=5, m=40, n=3))


# ================================
# DEGREE N VERSUS N - 1
# ================================

@pytest.mark.parametrize("N", [50, 100, 200])
def test_degree_step_ratios_are_first_order(N):
    d = es.degree_step_diagnostics(jacobi_from_ab(N, 2.0, 1.0))
    assert abs(d.sigma_ratio - 1.0) <= 10.0 / N
    assert abs(d.tau_ratio - 1.0) <= 10.0 / N
    assert abs(d.omega_ratio - 1.0) <= 10.0 / N
    assert d.delta_N > 0
    assert d.u_diff / d.u_diff_predicted == pytest.approx(1.0, abs=10.0 / N)


def test_delta_N_decays_like_cube_root():
    scaled = [es.degree_step_diagnostics(jacobi_from_ab(N, 2.0, 1.0)).delta_N * N ** (1 / 3) for N in (50, 100, 200, 400, 800)]
    assert all(0 < v < 5 for v in scaled)
    assert max(scaled) / min(scaled) < 1.2


def test_angle_derivatives_match_differences():
    j = jacobi_from_ab(200, 2.0, 1.0)
    d = es.degree_step_diagnostics(j)
    top, below = angles_from_jacobi(j), angles_from_jacobi(j.lowered())
    assert (top.gamma - below.gamma) / d.gamma_derivative == pytest.approx(1.0, abs=10.0 / j.N)
    assert (top.phi - below.phi) / d.phi_derivative == pytest.approx(1.0, abs=10.0 / j.N)
    x_diff = es.x_scale(j).center - es.x_scale(j.lowered()).center
    assert x_diff / d.x_derivative == pytest.approx(1.0, abs=10.0 / j.N)


@pytest.mark.parametrize("N", [50, 100, 200])
def test_e_N_tends_to_one(N):
    j = jacobi_from_ab(N, 2.0, 1.0)
    value = es.e_N(j)
    assert abs(value - 1.0) <= 10.0 / N
    naive = es.e_N(j, scale=es.u_scale(j).scale)
    assert abs(naive - value) <= 10.0 / N


def test_e_N_moves_toward_one():
    gaps = [abs(es.e_N(jacobi_from_ab(N, 2.0, 1.0)) - 1.0) for N in (50, 100, 200, 400)]
    assert gaps == sorted(gaps, reverse=True)


def test_paired_u_scale_weights_by_inverse_scale():
    j = to_jacobi(StatParams(p=10, m=60, n=20), Ensemble.COMPLEX)
    top, below = es.u_scale(j), es.u_scale(j.lowered())
    paired = es.paired_u_scale(j)
    assert min(top.center, below.center) < paired.center < max(top.center, below.center)
    assert paired.scale == pytest.approx(2 / (1 / top.scale + 1 / below.scale), rel=1e-14)
    with pytest.raises(DomainError):
        es.paired_u_scale(JacobiParams(N=1, alpha=5.0, beta=2.0))


def test_logit_scaling_dispatches_on_ensemble():
    assert es.logit_scaling(REFERENCE) == es.real_logit_scaling(REFERENCE)
    assert es.logit_scaling(REFERENCE, Ensemble.COMPLEX) == es.complex_logit_scaling(REFERENCE)
