import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilferbvp import analysis, green
from hilferbvp.analysis import ExistenceStatus, ProblemSpec, ThetaPair, Verdict
from hilferbvp.specfun import gamma


def spec(q="1", f="u", a=0.0, b=1.0, alpha=2.0, gamma_=2.0):
    return ProblemSpec.from_strings(a, b, alpha, gamma_, q, f)


EX1 = spec("t^2", "cosh(u)", alpha=1.75, gamma_=2.0)
EX2 = spec("sqrt(t)", "exp(-1/(u+1))", alpha=1.5, gamma_=1.5)


@st.composite
def specs(draw):
    a = draw(st.floats(-3, 3))
    b = a + draw(st.floats(0.1, 5))
    alpha = draw(st.floats(1.01, 2.0))
    g = draw(st.floats(alpha, 2.0))
    return ProblemSpec.from_strings(a, b, alpha, g, "1")


def test_problem_spec_validation():
    with pytest.raises(ValueError):
        spec(a=1.0, b=0.0)
    with pytest.raises(ValueError):
        spec(alpha=1.8, gamma_=1.5)
    with pytest.raises(ValueError):
        spec(q="u")
    assert spec().linear and not EX1.linear


@settings(max_examples=50, deadline=None)
@given(specs())
def test_bound_is_reciprocal_of_diagonal_max(s):
    assert analysis.lyapunov_bound(s) * green.diag_max(s.kernel)[1] == pytest.approx(1.0, abs=1e-12)


def test_example_1_bound_vs_golden_section():
    _, gmax = green.golden_section_max(lambda x: green.diagonal(EX1.kernel, x), 0, 1)
    assert analysis.lyapunov_bound(EX1) == pytest.approx(1 / gmax, rel=1e-12)
    assert analysis.lyapunov_bound(EX1) == pytest.approx(3.0364469396, rel=1e-9)


def test_printed_form_differs_off_origin():
    s = spec(a=1.0, b=3.0, alpha=1.5, gamma_=1.8)
    assert analysis.lyapunov_bound_as_printed(s) != pytest.approx(analysis.lyapunov_bound(s), rel=1e-3)


def test_linear_check_verdicts():
    assert analysis.lyapunov_check_linear(spec("0")).verdict is Verdict.EXCLUDED
    assert analysis.lyapunov_check_linear(spec("3.9")).verdict is Verdict.EXCLUDED
    assert analysis.lyapunov_check_linear(spec("4.1")).verdict is Verdict.HOLDS
    assert analysis.lyapunov_check_linear(spec("4")).verdict is Verdict.INDETERMINATE
    rep = analysis.lyapunov_check_linear(spec(repr(math.pi**2)))
    assert rep.lhs == pytest.approx(math.pi**2, rel=1e-14) and rep.verdict is Verdict.HOLDS
    with pytest.raises(ValueError):
        analysis.lyapunov_check_linear(EX1)


def test_abs_integral_with_sign_changes():
    val, err = analysis.abs_integral(spec("t - 0.3", b=1.0))
    assert val == pytest.approx(0.3**2 / 2 + 0.7**2 / 2, rel=1e-13)
    val, _ = analysis.abs_integral(spec("cosh(t) - 2", a=-2, b=2))
    x0 = math.acosh(2)
    exact = 2 * ((2 * x0 - math.sinh(x0)) + (math.sinh(2) - math.sinh(x0) - 2 * (2 - x0)))
    assert val == pytest.approx(exact, rel=1e-12)
    assert analysis.abs_integral(EX2)[0] == pytest.approx(2 / 3, rel=1e-13)


def test_nonlinear_check():
    lin = analysis.lyapunov_check_linear(spec("5", alpha=1.6, gamma_=1.9))
    non = analysis.lyapunov_check_nonlinear(spec("5", alpha=1.6, gamma_=1.9), 0.37)
    assert non.rhs == pytest.approx(lin.rhs, rel=1e-15) and non.verdict == lin.verdict
    rep = analysis.lyapunov_check_nonlinear(EX1, 1 / 8)
    assert rep.rhs == pytest.approx(analysis.lyapunov_bound(EX1) * (1 / 8) / math.cosh(1 / 8), rel=1e-14)
    rl = analysis.lyapunov_check_nonlinear(spec("1", "u^2", alpha=1.5, gamma_=1.5, b=2), 0.5)
    assert rl.rhs == pytest.approx(gamma(1.5) * 4**0.5 / 2**0.5 / 0.5, rel=1e-12)
    with pytest.raises(ZeroDivisionError):
        analysis.lyapunov_check_nonlinear(spec("1", "u - 1"), 1.0)
    with pytest.raises(ValueError):
        analysis.lyapunov_check_nonlinear(EX1, 0.0)


def test_hartman_wintner_classical():
    rep = analysis.hartman_wintner_check(spec("3", b=2.0))
    assert rep.lhs == pytest.approx(4.0, rel=1e-14) and rep.rhs == pytest.approx(2.0, rel=1e-15)
    assert analysis.hartman_wintner_check(spec("-1 - t")).lhs == 0.0
    assert analysis.hartman_wintner_check(spec("-1 - t")).verdict is Verdict.EXCLUDED
    with pytest.raises(ValueError):
        analysis.hartman_wintner_check(spec("1", "u - 1"), norm_u=0.5)


@settings(max_examples=40, deadline=None)
@given(specs())
def test_hw_weight_max_matches_diagonal_max(s):
    k = s.kernel
    x = np.linspace(s.a, s.b, 2001)
    peak = gamma(s.alpha) * (s.b - s.a) ** (s.gamma - 1) * green.diag_max(k)[1]
    assert np.all(analysis.hw_weight(s, x) <= peak * (1 + 1e-10))
    s_star = green.diag_argmax(k)
    assert float(analysis.hw_weight(s, s_star)) == pytest.approx(peak, rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(1.01, 2.0), st.floats(0, 1), st.floats(0.01, 20), st.floats(1.0, 10.0))
def test_scaling_q_never_flips_to_excluded(alpha, frac, c, factor):
    g = alpha + frac * (2 - alpha)
    base = analysis.lyapunov_check_linear(spec(repr(c), alpha=alpha, gamma_=g))
    bigger = analysis.lyapunov_check_linear(spec(repr(c * factor), alpha=alpha, gamma_=g))
    if base.verdict is Verdict.HOLDS:
        assert bigger.verdict is Verdict.HOLDS


@pytest.mark.parametrize("alpha, g, p", [(1.75, 2.0, 2), (1.5, 1.5, 0.5), (1.3, 1.7, 1), (2.0, 2.0, 0)])
def test_theta_beta_reduction(alpha, g, p):
    tp = analysis.theta_pair(spec(f"t^{p}", alpha=alpha, gamma_=g))
    assert tp.theta == pytest.approx(gamma(g + p + alpha) / gamma(g + p), rel=1e-10)
    assert tp.theta_error < 1e-8


def test_theta_values_examples():
    tp1 = analysis.theta_pair(EX1)
    assert tp1.theta == pytest.approx(gamma(23 / 4) / 6, rel=1e-12)
    assert tp1.theta_star == pytest.approx(71.5738177837, rel=1e-9)
    tp2 = analysis.theta_pair(EX2)
    assert tp2.theta == pytest.approx(gamma(3.5), rel=1e-12)
    assert tp2.theta_star == pytest.approx(18.1904650507, rel=1e-9)


def test_theta_star_without_finite_value():
    tp = analysis.theta_pair(spec("1", alpha=1.2, gamma_=1.9))
    assert math.isinf(tp.theta_star) and tp.theta > 0


def test_theta_requires_nonnegative_q():
    with pytest.raises(ValueError):
        analysis.theta_pair(spec("t - 0.5"))
    with pytest.raises(ValueError):
        analysis.theta_pair(spec("0"))


def test_existence_examples():
    published_1 = ThetaPair(8.9, 11.61)
    published_2 = ThetaPair(4.23, 7.29)
    assert analysis.existence_check(EX1, 1 / 12, 1 / 8, published_1).satisfied
    assert analysis.existence_check(EX2, 1 / 20, 1 / 10, published_2).satisfied
    computed = analysis.existence_check(EX1, 1 / 12, 1 / 8, analysis.theta_pair(EX1))
    assert computed.status is ExistenceStatus.A_FAILS and computed.margin_a < 0
    zero_f = spec("1", "0*u")
    assert analysis.existence_check(zero_f, 0.1, 0.2, ThetaPair(1, 1)).status is ExistenceStatus.A_FAILS
    big_f = spec("1", "100 + u")
    v = analysis.existence_check(big_f, 0.1, 0.2, ThetaPair(1, 1))
    assert v.status is ExistenceStatus.B_FAILS and v.u0 is not None
    with pytest.raises(ValueError):
        analysis.existence_check(EX1, 0.2, 0.1, published_1)


def test_nonexistence():
    half = spec("1", "u/2")
    assert analysis.nonexistence_check(half, (0, 10), ThetaPair(0.6, 1)).no_nontrivial_solution
    assert not analysis.nonexistence_check(half, (0, 10), ThetaPair(0.4, 1)).no_nontrivial_solution
    v = analysis.nonexistence_check(EX1, (0, 1), analysis.theta_pair(EX1))
    assert not v.no_nontrivial_solution and v.u0 < 1e-3
    ident = spec("1", "u")
    tp = analysis.theta_pair(ident)
    assert tp.theta == pytest.approx(6.0, rel=1e-12)
    assert analysis.nonexistence_check(ident, (0, 1), tp).no_nontrivial_solution


def test_eigen_bounds():
    assert analysis.eigen_lower_bound_lyapunov(2, 2) == pytest.approx(4.0, rel=1e-15)
    assert analysis.eigen_lower_bound_lyapunov(1.5, 1.5) == pytest.approx(gamma(1.5) * 2, rel=1e-14)
    assert analysis.eigen_lower_bound_lyapunov(1.75, 2) == pytest.approx(
        1.75**1.75 / 0.75**0.75 * gamma(1.75), rel=1e-14
    )
    assert analysis.eigen_lower_bound_hw(2, 2) == pytest.approx(6.0, rel=1e-15)
    assert analysis.eigen_lower_bound_hw(1.5, 1.5) == pytest.approx(2 / gamma(1.5), rel=1e-14)
    assert analysis.eigen_lower_bound_hw(1.6, 1.8, 2.0) == pytest.approx(
        analysis.eigen_lower_bound_hw(1.6, 1.8) / 2**1.6, rel=1e-14
    )
    reports = analysis.eigen_reports(2, 2, math.pi**2)
    assert all(r.verdict is Verdict.HOLDS for r in reports)


def test_report_serialization():
    d = analysis.lyapunov_check_linear(spec("5")).to_dict()
    assert d["kind"] == "lyapunov_linear" and d["verdict"] == "necessary-condition-holds"
    assert set(d) == {"kind", "lhs", "rhs", "verdict", "details"}
