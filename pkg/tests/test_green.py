import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilferbvp import green
from hilferbvp.green import GreenKernel, NoSignChangeError

EX1 = GreenKernel(0.0, 1.0, 1.75, 2.0)


@st.composite
def kernels(draw, rl_only=False):
    a = draw(st.floats(-3, 3))
    b = a + draw(st.floats(0.1, 5))
    alpha = draw(st.floats(1.01, 2.0))
    gamma_ = alpha if rl_only else draw(st.floats(alpha, 2.0))
    return GreenKernel(a, b, alpha, gamma_)


def test_validation():
    with pytest.raises(ValueError):
        GreenKernel(1, 0, 1.5, 1.5)
    with pytest.raises(ValueError):
        GreenKernel(0, 1, 1.8, 1.5)
    with pytest.raises(ValueError):
        GreenKernel(0, 1, 1.0, 1.5)
    GreenKernel(0, 1, 2, 2)


@settings(max_examples=50, deadline=None)
@given(kernels(), st.floats(0, 1))
def test_vanishes_at_both_ends(k, x):
    s = k.a + x * k.length
    assert k(k.a, s) == 0.0
    assert abs(k(k.b, s)) <= 1e-14 * max(1.0, k.length)


def test_classical_string_kernel():
    k = GreenKernel(0, 1, 2, 2)
    rng = np.random.default_rng(7)
    t, s = rng.uniform(0, 1, (2, 10_000))
    expect = np.minimum(t, s) * (1 - np.maximum(t, s))
    assert np.max(np.abs(k(t, s) - expect)) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(0.1, 5))
def test_classical_kernel_affine(a, length):
    b = a + length
    k = GreenKernel(a, b, 2, 2)
    t, s = np.meshgrid(np.linspace(a, b, 41), np.linspace(a, b, 41))
    expect = (np.minimum(t, s) - a) * (b - np.maximum(t, s)) / (b - a)
    assert np.max(np.abs(k(t, s) - expect)) <= 1e-12 * max(1.0, length)


def test_diag_max_classical():
    s_star, val = green.diag_max(GreenKernel(0, 1, 2, 2))
    assert s_star == 0.5 and val == pytest.approx(0.25, rel=1e-15)


@settings(max_examples=60, deadline=None)
@given(kernels())
def test_diag_max_matches_golden_section_and_closed_form(k):
    s_star, val = green.diag_max(k)
    gs, gv = green.golden_section_max(lambda s: green.diagonal(k, s), k.a, k.b)
    assert val == pytest.approx(gv, rel=1e-10)
    assert val == pytest.approx(green.diag_max_closed_form(k), rel=1e-12)
    ss = np.linspace(k.a, k.b, 1001)
    assert np.all(green.diagonal(k, ss) <= val * (1 + 1e-14))


def test_printed_closed_form_only_right_when_a_zero_or_rl():
    assert green.diag_max_as_printed(EX1) == pytest.approx(green.diag_max(EX1)[1], rel=1e-13)
    k_rl = GreenKernel(1, 3, 1.6, 1.6)
    assert green.diag_max_as_printed(k_rl) == pytest.approx(green.diag_max(k_rl)[1], rel=1e-13)
    k = GreenKernel(1, 3, 1.5, 1.8)
    assert abs(green.diag_max_as_printed(k) / green.diag_max(k)[1] - 1) > 0.1


def test_crossing_point_example_1():
    r = green.crossing_r(EX1)
    assert math.floor(r * 100) / 100 == 0.58
    assert r == pytest.approx(0.585509228206, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(0.1, 5), st.floats(1.01, 2.0))
def test_crossing_point_affine_invariance(a, length, alpha):
    r_unit = green.crossing_r(GreenKernel(0, 1, alpha, alpha))
    r = green.crossing_r(GreenKernel(a, a + length, alpha, alpha))
    assert (r - a) / length == pytest.approx(r_unit, abs=1e-10)


def test_crossing_point_classical():
    assert green.crossing_r(GreenKernel(0, 1, 2, 2)) == pytest.approx(0.5, abs=1e-12)


def test_bisection_without_sign_change():
    with pytest.raises(NoSignChangeError):
        green._bisect(lambda x: x * x + 1, -1, 1, 1e-12)


def test_phi_example_1_branches():
    m = green.minorant(EX1)
    for s in np.linspace(m.r, 0.99, 7):
        assert m(s) == pytest.approx(1 / (4 * s), rel=1e-12)
    for s in np.linspace(0.01, m.r, 7):
        printed = 3 / (4 * s) - ((3 - 4 * s) / (1 - s)) ** 0.75 / (2 * math.sqrt(2) * s)
        assert m(s) == pytest.approx(printed, rel=1e-10, abs=1e-12)


def test_phi_continuous_at_r():
    for k in (EX1, GreenKernel(-1, 2, 1.3, 1.3), GreenKernel(0, 2, 1.5, 1.9)):
        m = green.minorant(k)
        d = k.gamma_alpha_norm * green.g_minus(k, m.r, m.r)
        left = green.g_plus(k, k.three_quarter, m.r) / d * k.gamma_alpha_norm
        right = green.g_minus(k, k.quarter, m.r) / d * k.gamma_alpha_norm
        assert left == pytest.approx(right, abs=1e-10)


def test_phi_rejects_endpoints():
    m = green.minorant(EX1)
    for s in (0.0, 1.0, -0.5):
        with pytest.raises(ValueError):
            m(s)


def test_phi_negative_near_left_end_when_gamma_exceeds_alpha():
    m = green.minorant(EX1)
    assert m(0.1) == pytest.approx(-0.334353, abs=1e-6)
    assert m(0.5) > 0


@settings(max_examples=25, deadline=None)
@given(kernels(rl_only=True))
def test_sign_and_minorant_hold_for_rl_kernels(k):
    neg, _ = green.negative_part(k, n=200)
    assert neg >= -1e-14
    m = green.minorant(k)
    s = np.linspace(k.a, k.b, 403)[1:-1]
    assert np.all(m(s) > 0)
    tm = np.linspace(k.quarter, k.three_quarter, 201)
    lower = np.min(k(tm[:, None], s[None, :]), axis=0)
    assert np.all(lower >= m.product(s) - 1e-12)


def test_kernel_negative_when_gamma_exceeds_alpha():
    neg, (t, s) = green.negative_part(EX1)
    assert neg == pytest.approx(-0.1148, abs=5e-4)
    assert s < t
    assert EX1(0.5, 0.1) < 0


@settings(max_examples=25, deadline=None)
@given(kernels())
def test_column_maximum_on_diagonal(k):
    t = np.linspace(k.a, k.b, 1001)
    s = np.linspace(k.a, k.b, 57)
    assert np.all(np.max(k(t[:, None], s[None, :]), axis=0) <= green.diagonal(k, s) * (1 + 1e-12) + 1e-14)
