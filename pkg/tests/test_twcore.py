import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import fredholm_f1, fredholm_f2
from twlab import twcore
from twlab.errors import OutOfDomainError


@pytest.mark.parametrize("x", [-4.0, -2.0, -1.0, 0.0, 1.0, 3.0])
def test_f2_against_fredholm(sol, x):
    assert twcore.cdf_tw(sol, 2, x) == pytest.approx(fredholm_f2(x), abs=1e-10)


@pytest.mark.parametrize("x", [-5.0, -3.0, -1.0, 0.0, 2.0])
def test_f1_against_fredholm(sol, x):
    assert twcore.cdf_tw(sol, 1, x) == pytest.approx(fredholm_f1(x), abs=1e-10)


def test_frozen_values(sol):
    # Fredholm-determinant oracle values, frozen
    assert twcore.cdf_tw(sol, 2, 0.0) == pytest.approx(0.9693728283552583, abs=1e-10)
    assert twcore.cdf_tw(sol, 1, 0.0) == pytest.approx(0.8319080662029407, abs=1e-10)


def test_f4_half_angle(sol):
    x = np.linspace(-6, 4, 201)
    f = twcore.f_factor(sol, x)
    e = twcore.e_factor(sol, x)
    np.testing.assert_allclose(twcore.cdf_tw(sol, 4, x / np.sqrt(2)), 0.5 * f * (e + 1 / e), atol=1e-14)


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_pdf_is_derivative(sol, beta):
    x = np.linspace(-4, 3, 29)
    h = 1e-4
    num = (twcore.cdf_tw(sol, beta, x + h) - twcore.cdf_tw(sol, beta, x - h)) / (2 * h)
    np.testing.assert_allclose(twcore.pdf_tw(sol, beta, x), num, atol=1e-7)


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_cdf_monotone_with_limits(sol, beta):
    x, f = twcore.cdf_on_grid(sol, beta)
    assert np.all(np.diff(f) >= -1e-15)
    assert f[0] < 1e-6 and f[-1] > 1 - 1e-6


@pytest.mark.parametrize(
    "beta, mean, var",
    [(2, -1.7710868074, 0.8131947928), (1, -1.2065335773, 1.6077809829), (4, -2.3068848932, 0.5177237207)],
)
def test_moments(sol, beta, mean, var):
    m, v = twcore.moments(sol, beta)
    assert isinstance(m, float)
    assert m == pytest.approx(mean, abs=1e-8)
    assert v == pytest.approx(var, abs=1e-8)


def test_moments_of_a_gaussian():
    x = np.linspace(-12, 14, 26001)
    from scipy.stats import norm
    m, v = twcore.moments_from_cdf(x, norm.cdf(x, loc=1.0, scale=2.0))
    assert m == pytest.approx(1.0, abs=1e-10)
    assert v == pytest.approx(4.0, abs=1e-8)


def test_family_and_domain_errors(sol):
    with pytest.raises(ValueError):
        twcore.cdf_tw(sol, 3, 0.0)
    with pytest.raises(OutOfDomainError):
        twcore.cdf_tw(sol, 2, 9.0)
    with pytest.raises(OutOfDomainError):
        twcore.cdf_tw(sol, 4, 7.0)  # evaluated at 7 sqrt(2)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([1, 2, 4]), st.floats(-7.0, 5.0), st.floats(1e-3, 1.0))
def test_cdf_is_a_distribution(sol, beta, x, dx):
    a = twcore.cdf_tw(sol, beta, x)
    b = twcore.cdf_tw(sol, beta, x + dx)
    assert 0.0 <= a <= b <= 1.0
    assert twcore.pdf_tw(sol, beta, x) >= 0.0
