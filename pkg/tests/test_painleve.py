import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import pii_reference
from twlab.errors import OutOfDomainError
from twlab.painleve import (
    FIELDS, Grid1D, airy_ai, default_grid, left_asymptotic, solve_hastings_mcleod,
)


def test_grid_basics():
    g = Grid1D(-1.0, 1.0, 0.5)
    assert g.size == 5
    np.testing.assert_allclose(g.nodes, [-1, -0.5, 0, 0.5, 1])
    assert g.contains(1.0) and not g.contains(1.01)


@pytest.mark.parametrize("args", [(1.0, 0.0, 0.1), (0.0, 1.0, 0.0), (0.0, 1.0, 0.3)])
def test_grid_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        Grid1D(*args)


def test_solver_rejects_small_grid_and_bad_tol():
    with pytest.raises(ValueError):
        solve_hastings_mcleod(Grid1D(-5.0, 8.0, 1e-3))
    with pytest.raises(ValueError):
        solve_hastings_mcleod(tol=1e-3)


def test_fields_are_read_only(sol):
    for name in FIELDS:
        with pytest.raises(ValueError):
            getattr(sol, name)[0] = 1.0


def test_identity_for_p(sol):
    x = sol.x
    resid = sol.p - (sol.q**4 + x * sol.q**2 - sol.qp**2)
    assert np.max(np.abs(resid) / (1 + np.abs(sol.p))) < 1e-10


@pytest.mark.parametrize("x", [-6.0, -4.0, -2.0, 0.0, 1.5, 4.0])
def test_against_mpmath_reference(sol, x):
    q, qp, i2, tail_q2, i1 = pii_reference(x)
    assert sol.eval("q", x) == pytest.approx(q, abs=1e-10)
    assert sol.eval("qp", x) == pytest.approx(qp, abs=1e-10)
    assert sol.eval("i2", x) == pytest.approx(i2, abs=1e-10)
    assert -sol.eval("p", x) == pytest.approx(tail_q2, abs=1e-10)
    assert sol.eval("i1", x) == pytest.approx(i1, abs=1e-10)


def test_hastings_mcleod_value_at_zero(sol):
    # mpmath reference, frozen
    assert sol.eval("q", 0.0) == pytest.approx(0.3670615515480784, abs=1e-10)


def test_airy_right_tail(sol):
    for x in (4.0, 6.0, 8.0):
        assert abs(sol.eval("q", x) - airy_ai(x)) <= 1e-8 * max(1.0, airy_ai(x))


def test_left_tail_matches_asymptotics(sol):
    x = np.array([-10.0, -9.0, -8.0])
    np.testing.assert_allclose(sol.eval("q", x), left_asymptotic(x), rtol=1e-6)


def test_positive_and_monotone(sol):
    assert np.all(sol.q > 0)
    assert np.all(np.diff(sol.q) < 0)


def test_eval_out_of_domain(sol):
    with pytest.raises(OutOfDomainError):
        sol.eval("q", 8.5)
    with pytest.raises(KeyError):
        sol.eval("r", 0.0)


def test_q_extended_continues_with_airy(sol):
    assert sol.q_extended(np.array([12.0]))[0] == pytest.approx(airy_ai(12.0), rel=1e-12)


def test_scalar_eval_returns_float(sol):
    assert isinstance(sol.eval("q", 0.3), float)


def test_wider_grid_agrees_with_default(sol):
    wide = solve_hastings_mcleod(Grid1D(-12.0, 10.0, 1e-3))
    x = np.linspace(-6, 6, 41)
    np.testing.assert_allclose(wide.eval("i1", x), sol.eval("i1", x), atol=1e-10)
    assert wide.grid != default_grid()


@settings(max_examples=50, deadline=None)
@given(st.floats(-9.9, 7.9))
def test_interpolant_satisfies_ode(sol, x):
    # second difference of the interpolant against 2q^3 + xq
    h = 1e-3
    q0, qm, qp = sol.eval("q", x), sol.eval("q", x - h), sol.eval("q", x + h)
    second = (qp - 2 * q0 + qm) / h**2
    assert second == pytest.approx(2 * q0**3 + x * q0, abs=2e-4 * (1 + abs(x)))


@settings(max_examples=30, deadline=None)
@given(st.floats(-9.9, 7.9), st.floats(1e-3, 0.1))
def test_integrals_monotone(sol, x, dx):
    assert sol.eval("i1", x) >= sol.eval("i1", x + dx)
    assert sol.eval("i2", x) >= sol.eval("i2", x + dx)
