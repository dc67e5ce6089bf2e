"""Hastings-McLeod solution of Painleve II and the integrals built from it.

The solution ``q`` of ``q'' = 2 q**3 + x q`` with ``q ~ Ai`` at ``+inf`` is
tabulated on a uniform grid together with

* ``i1(x) = int_x^inf (s - x) q(s)**2 ds``
* ``i2(x) = int_x^inf q(s) ds``
* ``p(x)  = -int_x^inf q(s)**2 ds``  (equal to ``q**4 + x q**2 - q'**2``)

Right of ``LEFT_PATCH_X`` the ODE is integrated backward from Airy data at
``x_max``.  Left of it the backward problem is too ill-conditioned for double
precision (perturbations grow like ``exp(2*sqrt(2)/3 |x|**1.5)``), so that
stretch is solved as a two-point boundary value problem by Chebyshev
collocation, pinned by the IVP value at ``LEFT_PATCH_X`` and the
``sqrt(-x/2)`` asymptotic series at ``x_min``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_simpson, quad, solve_ivp
from scipy.interpolate import BarycentricInterpolator, CubicHermiteSpline
from scipy.special import airy, airye

from .errors import DivergenceError, OutOfDomainError

DEFAULT_X_MIN = -10.0
DEFAULT_X_MAX = 8.0
DEFAULT_STEP = 1e-3
DEFAULT_TOL = 1e-13

LEFT_PATCH_X = -3.0
_CHEB_NODES = 80

FIELDS = ("q", "qp", "i1", "i2", "p")


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid ``x_min, x_min + step, ..., x_max``."""

    x_min: float
    x_max: float
    step: float

    def __post_init__(self):
        if not (self.x_min < self.x_max):
            raise ValueError(f"x_min={self.x_min} must be < x_max={self.x_max}")
        if not self.step > 0:
            raise ValueError("step must be positive")
        ratio = (self.x_max - self.x_min) / self.step
        if abs(ratio - round(ratio)) > 1e-6:
            raise ValueError("step must divide x_max - x_min")

    @property
    def size(self) -> int:
        return int(round((self.x_max - self.x_min) / self.step)) + 1

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.size)

    def contains(self, x, slack: float = 1e-12) -> bool:
        x = np.asarray(x)
        return bool(np.all((x >= self.x_min - slack) & (x <= self.x_max + slack)))


def default_grid() -> Grid1D:
    return Grid1D(DEFAULT_X_MIN, DEFAULT_X_MAX, DEFAULT_STEP)


def airy_ai(x):
    """Airy function Ai (scipy's Amos-based implementation)."""
    return airy(x)[0]


def _airy_tails(x0: float):
    """Integrals of the Airy tail beyond ``x0``: (int Ai, int Ai^2, int (s-x0) Ai^2)."""
    ai, aip, _, _ = airy(x0)
    # scipy's itairy is inaccurate for large x; integrate the scaled Airy tail
    tail_ai = quad(lambda s: airye(s)[0] * np.exp(-2.0 / 3.0 * s**1.5), x0, np.inf,
                   epsabs=0.0, epsrel=1e-13, limit=200)[0]
    tail_ai2 = aip * aip - x0 * ai * ai
    tail_lin = (2 * x0 * x0 * ai * ai - 2 * x0 * aip * aip - ai * aip) / 3.0
    return tail_ai, tail_ai2, tail_lin


def left_asymptotic(x):
    """``q(x)`` for ``x -> -inf``: sqrt(-x/2) (1 + 1/(8x^3) - 73/(128x^6) + ...)."""
    x = np.asarray(x, dtype=float)
    u = 1.0 / x**3
    series = 1 + u / 8 - 73 * u**2 / 128 + 10657 * u**3 / 1024 - 13912277 * u**4 / 32768
    return np.sqrt(-x / 2) * series


def _cheb_diff(n: int):
    """Chebyshev points on [-1, 1] (descending) and the differentiation matrix."""
    k = np.arange(n + 1)
    t = np.cos(np.pi * k / n)
    c = np.where((k == 0) | (k == n), 2.0, 1.0) * (-1.0) ** k
    dt = t[:, None] - t[None, :]
    d = np.outer(c, 1.0 / c) / (dt + np.eye(n + 1))
    d -= np.diag(d.sum(axis=1))
    return t, d


def _left_patch(x_min: float, x_right: float, q_right: float, n: int = _CHEB_NODES):
    """Newton iteration on the Chebyshev collocation of q'' = 2q^3 + xq."""
    t, d = _cheb_diff(n)
    half = (x_right - x_min) / 2
    x = x_min + (t + 1) * half
    d1 = d / half
    d2 = d1 @ d1
    q = np.sqrt(-x / 2)
    q_left = float(left_asymptotic(x_min))
    for _ in range(50):
        r = d2 @ q - 2 * q**3 - x * q
        jac = d2 - np.diag(6 * q**2 + x)
        r[0] = q[0] - q_right
        jac[0] = 0.0
        jac[0, 0] = 1.0
        r[n] = q[n] - q_left
        jac[n] = 0.0
        jac[n, n] = 1.0
        dq = np.linalg.solve(jac, -r)
        q += dq
        if np.max(np.abs(dq)) < 1e-14 * np.max(np.abs(q)):
            break
    else:
        raise DivergenceError("left-tail collocation did not converge")
    return x, q, d1 @ q


def _blowup_bound(x):
    return 10.0 * np.sqrt(np.abs(x) / 2) + 10.0


@dataclass(frozen=True, eq=False)
class PainleveSolution:
    """Tabulated Hastings-McLeod solution; immutable once built."""

    grid: Grid1D
    q: np.ndarray
    qp: np.ndarray
    i1: np.ndarray
    i2: np.ndarray
    p: np.ndarray
    _splines: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for name in FIELDS:
            getattr(self, name).setflags(write=False)

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes

    def derivative(self, which: str) -> np.ndarray:
        """Exact x-derivative of a tabulated field at the nodes."""
        if which == "q":
            return self.qp
        if which == "qp":
            return 2 * self.q**3 + self.x * self.q
        if which == "i1":
            return self.p
        if which == "i2":
            return -self.q
        if which == "p":
            return self.q**2
        raise KeyError(which)

    def _spline(self, which: str) -> CubicHermiteSpline:
        sp = self._splines.get(which)
        if sp is None:
            sp = CubicHermiteSpline(self.x, getattr(self, which), self.derivative(which))
            self._splines[which] = sp
        return sp

    def eval(self, which: str, x):
        """Cubic Hermite interpolation of field ``which`` (exact at nodes)."""
        if which not in FIELDS:
            raise KeyError(f"unknown field {which!r}; expected one of {FIELDS}")
        if not self.grid.contains(x):
            raise OutOfDomainError(
                f"x outside [{self.grid.x_min}, {self.grid.x_max}]"
            )
        xx = np.clip(x, self.grid.x_min, self.grid.x_max)
        out = self._spline(which)(xx)
        return float(out) if np.ndim(out) == 0 else out

    def q_extended(self, x):
        """q on the grid, continued by Ai to the right of ``x_max``."""
        x = np.asarray(x, dtype=float)
        inside = x <= self.grid.x_max
        out = np.empty_like(x)
        if np.any(inside):
            out[inside] = self._spline("q")(np.maximum(x[inside], self.grid.x_min))
        out[~inside] = airy_ai(x[~inside])
        return out


def evaluate(sol: PainleveSolution, which: str, x):
    return sol.eval(which, x)


def solve_hastings_mcleod(grid: Grid1D | None = None, tol: float = DEFAULT_TOL) -> PainleveSolution:
    """Tabulate the Hastings-McLeod solution and its integrals on ``grid``.

    Raises DivergenceError when the integrated solution leaves the envelope
    ``|q| <= 10 sqrt(|x|/2) + 10``, i.e. falls onto a blow-up branch.
    """
    grid = grid or default_grid()
    if not (1e-14 <= tol <= 1e-6):
        raise ValueError("tol must lie in [1e-14, 1e-6]")
    if grid.x_min > DEFAULT_X_MIN or grid.x_max < DEFAULT_X_MAX:
        raise ValueError("grid must cover at least [-10, 8]")
    x = grid.nodes
    n = x.size

    split = LEFT_PATCH_X if grid.x_min < LEFT_PATCH_X else grid.x_min
    right = x >= split - 1e-12
    x_right = x[right][::-1]

    ai, aip, _, _ = airy(grid.x_max)

    def rhs(t, y):
        return [y[1], 2 * y[0] ** 3 + t * y[0]]

    def escaped(t, y):
        return _blowup_bound(t) - abs(y[0])

    escaped.terminal = True
    res = solve_ivp(
        rhs, (grid.x_max, x_right[-1]), [ai, aip], method="DOP853",
        t_eval=x_right, rtol=tol, atol=1e-300, events=escaped,
    )
    if res.status == 1 or not res.success:
        raise DivergenceError(
            f"Painleve II integration escaped the Hastings-McLeod branch near x={res.t[-1]:.4g}"
        )
    q = np.empty(n)
    qp = np.empty(n)
    q[right] = res.y[0][::-1]
    qp[right] = res.y[1][::-1]

    if np.any(~right):
        xc, qc, qpc = _left_patch(grid.x_min, x_right[-1], q[right][0])
        xl = x[~right]
        q[~right] = BarycentricInterpolator(xc, qc)(xl)
        qp[~right] = BarycentricInterpolator(xc, qpc)(xl)

    if np.any(np.abs(q) > _blowup_bound(x)) or not np.all(np.isfinite(q)):
        raise DivergenceError("Painleve II solution left the admissible envelope")

    tail_ai, tail_ai2, tail_lin = _airy_tails(grid.x_max)
    h = grid.step
    # cumulative integrals from x_max leftwards
    int_q = cumulative_simpson(q[::-1], dx=h, initial=0.0)[::-1]
    int_q2 = cumulative_simpson((q * q)[::-1], dx=h, initial=0.0)[::-1]
    i2 = int_q + tail_ai
    p = -(int_q2 + tail_ai2)
    i1 = cumulative_simpson((-p)[::-1], dx=h, initial=0.0)[::-1] + tail_lin

    return PainleveSolution(grid=grid, q=q, qp=qp, i1=i1, i2=i2, p=p)
