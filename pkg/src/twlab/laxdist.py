"""Lax-pair functions a(x;w), b(x;w) and the distributions built from them.

The pair solves

    a' = -q b,    b' = -q a - 2 w b,

and is the solution that is recessive as ``x -> -inf`` normalised by
``a(+inf; w) = 1``.  At ``w = 0`` this gives ``a = E**2``, ``b = -E**2``.
Forward integration (increasing x) is the stable direction for that branch:
the competing solution decays forward, so start-up error at ``x_min`` dies
out instead of growing.  For ``x > x_max`` the integration continues with
``q = Ai`` until ``a`` has stopped moving, and ``a`` there fixes the scale.

Distributions provided here:

* ``cdf_fst`` - F_st(x; w+, w-), with the antisymmetric route used when
  ``|w+ + w-|`` is small (the general formula divides by ``w+ + w-``);
* ``cdf_fst_zero`` - closed form at ``w+ = w- = 0``;
* ``cdf_spiked`` - F_k^spiked via the k x k derivative determinant;
* ``cdf_spiked_closed`` - closed forms at all-zero parameters, k = 1, 2, 3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numba
import numpy as np
import sympy as sp
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicHermiteSpline

from .errors import ConfluentError, DepthError, DivergenceError, OutOfDomainError, RangeError
from .painleve import DEFAULT_STEP, DEFAULT_X_MAX, DEFAULT_X_MIN, Grid1D, PainleveSolution, airy_ai
from .twcore import moments_from_cdf

W_MIN = -2.5
W_MAX = 8.0
MAX_TOWER_DEPTH = 12
MAX_SPIKES = 8
MIN_GAP = 1e-3
ANTISYMMETRIC_SWITCH = 1e-3


def check_w(w: float):
    if not (W_MIN <= w <= W_MAX):
        raise RangeError(f"w={w} outside the validated range [{W_MIN}, {W_MAX}]")


@numba.njit(cache=True)
def _rk4_linear(q_nodes, q_mid, h, w, a0, b0):
    n = q_nodes.size
    a = np.empty(n)
    b = np.empty(n)
    a[0] = a0
    b[0] = b0
    tw = 2.0 * w
    for i in range(n - 1):
        ai = a[i]
        bi = b[i]
        q0 = q_nodes[i]
        qm = q_mid[i]
        q1 = q_nodes[i + 1]
        k1a = -q0 * bi
        k1b = -q0 * ai - tw * bi
        a2 = ai + 0.5 * h * k1a
        b2 = bi + 0.5 * h * k1b
        k2a = -qm * b2
        k2b = -qm * a2 - tw * b2
        a3 = ai + 0.5 * h * k2a
        b3 = bi + 0.5 * h * k2b
        k3a = -qm * b3
        k3b = -qm * a3 - tw * b3
        a4 = ai + h * k3a
        b4 = bi + h * k3b
        k4a = -q1 * b4
        k4b = -q1 * a4 - tw * b4
        a[i + 1] = ai + h * (k1a + 2 * k2a + 2 * k3a + k4a) / 6.0
        b[i + 1] = bi + h * (k1b + 2 * k2b + 2 * k3b + k4b) / 6.0
    return a, b


def _far_end(sol: PainleveSolution, w: float) -> float:
    """Right end beyond which ``a' = -q b`` is negligible."""
    x_max = sol.grid.x_max
    if w >= 0:
        return x_max + 4.0
    # q b peaks near x = 4 w^2 for w < 0 and decays like a Gaussian of width ~ sqrt(|w|)
    return max(x_max + 4.0, 4.0 * w * w + np.sqrt(400.0 * abs(w)) + 4.0)


@lru_cache(maxsize=8)
def _q_samples(sol: PainleveSolution, x_end: float):
    """q at nodes and midpoints from x_min to x_end (grid step), Ai past x_max."""
    h = sol.grid.step
    n_ext = int(np.ceil((x_end - sol.grid.x_max) / h))
    x = np.concatenate([sol.x, sol.grid.x_max + h * np.arange(1, n_ext + 1)])
    q_nodes = np.concatenate([sol.q, airy_ai(x[sol.x.size:])])
    q_mid = sol.q_extended(0.5 * (x[1:] + x[:-1]))
    return q_nodes, q_mid


@dataclass(frozen=True, eq=False)
class ABSolution:
    """a(x;w), b(x;w) tabulated on the Painleve grid."""

    w: float
    sol: PainleveSolution
    a: np.ndarray
    b: np.ndarray
    _splines: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.a.setflags(write=False)
        self.b.setflags(write=False)

    @property
    def grid(self):
        return self.sol.grid

    @property
    def x(self):
        return self.sol.x

    @property
    def da(self):
        return -self.sol.q * self.b

    @property
    def db(self):
        return -self.sol.q * self.a - 2.0 * self.w * self.b

    def eval(self, which: str, x):
        if which not in ("a", "b"):
            raise KeyError(which)
        if not self.grid.contains(x):
            raise OutOfDomainError(f"x outside [{self.grid.x_min}, {self.grid.x_max}]")
        spl = self._splines.get(which)
        if spl is None:
            deriv = self.da if which == "a" else self.db
            spl = CubicHermiteSpline(self.x, getattr(self, which), deriv)
            self._splines[which] = spl
        out = spl(np.clip(x, self.grid.x_min, self.grid.x_max))
        return float(out) if np.ndim(out) == 0 else out


def solve_ab(sol: PainleveSolution, w: float) -> ABSolution:
    """Integrate the Lax pair for parameter ``w``; see the module docstring."""
    w = float(w)
    check_w(w)
    h = sol.grid.step
    x_end = _far_end(sol, w)
    q_nodes, q_mid = _q_samples(sol, round(x_end, 6))
    q0 = q_nodes[0]
    lam = -w + np.hypot(w, q0)  # growing-forward eigenvalue of the frozen system
    a, b = _rk4_linear(q_nodes, q_mid, h, w, 1.0, -lam / q0)
    scale = a[-1]
    if not np.isfinite(scale) or scale <= 0:
        raise DivergenceError(f"Lax pair integration failed for w={w}")
    n = sol.x.size
    a = a[:n] / scale
    b = b[:n] / scale
    # b ~ -exp(8 w^3 / 3 - 2 w x) for large x; measure b against that growth
    envelope = np.exp(np.clip(2.0 * w * sol.x - 8.0 * w**3 / 3.0, -700.0, 700.0))
    if np.max(np.abs(a)) > 1e8 or np.max(np.abs(b) * envelope) > 1e8:
        raise DivergenceError(f"Lax pair solution exceeded 1e8 for w={w}")
    return ABSolution(w=w, sol=sol, a=a, b=b)


@lru_cache(maxsize=64)
def _ab_cached(sol: PainleveSolution, w: float) -> ABSolution:
    return solve_ab(sol, w)


def _f2(sol, x):
    return np.exp(-sol.eval("i1", x))


# ---------------------------------------------------------------- F_st


@lru_cache(maxsize=32)
def _aa_integral(sol: PainleveSolution, w: float) -> CubicHermiteSpline:
    """Spline of int_{-inf}^x a(y;w) a(y;-w) dy on the grid."""
    ap = _ab_cached(sol, w)
    am = _ab_cached(sol, -w)
    prod = ap.a * am.a
    cum = cumulative_simpson(prod, dx=sol.grid.step, initial=0.0)
    return CubicHermiteSpline(sol.x, cum, prod)


def _fst_general(sol, x, w_plus, w_minus):
    ap = _ab_cached(sol, w_plus)
    am = _ab_cached(sol, w_minus)
    a1, b1 = ap.eval("a", x), ap.eval("b", x)
    a2, b2 = am.eval("a", x), am.eval("b", x)
    aa = a1 * a2
    return _f2(sol, x) * (aa - (aa - b1 * b2) / (2.0 * (w_plus + w_minus)) * sol.eval("p", x))


def _fst_antisymmetric(sol, x, w):
    """F_st(x; w, -w) = d/dx (F2 int a(.;w) a(.;-w)), product rule written out."""
    ap = _ab_cached(sol, w)
    am = _ab_cached(sol, -w)
    integral = _aa_integral(sol, w)(np.clip(x, sol.grid.x_min, sol.grid.x_max))
    return _f2(sol, x) * (ap.eval("a", x) * am.eval("a", x) - sol.eval("p", x) * integral)


def cdf_fst(sol: PainleveSolution, x, w_plus: float, w_minus: float, method: str = "auto"):
    """F_st(x; w+, w-).

    ``method="auto"`` uses the general formula unless ``|w+ + w-| < 1e-3``,
    where it switches to the antisymmetric formula at ``w = (w+ - w-)/2``.
    """
    w_plus = float(w_plus)
    w_minus = float(w_minus)
    check_w(w_plus)
    check_w(w_minus)
    if not sol.grid.contains(x):
        raise OutOfDomainError("x outside the Painleve grid")
    if method == "auto":
        method = "antisymmetric" if abs(w_plus + w_minus) < ANTISYMMETRIC_SWITCH else "general"
    if method == "general":
        if w_plus + w_minus == 0:
            raise ZeroDivisionError("general F_st formula is singular at w+ + w- = 0")
        # the formula is symmetric; order the arguments so both calls round identically
        lo, hi = sorted((w_plus, w_minus))
        return _fst_general(sol, x, lo, hi)
    if method == "antisymmetric":
        w = 0.5 * (w_plus - w_minus)
        return _fst_antisymmetric(sol, x, abs(w))
    raise ValueError(f"unknown method {method!r}")


def fst_uses_antisymmetric(w_plus: float, w_minus: float) -> bool:
    return abs(w_plus + w_minus) < ANTISYMMETRIC_SWITCH


def cdf_fst_zero(sol: PainleveSolution, x):
    """Closed form F_st(x; 0, 0) = {1 + (x - 2q' + 2q^2) int_x^inf q^2} E^4 F2."""
    q = sol.eval("q", x)
    qp = sol.eval("qp", x)
    tail_q2 = -sol.eval("p", x)
    e4 = np.exp(-2.0 * sol.eval("i2", x))
    return (1.0 + (np.asarray(x) - 2.0 * qp + 2.0 * q * q) * tail_q2) * e4 * _f2(sol, x)


FST_TAIL_TOL = 1e-6


def fst_grid(w_plus: float, w_minus: float, step: float = DEFAULT_STEP) -> Grid1D:
    """Painleve grid wide enough to hold the F_st(.; w+, w-) mass (it moves right like 4w^2)."""
    w = max(abs(w_plus), abs(w_minus))
    return Grid1D(DEFAULT_X_MIN, DEFAULT_X_MAX + float(np.ceil(4 * w * w + 8 * w)), step)


def fst_moments(sol: PainleveSolution, w_plus: float, w_minus: float, shifted: bool = False):
    """(mean, variance) of F_st by quadrature over the nodes of ``sol``.

    ``shifted`` (needs w- = -w+) reports the law of X - 4 w+^2.  Raises
    RangeError when more than FST_TAIL_TOL of the mass lies off the grid;
    ``fst_grid`` gives a grid that is wide enough.
    """
    if shifted and w_minus != -w_plus:
        raise ValueError("the shifted moments are defined for w- = -w+ only")
    x = sol.x
    cdf = cdf_fst(sol, x, w_plus, w_minus)
    if cdf[0] > FST_TAIL_TOL or 1.0 - cdf[-1] > FST_TAIL_TOL:
        raise RangeError(
            f"F_st mass outside [{x[0]}, {x[-1]}] is {max(cdf[0], 1 - cdf[-1]):.2g}; "
            "use a wider grid (see fst_grid)"
        )
    mean, var = moments_from_cdf(x, cdf)
    if shifted:
        mean -= 4.0 * w_plus * w_plus
    return mean, var


# ------------------------------------------------------- derivative tower

_Q, _QP, _X, _W = sp.symbols("q qp x w")


def _dx(poly):
    """d/dx of a polynomial in (q, q', x), using q'' = 2 q^3 + x q."""
    return sp.expand(
        sp.diff(poly, _X) + sp.diff(poly, _Q) * _QP + sp.diff(poly, _QP) * (2 * _Q**3 + _X * _Q)
    )


@lru_cache(maxsize=None)
def tower_coefficients(m: int):
    """Polynomials (c_a, c_b) with (w + d/dx)^m f = c_a a + c_b b, f = a(.; w/2)."""
    if m < 0 or m > MAX_TOWER_DEPTH:
        raise DepthError(f"tower depth {m} outside [0, {MAX_TOWER_DEPTH}]")
    if m == 0:
        return sp.Integer(1), sp.Integer(0)
    ca, cb = tower_coefficients(m - 1)
    # b' = -q a - w b at parameter w/2; the +w cancels the -w b term
    return sp.expand(_dx(ca) + _W * ca - _Q * cb), sp.expand(_dx(cb) - _Q * ca)


@lru_cache(maxsize=None)
def _tower_funcs(m: int):
    ca, cb = tower_coefficients(m)
    args = (_Q, _QP, _X, _W)
    return sp.lambdify(args, ca, "numpy"), sp.lambdify(args, cb, "numpy")


def derivative_tower(ab: ABSolution, x, m: int):
    """(w + d/dx)^m f(x; w) where ``ab`` holds a(.; w/2), i.e. w = 2 ab.w."""
    if m < 0 or m > MAX_TOWER_DEPTH:
        raise DepthError(f"tower depth {m} outside [0, {MAX_TOWER_DEPTH}]")
    fa, fb = _tower_funcs(m)
    sol = ab.sol
    q = sol.eval("q", x)
    qp = sol.eval("qp", x)
    w = 2.0 * ab.w
    xx = np.asarray(x, dtype=float)
    return fa(q, qp, xx, w) * ab.eval("a", x) + fb(q, qp, xx, w) * ab.eval("b", x)


# ------------------------------------------------------------- spiked


@dataclass(frozen=True)
class SpikedParams:
    ws: tuple

    def __init__(self, ws):
        ws = tuple(float(v) for v in np.atleast_1d(ws))
        if not ws:
            raise ValueError("need at least one spiked parameter")
        object.__setattr__(self, "ws", ws)

    @property
    def k(self) -> int:
        return len(self.ws)

    def min_gap(self) -> float:
        if self.k < 2:
            return np.inf
        return min(abs(u - v) for u, v in combinations(self.ws, 2))


def cdf_spiked(sol: PainleveSolution, x, params):
    """F_k^spiked(x; w_1..w_k) from the derivative determinant over the Vandermonde.

    Parameters are scaled so that F_1^spiked(x; w) = F_2(x) a(x; w), the
    ``w- -> inf`` limit of F_st(x; w, w-), which is also the scale of the
    spiked DLPP rows.  In terms of the determinant written with
    f(x; v) = a(x; v/2) and the operators (v + d/dx) this means v_i = 2 w_i.
    """
    if not isinstance(params, SpikedParams):
        params = SpikedParams(params)
    ws = params.ws
    k = params.k
    if k > MAX_SPIKES:
        raise RangeError(f"at most {MAX_SPIKES} spiked parameters supported")
    for w in ws:
        check_w(w)
    if params.min_gap() < MIN_GAP:
        hint = f" (use cdf_spiked_closed({k}, x))" if k <= 3 and all(w == 0 for w in ws) else ""
        raise ConfluentError(
            f"spiked parameters {ws} closer than {MIN_GAP}; the determinant formula "
            f"is ill-conditioned there{hint}"
        )
    if not sol.grid.contains(x):
        raise OutOfDomainError("x outside the Painleve grid")
    xx = np.asarray(x, dtype=float)
    rows = []
    for w in ws:
        ab = _ab_cached(sol, w)
        rows.append([np.broadcast_to(derivative_tower(ab, xx, j), xx.shape) for j in range(k)])
    mat = np.moveaxis(np.array(rows, dtype=float), (0, 1), (-2, -1))
    vdm = np.prod([2.0 * (ws[j] - ws[i]) for i, j in combinations(range(k), 2)]) if k > 1 else 1.0
    out = _f2(sol, xx) * np.linalg.det(mat) / vdm
    return float(out) if np.ndim(out) == 0 else out


def cdf_spiked_closed(sol: PainleveSolution, k: int, x):
    """Closed forms of F_k^spiked(x; 0, ..., 0) for k = 1, 2, 3."""
    if k not in (1, 2, 3):
        raise ValueError("closed forms exist for k = 1, 2, 3 only")
    f2 = _f2(sol, x)
    e2 = np.exp(-sol.eval("i2", x))
    if k == 1:
        return f2 * e2
    q = sol.eval("q", x)
    qp = sol.eval("qp", x)
    s = np.asarray(x) + 2 * q * q - 2 * qp
    if k == 2:
        return f2 * e2**2 * (1 - q * s)
    return f2 * e2**3 * (1 - 2 * q * s + 0.5 * (q * q + qp) * s * s)
