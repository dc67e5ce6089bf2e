"""Directed last passage percolation with geometric weights.

Models (``ModelSpec.kind``):

* ``point_to_point`` - i.i.d. Geom(q) weights on the triangle ``i + j <= 2N``
  (the ``N x N`` square is drawn first, so the square alone is a prefix of
  the same random stream);
* ``rotational`` - ``2N x 2N`` array with ``w(i,j) = w(2N+1-i, 2N+1-j)``;
* ``stationary`` - ``(N+1) x (N+1)`` array from the origin, Geom(a_+ sqrt q)
  on column 0 and Geom(a_- sqrt q) on row 0, ``w(0,0) = 0``;
* ``spiked`` - ``N x N`` array whose first k rows are Geom(a_i sqrt q);
* ``two_point_independent`` - two independent point-to-point triangles.

Here ``a = 1 - 2w/(sigma N^(1/3))``.  Arrays are indexed by lattice
coordinates minus the origin (1 for every kind except ``stationary``).

Randomness: each trial gets a 64-bit seed from a splitmix64 mix of
``(master_seed, trial_index)``, which seeds numpy's PCG64.  Uniforms are
consumed in row-major order over the drawn region and mapped to weights by
inversion, ``k = floor(log(1-U)/log p)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numba
import numpy as np

from .errors import DomainError, KindError, RangeError, TooLargeError

KINDS = ("point_to_point", "rotational", "stationary", "spiked", "two_point_independent")
FULL_TABLE_MAX_N = 4096
BRUTE_FORCE_MAX_PATHS = 10**6

_M64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return x ^ (x >> 31)


def trial_seed(master_seed: int, trial_index: int) -> int:
    """64-bit seed of one trial; depends only on the pair, not on run order."""
    return _splitmix64(_splitmix64(master_seed & _M64) ^ (trial_index & _M64))


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(trial_seed(master_seed, trial_index)))


def _check_p(p):
    if not (0.0 < p < 1.0):
        raise RangeError(f"geometric parameter p={p} must lie in (0, 1)")


def sample_geometric(rng: np.random.Generator, p: float) -> int:
    """One draw with P(k) = (1-p) p**k, k >= 0."""
    _check_p(p)
    u = rng.random()
    if u == 0.0:
        return 0
    return int(np.floor(np.log1p(-u) / np.log(p)))


def geometric_from_uniform(u, p: float) -> np.ndarray:
    """Vectorised inversion of uniforms in [0, 1)."""
    _check_p(p)
    return _invert(np.asarray(u, dtype=float), np.log(p))


@numba.njit(cache=True, nogil=True)
def _inv1(u, lp):
    if u == 0.0:
        return 0
    return np.int64(np.floor(np.log1p(-u) / lp))


@numba.njit(cache=True, nogil=True)
def _invert(u, lp):
    out = np.empty(u.shape, np.int64)
    flat_u = u.ravel()
    flat = out.ravel()
    for k in range(flat_u.size):
        flat[k] = _inv1(flat_u[k], lp)
    return out


def scaling_constants(q: float):
    """(mu, sigma, d) for Geom(q) weights."""
    if not (0.0 < q < 1.0):
        raise RangeError(f"q={q} must lie in (0, 1)")
    r = np.sqrt(q)
    mu = 2 * r / (1 - r)
    sigma = q ** (1 / 6) * (1 + r) ** (1 / 3) / (1 - r)
    d = q ** (1 / 6) / (1 + r) ** (2 / 3)
    return float(mu), float(sigma), float(d)


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    N: int
    q: float
    w_plus: float = 0.0
    w_minus: float = 0.0
    ws: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KindError(f"unknown model kind {self.kind!r}; expected one of {KINDS}")
        if int(self.N) != self.N or self.N < 1:
            raise RangeError(f"N must be a positive integer, got {self.N}")
        if not (0.0 < self.q < 1.0):
            raise RangeError(f"q={self.q} must lie in (0, 1)")
        object.__setattr__(self, "ws", tuple(float(w) for w in self.ws))
        if self.kind == "spiked":
            if not self.ws:
                raise RangeError("spiked model needs at least one parameter w_i")
            if len(self.ws) > self.N:
                raise RangeError(f"k={len(self.ws)} special rows exceed N={self.N}")
        for p in self.boundary_parameters():
            if not (0.0 < p < 1.0):
                raise RangeError(
                    f"boundary parameter alpha*sqrt(q)={p:.6g} outside (0, 1); "
                    "reduce |w| or increase N"
                )

    @property
    def k(self) -> int:
        return len(self.ws)

    def alpha(self, w: float) -> float:
        _, sigma, _ = scaling_constants(self.q)
        return 1.0 - 2.0 * w / (sigma * self.N ** (1 / 3))

    def boundary_parameters(self) -> tuple:
        """Geometric parameters of the tuned boundary weights, if any."""
        r = np.sqrt(self.q)
        if self.kind == "stationary":
            return (self.alpha(self.w_plus) * r, self.alpha(self.w_minus) * r)
        if self.kind == "spiked":
            return tuple(self.alpha(w) * r for w in self.ws)
        return ()

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "N": int(self.N), "q": float(self.q)}
        if self.kind == "stationary":
            out.update(w_plus=self.w_plus, w_minus=self.w_minus)
        if self.kind == "spiked":
            out["ws"] = list(self.ws)
        return out


def _require(model: ModelSpec, *kinds):
    if model.kind not in kinds:
        raise KindError(f"operation needs a {' or '.join(kinds)} model, got {model.kind}")


@dataclass(frozen=True, eq=False)
class WeightGrid:
    """One realisation of a model.  ``w[i - origin, j - origin]`` is w(i, j)."""

    w: np.ndarray
    model: ModelSpec
    seed: int
    origin: int = 1
    region: str = "full"

    def __post_init__(self):
        self.w.setflags(write=False)

    @property
    def rows(self) -> int:
        return self.w.shape[-2]

    @property
    def cols(self) -> int:
        return self.w.shape[-1]

    def at(self, i: int, j: int) -> int:
        return int(self.w[i - self.origin, j - self.origin])


@dataclass(frozen=True, eq=False)
class LppTable:
    """Last passage times ``G[i - origin, j - origin]`` from the origin."""

    G: np.ndarray
    origin: int = 1

    def __post_init__(self):
        self.G.setflags(write=False)

    @property
    def shape(self):
        return self.G.shape

    def at(self, i: int, j: int) -> int:
        a, b = i - self.origin, j - self.origin
        if a < 0 or b < 0:
            return 0
        return int(self.G[a, b])


# --- grid construction ---------------------------------------------------

def _draw_counts(model: ModelSpec, region: str) -> int:
    n = model.N
    if model.kind == "point_to_point":
        return n * n if region == "square" else n * (2 * n - 1)
    if model.kind == "rotational":
        return 2 * n * n
    if model.kind == "stationary":
        return (n + 1) ** 2 - 1
    if model.kind == "spiked":
        return n * n
    return 2 * n * (2 * n - 1)


@numba.njit(cache=True, nogil=True)
def _fill_triangle(u, lp, n):
    # square block first, then the rest of i + j <= 2n (1-based), row-major
    m = 2 * n - 1
    w = np.zeros((m, m), np.int64)
    k = 0
    for i in range(n):
        for j in range(n):
            w[i, j] = _inv1(u[k], lp)
            k += 1
    for i in range(m):
        for j in range(m - i):
            if i < n and j < n:
                continue
            w[i, j] = _inv1(u[k], lp)
            k += 1
    return w


@numba.njit(cache=True, nogil=True)
def _fill_square(u, lp, n):
    w = np.empty((n, n), np.int64)
    k = 0
    for i in range(n):
        for j in range(n):
            w[i, j] = _inv1(u[k], lp)
            k += 1
    return w


@numba.njit(cache=True, nogil=True)
def _fill_rotational(u, lp, n):
    m = 2 * n
    w = np.empty((m, m), np.int64)
    k = 0
    # H_N: strictly below the antidiagonal i + j = 2n + 1, plus its first half
    for i in range(m):
        for j in range(m):
            s = i + j + 2
            if s < m + 1 or (s == m + 1 and i < n):
                w[i, j] = _inv1(u[k], lp)
                w[m - 1 - i, m - 1 - j] = w[i, j]
                k += 1
    return w


@numba.njit(cache=True, nogil=True)
def _fill_stationary(u, lp_bulk, lp_plus, lp_minus, n):
    w = np.empty((n + 1, n + 1), np.int64)
    w[0, 0] = 0
    k = 0
    for i in range(n + 1):
        for j in range(n + 1):
            if i == 0 and j == 0:
                continue
            if i == 0:
                lp = lp_minus
            elif j == 0:
                lp = lp_plus
            else:
                lp = lp_bulk
            w[i, j] = _inv1(u[k], lp)
            k += 1
    return w


@numba.njit(cache=True, nogil=True)
def _fill_rows(u, lp_rows, n):
    w = np.empty((n, n), np.int64)
    k = 0
    for i in range(n):
        lp = lp_rows[i]
        for j in range(n):
            w[i, j] = _inv1(u[k], lp)
            k += 1
    return w


def _row_logs(model: ModelSpec) -> np.ndarray:
    lp = np.full(model.N, np.log(model.q))
    for i, p in enumerate(model.boundary_parameters()):
        lp[i] = np.log(p)
    return lp


def build_grid(model: ModelSpec, master_seed: int, trial_index: int,
               region: str = "full", rng=None) -> WeightGrid:
    """Draw one realisation.

    ``region="square"`` (point_to_point only) draws just the ``N x N`` block,
    identical to the top-left block of the full triangle.  ``rng`` overrides
    the seeded generator; anything with ``random(size)`` works.
    """
    if region not in ("full", "square"):
        raise ValueError(f"unknown region {region!r}")
    if region == "square" and model.kind != "point_to_point":
        raise KindError("region='square' applies to point_to_point models only")
    seed = trial_seed(master_seed, trial_index)
    if rng is None:
        rng = np.random.Generator(np.random.PCG64(seed))
    u = np.asarray(rng.random(_draw_counts(model, region)), dtype=float)
    n, lq = model.N, np.log(model.q)
    origin = 1
    if model.kind == "point_to_point":
        w = _fill_square(u, lq, n) if region == "square" else _fill_triangle(u, lq, n)
    elif model.kind == "rotational":
        w = _fill_rotational(u, lq, n)
    elif model.kind == "stationary":
        pp, pm = model.boundary_parameters()
        w = _fill_stationary(u, lq, np.log(pp), np.log(pm), n)
        origin = 0
    elif model.kind == "spiked":
        w = _fill_rows(u, _row_logs(model), n)
    else:
        half = u.size // 2
        w = np.stack([_fill_triangle(u[:half], lq, n), _fill_triangle(u[half:], lq, n)])
    return WeightGrid(w=w, model=model, seed=seed, origin=origin, region=region)


# --- dynamic programming -------------------------------------------------

@numba.njit(cache=True, nogil=True)
def _lpp(w):
    r, c = w.shape
    g = np.empty((r, c), np.int64)
    for i in range(r):
        for j in range(c):
            best = 0
            if i > 0:
                best = g[i - 1, j]
            if j > 0 and g[i, j - 1] > best:
                best = g[i, j - 1]
            g[i, j] = w[i, j] + best
    return g


@numba.njit(cache=True, nogil=True)
def _lpp_reverse(w):
    # R[i, j] = best weight of a path from (i, j) to the far corner
    r, c = w.shape
    g = np.empty((r, c), np.int64)
    for i in range(r - 1, -1, -1):
        for j in range(c - 1, -1, -1):
            best = 0
            if i < r - 1:
                best = g[i + 1, j]
            if j < c - 1 and g[i, j + 1] > best:
                best = g[i, j + 1]
            g[i, j] = w[i, j] + best
    return g


def lpp_table(grid) -> LppTable:
    """Full DP table; accepts a WeightGrid or a bare 2-D integer array."""
    if isinstance(grid, WeightGrid):
        if grid.w.ndim != 2:
            raise KindError("two_point_independent grids hold two arrays; use lpp_tables")
        return LppTable(_lpp(grid.w), origin=grid.origin)
    w = np.ascontiguousarray(grid, dtype=np.int64)
    if w.ndim != 2 or w.size == 0:
        raise ValueError("weights must be a nonempty 2-D array")
    return LppTable(_lpp(w))


def lpp_tables(grid: WeightGrid) -> list:
    """One table per independent array (two for two_point_independent)."""
    if grid.w.ndim == 2:
        return [lpp_table(grid)]
    return [LppTable(_lpp(a), origin=grid.origin) for a in grid.w]


def lattice_paths(m: int, n: int):
    """Yield every up/right path from (1,1) to (m,n) as a list of cells."""
    steps = m + n - 2
    for downs in combinations(range(steps), m - 1):
        i, j = 1, 1
        path = [(1, 1)]
        down = set(downs)
        for s in range(steps):
            if s in down:
                i += 1
            else:
                j += 1
            path.append((i, j))
        yield path


def brute_force_lpp(grid, m: int, n: int) -> int:
    """Maximum path weight to (m, n) by exhaustive enumeration."""
    if isinstance(grid, WeightGrid):
        w, origin = grid.w, grid.origin
    else:
        w, origin = np.asarray(grid), 1
    if w.ndim != 2:
        raise KindError("brute force needs a single 2-D array")
    mm, nn = m - origin + 1, n - origin + 1
    if mm < 1 or nn < 1 or mm > w.shape[0] or nn > w.shape[1]:
        raise DomainError(f"({m}, {n}) outside the grid")
    if comb(mm + nn - 2, mm - 1) > BRUTE_FORCE_MAX_PATHS:
        raise TooLargeError(f"{comb(mm + nn - 2, mm - 1)} paths exceed {BRUTE_FORCE_MAX_PATHS}")
    return max(
        sum(int(w[i - 1, j - 1]) for i, j in path) for path in lattice_paths(mm, nn)
    )


# --- decompositions ------------------------------------------------------

def rotational_decomposition(grid: WeightGrid):
    """(G(2N,2N), max_u [G(u,2N+1-u) + G(2N+1-u,u) - w(u,2N+1-u)])."""
    _require(grid.model, "rotational")
    m = grid.rows
    g = _lpp(grid.w)
    u = np.arange(m)
    v = m - 1 - u
    rhs = np.max(g[u, v] + g[v, u] - grid.w[u, v])
    return int(g[m - 1, m - 1]), int(rhs)


def stationary_decomposition(grid: WeightGrid):
    """(X(N), best split at the point where the path leaves the boundary).

    The path runs along column 0 up to (i,0) and enters the bulk at (i,1),
    or along row 0 up to (0,j) and enters at (1,j).
    """
    _require(grid.model, "stationary")
    w = grid.w
    lhs = _lpp(w)[-1, -1]
    r = _lpp_reverse(np.ascontiguousarray(w[1:, 1:]))
    s_plus = np.cumsum(w[1:, 0])
    s_minus = np.cumsum(w[0, 1:])
    rhs = max(np.max(s_plus + r[:, 0]), np.max(s_minus + r[0, :]))
    return int(lhs), int(rhs)


@numba.njit(cache=True, nogil=True)
def _spiked_rhs(w, k):
    n = w.shape[1]
    s = np.zeros((k, n + 1), np.int64)  # s[i, l] = w(i,1) + ... + w(i,l)
    for i in range(k):
        for j in range(n):
            s[i, j + 1] = s[i, j] + w[i, j]
    best = s[0, 1:].copy()  # best[j]: rows 1..i done, leaving row i at column j+1
    for i in range(1, k):
        run = -(1 << 62)
        nxt = np.empty(n, np.int64)
        for j in range(n):
            cand = best[j] - s[i, j]
            if cand > run:
                run = cand
            nxt[j] = s[i, j + 1] + run
        best = nxt
    if k == w.shape[0]:
        return best[n - 1]
    r = _lpp_reverse(w[k:, :].copy())
    out = -(1 << 62)
    for j in range(n):
        v = best[j] + r[0, j]
        if v > out:
            out = v
    return out


def spiked_decomposition(grid: WeightGrid, k: int | None = None):
    """(G(N,N), max over the columns j_1 <= ... <= j_k where the path leaves
    each special row, of the row sums plus the bulk passage time)."""
    _require(grid.model, "spiked")
    k = grid.model.k if k is None else k
    if not (1 <= k <= grid.rows):
        raise RangeError(f"k={k} must lie in [1, {grid.rows}]")
    lhs = _lpp(grid.w)[-1, -1]
    return int(lhs), int(_spiked_rhs(grid.w, k))


# --- rescaled statistics -------------------------------------------------

def h_process(table: LppTable, N: int, q: float):
    """(tau_u, H_N(tau_u)) for u = -N+1, ..., N-1 along i + j = 2N."""
    mu, sigma, d = scaling_constants(q)
    if table.origin != 1 or min(table.shape) < 2 * N - 1:
        raise DomainError(f"table of shape {table.shape} does not reach the antidiagonal i+j={2 * N}")
    u = np.arange(-N + 1, N)
    g = table.G[N - 1 + u, N - 1 - u]
    return d * u * N ** (-2 / 3), (g - mu * N) / (sigma * N ** (1 / 3))


_VARIANTS = {
    "point_to_point": ("origin", "sup"),
    "rotational": ("direct", "maxu"),
}


def _check_variant(model, variant):
    allowed = _VARIANTS.get(model.kind, (None,))
    if variant is None:
        return allowed[0]
    if variant not in allowed:
        raise KindError(f"variant {variant!r} not available for {model.kind}; use {allowed}")
    return variant


def _rotational_stat(model, g_direct=None, antidiag=None, variant="direct"):
    mu, sigma, _ = scaling_constants(model.q)
    n = model.N
    val = g_direct if variant == "direct" else antidiag
    return (val - 2 * n * mu) / (2 ** (2 / 3) * (2 * n) ** (1 / 3) * sigma)


def statistic(model: ModelSpec, grid: WeightGrid, variant: str | None = None) -> float:
    """Rescaled statistic of one realisation.

    point_to_point: ``origin`` gives H_N(0); ``sup`` gives 2^(2/3) max_u H_N.
    rotational: ``direct`` normalises G(2N,2N); ``maxu`` uses
    max_{|u|<N} [G(N+u,N-u) + G(N-u,N+u)] with the same constants.
    """
    if grid.model.kind != model.kind:
        raise KindError(f"grid of kind {grid.model.kind} passed for model {model.kind}")
    variant = _check_variant(model, variant)
    n, q = model.N, model.q
    mu, sigma, _ = scaling_constants(q)
    kind = model.kind
    if kind == "point_to_point":
        g = _lpp(grid.w)
        if variant == "origin":
            return float((g[n - 1, n - 1] - mu * n) / (sigma * n ** (1 / 3)))
        if grid.region == "square":
            raise DomainError("the sup statistic needs the full triangle")
        _, h = h_process(LppTable(g), n, q)
        return float(2 ** (2 / 3) * h.max())
    if kind == "two_point_independent":
        h1 = h_process(LppTable(_lpp(grid.w[0])), n, q)[1]
        h2 = h_process(LppTable(_lpp(grid.w[1])), n, q)[1]
        return float(np.max(h1 + h2) / 2 ** (1 / 3))
    if kind == "rotational":
        g = _lpp(grid.w)
        u = np.arange(-n + 1, n)
        anti = np.max(g[n - 1 + u, n - 1 - u] + g[n - 1 - u, n - 1 + u])
        return float(_rotational_stat(model, g[-1, -1], anti, variant))
    g = _lpp(grid.w)
    return float((g[-1, -1] - mu * n) / (sigma * n ** (1 / 3)))


# --- streaming path for large N ------------------------------------------

@numba.njit(cache=True, nogil=True)
def _dp_row(g, row):
    # one DP row update in place; g holds the previous row
    left = 0
    for j in range(row.size):
        up = g[j]
        g[j] = row[j] + (up if up > left else left)
        left = g[j]


def _stream_triangle(rng_sq, rng_rest, n, lq):
    """G(i, 2N-i) for i = 1..2N-1 over a point_to_point triangle, O(N) memory."""
    m = 2 * n - 1
    g = np.zeros(m, np.int64)
    out = np.empty(m, np.int64)
    for i in range(m):
        length = m - i
        if i < n:
            u = np.concatenate([rng_sq.random(n), rng_rest.random(length - n)])
        else:
            u = rng_rest.random(length)
        row = _invert(u, lq)
        _dp_row(g[:length], row)
        out[i] = g[length - 1]
    return out


def _split_streams(seed, n):
    sq = np.random.PCG64(seed)
    rest = np.random.PCG64(seed)
    rest.advance(n * n)
    return np.random.Generator(sq), np.random.Generator(rest)


def streamed_statistic(model: ModelSpec, master_seed: int, trial_index: int,
                       variant: str | None = None) -> float:
    """Same value as ``statistic(model, build_grid(...))`` without the full table.

    Rows are generated in the same order as ``build_grid`` and folded into a
    single rolling DP row, so memory is O(N).
    """
    variant = _check_variant(model, variant)
    seed = trial_seed(master_seed, trial_index)
    n, q = model.N, model.q
    mu, sigma, _ = scaling_constants(q)
    lq = np.log(q)
    scale = sigma * n ** (1 / 3)
    kind = model.kind

    if kind == "point_to_point" and variant == "origin":
        rng = np.random.Generator(np.random.PCG64(seed))
        g = np.zeros(n, np.int64)
        for _ in range(n):
            _dp_row(g, _invert(rng.random(n), lq))
        return float((g[-1] - mu * n) / scale)

    if kind in ("point_to_point", "two_point_independent"):
        copies = 1 if kind == "point_to_point" else 2
        hs = []
        per = n * (2 * n - 1)
        for c in range(copies):
            sq = np.random.PCG64(seed)
            sq.advance(c * per)
            rest = np.random.PCG64(seed)
            rest.advance(c * per + n * n)
            anti = _stream_triangle(np.random.Generator(sq), np.random.Generator(rest), n, lq)
            hs.append((anti - mu * n) / scale)
        if kind == "point_to_point":
            return float(2 ** (2 / 3) * hs[0].max())
        return float(np.max(hs[0] + hs[1]) / 2 ** (1 / 3))

    if kind == "rotational":
        rng = np.random.Generator(np.random.PCG64(seed))
        m = 2 * n
        g = np.zeros(m, np.int64)
        cross = np.empty(m, np.int64)  # w(i, 2N+1-i)
        on1 = np.empty(m, np.int64)    # G(i, 2N+1-i)
        on0 = np.zeros(m, np.int64)    # G(i, 2N-i)
        for i in range(m):
            below = m - 1 - i          # cells with i + j <= 2N in this row
            if i < n:
                row = _invert(rng.random(below + 1), lq)
                cross[i] = row[-1]
            else:
                row = np.empty(below + 1, np.int64)
                row[:below] = _invert(rng.random(below), lq)
                cross[i] = cross[m - 1 - i]
                row[below] = cross[i]
            _dp_row(g[: below + 1], row)
            on1[i] = g[below]
            if below > 0:
                on0[i] = g[below - 1]
        if variant == "direct":
            val = np.max(on1 + on1[::-1] - cross)
        else:
            u = np.arange(-n + 1, n)
            val = np.max(on0[n - 1 + u] + on0[n - 1 - u])
        return float(_rotational_stat(model, val, val, variant))

    rng = np.random.Generator(np.random.PCG64(seed))
    if kind == "stationary":
        pp, pm = model.boundary_parameters()
        g = np.zeros(n + 1, np.int64)
        first = np.zeros(n + 1, np.int64)
        first[1:] = _invert(rng.random(n), np.log(pm))
        _dp_row(g, first)
        for _ in range(n):
            row = np.empty(n + 1, np.int64)
            row[0] = _inv1(rng.random(), np.log(pp))
            row[1:] = _invert(rng.random(n), lq)
            _dp_row(g, row)
        return float((g[-1] - mu * n) / scale)

    lp_rows = _row_logs(model)
    g = np.zeros(n, np.int64)
    for i in range(n):
        _dp_row(g, _invert(rng.random(n), lp_rows[i]))
    return float((g[-1] - mu * n) / scale)


def sample_statistic(model: ModelSpec, master_seed: int, trial_index: int,
                     variant: str | None = None, streaming: bool | None = None,
                     rng=None) -> float:
    """Statistic of trial ``trial_index``; streams automatically above FULL_TABLE_MAX_N."""
    if streaming is None:
        streaming = model.N > FULL_TABLE_MAX_N
    if streaming and rng is None:
        return streamed_statistic(model, master_seed, trial_index, variant)
    variant = _check_variant(model, variant)
    region = "square" if model.kind == "point_to_point" and variant == "origin" else "full"
    grid = build_grid(model, master_seed, trial_index, region=region, rng=rng)
    return statistic(model, grid, variant)
