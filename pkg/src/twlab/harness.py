"""Seeded Monte Carlo campaigns and goodness-of-fit against the limit laws.

Each theorem id pairs a DLPP model kind and statistic with its limiting CDF:

    P2P  point_to_point, H_N(0)                -> F2
    A    point_to_point, 2^(2/3) sup H_N        -> F1
    Aab  two_point_independent, sup of average -> F2
    AA   rotational, G(2N,2N)                  -> F2^2
    AB   stationary, X(N)                      -> F_st(.; w+, w-)
    ABb  spiked, G(N,N)                        -> F_k^spiked(.; w_1..w_k)

Trial ``i`` always uses the seed derived from ``(master_seed, i)``, and
samples are stored by trial index, so results do not depend on the number
of worker threads.
"""
from __future__ import annotations

import json
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import dlpp, laxdist, twcore
from .errors import EmptyError, MismatchError, OutOfDomainError, RangeError
from .painleve import PainleveSolution, solve_hastings_mcleod

THEOREMS = {
    "P2P": ("point_to_point", "origin"),
    "A": ("point_to_point", "sup"),
    "Aab": ("two_point_independent", None),
    "AA": ("rotational", "direct"),
    "AB": ("stationary", None),
    "ABb": ("spiked", None),
}


def default_workers() -> int:
    env = os.environ.get("TWLAB_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("TWLAB_THREADS must be a positive integer")
        return n
    return os.cpu_count() or 1


def _check_theorem(theorem_id, model=None):
    if theorem_id not in THEOREMS:
        raise MismatchError(f"unknown theorem {theorem_id!r}; expected one of {sorted(THEOREMS)}")
    kind, _ = THEOREMS[theorem_id]
    if model is not None and model.kind != kind:
        raise MismatchError(f"theorem {theorem_id} needs a {kind} model, got {model.kind}")


@dataclass(frozen=True, eq=False)
class SampleBatch:
    theorem_id: str
    model: dlpp.ModelSpec
    samples: np.ndarray
    master_seed: int
    trials: int
    variant: str | None = None

    def __post_init__(self):
        if len(self.samples) != self.trials:
            raise ValueError("samples length must equal trials")
        self.samples.setflags(write=False)

    @property
    def sorted(self) -> np.ndarray:
        return np.sort(self.samples)

    def to_csv(self, path=None) -> str:
        """``trial,stat`` rows with round-trip float formatting."""
        lines = ["trial,stat"] + [f"{i},{float(s)!r}" for i, s in enumerate(self.samples)]
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text


def run_trials(model: dlpp.ModelSpec, theorem_id: str, trials: int, master_seed: int,
               workers: int | None = None, variant: str | None = None,
               rng_factory=None) -> SampleBatch:
    """Simulate ``trials`` independent realisations of the theorem's statistic.

    ``rng_factory(seed)`` may replace the PCG64 generator (e.g. by a stub).
    """
    _check_theorem(theorem_id, model)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    variant = variant or THEOREMS[theorem_id][1]
    workers = workers or default_workers()
    out = np.empty(trials)

    def one(i):
        rng = None
        if rng_factory is not None:
            rng = rng_factory(dlpp.trial_seed(master_seed, i))
        out[i] = dlpp.sample_statistic(model, master_seed, i, variant, rng=rng)

    if workers == 1:
        for i in range(trials):
            one(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(one, range(trials)))
    return SampleBatch(theorem_id, model, out, master_seed, trials, variant)


class ECDF:
    """Right-continuous empirical CDF."""

    def __init__(self, samples):
        x = np.sort(np.asarray(samples, dtype=float).ravel())
        if x.size == 0:
            raise EmptyError("empirical CDF of an empty sample")
        self.x = x

    def __call__(self, t):
        out = np.searchsorted(self.x, t, side="right") / self.x.size
        return float(out) if np.ndim(out) == 0 else out

    def left_limit(self, t):
        out = np.searchsorted(self.x, t, side="left") / self.x.size
        return float(out) if np.ndim(out) == 0 else out


def ecdf(batch) -> ECDF:
    return ECDF(batch.samples if isinstance(batch, SampleBatch) else batch)


def _samples(batch):
    x = np.asarray(batch.samples if isinstance(batch, SampleBatch) else batch, dtype=float)
    if x.size == 0:
        raise EmptyError("no samples")
    return x


def _guarded(target_cdf, domain, clamp):
    if domain is None:
        return target_cdf
    lo, hi = domain

    def f(x):
        x = np.asarray(x, dtype=float)
        outside = (x < lo) | (x > hi)
        if np.any(outside):
            if not clamp:
                raise OutOfDomainError(
                    f"{int(outside.sum())} samples outside the target domain [{lo}, {hi}]"
                )
            warnings.warn(f"{int(outside.sum())} samples clamped to [{lo}, {hi}]")
        return target_cdf(np.clip(x, lo, hi))

    return f


def ks_distance(batch, target_cdf, domain=None, clamp=False) -> float:
    """sup |F_n - F| over the jump points of the empirical CDF."""
    x = _samples(batch)
    return float(stats.ks_1samp(x, _guarded(target_cdf, domain, clamp)).statistic)


def cvm_statistic(batch, target_cdf, domain=None, clamp=False) -> float:
    x = _samples(batch)
    return float(stats.cramervonmises(x, _guarded(target_cdf, domain, clamp)).statistic)


@dataclass(frozen=True)
class Target:
    """An analytic CDF together with the interval where it is tabulated."""

    description: str
    cdf: object = field(repr=False)
    domain: tuple


def _solution(sol):
    return sol if isinstance(sol, PainleveSolution) else solve_hastings_mcleod()


def target_for(theorem_id: str, model: dlpp.ModelSpec, sol: PainleveSolution | None = None) -> Target:
    _check_theorem(theorem_id, model)
    sol = _solution(sol)
    dom = (sol.grid.x_min, sol.grid.x_max)
    if theorem_id in ("P2P", "Aab"):
        return Target("F2(x)", lambda x: twcore.cdf_tw(sol, 2, x), dom)
    if theorem_id == "A":
        return Target("F1(x)", lambda x: twcore.cdf_tw(sol, 1, x), dom)
    if theorem_id == "AA":
        return Target("F2(x)^2", lambda x: twcore.cdf_tw(sol, 2, x) ** 2, dom)
    if theorem_id == "AB":
        wp, wm = model.w_plus, model.w_minus
        return Target(f"F_st(x; {wp!r}, {wm!r})",
                      lambda x: laxdist.cdf_fst(sol, x, wp, wm), dom)
    ws = model.ws
    label = f"F_{len(ws)}^spiked(x; {', '.join(repr(w) for w in ws)})"
    if all(w == 0 for w in ws) and len(ws) <= 3:
        return Target(label, lambda x: laxdist.cdf_spiked_closed(sol, len(ws), x), dom)
    return Target(label, lambda x: laxdist.cdf_spiked(sol, x, ws), dom)


def check_target(target: Target, points: int = 2001, tol: float = 1e-3):
    """Raise RangeError unless the target is monotone with limits near 0 and 1."""
    x = np.linspace(*target.domain, points)
    f = np.asarray(target.cdf(x))
    if not np.all(np.isfinite(f)):
        raise RangeError(f"{target.description} is not finite on its grid")
    if np.any(np.diff(f) < -1e-9):
        raise RangeError(f"{target.description} is not monotone on its grid")
    if f[0] > tol or f[-1] < 1 - tol:
        raise RangeError(
            f"{target.description} has limits {f[0]:.3g}, {f[-1]:.3g}; widen the Painleve grid"
        )


@dataclass(frozen=True)
class VerifyReport:
    theorem_id: str
    model: dict
    trials: int
    master_seed: int
    ks: float
    cvm: float
    target: str
    runtime_seconds: float
    variant: str | None = None

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem_id,
            "model": self.model,
            "variant": self.variant,
            "target": self.target,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "ks": self.ks,
            "cvm": self.cvm,
            "runtime_seconds": self.runtime_seconds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def model_for(theorem_id: str, N: int, q: float, w_plus: float = 0.0,
              w_minus: float = 0.0, ws=()) -> dlpp.ModelSpec:
    _check_theorem(theorem_id)
    kind, _ = THEOREMS[theorem_id]
    if kind == "spiked" and not ws:
        ws = (0.0,)
    return dlpp.ModelSpec(kind, N, q, w_plus=w_plus, w_minus=w_minus, ws=tuple(ws))


def verify_theorem(theorem_id: str, N: int, q: float, trials: int, seed: int,
                   w_plus: float = 0.0, w_minus: float = 0.0, ws=(),
                   variant: str | None = None, workers: int | None = None,
                   sol: PainleveSolution | None = None, rng_factory=None,
                   batch_out: list | None = None) -> VerifyReport:
    """Simulate, compare with the limit law, and report KS and CvM distances.

    Samples outside the Painleve grid are clamped (the target is 0 or 1
    there to within the grid's tail mass).  If ``batch_out`` is a list the
    SampleBatch is appended to it.
    """
    start = time.perf_counter()
    model = model_for(theorem_id, N, q, w_plus, w_minus, ws)
    target = target_for(theorem_id, model, sol)
    check_target(target)
    batch = run_trials(model, theorem_id, trials, seed, workers, variant, rng_factory)
    if batch_out is not None:
        batch_out.append(batch)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ks = ks_distance(batch, target.cdf, target.domain, clamp=True)
        cvm = cvm_statistic(batch, target.cdf, target.domain, clamp=True)
    return VerifyReport(
        theorem_id=theorem_id,
        model=model.as_dict(),
        trials=trials,
        master_seed=seed,
        ks=ks,
        cvm=cvm,
        target=target.description,
        runtime_seconds=time.perf_counter() - start,
        variant=batch.variant,
    )
