"""twlab command line: dist, sim, verify, moments.

Exit codes: 0 success, 1 KS distance above --ks-max, 2 bad flags,
3 numeric range errors (parameters outside validated ranges, confluent
spiked parameters, evaluation outside the Painleve grid).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

import numpy as np

from . import dlpp, harness, laxdist, twcore
from .errors import ConfluentError, TwlabError
from .painleve import DEFAULT_STEP, DEFAULT_X_MAX, DEFAULT_X_MIN, Grid1D, solve_hastings_mcleod

log = logging.getLogger("twlab")

KS_MAX = {"P2P": 0.10, "AA": 0.10, "A": 0.12, "Aab": 0.12, "AB": 0.12, "ABb": 0.12}


class FlagError(Exception):
    pass


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of numbers, got {text!r}")


def _grid_flags(p):
    g = p.add_argument_group("Painleve grid")
    g.add_argument("--grid-min", type=float, default=DEFAULT_X_MIN)
    g.add_argument("--grid-max", type=float, default=None)
    g.add_argument("--grid-step", type=float, default=DEFAULT_STEP)


def _model_flags(p, model=True):
    if model:
        p.add_argument("--model", required=True, choices=dlpp.KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=float, default=0.5)
    p.add_argument("--wplus", type=float, default=0.0)
    p.add_argument("--wminus", type=float, default=0.0)
    p.add_argument("--w", type=_floats, default=())
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", default=None)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twlab", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="tabulate a CDF (and density where available)")
    d.add_argument("--family", required=True, choices=["f1", "f2", "f4", "fst", "spiked"])
    d.add_argument("--from", dest="x_from", type=float, default=-8.0)
    d.add_argument("--to", dest="x_to", type=float, default=6.0)
    d.add_argument("--step", type=float, default=0.01)
    d.add_argument("--wplus", type=float)
    d.add_argument("--wminus", type=float)
    d.add_argument("--w", type=_floats)
    d.add_argument("--closed-form", type=int, choices=[1, 2, 3])
    d.add_argument("--out", default=None)
    _grid_flags(d)

    s = sub.add_parser("sim", help="simulate a DLPP statistic")
    _model_flags(s)

    v = sub.add_parser("verify", help="compare simulated statistics with the limit law")
    v.add_argument("--theorem", required=True)
    _model_flags(v, model=False)
    v.add_argument("--ks-max", type=float, default=None)
    v.add_argument("--samples-out", default=None)
    _grid_flags(v)

    m = sub.add_parser("moments", help="mean and variance by quadrature")
    m.add_argument("--family", required=True, choices=["f1", "f2", "f4", "fst", "spiked"])
    m.add_argument("--wplus", type=float)
    m.add_argument("--wminus", type=float)
    m.add_argument("--w", type=_floats)
    m.add_argument("--closed-form", type=int, choices=[1, 2, 3])
    m.add_argument("--shifted", action="store_true")
    _grid_flags(m)
    return parser


def _solution(args, x_max=None):
    hi = args.grid_max if args.grid_max is not None else max(DEFAULT_X_MAX, x_max or DEFAULT_X_MAX)
    try:
        grid = Grid1D(args.grid_min, hi, args.grid_step)
    except ValueError as exc:
        raise FlagError(str(exc))
    return solve_hastings_mcleod(grid)


def _write(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(v) -> str:
    return repr(float(v))


def _family_cdf(args, sol):
    """(cdf, pdf or None) callables for the requested family."""
    fam = args.family
    if fam in ("f1", "f2", "f4"):
        beta = int(fam[1])
        return (lambda x: twcore.cdf_tw(sol, beta, x)), (lambda x: twcore.pdf_tw(sol, beta, x))
    if fam == "fst":
        if args.wplus is None or args.wminus is None:
            raise FlagError("--family fst needs --wplus and --wminus")
        wp, wm = args.wplus, args.wminus
        if laxdist.fst_uses_antisymmetric(wp, wm):
            log.info("w+ + w- = %g: using the antisymmetric F_st formula", wp + wm)
        return (lambda x: laxdist.cdf_fst(sol, x, wp, wm)), None
    if args.closed_form is not None:
        k = args.closed_form
        return (lambda x: laxdist.cdf_spiked_closed(sol, k, x)), None
    if not args.w:
        raise FlagError("--family spiked needs --w w1,...,wk or --closed-form k")
    ws = args.w
    return (lambda x: laxdist.cdf_spiked(sol, x, ws)), None


def cmd_dist(args) -> int:
    if args.step <= 0 or args.x_to < args.x_from:
        raise FlagError("need --step > 0 and --from <= --to")
    count = (args.x_to - args.x_from) / args.step
    if abs(count - round(count)) > 1e-6:
        raise FlagError("--step must divide --to minus --from")
    x = np.linspace(args.x_from, args.x_to, int(round(count)) + 1)
    if args.family == "fst" and args.wplus is not None and args.wminus is not None:
        need = laxdist.fst_grid(args.wplus, args.wminus).x_max
    else:
        need = DEFAULT_X_MAX
    if args.family == "f4":
        need = max(need, float(np.ceil(args.x_to * np.sqrt(2))))
    sol = _solution(args, max(need, float(np.ceil(args.x_to))))
    cdf, pdf = _family_cdf(args, sol)
    c = np.atleast_1d(cdf(x))
    lines = ["x,cdf,pdf" if pdf else "x,cdf"]
    if pdf:
        dens = np.atleast_1d(pdf(x))
        lines += [f"{_fmt(a)},{_fmt(b)},{_fmt(e)}" for a, b, e in zip(x, c, dens)]
    else:
        lines += [f"{_fmt(a)},{_fmt(b)}" for a, b in zip(x, c)]
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _model_from_args(args, kind):
    return dlpp.ModelSpec(kind, args.n, args.q, w_plus=args.wplus, w_minus=args.wminus,
                          ws=args.w or ((0.0,) if kind == "spiked" else ()))


def _check_trials(args):
    if args.trials < 1:
        raise FlagError("--trials must be >= 1")
    if args.n < 1:
        raise FlagError("--n must be >= 1")


def _theorem_for_sim(args):
    if args.model == "point_to_point":
        return "A" if args.variant == "sup" else "P2P"
    return {"rotational": "AA", "two_point_independent": "Aab",
            "stationary": "AB", "spiked": "ABb"}[args.model]


def _check_variant(theorem, variant):
    allowed = {"P2P": ("origin", "sup"), "A": ("origin", "sup"), "AA": ("direct", "maxu")}
    if variant is not None and variant not in allowed.get(theorem, ()):
        raise FlagError(f"--variant {variant} is not available here")


def cmd_sim(args) -> int:
    _check_trials(args)
    theorem = _theorem_for_sim(args)
    _check_variant(theorem, args.variant)
    model = _model_from_args(args, args.model)
    start = time.perf_counter()
    batch = harness.run_trials(model, theorem, args.trials, args.seed, variant=args.variant)
    elapsed = time.perf_counter() - start
    _write(batch.to_csv(), args.out)
    sd = float(np.std(batch.samples, ddof=1)) if args.trials > 1 else 0.0
    print(f"mean={float(np.mean(batch.samples))!r} sd={sd!r} runtime={elapsed:.2f}s",
          file=sys.stderr if args.out is None else sys.stdout)
    return 0


def cmd_verify(args) -> int:
    if args.theorem not in harness.THEOREMS:
        raise FlagError(f"unknown theorem {args.theorem!r}; choose from {sorted(harness.THEOREMS)}")
    _check_trials(args)
    if args.variant is not None and not (args.theorem == "AA" and args.variant in ("direct", "maxu")):
        raise FlagError("--variant applies to --theorem AA only (direct or maxu)")
    if args.theorem == "AB":
        need = laxdist.fst_grid(args.wplus, args.wminus).x_max
    else:
        need = DEFAULT_X_MAX
    sol = _solution(args, need)
    batches = []
    report = harness.verify_theorem(
        args.theorem, args.n, args.q, args.trials, args.seed,
        w_plus=args.wplus, w_minus=args.wminus, ws=args.w or (),
        variant=args.variant, sol=sol, batch_out=batches,
    )
    log.info("target: %s", report.target)
    if args.samples_out:
        batches[0].to_csv(args.samples_out)
    _write(report.to_json() + "\n", args.out)
    ks_max = args.ks_max if args.ks_max is not None else KS_MAX[args.theorem]
    return 0 if report.ks <= ks_max else 1


def cmd_moments(args) -> int:
    fam = args.family
    if fam == "fst":
        if args.wplus is None or args.wminus is None:
            raise FlagError("--family fst needs --wplus and --wminus")
        if args.shifted and args.wminus != -args.wplus:
            raise FlagError("--shifted needs --wminus equal to minus --wplus")
        sol = _solution(args, laxdist.fst_grid(args.wplus, args.wminus).x_max)
        mean, var = laxdist.fst_moments(sol, args.wplus, args.wminus, shifted=args.shifted)
    elif args.shifted:
        raise FlagError("--shifted applies to --family fst only")
    elif fam == "spiked":
        sol = _solution(args)
        cdf, _ = _family_cdf(args, sol)
        mean, var = twcore.moments_from_cdf(sol.x, cdf(sol.x))
    else:
        sol = _solution(args)
        mean, var = twcore.moments(sol, int(fam[1]))
    print(json.dumps({"family": fam, "mean": mean, "variance": var}))
    return 0


COMMANDS = {"dist": cmd_dist, "sim": cmd_sim, "verify": cmd_verify, "moments": cmd_moments}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except FlagError as exc:
        parser.print_usage(sys.stderr)
        print(f"twlab: error: {exc}", file=sys.stderr)
        return 2
    except ConfluentError as exc:
        k = len(args.w or ())
        hint = f" (for all-zero parameters try --closed-form {k})" if 1 <= k <= 3 else ""
        print(f"twlab: error: {exc}{hint}", file=sys.stderr)
        return 3
    except TwlabError as exc:
        print(f"twlab: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
