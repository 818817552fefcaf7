"""Command-line surface: every experiment as a reproducible, CSV-emitting run.

Commands
--------
ga-table        tabulate the shock CDF G_a over an s-grid
moments         first four statistics of G_a (or of the squared-GOE reference)
dmax            sup-distance D(a) between G_a and the squared-GOE reference
scan-monotone   two-sided ordering checks of the family over a grid
sim-tasep       Monte Carlo of the rescaled particle position X_t(u)
sim-lpp         Monte Carlo of the rescaled last-passage time
check-identity  two-sided Monte Carlo check of the TASEP/LPP marginal identity
selftest        fast invariant suites of every module
report          one-shot summary tables (optionally PNG figures with --fig)

Every command writes a JSON run manifest next to its output (or to stderr
when the output goes to stdout); identical manifests reproduce simulation
outputs bit-exactly and quadrature outputs within their stated tolerance.

Exit codes: 0 success, 2 usage error, 3 reliability refusal, 4 numerical
failure.  Parallelism is capped by the SHOCKLAB_THREADS environment
variable.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import math
import sys
import time

import numpy as np

from . import __version__, dist, fredholm, kernel, lpp_sim, specfun, tasep_sim
from .kernel import NumericalError, ReliabilityError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RELIABILITY = 3
EXIT_NUMERICAL = 4


# ----------------------------------------------------------------------
# plumbing: manifests, CSV emission, argument shapes
# ----------------------------------------------------------------------


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat()


class _Run:
    """Collects the manifest for one command invocation."""

    def __init__(self, command: str, params: dict):
        self.manifest = {
            "command": command,
            "parameters": {k: v for k, v in params.items() if k != "func"},
            "versions": {"shocklab": __version__, "numpy": np.__version__},
            "seed": params.get("seed"),
            "started": _now(),
            "finished": None,
        }

    def write(self, out_path):
        self.manifest["finished"] = _now()
        text = json.dumps(self.manifest, default=str, sort_keys=True)
        if out_path:
            with open(str(out_path) + ".manifest.json", "w") as fh:
                fh.write(text + "\n")
        else:
            print(text, file=sys.stderr)


def _fmt(x) -> str:
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def _write_csv(out, header, rows):
    """Rows of numbers/strings to ``out`` (path or None for stdout)."""
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    finally:
        if out:
            fh.close()


def _parse_a_list(text: str):
    """lo:hi:step range syntax or a comma-separated list; deterministic
    ascending order is required downstream."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("range syntax is lo:hi:step")
        lo, hi, step = (float(p) for p in parts)
        if step <= 0 or hi < lo:
            raise ValueError("need lo <= hi and step > 0")
        n = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [round(lo + k * step, 12) for k in range(n)]
    vals = [float(p) for p in text.split(",") if p.strip()]
    if not vals:
        raise ValueError("empty a-list")
    return vals


def _grid(s_min: float, s_max: float, step: float) -> np.ndarray:
    if not (np.isfinite(s_min) and np.isfinite(s_max) and np.isfinite(step)):
        raise ValueError("grid parameters must be finite")
    if step <= 0:
        raise ValueError("step must be positive")
    if s_max < s_min:
        raise ValueError("need s-min <= s-max")
    n = int(math.floor((s_max - s_min) / step + 1e-9)) + 1
    return s_min + step * np.arange(n)


def _ks_distance(samples: np.ndarray, cdf_at) -> float:
    """Exact two-sided Kolmogorov-Smirnov distance of samples against a
    reference CDF callable (ties handled through the sorted order)."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = len(x)
    f = np.clip(np.asarray(cdf_at(x), dtype=float), 0.0, 1.0)
    hi = np.max(np.arange(1, n + 1) / n - f)
    lo = np.max(f - np.arange(0, n) / n)
    return float(max(hi, lo))


def _reference_cdf(a: float, u: float):
    """Callable CDF of the crossover marginal in unscaled units, built
    once from a Chebyshev table (cached per (a, u))."""
    key = (float(a), float(u))
    if key not in _reference_cdf._cache:
        cbrt2 = 2.0 ** (1.0 / 3.0)
        if u == 0.0:
            tab = dist.ga_table(a, dist.moment_grid())
            series = specfun.cheb_fit(
                lambda x: np.interp(x, tab.s_values, tab.cdf),
                (tab.s_values[0], tab.s_values[-1]), len(tab) - 1)

            def f(x, _s=series, _c=cbrt2):
                t = np.clip(np.asarray(x, float) / _c, -6.0, 6.0)
                return np.clip(specfun.cheb_eval(_s, t), 0.0, 1.0)
        else:
            xs = specfun.cheb_points(96, -6.0 * cbrt2, 6.0 * cbrt2)
            vals = np.array([dist.marginal_at_u(a, u, x, recenter=False)
                             for x in xs])
            series = specfun.cheb_fit(
                lambda x: np.interp(x, xs, vals), (xs[0], xs[-1]), len(xs) - 1)

            def f(x, _s=series, _lo=xs[0], _hi=xs[-1]):
                t = np.clip(np.asarray(x, float), _lo, _hi)
                return np.clip(specfun.cheb_eval(_s, t), 0.0, 1.0)
        _reference_cdf._cache[key] = f
    return _reference_cdf._cache[key]


_reference_cdf._cache = {}


def _summary_rows(samples: np.ndarray, cdf_at, discarded: int):
    mean = float(np.mean(samples))
    var = float(np.var(samples, ddof=1)) if len(samples) > 1 else 0.0
    ks = _ks_distance(samples, cdf_at)
    return [("count", len(samples)), ("mean", mean), ("variance", var),
            ("ks", ks), ("discarded", discarded)]


def _emit_samples_and_summary(args, samples, cdf_at, discarded):
    _write_csv(args.out, ["sample"], [[v] for v in samples])
    summary = _summary_rows(samples, cdf_at, discarded)
    dest = sys.stdout if args.out else sys.stderr
    w = csv.writer(dest)
    w.writerow([k for k, _ in summary])
    w.writerow([_fmt(v) for _, v in summary])
    return summary


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def _cmd_ga_table(args):
    grid = _grid(args.s_min, args.s_max, args.step)
    table = dist.ga_table(args.a, grid, nodes=args.nodes, force=args.force)
    rows = zip(table.s_values, table.cdf, table.err)
    _write_csv(args.out, ["s", "G_a", "err"], rows)
    return EXIT_OK


def _cmd_moments(args):
    grid = dist.moment_grid()
    if args.reference:
        label, table = math.inf, dist.reference_table(grid)
    else:
        label = args.a
        table = dist.ga_table(args.a, grid, nodes=args.nodes,
                              force=args.force)
    m = dist.moments(table, (-6.0, 6.0))
    _write_csv(args.out, ["a", "mean", "variance", "skewness", "kurtosis"],
               [[label, m.mean, m.variance, m.skewness, m.kurtosis]])
    return EXIT_OK


def _cmd_dmax(args):
    a_values = _parse_a_list(args.a_list)
    rows = [[a, dist.dmax(a, nodes=args.nodes, force=args.force)]
            for a in a_values]
    _write_csv(args.out, ["a", "D"], rows)
    return EXIT_OK


def _cmd_scan_monotone(args):
    a_values = _parse_a_list(args.a_list)
    grid = _grid(args.s_min, args.s_max, args.step)
    report = dist.monotonicity_scan(a_values, grid, nodes=args.nodes)
    bad = {(v.kind, v.a, v.a_prime, v.s): v for v in report.violations}
    rows = []
    for v in report.violations:
        rows.append([v.kind, v.a, v.a_prime, v.s, 1, v.gap, v.slack])
    if not rows:
        rows.append(["all", math.nan, math.nan, math.nan, 0, 0.0, 0.0])
    _write_csv(args.out,
               ["kind", "a", "a_prime", "s", "violation", "gap", "slack"],
               rows)
    dest = sys.stdout if args.out else sys.stderr
    print("checks=%d violations=%d" % (report.n_checks, len(bad)), file=dest)
    return EXIT_OK


def _cmd_sim_tasep(args):
    sm = tasep_sim.scaling_map(args.u, args.t, args.a)
    window = (-int(math.ceil(args.t / 2.0)) - 8, sm.n_of_u)
    config = tasep_sim.SimConfig(t=args.t, a=args.a, u=args.u,
                                 replicates=args.reps, seed=args.seed,
                                 label_window=window)
    result = tasep_sim.simulate(config)
    samples = tasep_sim.rescale(result.positions, config)
    _emit_samples_and_summary(args, samples, _reference_cdf(args.a, args.u),
                              result.flagged)
    return EXIT_OK


def _cmd_sim_lpp(args):
    config = lpp_sim.LppConfig(ell=args.ell, v=args.v, a=args.a,
                               replicates=args.reps, seed=args.seed)
    samples = lpp_sim.sample_l_resc(config)
    _emit_samples_and_summary(args, samples, _reference_cdf(args.a, args.v), 0)
    return EXIT_OK


def _cmd_check_identity(args):
    out = lpp_sim.check_identity(m=args.m, n=args.n, t=args.t,
                                 alpha=args.alpha, replicates=args.reps,
                                 seed=args.seed)
    within = abs(out["difference"]) <= 3.0 * out["stderr"]
    _write_csv(args.out,
               ["p_lpp", "p_tasep", "difference", "stderr", "within_3sigma"],
               [[out["p_lpp"], out["p_tasep"], out["difference"],
                 out["stderr"], int(within)]])
    return EXIT_OK


# -------------------------- selftest suites --------------------------


def _suite_specfun():
    xs = np.linspace(-12.0, 8.0, 81)
    ai = np.array([specfun.airy_ai(x) for x in xs])
    # second derivative by high-order finite differences of Ai'
    h = 1e-4
    aipp = np.array([(specfun.airy_ai_prime(x + h)
                      - specfun.airy_ai_prime(x - h)) / (2 * h) for x in xs])
    resid = np.max(np.abs(aipp - xs * ai) / np.maximum(np.abs(xs * ai), 1.0))
    assert resid < 1e-6, "Airy ODE residual %g" % resid
    rule = specfun.gauss_legendre(8, 0.0, 2.0)
    assert abs(np.sum(rule.weights * rule.nodes ** 2) - 8.0 / 3.0) < 1e-13


def _suite_kernel():
    xs = np.linspace(-4.0, 4.0, 33)
    k0 = kernel.ka_tilde_outer(0.0, xs, xs)
    airy = np.array([[specfun.airy_ai(x + y) for y in xs] for x in xs])
    gap = np.max(np.abs(k0 - airy))
    assert gap <= 1e-8, "a=0 collapse gap %g" % gap
    p = kernel.KaParams(a=1.2, u1=0.0, u2=0.0)
    for xi1, xi2 in ((-1.0, 0.5), (0.3, 0.7), (-2.0, -2.0)):
        terms = kernel.ka_terms(p, xi1, xi2)
        alt = kernel.div1_alternative(p, xi1, xi2)
        assert abs(terms["div1"] - alt) <= 1e-8 * max(1.0, abs(alt))


def _suite_fredholm():
    class Zero:
        def outer(self, xs, ys):
            return np.zeros((len(xs), len(ys)))

    r = fredholm.fredholm_det(Zero(), 0.0, n=16, T=10.0)
    assert r.value == 1.0, "zero-kernel determinant %r" % r.value

    class Airy2:
        def outer(self, xs, ys):
            return kernel.airy2_kernel(xs[:, None], ys[None, :])

    r = fredholm.fredholm_det(Airy2(), 8.0, n=64)
    assert abs(r.value - 1.0) <= 1e-10
    cbrt2 = 2.0 ** (1.0 / 3.0)
    rb = fredholm.fredholm_det_blocks(0.6, [(0.0, cbrt2 * -1.0)], n=64)
    rs = fredholm.fredholm_det(dist._TildeKernel(0.6), -1.0, n=64,
                               T=kernel.tilde_truncation(0.6, -1.0))
    assert abs(rb.value - rs.value) <= 1e-9


def _suite_dist():
    m = dist.moments(dist.gaussian_table(0.2, 0.81), (-6.0, 6.0))
    assert abs(m.mean - 0.2) < 1e-6 and abs(m.variance - 0.81) < 1e-6
    assert abs(m.skewness) < 1e-6 and abs(m.kurtosis - 3.0) < 1e-6
    assert abs(dist.f1_cdf(-4.0) - 7.56767859879640e-3) < 1e-10
    assert dist.f1_cdf(8.0) >= 1.0 - 1e-6


def _suite_tasep():
    assert abs(tasep_sim.alpha_from(1000.0, 1.0)
               - (1.0 - 2.0 / 500.0 ** (1.0 / 3.0))) < 1e-12
    sm = tasep_sim.scaling_map(0.0, 1000.0, 1.0)
    assert (sm.n_of_u, sm.x_of_u) == (312, -126)


def _suite_lpp():
    assert lpp_sim.lpp_time([[1.0, 2.0], [3.0, 4.0]], (1, 1)) == 8.0
    rng = np.random.default_rng(5)
    w = rng.exponential(size=(3, 3))
    # exhaustive check over the 6 monotone paths of a 3x3 corner
    best = -np.inf
    from itertools import permutations
    for steps in set(permutations("RRUU")):
        i = j = 0
        total = w[0, 0]
        for mv in steps:
            i, j = (i, j + 1) if mv == "R" else (i + 1, j)
            total += w[i, j]
        best = max(best, total)
    assert abs(lpp_time_corner(w) - best) < 1e-12


def lpp_time_corner(w):
    return lpp_sim.lpp_time(w, (w.shape[1] - 1, w.shape[0] - 1))


_SUITES = [
    ("specfun", _suite_specfun),
    ("kernel", _suite_kernel),
    ("fredholm", _suite_fredholm),
    ("dist", _suite_dist),
    ("tasep_sim", _suite_tasep),
    ("lpp_sim", _suite_lpp),
]


def _cmd_selftest(args):
    failures = 0
    for name, fn in _SUITES:
        t0 = time.time()
        try:
            fn()
            status = "pass"
        except Exception as exc:
            status = "FAIL: %s: %s" % (type(exc).__name__, exc)
            failures += 1
        print("%-10s %-40s %6.2fs" % (name, status, time.time() - t0))
    return EXIT_OK if failures == 0 else EXIT_NUMERICAL


# ----------------------------- report --------------------------------


def _cmd_report(args):
    import os

    os.makedirs(args.outdir, exist_ok=True)
    a_values = _parse_a_list(args.a_list)
    grid = _grid(-2.0, 2.0, 0.1)
    mgrid = dist.moment_grid()

    curve_rows = []
    moment_rows = []
    tables = {}
    for a in a_values:
        tab = dist.ga_table(a, mgrid)
        tables[a] = tab
        coarse = dist.ga_table(a, grid)
        curve_rows += [[a, s, c, e] for s, c, e in
                       zip(coarse.s_values, coarse.cdf, coarse.err)]
        m = dist.moments(tab, (-6.0, 6.0))
        moment_rows.append([a, m.mean, m.variance, m.skewness, m.kurtosis])
    ref = dist.reference_table(mgrid)
    m = dist.moments(ref, (-6.0, 6.0))
    moment_rows.append([math.inf, m.mean, m.variance, m.skewness, m.kurtosis])
    ref_coarse = dist.reference_table(grid)
    curve_rows += [[math.inf, s, c, e] for s, c, e in
                   zip(ref_coarse.s_values, ref_coarse.cdf, ref_coarse.err)]

    dmax_rows = [[a, dist.dmax(a)] for a in a_values]
    _write_csv(os.path.join(args.outdir, "ga_curves.csv"),
               ["a", "s", "G_a", "err"], curve_rows)
    _write_csv(os.path.join(args.outdir, "table1.csv"),
               ["a", "mean", "variance", "skewness", "kurtosis"], moment_rows)
    _write_csv(os.path.join(args.outdir, "dmax.csv"), ["a", "D"], dmax_rows)

    if args.fig:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(7, 5))
        for a in a_values:
            coarse = [r for r in curve_rows if r[0] == a]
            ax.plot([r[1] for r in coarse], [r[2] for r in coarse],
                    label="a=%g" % a)
        refc = [r for r in curve_rows if math.isinf(r[0])]
        ax.plot([r[1] for r in refc], [r[2] for r in refc], "k--",
                label="squared GOE")
        ax.set_xlabel("s")
        ax.set_ylabel("CDF")
        ax.legend(fontsize=8)
        fig.savefig(os.path.join(args.outdir, "ga_curves.png"), dpi=150)
        plt.close(fig)

        fig, ax = plt.subplots(figsize=(6, 4))
        ax.semilogy([r[0] for r in dmax_rows], [r[1] for r in dmax_rows],
                    "o-")
        ax.set_xlabel("a")
        ax.set_ylabel("D(a)")
        fig.savefig(os.path.join(args.outdir, "dmax.png"), dpi=150)
        plt.close(fig)
    return EXIT_OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="shocklab",
        description="Numerics of the critically scaled TASEP shock: "
                    "determinantal distribution functions and Monte Carlo "
                    "validation.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, nodes=True, out=True, force=False):
        if nodes:
            sp.add_argument("--nodes", type=int, default=128,
                            help="quadrature nodes per slice (default 128)")
        if out:
            sp.add_argument("--out", default=None,
                            help="output CSV path (default: stdout)")
        if force:
            sp.add_argument("--force", action="store_true",
                            help="override the |a| reliability refusal")

    sp = sub.add_parser("ga-table", help="tabulate G_a over an s grid")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--s-min", type=float, default=-2.0)
    sp.add_argument("--s-max", type=float, default=2.0)
    sp.add_argument("--step", type=float, default=0.1)
    add_common(sp, force=True)
    sp.set_defaults(func=_cmd_ga_table)

    sp = sub.add_parser("moments", help="mean/variance/skewness/kurtosis")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--a", type=float)
    g.add_argument("--reference", action="store_true",
                   help="the squared-GOE reference row instead of G_a")
    add_common(sp, force=True)
    sp.set_defaults(func=_cmd_moments)

    sp = sub.add_parser("dmax", help="sup distance to the squared-GOE law")
    sp.add_argument("--a-list", required=True,
                    help="comma list or lo:hi:step range")
    add_common(sp, force=True)
    sp.set_defaults(func=_cmd_dmax)

    sp = sub.add_parser("scan-monotone", help="two-sided ordering checks")
    sp.add_argument("--a-list", required=True)
    sp.add_argument("--s-min", type=float, default=-2.0)
    sp.add_argument("--s-max", type=float, default=2.0)
    sp.add_argument("--step", type=float, default=0.1)
    add_common(sp)
    sp.set_defaults(func=_cmd_scan_monotone)

    sp = sub.add_parser("sim-tasep", help="Monte Carlo of X_t(u)")
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--u", type=float, default=0.0)
    sp.add_argument("--reps", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    add_common(sp, nodes=False)
    sp.set_defaults(func=_cmd_sim_tasep)

    sp = sub.add_parser("sim-lpp", help="Monte Carlo of the rescaled "
                                        "passage time")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--v", type=float, default=0.0)
    sp.add_argument("--reps", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    add_common(sp, nodes=False)
    sp.set_defaults(func=_cmd_sim_lpp)

    sp = sub.add_parser("check-identity",
                        help="TASEP/LPP marginal identity, both sides by "
                             "Monte Carlo")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--reps", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=0)
    add_common(sp, nodes=False)
    sp.set_defaults(func=_cmd_check_identity)

    sp = sub.add_parser("selftest", help="fast invariant suites")
    sp.set_defaults(func=_cmd_selftest)

    sp = sub.add_parser("report", help="summary tables (and figures "
                                       "with --fig)")
    sp.add_argument("--outdir", default="report")
    sp.add_argument("--a-list", default="0:1.8:0.3")
    sp.add_argument("--fig", action="store_true",
                    help="also render PNG figures")
    sp.set_defaults(func=_cmd_report)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    run = _Run(args.command, vars(args))
    try:
        code = args.func(args)
    except ReliabilityError as exc:
        print("reliability refusal: %s" % exc, file=sys.stderr)
        return EXIT_RELIABILITY
    except (lpp_sim.DomainError, tasep_sim.DomainError, ValueError) as exc:
        print("invalid parameters: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERICAL
    if args.command == "report":
        import os

        run.write(os.path.join(args.outdir, "run"))
    else:
        run.write(getattr(args, "out", None))
    return code


if __name__ == "__main__":
    sys.exit(main())
