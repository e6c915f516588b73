"""Command-line surface: experiment subcommands with reproducible outputs.

Exit codes: 0 success, 1 runtime failure, 2 validation error.  Config files
(`--config`) use flat ``key = value`` lines; explicit CLI flags win.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .bilinear import certify_case, LEMMAS, worker_count
from .dyadic import dyadic_range
from .errors import ParameterError
from .io import (
    emit_records,
    ensure_directory,
    svg_chart,
    read_config,
    write_manifest,
)
from .linear import (
    default_window_grid,
    gaussian_band_bump,
    local_smoothing_check,
    strichartz_ratio,
)
from .probes import (
    ProbeRecord,
    SweepRecord,
    illposedness_probe,
    probe_trends,
    threshold,
    threshold_sweep,
)
from .resonance import CASE_KINDS, InteractionCase, resonance_bound_ratio
from .solver import (
    SolveConfig,
    l2_norm,
    mean_value,
    picard_iterate,
    smooth_small_data,
    solve,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgbo",
        description="Pseudospectral laboratory for dispersion-generalized "
        "Benjamin-Ono equations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeded=True):
        p.add_argument("--alpha", type=float, default=0.5)
        p.add_argument("--r", type=float, default=2.0)
        p.add_argument("--s", type=float, default=0.0)
        p.add_argument("--b-epsilon", dest="epsilon", type=float, default=0.05)
        p.add_argument("--T", type=float, default=1.0)
        p.add_argument("--nx", type=int, default=256)
        p.add_argument("--nt", type=int, default=256)
        p.add_argument("--half-width", type=float, default=32 * math.pi)
        p.add_argument("--amplitude", type=float, default=0.01)
        if seeded:
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default="dgbo-out")
        p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
        p.add_argument("--config", default=None)

    p = sub.add_parser("solve", help="march the Cauchy problem with IF-RK4")
    common(p)
    p.add_argument("--dt", type=float, default=1e-3)

    p = sub.add_parser("picard", help="run the Duhamel fixed-point iteration")
    common(p)

    p = sub.add_parser("certify-bilinear", help="dyadic bilinear estimate sweep")
    common(p)
    p.add_argument("--lemma", choices=LEMMAS, required=True)
    p.add_argument("--N-max", dest="n_max", type=int, default=32)
    p.add_argument("--L-max", dest="l_max", type=int, default=32)
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--resolution", type=int, default=8)

    p = sub.add_parser("verify-linear", help="Strichartz and cutoff estimates")
    common(p)
    p.add_argument("--q", type=float, default=math.inf)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--n-data", type=int, default=20)

    p = sub.add_parser("verify-smoothing", help="local smoothing identity check")
    common(p)

    p = sub.add_parser("resonance-scan", help="resonance lower-bound sampling")
    common(p)
    p.add_argument("--case", choices=CASE_KINDS, default="high_low")
    p.add_argument("--N1", type=int, default=32)
    p.add_argument("--N2", type=int, default=2)
    p.add_argument("--N", type=int, default=32)
    p.add_argument("--samples", type=int, default=10000)

    p = sub.add_parser("threshold", help="print the well-posedness threshold")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--r", type=float, required=True)

    p = sub.add_parser("sweep", help="contraction sweep around the threshold")
    common(p)
    p.add_argument("--alphas", type=float, nargs="+", default=[0.5, 0.75, 1.0])
    p.add_argument("--rs", type=float, nargs="+", default=None)
    p.add_argument("--offsets", type=float, nargs="+", default=[0.5])

    p = sub.add_parser("probe-illposedness", help="high-low second-iterate probe")
    common(p)
    p.add_argument("--N-max", dest="n_max", type=int, default=512)
    p.add_argument("--r-list", type=float, nargs="+", default=[1.2, 2.0])
    p.add_argument("--t", type=float, default=1.0)
    return parser


def _apply_config(args: argparse.Namespace, argv: list[str]) -> argparse.Namespace:
    """Config-file values fill in flags the command line left at defaults."""
    if getattr(args, "config", None) is None:
        return args
    overrides = read_config(args.config)
    explicit = {tok.split("=")[0].lstrip("-").replace("-", "_")
                for tok in argv if tok.startswith("--")}
    for key, value in overrides.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr) or attr in explicit:
            continue
        current = getattr(args, attr)
        if isinstance(current, bool):
            setattr(args, attr, value.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, attr, int(value))
        elif isinstance(current, float):
            setattr(args, attr, float(value))
        else:
            setattr(args, attr, value)
    return args


def _manifest(args: argparse.Namespace, out_dir) -> None:
    config = {k: v for k, v in vars(args).items() if k != "config" and v is not None}
    config = {
        k: (list(v) if isinstance(v, (list, tuple)) else v)
        for k, v in config.items()
    }
    write_manifest(out_dir / "run_manifest.txt", config)


def _cmd_threshold(args) -> int:
    print(f"{threshold(args.alpha, args.r):.10g}")
    return 0


def _cmd_solve(args) -> int:
    cfg = SolveConfig(
        alpha=args.alpha, half_width=args.half_width, n_x=args.nx,
        T=args.T, dt=args.dt, r=args.r if args.r > 1 else 2.0,
        s=args.s, epsilon=args.epsilon,
    )
    u0 = smooth_small_data(cfg.grid(), args.amplitude, seed=args.seed)
    result = solve(u0, cfg)
    out = ensure_directory(args.out)
    _manifest(args, out)
    from dataclasses import dataclass, field

    @dataclass(frozen=True)
    class _Sample:
        t: float
        mean: float
        l2: float
        energy: float

    rows = [
        _Sample(float(t), float(m), float(l2), float(en))
        for t, m, l2, en in zip(
            result.times, result.means, result.l2_norms, result.energies
        )
    ]
    emit_records(rows, args.format, out / f"solve_diagnostics.{args.format}")
    svg_chart(
        {"L2": list(zip(result.times, result.l2_norms)),
         "energy": list(zip(result.times, result.energies))},
        out / "solve_conservation.svg",
        "conservation diagnostics", "t", "value",
    )
    print(
        f"solve: T={cfg.T} mean drift={abs(result.means[-1] - result.means[0]):.3e} "
        f"L2 drift={abs(result.l2_norms[-1] - result.l2_norms[0]):.3e}"
    )
    return 0


def _cmd_picard(args) -> int:
    cfg = SolveConfig(
        alpha=args.alpha, half_width=args.half_width, n_x=args.nx, n_t=args.nt,
        T=args.T, r=args.r, s=args.s, epsilon=args.epsilon,
    )
    u0 = smooth_small_data(cfg.grid(), args.amplitude, seed=args.seed)
    result = picard_iterate(u0, cfg)
    out = ensure_directory(args.out)
    _manifest(args, out)
    svg_chart(
        {"kappa": list(enumerate(result.kappas, start=1))},
        out / "picard_kappa.svg",
        "contraction factors", "iteration", "kappa",
    )
    print(
        f"picard: converged={result.converged} iterations={len(result.residuals)} "
        f"kappas={[round(k, 4) for k in result.kappas]}"
    )
    return 0 if result.converged else 1


def _cmd_certify(args) -> int:
    n_values = dyadic_range(2, args.n_max)
    l_values = dyadic_range(1, args.l_max)
    result = certify_case(
        args.lemma, n_values, l_values, trials=args.trials, r=args.r,
        alpha=args.alpha, seed=args.seed, resolution=args.resolution,
        epsilon=args.epsilon, workers=worker_count(),
    )
    out = ensure_directory(args.out)
    _manifest(args, out)
    emit_records(result.records, args.format,
                 out / f"certify_{args.lemma}.{args.format}")
    for fit in (result.n_sweep, result.l_sweep):
        pts = [(v, w) for v, w in zip(fit.values, fit.worst_ratios) if w > 0]
        svg_chart(
            {f"worst ratio vs {fit.axis}": pts},
            out / f"certify_{args.lemma}_{fit.axis}.svg",
            f"{args.lemma} worst-case ratio", f"{fit.axis}_max", "ratio",
            loglog=True,
        )
    print(
        f"{args.lemma}: slope_N={result.n_sweep.slope:.4f} "
        f"(n={result.n_sweep.n_positive}) slope_L={result.l_sweep.slope:.4f} "
        f"(n={result.l_sweep.n_positive})"
    )
    return 0


def _cmd_verify_linear(args) -> int:
    grid2 = default_window_grid()
    rng = np.random.default_rng(args.seed)
    ratios = []
    for _ in range(args.n_data):
        phi = gaussian_band_bump(grid2.space)
        noise = rng.uniform(0.5, 1.5, size=phi.coeffs.shape)
        phi.coeffs = phi.coeffs * noise
        ratios.append(
            strichartz_ratio(phi, args.q, args.p, args.r, args.alpha, grid2)
        )
    out = ensure_directory(args.out)
    _manifest(args, out)
    print(
        f"strichartz (q={args.q}, p={args.p}, r={args.r}): "
        f"min={min(ratios):.6f} max={max(ratios):.6f}"
    )
    return 0


def _cmd_verify_smoothing(args) -> int:
    check = local_smoothing_check(args.r, args.alpha)
    out = ensure_directory(args.out)
    _manifest(args, out)
    print(
        f"smoothing (alpha={args.alpha}, r={args.r}): lhs={check.lhs:.8f} "
        f"rhs={check.rhs:.8f} rel_error={check.relative_error:.3e} "
        f"x_spread={check.x_spread:.3e}"
    )
    return 0


def _cmd_resonance(args) -> int:
    case = InteractionCase(args.case, args.N1, args.N2, args.N)
    stats = resonance_bound_ratio(case, args.alpha, args.samples, args.seed)
    out = ensure_directory(args.out)
    _manifest(args, out)
    print(
        f"{args.case} N=({args.N1}, {args.N2}, {args.N}) alpha={args.alpha}: "
        f"min={stats.minimum:.6g} max={stats.maximum:.6g} mean={stats.mean:.6g}"
    )
    return 0


def _cmd_sweep(args) -> int:
    base = SolveConfig(
        alpha=args.alphas[0], half_width=args.half_width, n_x=args.nx,
        n_t=args.nt, T=args.T, s=args.s, epsilon=args.epsilon,
    )
    rs = args.rs
    records = []
    for alpha in args.alphas:
        cell_rs = rs if rs is not None else [1.0 + 0.8 * alpha]
        records.extend(
            threshold_sweep([alpha], cell_rs, args.offsets, base, args.seed,
                            amplitude=args.amplitude)
        )
    out = ensure_directory(args.out)
    _manifest(args, out)
    emit_records(records, args.format, out / f"sweep.{args.format}")
    n_conv = sum(rec.converged for rec in records)
    print(f"sweep: {n_conv}/{len(records)} cells converged")
    return 0


def _cmd_probe(args) -> int:
    n_list = dyadic_range(16, args.n_max)
    records = illposedness_probe(
        n_list, args.alpha, args.s, list(args.r_list), t=args.t, seed=args.seed
    )
    trends = probe_trends(records)
    out = ensure_directory(args.out)
    _manifest(args, out)
    emit_records(records, args.format, out / f"probe.{args.format}")
    emit_records(trends, args.format, out / f"probe_trends.{args.format}")
    series = {}
    for r in sorted({rec.r for rec in records}):
        rows = [rec for rec in records if rec.r == r]
        series[f"FL r={r}"] = [(rec.n, rec.ratio_fl) for rec in rows]
    series["H^s (r=2)"] = [
        (rec.n, rec.ratio_h2) for rec in records if rec.r == records[0].r
    ]
    svg_chart(series, out / "probe_growth.svg",
              "second-iterate growth", "N", "ratio", loglog=True)
    for trend in trends:
        print(
            f"probe r={trend.r}: slope_H2={trend.slope_h2:.3f} "
            f"slope_FL={trend.slope_fl:.3f}"
        )
    return 0


_DISPATCH = {
    "threshold": _cmd_threshold,
    "solve": _cmd_solve,
    "picard": _cmd_picard,
    "certify-bilinear": _cmd_certify,
    "verify-linear": _cmd_verify_linear,
    "verify-smoothing": _cmd_verify_smoothing,
    "resonance-scan": _cmd_resonance,
    "sweep": _cmd_sweep,
    "probe-illposedness": _cmd_probe,
}


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        args = _apply_config(args, argv)
        return _DISPATCH[args.command](args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
