"""Command-line front end: deterministic CSV/JSON emission of every module output.

Exit codes: 0 success, 2 usage error, 3 regime error, 4 I/O error.  Identical
configurations produce byte-identical output files regardless of the thread
count; every float is written with 17 significant digits so values round-trip.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import (
    DomainError,
    EmptyRestrictionError,
    FitError,
    RegimeError,
    ResourceError,
)
from .exponents import curie_weiss_exponent, default_window, fit_line
from .finite_volume import (
    asymptotic_log_partition,
    build_spectrum,
    concentration_probability,
    log_partition,
    magnetization_law,
)
from .fluctuations import clt_summary, critical_summary
from .landscape import CouplingPair, psi
from .phase_diagram import gamma, m_star, scan

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REGIME = 3
EXIT_IO = 4

SCHEMA_LINE = "# schema=1"

_USAGE_ERRORS = (DomainError, FitError)
_REGIME_ERRORS = (RegimeError, ResourceError, EmptyRestrictionError)


class UsageError(Exception):
    """Bad flag combination or value; maps to exit code 2."""


@dataclass
class RunConfig:
    """Validated run configuration for one subcommand invocation."""

    subcommand: str
    K: float | None = None
    J: float | None = None
    K_list: list[float] = field(default_factory=list)
    K_range: tuple[float, float, int] | None = None
    J_range: tuple[float, float, int] | None = None
    N_list: list[int] = field(default_factory=list)
    alphas: list[float] = field(default_factory=list)
    alpha_window: float = 0.125
    tilt: float = 0.0
    K_window: tuple[float, float] = (1e-4, 1e-2)
    per_decade: int = 16
    output_format: str = "csv"
    output_path: str | None = None
    threads: int = 1

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha_window <= 1.0 / 6.0:
            raise UsageError(f"--alpha-window must lie in (0, 1/6], got {self.alpha_window}")
        if self.threads < 1:
            raise UsageError(f"--threads must be >= 1, got {self.threads}")
        if any(n < 1 for n in self.N_list):
            raise UsageError(f"--N values must be >= 1, got {self.N_list}")
        self.N_list = sorted(self.N_list)
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"--format must be csv or json, got {self.output_format}")


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must look like lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}: {exc}") from None
    if n < 1:
        raise UsageError(f"range point count must be >= 1, got {n}")
    return lo, hi, n


def _range_values(rng: tuple[float, float, int]) -> list[float]:
    lo, hi, n = rng
    if n == 1:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _emit(config: RunConfig, columns: list[str], rows: list[tuple], path: str | None = None):
    """Write rows as CSV or JSON to the configured path (or stdout)."""
    target = config.output_path if path is None else path
    if config.output_format == "csv":
        lines = [SCHEMA_LINE, ",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "schema": 1,
            "command": config.subcommand,
            "rows": [dict(zip(columns, row)) for row in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    if target is None:
        sys.stdout.write(text)
    else:
        with open(target, "w") as handle:
            handle.write(text)


def _map_ordered(fn, items, threads: int) -> list:
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _sibling_path(path: str | None, tag: str) -> str | None:
    if path is None:
        return None
    root, ext = os.path.splitext(path)
    return f"{root}.{tag}{ext or ''}"


def _require(config: RunConfig, **fields) -> None:
    for name, value in fields.items():
        if value is None or (isinstance(value, list) and not value):
            raise UsageError(f"{config.subcommand} requires --{name.replace('_', '-')}")


def cmd_phase_diagram(config: RunConfig) -> int:
    _require(config, K_range=config.K_range, J_range=config.J_range)
    Klo, Khi, nK = config.K_range
    Jlo, Jhi, nJ = config.J_range
    grid = scan((Klo, Khi), (Jlo, Jhi), nK, nJ, threads=config.threads)
    rows = []
    for iK, K in enumerate(grid.K_values):
        for iJ, J in enumerate(grid.J_values):
            rows.append((float(K), float(J), grid.labels[iK][iJ], float(grid.m_values[iK, iJ])))
    _emit(config, ["K", "J", "phase_label", "m_star"], rows)
    # coexistence-curve polyline over the positive-K part of the sweep
    positives = [float(K) for K in grid.K_values if K > 0.0]
    samples = _map_ordered(gamma, positives, config.threads)
    line_rows = [(s.K, s.gammaK, s.m1, s.slope) for s in samples]
    _emit(
        config,
        ["K", "gammaK", "m1", "slope"],
        line_rows,
        path=_sibling_path(config.output_path, "gamma"),
    )
    return EXIT_OK


def cmd_coexistence(config: RunConfig) -> int:
    K_list = list(config.K_list)
    if config.K_range is not None:
        K_list.extend(_range_values(config.K_range))
    if not K_list:
        raise UsageError("coexistence requires --K (repeatable) or --K-range")
    def one(K: float):
        spin = psi(K)
        s = gamma(K)
        return (K, spin.value, s.gammaK, s.m1, s.slope)
    rows = _map_ordered(one, K_list, config.threads)
    _emit(config, ["K", "psi", "gammaK", "m1", "slope"], rows)
    return EXIT_OK


def cmd_spectrum(config: RunConfig) -> int:
    _require(config, K=config.K, J=config.J, N=config.N_list)
    params = CouplingPair(config.K, config.J)
    rows = []
    for N in config.N_list:
        spectrum = build_spectrum(N, params, config.tilt)
        law = magnetization_law(spectrum)
        for k in range(N + 1):
            rows.append(
                (
                    N,
                    k,
                    float(spectrum.support[k]),
                    float(spectrum.log_multiplicity[k]),
                    float(spectrum.log_weight[k]),
                    float(law.prob[k]),
                )
            )
    _emit(config, ["N", "k", "m", "log_multiplicity", "log_weight", "prob"], rows)
    return EXIT_OK


def cmd_fluctuations(config: RunConfig) -> int:
    _require(config, K=config.K, J=config.J, N=config.N_list)
    params = CouplingPair(config.K, config.J)
    critical = params.K == 0.0 and params.J == 1.0
    summarize = (lambda N: critical_summary(N)) if critical else (lambda N: clt_summary(params, N))
    summaries = _map_ordered(summarize, config.N_list, config.threads)
    rows = [
        (
            s.N,
            s.scaling,
            s.mean,
            s.variance,
            s.kurtosis,
            s.ks_distance,
            s.target_variance,
            s.target_kurtosis,
            s.reference,
        )
        for s in summaries
    ]
    _emit(
        config,
        [
            "N",
            "scaling",
            "mean",
            "variance",
            "kurtosis",
            "ks_distance",
            "target_variance",
            "target_kurtosis",
            "reference",
        ],
        rows,
    )
    return EXIT_OK


def cmd_expansion_check(config: RunConfig) -> int:
    _require(config, K=config.K, J=config.J, N=config.N_list)
    params = CouplingPair(config.K, config.J)
    maximizers = m_star(params)

    def one(N: int):
        exact = log_partition(build_spectrum(N, params, 0.0))
        approx = asymptotic_log_partition(params, maximizers, N)
        diff = exact - approx
        return (N, exact, approx, diff, math.sqrt(N) * diff)

    rows = _map_ordered(one, config.N_list, config.threads)
    _emit(
        config,
        ["N", "log_z_exact", "log_z_asymptotic", "difference", "sqrtN_scaled_difference"],
        rows,
    )
    return EXIT_OK


def cmd_concentration(config: RunConfig) -> int:
    _require(config, K=config.K, J=config.J, N=config.N_list)
    params = CouplingPair(config.K, config.J)
    maximizers = m_star(params)
    if maximizers.on_coexistence:
        raise RegimeError("concentration window is defined around a unique maximizer")
    point = maximizers.points[0]
    alpha = config.alpha_window

    def one(N: int):
        law = magnetization_law(build_spectrum(N, params, 0.0))
        outside = concentration_probability(law, point.m, alpha)
        radius = float(N) ** (-0.5 + alpha)
        log_outside = math.log(outside) if outside > 0.0 else -math.inf
        curvature_term = 0.5 * float(N) ** (2.0 * alpha) * point.d2
        poly_term = 1.5 * math.log(N)
        return (
            N,
            point.m,
            radius,
            outside,
            log_outside,
            curvature_term,
            poly_term,
            log_outside - curvature_term - poly_term,
        )

    rows = _map_ordered(one, config.N_list, config.threads)
    _emit(
        config,
        [
            "N",
            "center",
            "radius",
            "outside_mass",
            "log_outside_mass",
            "curvature_term",
            "poly_term",
            "residual",
        ],
        rows,
    )
    return EXIT_OK


def cmd_exponents(config: RunConfig) -> int:
    if not config.alphas:
        raise UsageError("exponents requires at least one --alpha")
    window = default_window(config.K_window[0], config.K_window[1], config.per_decade)
    fits = [fit_line(alpha, window) for alpha in config.alphas]
    fits.append(curie_weiss_exponent(1.0 + window))
    rows = [
        (
            f.label,
            None if math.isnan(f.alpha) else f.alpha,
            f.exponent,
            f.prefactor,
            f.r_squared,
            int(f.K_values.size),
            f.largest_zero_K,
        )
        for f in fits
    ]
    _emit(
        config,
        ["label", "alpha", "exponent", "prefactor", "r_squared", "n_points", "largest_zero_K"],
        rows,
    )
    return EXIT_OK


_HANDLERS = {
    "phase-diagram": cmd_phase_diagram,
    "coexistence": cmd_coexistence,
    "spectrum": cmd_spectrum,
    "fluctuations": cmd_fluctuations,
    "expansion-check": cmd_expansion_check,
    "exponents": cmd_exponents,
    "concentration": cmd_concentration,
}


def _default_threads() -> int:
    env = os.environ.get("CUBICMF_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (env CUBICMF_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubicmf",
        description="Equilibrium theory of the mean-field spin model with pair and triple couplings.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("phase-diagram", help="label a (K, J) grid and emit the coexistence polyline")
    p.add_argument("--K-range", required=True, help="lo:hi:n")
    p.add_argument("--J-range", required=True, help="lo:hi:n")
    _add_common(p)

    p = sub.add_parser("coexistence", help="sample psi(K), gamma(K) and the exact slope")
    p.add_argument("--K", type=float, action="append", default=[])
    p.add_argument("--K-range", default=None, help="lo:hi:n")
    _add_common(p)

    p = sub.add_parser("spectrum", help="dump the exact magnetization spectrum")
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--J", type=float, required=True)
    p.add_argument("--N", type=int, action="append", default=[], required=True)
    p.add_argument("--tilt", type=float, default=0.0)
    _add_common(p)

    p = sub.add_parser("fluctuations", help="rescaled-law summaries per N with theoretical targets")
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--J", type=float, required=True)
    p.add_argument("--N", type=int, action="append", default=[], required=True)
    _add_common(p)

    p = sub.add_parser("expansion-check", help="exact vs asymptotic log-partition per N")
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--J", type=float, required=True)
    p.add_argument("--N", type=int, action="append", default=[], required=True)
    _add_common(p)

    p = sub.add_parser("exponents", help="power-law fits along J = 1 + alpha K plus the K = 0 axis")
    p.add_argument("--alpha", type=float, action="append", default=[])
    p.add_argument("--K-window", default="1e-4:1e-2", help="lo:hi of the fit window")
    p.add_argument("--per-decade", type=int, default=16)
    _add_common(p)

    p = sub.add_parser("concentration", help="exact Gibbs mass outside the concentration ball per N")
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--J", type=float, required=True)
    p.add_argument("--N", type=int, action="append", default=[], required=True)
    p.add_argument("--alpha-window", type=float, default=0.125)
    _add_common(p)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    kwargs = {
        "subcommand": args.subcommand,
        "output_format": args.format,
        "output_path": args.out,
        "threads": args.threads if args.threads is not None else _default_threads(),
    }
    if hasattr(args, "N"):
        kwargs["N_list"] = list(args.N)
    if args.subcommand == "phase-diagram":
        kwargs["K_range"] = _parse_range(args.K_range)
        kwargs["J_range"] = _parse_range(args.J_range)
    elif args.subcommand == "coexistence":
        kwargs["K_list"] = list(args.K)
        if args.K_range is not None:
            kwargs["K_range"] = _parse_range(args.K_range)
    else:
        if hasattr(args, "K"):
            kwargs["K"] = args.K
        if hasattr(args, "J"):
            kwargs["J"] = args.J
    if hasattr(args, "tilt"):
        kwargs["tilt"] = args.tilt
    if hasattr(args, "alpha"):
        kwargs["alphas"] = list(args.alpha)
    if hasattr(args, "alpha_window"):
        kwargs["alpha_window"] = args.alpha_window
    if hasattr(args, "K_window"):
        parts = args.K_window.split(":")
        if len(parts) != 2:
            raise UsageError(f"--K-window must look like lo:hi, got {args.K_window!r}")
        try:
            kwargs["K_window"] = (float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise UsageError(f"bad --K-window: {exc}") from None
    if hasattr(args, "per_decade"):
        kwargs["per_decade"] = args.per_decade
    return RunConfig(**kwargs)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return _HANDLERS[config.subcommand](config)
    except (UsageError, *_USAGE_ERRORS) as exc:
        print(f"cubicmf: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _REGIME_ERRORS as exc:
        print(f"cubicmf: regime error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except OSError as exc:
        print(f"cubicmf: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
