"""Command-line front end.

Subcommands: exact | asymptotic | cumulants | convergence | sample | clt |
figures.  Exit codes: 0 ok, 2 validation, 3 numerical failure, 4 I/O.
Every command is a thin shell over the library; given the same inputs and
seed, the numbers printed here are identical to direct library calls.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import studies
from .asymptotics import asymptotic_constants, cumulant_coeffs
from .errors import NonConvergenceError, ValidationError
from .exact_mgf import log_mgf_exact
from .model import make_params
from .sampler import (
    empirical_moments,
    resolve_source,
    sample_haar_truncation,
    SamplerSource,
)
from .studies import fmt17

_EXIT_VALIDATION = 2
_EXIT_NUMERICAL = 3
_EXIT_IO = 4


def _parse_vector(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip() != ""]


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--t", type=str, help="comma-separated, strictly decreasing")
    p.add_argument("--u", type=str, help="comma-separated, defaults to zeros")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _threads(args, cfg: dict) -> int:
    env = os.environ.get("TUE_THREADS")
    if getattr(args, "threads", None) is not None:
        return max(1, args.threads)
    if env is not None:
        return max(1, int(env))
    if "threads" in cfg:
        return max(1, int(cfg["threads"]))
    return os.cpu_count() or 1


def _build_params(args, cfg: dict, need_n: bool = True):
    n = args.n if args.n is not None else cfg.get("n")
    alpha = args.alpha if args.alpha is not None else cfg.get("alpha")
    t = _parse_vector(args.t) if args.t is not None else cfg.get("t")
    u = _parse_vector(args.u) if args.u is not None else cfg.get("u")
    if alpha is None or t is None:
        raise ValidationError("missing required parameters: --alpha and --t")
    if u is None:
        u = [0.0] * len(t)
    if need_n and n is None:
        raise ValidationError("missing required parameter: --n")
    return make_params(n if need_n else max(int(max(t)) + 1, 1), alpha,
                       len(t), t, u)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _write_lines(path: str, lines: list[str]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _cloud_csv_lines(points: np.ndarray) -> list[str]:
    lines = ["re,im"]
    lines += [f"{fmt17(z.real)},{fmt17(z.imag)}" for z in points]
    return lines


def cmd_exact(args) -> int:
    cfg = _load_config(args.config)
    params = _build_params(args, cfg)
    t0 = time.perf_counter()
    res = log_mgf_exact(params)
    elapsed = (time.perf_counter() - t0) * 1000.0
    _emit({**params.to_json_dict(), "log_mgf": res.log_mgf, "elapsed_ms": elapsed})
    return 0


def cmd_asymptotic(args) -> int:
    cfg = _load_config(args.config)
    params = _build_params(args, cfg)
    consts = asymptotic_constants(params)
    _emit(
        {
            **params.to_json_dict(),
            "C1": consts.C1,
            "C2": consts.C2,
            "exponent": consts.error_exponent,
            "predicted_log_mgf": consts.C1 * params.n + consts.C2,
        }
    )
    return 0


def cmd_cumulants(args) -> int:
    cfg = _load_config(args.config)
    params = _build_params(args, cfg, need_n=False)
    consts = asymptotic_constants(params)
    report = cumulant_coeffs(params.alpha, params.t)
    _emit(report.to_json_dict(consts))
    return 0


def cmd_convergence(args) -> int:
    cfg = _load_config(args.config)
    block = cfg.get("convergence", {})
    params = _build_params(args, cfg, need_n=False)
    n_min = args.n_min if args.n_min is not None else block.get("n_min", 100)
    n_max = args.n_max if args.n_max is not None else block.get("n_max", 3200)
    factor = args.factor if args.factor is not None else block.get("factor", 2.0)
    study = studies.convergence_study(
        params.alpha, params.t, params.u, n_min, n_max, factor,
        threads=_threads(args, cfg),
    )
    lines = studies.convergence_csv_lines(study)
    if args.output:
        _write_lines(args.output, lines)
    else:
        print("\n".join(lines))
    return 0


def cmd_sample(args) -> int:
    cfg = _load_config(args.config)
    block = cfg.get("sample", {})
    params = _build_params(args, cfg)
    n_samples = args.samples if args.samples is not None else block.get("samples", 1000)
    seed = args.seed if args.seed is not None else block.get("seed", 0)
    source = resolve_source(args.source or block.get("source", "kostlan"))
    if args.points_dir:
        if source is not SamplerSource.HAAR_TRUNCATION:
            raise ValidationError(
                "--points-dir needs the haar source; the moduli sampler has no points"
            )
        os.makedirs(args.points_dir, exist_ok=True)
        for i in range(n_samples):
            cloud = sample_haar_truncation(
                params.n, params.alpha, seed, radii=params.radii.r, stream=i
            )
            _write_lines(
                os.path.join(args.points_dir, f"cloud_{i:04d}.csv"),
                _cloud_csv_lines(cloud.points),
            )
    moments = empirical_moments(
        params, n_samples, seed, source, threads=_threads(args, cfg)
    )
    _emit(
        {
            **params.to_json_dict(),
            "source": source.value,
            "seed": seed,
            **moments.to_json_dict(),
        }
    )
    return 0


def cmd_clt(args) -> int:
    cfg = _load_config(args.config)
    block = cfg.get("clt", {})
    params = _build_params(args, cfg)
    n_samples = args.samples if args.samples is not None else block.get("samples", 10000)
    seed = args.seed if args.seed is not None else block.get("seed", 0)
    source = args.source or block.get("source", "kostlan")
    report = studies.clt_report(
        params, n_samples, seed, source, threads=_threads(args, cfg)
    )
    _emit(report)
    return 0


def cmd_figures(args) -> int:
    outdir = args.outdir or "."
    os.makedirs(outdir, exist_ok=True)
    written = []
    if args.which == "fig1":
        clouds = studies.fig1_point_clouds(seed=args.seed or 1)
        for a, points in clouds.items():
            path = os.path.join(outdir, f"fig1_alpha{a}.csv")
            _write_lines(path, _cloud_csv_lines(points))
            written.append(path)
    elif args.which == "fig3":
        grid = studies.fig3_grid()
        for name, curves in (("b1", grid["b1"]), ("b11", grid["b11"])):
            header = "t," + ",".join(f"alpha_{a}" for a in studies.FIG3_ALPHAS)
            lines = [header]
            for i, tv in enumerate(grid["t"]):
                row = [fmt17(tv)] + [fmt17(curves[a][i]) for a in studies.FIG3_ALPHAS]
                lines.append(",".join(row))
            path = os.path.join(outdir, f"fig3_{name}.csv")
            _write_lines(path, lines)
            written.append(path)
    else:  # convergence
        study = studies.convergence_study(1.0, (1.0,), (0.5,))
        path = os.path.join(outdir, "convergence.csv")
        _write_lines(path, studies.convergence_csv_lines(study))
        written.append(path)
    _emit({"written": written})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tuecount",
        description="Disk counting statistics of truncated unitary ensembles",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact ln E_n by the product formula")
    _add_param_flags(p)
    p.set_defaults(fn=cmd_exact)

    p = sub.add_parser("asymptotic", help="C1 n + C2 prediction")
    _add_param_flags(p)
    p.set_defaults(fn=cmd_asymptotic)

    p = sub.add_parser("cumulants", help="b1, c1, b11, c11 and Sigma")
    _add_param_flags(p)
    p.set_defaults(fn=cmd_cumulants)

    p = sub.add_parser("convergence", help="error vs n study with slope fit")
    _add_param_flags(p)
    p.add_argument("--n-min", type=int, dest="n_min")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--factor", type=float)
    p.add_argument("--threads", type=int)
    p.add_argument("--output", help="CSV path (stdout if omitted)")
    p.set_defaults(fn=cmd_convergence)

    p = sub.add_parser("sample", help="Monte Carlo moments of the counts")
    _add_param_flags(p)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--source", choices=["haar", "kostlan"])
    p.add_argument("--threads", type=int)
    p.add_argument("--points-dir", dest="points_dir",
                   help="write per-sample eigenvalue CSVs here (haar only)")
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("clt", help="normalized-count CLT check")
    _add_param_flags(p)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--source", choices=["haar", "kostlan"])
    p.add_argument("--threads", type=int)
    p.set_defaults(fn=cmd_clt)

    p = sub.add_parser("figures", help="emit figure data CSVs")
    p.add_argument("--which", choices=["fig1", "fig3", "convergence"], required=True)
    p.add_argument("--outdir")
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=cmd_figures)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION
    except NonConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return _EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
