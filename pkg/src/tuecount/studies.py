"""Sweeps and reports: convergence studies, CLT checks, figure data.

Everything here is a plain library function; the CLI is a shell around
these so its numerical output always matches a direct call.
"""

from __future__ import annotations

import concurrent.futures
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .asymptotics import (
    asymptotic_constants,
    b1_coeff,
    b11_coeff,
    cumulant_coeffs,
    error_exponent,
)
from .errors import ValidationError
from .exact_mgf import log_mgf_exact
from .model import ParameterSet, make_params
from .sampler import (
    clt_normalized_counts,
    resolve_source,
    sample_haar_truncation,
)

__all__ = [
    "ConvergenceStudy",
    "convergence_study",
    "convergence_csv_lines",
    "clt_report",
    "fig1_point_clouds",
    "fig3_grid",
    "FIG1_ALPHAS",
    "FIG3_ALPHAS",
]

#: residuals below this are treated as quadrature/rounding noise
NOISE_FLOOR = 1e-10

FIG1_ALPHAS = (2, 5, 10)
FIG3_ALPHAS = (0.34, 1.24, 2.24, 5.24)


def fmt17(x: float) -> str:
    """Lossless float formatting: 17 significant digits."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class ConvergenceStudy:
    n_grid: tuple[int, ...]
    exact: np.ndarray
    predicted: np.ndarray
    errors: np.ndarray
    fitted_slope: float
    predicted_slope: float
    at_noise_floor: bool


def _geometric_grid(n_min: int, n_max: int, factor: float) -> tuple[int, ...]:
    if n_min < 50:
        raise ValidationError("convergence_study: n_min must be >= 50")
    if factor < math.sqrt(2.0):
        raise ValidationError("convergence_study: factor must be >= sqrt(2)")
    grid = []
    x = float(n_min)
    while round(x) <= n_max:
        nx = int(round(x))
        if not grid or nx > grid[-1]:
            grid.append(nx)
        x *= factor
    if not grid:
        raise ValidationError("convergence_study: empty n grid")
    return tuple(grid)


def _exact_for_n(args) -> float:
    alpha, t, u, n = args
    params = make_params(n, alpha, len(t), t, u)
    return log_mgf_exact(params).log_mgf


def convergence_study(
    alpha: float,
    t,
    u,
    n_min: int = 100,
    n_max: int = 3200,
    factor: float = 2.0,
    threads: int = 1,
) -> ConvergenceStudy:
    """|ln E_n - (C1 n + C2)| over a geometric n grid, with a log-log slope fit."""
    grid = _geometric_grid(n_min, n_max, factor)
    base = make_params(grid[0], alpha, len(t), t, u)
    consts = asymptotic_constants(base)
    jobs = [(alpha, tuple(t), tuple(u), n) for n in grid]
    if threads > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as ex:
            exact = np.array(list(ex.map(_exact_for_n, jobs)))
    else:
        exact = np.array([_exact_for_n(j) for j in jobs])
    predicted = consts.C1 * np.array(grid, dtype=float) + consts.C2
    errors = np.abs(exact - predicted)
    usable = errors > NOISE_FLOOR
    if usable.sum() >= 2:
        slope = float(
            np.polyfit(np.log(np.array(grid, float)[usable]), np.log(errors[usable]), 1)[0]
        )
        floor = False
    else:
        slope = float("nan")
        floor = True
    return ConvergenceStudy(
        grid, exact, predicted, errors, slope, -error_exponent(alpha), floor
    )


def convergence_csv_lines(study: ConvergenceStudy) -> list[str]:
    lines = ["n,exact,predicted,abs_error"]
    for n, e, p, err in zip(study.n_grid, study.exact, study.predicted, study.errors):
        lines.append(f"{n},{fmt17(e)},{fmt17(p)},{fmt17(err)}")
    if study.at_noise_floor:
        lines.append(
            f"# fitted_slope=noise floor,predicted_slope={fmt17(study.predicted_slope)}"
        )
    else:
        lines.append(
            f"# fitted_slope={fmt17(study.fitted_slope)},"
            f"predicted_slope={fmt17(study.predicted_slope)}"
        )
    return lines


def clt_report(
    params: ParameterSet,
    n_samples: int,
    seed: int,
    source="kostlan",
    threads: int = 1,
    ks_threshold: float = 0.02,
    corr_threshold: float = 0.05,
) -> dict:
    """Empirical CLT check: marginal KS distances and correlation matrix.

    ``ks_distance`` is the plain empirical KS statistic of the normalized
    counts against N(0,1).  Because the counts live on an integer lattice
    and are centered by the O(n) coefficient only, that statistic has a
    positive floor at fixed n; ``ks_distance_smoothed`` (exact centering
    plus uniform dejittering of the lattice) is reported alongside as the
    distributional diagnostic.
    """
    if params.t[-1] == 0.0:
        raise ValidationError(
            "clt check requires t_m > 0: at t_m = 0 the count N(1) is "
            "deterministic and its normalized version is undefined"
        )
    source = resolve_source(source)
    normalized = clt_normalized_counts(params, n_samples, seed, source, threads)
    m = params.m
    ks = [float(stats.kstest(normalized[:, l], "norm").statistic) for l in range(m)]

    # diagnostic variant: recenter each marginal by its exact mean and std,
    # and smear the unit lattice with U(-1/2, 1/2) jitter
    b1 = np.array([b1_coeff(params.alpha, tl) for tl in params.t])
    b11 = np.array([b11_coeff(params.alpha, tl, tl) for tl in params.t])
    counts = normalized * np.sqrt(b11 * params.n) + b1 * params.n
    jit = np.random.Generator(np.random.Philox(key=np.array([seed, 2**63],
                                                            dtype=np.uint64)))
    smeared = counts + jit.uniform(-0.5, 0.5, size=counts.shape)
    ks_smooth = []
    for l in range(m):
        col = smeared[:, l]
        z = (col - col.mean()) / col.std(ddof=1)
        ks_smooth.append(float(stats.kstest(z, "norm").statistic))

    emp_corr = np.corrcoef(normalized, rowvar=False).reshape(m, m)
    report = cumulant_coeffs(params.alpha, params.t)
    sigma = np.array([[report.Sigma[l][k] for k in range(m)] for l in range(m)])
    corr_err = float(np.max(np.abs(emp_corr - sigma)))
    passed = bool(max(ks) < ks_threshold and corr_err <= corr_threshold)
    return {
        "n": params.n,
        "alpha": params.alpha,
        "t": list(params.t),
        "n_samples": n_samples,
        "seed": seed,
        "source": source.value,
        "ks_distance": ks,
        "ks_distance_smoothed": ks_smooth,
        "marginal_var": np.var(normalized, axis=0, ddof=1).tolist(),
        "empirical_corr": emp_corr.tolist(),
        "sigma_predicted": sigma.tolist(),
        "max_corr_error": corr_err,
        "thresholds": {"ks": ks_threshold, "corr": corr_threshold},
        "pass": passed,
    }


def fig1_point_clouds(n: int = 500, seed: int = 1, alphas=FIG1_ALPHAS) -> dict:
    """One eigenvalue cloud per alpha, for the scatter illustration."""
    clouds = {}
    for stream, a in enumerate(alphas):
        cloud = sample_haar_truncation(n, a, seed, stream=stream)
        clouds[a] = cloud.points
    return clouds


def fig3_grid(t_min: float = 0.01, t_max: float = 20.0, points: int = 200,
              alphas=FIG3_ALPHAS) -> dict:
    """Curves t -> b1(t) and t -> b11(t, t) on a log grid, one per alpha."""
    t = np.geomspace(t_min, t_max, points)
    b1 = {a: np.array([b1_coeff(a, x) for x in t]) for a in alphas}
    b11 = {a: np.array([b11_coeff(a, x, x) for x in t]) for a in alphas}
    return {"t": t, "b1": b1, "b11": b11}
