"""Exact finite-n evaluation of the counting-statistics MGF.

ln E_n = sum_{j=1}^n ln(1 + sum_l omega_l I(r_l^2, j, alpha)), the product
formula of the rotation-invariant determinant reduction.  Each incomplete
Beta factor is evaluated by the cheapest strategy that is trusted at its
(v, j); the continued fraction is the arbiter everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import NonConvergenceError, ValidationError
from .model import ParameterSet, make_params
from .specfun import Strategy

__all__ = [
    "ExactMgfResult",
    "log_mgf_exact",
    "mean_count_exact",
    "log_partition_exact",
    "log_partition_asymptotic",
]

#: per-term absolute accuracy demanded before a fast strategy is accepted
_DISPATCH_TOL = 1e-12
_TEMME_ORDER = 8


@dataclass(frozen=True)
class ExactMgfResult:
    log_mgf: float
    per_term: np.ndarray | None
    strategy_counts: dict


class _IncBetaDispatch:
    """Per-radius evaluator: picks a strategy per j, counts what was used.

    The d-coefficients of the large-j expansion depend only on (v, alpha),
    so they are computed once per radius and reused across all j.
    """

    def __init__(self, v: float, alpha: float, n: int, force: Strategy | None):
        self.v = v
        self.alpha = alpha
        self.force = force
        self.counts = {s.value: 0 for s in Strategy}
        self._j_temme = max(10, n // 50)
        self._temme_ok = specfun.TEMME_V_MIN <= v < 1.0
        if self._temme_ok:
            self._d = specfun._dk_coeffs(-math.log(v), alpha, _TEMME_ORDER)

    def __call__(self, j: int) -> float:
        v = self.v
        if v <= 0.0:
            return 0.0
        if v >= 1.0:
            return 1.0
        if self.force is Strategy.CONTINUED_FRACTION:
            ev = specfun.inc_beta_cf(v, j, self.alpha)
            self.counts[ev.strategy.value] += 1
            return ev.value
        if j <= specfun.J_EXACT:
            ev = specfun.inc_beta_exact_sum(v, j, self.alpha)
            if ev.err_estimate <= _DISPATCH_TOL:
                self.counts[ev.strategy.value] += 1
                return ev.value
        elif self._temme_ok and j >= self._j_temme:
            value, err = specfun._temme_value(v, j, self.alpha, _TEMME_ORDER, self._d)
            if err <= _DISPATCH_TOL and 0.0 <= value <= 1.0:
                self.counts[Strategy.TEMME_EXPANSION.value] += 1
                return value
        ev = specfun.inc_beta_cf(v, j, self.alpha)
        self.counts[ev.strategy.value] += 1
        return ev.value


def _kahan_add(total: float, comp: float, x: float) -> tuple[float, float]:
    y = x - comp
    t = total + y
    return t, (t - total) - y


def log_mgf_exact(
    params: ParameterSet,
    retain_per_term: bool = False,
    force_strategy: Strategy | None = None,
) -> ExactMgfResult:
    """ln E[prod_l exp(u_l N(r_l))] by the exact product formula.

    A trailing t_m = 0 component contributes exactly n * u_m (the count at
    radius 1 equals n almost surely), so it is peeled off algebraically
    before the j-sum; this keeps the degenerate identity exact in floats.
    """
    n, alpha = params.n, params.alpha
    shift = 0.0
    work = params
    while work is not None and work.t[-1] == 0.0:
        shift += n * work.u[-1]
        if work.m == 1:
            work = None
        else:
            work = make_params(
                n, alpha, work.m - 1, work.t[:-1], work.u[:-1]
            )
    counts = {s.value: 0 for s in Strategy}
    if work is None:
        per = np.full(n, shift / n) if retain_per_term else None
        return ExactMgfResult(shift, per, counts)

    om = np.asarray(work.omega.omega[:-1], dtype=float)
    evals = [
        _IncBetaDispatch(1.0 - tl / n, alpha, n, force_strategy) for tl in work.t
    ]
    active = [l for l in range(work.m) if om[l] != 0.0]
    per = np.empty(n) if retain_per_term else None
    total, comp = 0.0, 0.0
    for j in range(1, n + 1):
        s = 0.0
        for l in active:
            s += om[l] * evals[l](j)
        if s <= -1.0:
            raise NonConvergenceError(
                f"log_mgf_exact: nonpositive log argument at j={j}; "
                "this contradicts the positivity rearrangement and indicates a bug"
            )
        term = math.log1p(s)
        total, comp = _kahan_add(total, comp, term)
        if per is not None:
            per[j - 1] = term + shift / n
    for ev in evals:
        for k, c in ev.counts.items():
            counts[k] += c
    return ExactMgfResult(shift + total, per, counts)


def mean_count_exact(n: int, alpha: float, r: float) -> float:
    """E[N(r)] = sum_{j=1}^n I(r^2, j, alpha): the u-derivative at 0."""
    if not 0.0 < r <= 1.0:
        raise ValidationError("mean_count_exact: r must lie in (0, 1]")
    if r == 1.0:
        return float(n)
    v = r * r
    disp = _IncBetaDispatch(v, alpha, n, None)
    total, comp = 0.0, 0.0
    for j in range(1, n + 1):
        total, comp = _kahan_add(total, comp, disp(j))
    return total


def log_partition_exact(n: int, alpha: float) -> float:
    """ln Z_n = n ln pi + sum_{j=1}^n ln B(j, alpha), in log space."""
    if n < 1:
        raise ValidationError("log_partition_exact: n must be >= 1")
    total, comp = 0.0, 0.0
    for j in range(1, n + 1):
        total, comp = _kahan_add(total, comp, specfun.log_beta(j, alpha))
    return n * math.log(math.pi) + total


def log_partition_asymptotic(n: int, alpha: float) -> float:
    """Large-n form of ln Z_n, with the O(1) constant via Barnes G."""
    if n < 2:
        raise ValidationError("log_partition_asymptotic: n must be >= 2")
    if alpha >= 1.0:
        log_g = specfun.log_barnes_g(alpha)  # ln G(alpha + 1)
    else:
        # G(alpha + 2) = Gamma(alpha + 1) G(alpha + 1)
        log_g = specfun.log_barnes_g(alpha + 1.0) - math.lgamma(alpha + 1.0)
    return (
        -alpha * n * math.log(n)
        + (alpha + math.log(math.pi * math.gamma(alpha))) * n
        - 0.5 * alpha * alpha * math.log(n)
        + log_g
        - 0.5 * alpha * math.log(2.0 * math.pi)
    )
