"""Experiment parameters and the limiting hard-edge functions.

A ``ParameterSet`` fixes one counting experiment: matrix size n, truncation
parameter alpha, hard-edge scales t_1 > ... > t_m >= 0 defining radii
r_l = (1 - t_l/n)^(1/2), and the MGF arguments u_1..u_m (real).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ValidationError
from .specfun import reg_inc_gamma_q

__all__ = [
    "ParameterSet",
    "RadiiSchedule",
    "OmegaWeights",
    "make_params",
    "omega_weights",
    "h_alpha",
    "g_alpha",
    "check_h_positive",
]


@dataclass(frozen=True)
class OmegaWeights:
    """Step weights of the radial indicator decomposition.

    omega_l = e^(u_l+...+u_m) - e^(u_{l+1}+...+u_m) for l < m,
    omega_m = e^(u_m) - 1, omega_{m+1} = 1; they telescope to
    1 + sum_l omega_l = Omega = e^(u_1+...+u_m).
    """

    omega: tuple[float, ...]
    Omega: float


@dataclass(frozen=True)
class RadiiSchedule:
    r: tuple[float, ...]


def omega_weights(u) -> OmegaWeights:
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.size < 1:
        raise ValidationError("omega_weights: u must be a nonempty vector")
    m = u.size
    # suffix[l] = u_l + ... + u_m (0-based), suffix[m] = 0
    suffix = np.concatenate([np.cumsum(u[::-1])[::-1], [0.0]])
    om = [math.exp(suffix[l]) - math.exp(suffix[l + 1]) for l in range(m)]
    om.append(1.0)
    return OmegaWeights(tuple(om), math.exp(suffix[0]))


@dataclass(frozen=True)
class ParameterSet:
    """Validated tuple (n, alpha, t, u); immutable after construction."""

    n: int
    alpha: float
    t: tuple[float, ...]
    u: tuple[float, ...]

    @property
    def m(self) -> int:
        return len(self.t)

    @cached_property
    def gamma_alpha(self) -> float:
        return math.gamma(self.alpha)

    @cached_property
    def omega(self) -> OmegaWeights:
        return omega_weights(self.u)

    @cached_property
    def radii(self) -> RadiiSchedule:
        r = tuple(math.sqrt(1.0 - tl / self.n) for tl in self.t)
        return RadiiSchedule(r)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "t": list(self.t),
            "u": list(self.u),
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "ParameterSet":
        return make_params(obj["n"], obj["alpha"], len(obj["t"]), obj["t"], obj["u"])


def make_params(n, alpha, m, t, u) -> ParameterSet:
    """Validate raw inputs; error messages name the violated invariant."""
    if not float(n).is_integer() or int(n) < 1:
        raise ValidationError("n must be a positive integer")
    n = int(n)
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0.0:
        raise ValidationError("alpha must be positive")
    m = int(m)
    if m < 1:
        raise ValidationError("m must be >= 1")
    t = tuple(float(x) for x in t)
    u = tuple(float(x) for x in u)
    if len(t) != m or len(u) != m:
        raise ValidationError(f"length mismatch: expected {m} entries in t and u")
    for x in t + u:
        if not math.isfinite(x):
            raise ValidationError("t and u entries must be finite reals")
    if any(t[i] <= t[i + 1] for i in range(m - 1)):
        raise ValidationError("t not strictly decreasing")
    if t[-1] < 0.0:
        raise ValidationError("t_m must be >= 0")
    if t[0] >= n:
        raise ValidationError("t_1 must be < n so every radius is positive")
    return ParameterSet(n, alpha, t, u)


def _omega_head(params: ParameterSet) -> np.ndarray:
    """First m omega weights, coinciding with (e^(u_l)-1) e^(sum_{j>l} u_j)."""
    return np.asarray(params.omega.omega[:-1], dtype=float)


def h_alpha(x, params: ParameterSet):
    """Limit function 1 + sum_l omega_l Q(alpha, t_l x); positive for real u.

    Well-defined on [0, 1]; at x = 0 it telescopes to Omega.  Accepts a
    scalar or an array of x values.
    """
    x = np.asarray(x, dtype=float)
    om = _omega_head(params)
    acc = np.ones_like(x)
    for tl, w in zip(params.t, om):
        if w != 0.0:
            acc = acc + w * reg_inc_gamma_q(params.alpha, tl * x)
    return float(acc) if acc.ndim == 0 else acc


def g_alpha_reduced(x, params: ParameterSet):
    """g_alpha with the x^(alpha-1) factor stripped; bounded on [0, 1]."""
    x = np.asarray(x, dtype=float)
    om = _omega_head(params)
    a = params.alpha
    acc = np.zeros_like(x)
    for tl, w in zip(params.t, om):
        if w != 0.0 and tl != 0.0:
            acc = acc + w * tl**a * np.exp(-tl * x) * (1.0 - a - tl * x)
    out = acc / (2.0 * params.gamma_alpha * h_alpha(x, params))
    return float(out) if out.ndim == 0 else out


def g_alpha(x, params: ParameterSet):
    """Second-order limit function; diverges like x^(alpha-1) at 0 if alpha < 1."""
    x = np.asarray(x, dtype=float)
    if params.alpha < 1.0 and np.any(x == 0.0):
        raise ValidationError(
            "g_alpha is undefined at x = 0 for alpha < 1 (integrable singularity)"
        )
    out = np.power(x, params.alpha - 1.0) * g_alpha_reduced(x, params)
    return float(out) if out.ndim == 0 else out


def check_h_positive(params: ParameterSet, grid_size: int = 1000):
    """Evaluate h_alpha on a grid of (0, 1] and report (all positive, min)."""
    x = np.arange(1, grid_size + 1, dtype=float) / grid_size
    vals = h_alpha(x, params)
    mn = float(np.min(vals))
    return mn > 0.0, mn
