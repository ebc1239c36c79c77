"""Adaptive panel-bisection quadrature with a fixed-order Gauss rule.

The integrands in this package are smooth away from x = 0; the only
singularity ever encountered (x^(alpha-1) with alpha < 1) is removed
analytically by the substitution s = x^alpha before this module is called.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonConvergenceError

__all__ = ["QuadResult", "adaptive_quad", "integrate_power_weighted"]

_ORDER = 15
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(_ORDER)
_MAX_PANELS = 2**16


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    panels: int


def _gauss_panel(f: Callable, a: float, b: float) -> float:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid + half * _NODES
    return half * float(np.dot(_WEIGHTS, np.asarray(f(x), dtype=float)))


def adaptive_quad(
    f: Callable,
    a: float,
    b: float,
    abs_tol: float = 1e-10,
    max_panels: int = _MAX_PANELS,
) -> QuadResult:
    """Integrate a vectorized callable over [a, b] to absolute tolerance.

    Bisects panels until the two-half refinement of each panel agrees with
    the single-panel value within the panel's share of the tolerance.
    """
    if b <= a:
        return QuadResult(0.0, 0.0, 0)
    total_len = b - a
    whole = _gauss_panel(f, a, b)
    stack = [(a, b, whole)]
    panels = 1
    value = 0.0
    comp = 0.0  # Kahan compensation
    err_total = 0.0
    while stack:
        lo, hi, coarse = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gauss_panel(f, lo, mid)
        right = _gauss_panel(f, mid, hi)
        refined = left + right
        err = abs(refined - coarse)
        local_tol = abs_tol * (hi - lo) / total_len
        if err <= local_tol or (hi - lo) < 1e-14 * total_len:
            y = refined - comp
            t = value + y
            comp = (t - value) - y
            value = t
            err_total += err
        else:
            panels += 2
            if panels > max_panels:
                raise NonConvergenceError(
                    f"adaptive_quad: exceeded {max_panels} panels on [{a}, {b}]"
                )
            stack.append((lo, mid, left))
            stack.append((mid, hi, right))
    return QuadResult(value, err_total, panels)


def integrate_power_weighted(
    f_smooth: Callable,
    alpha: float,
    abs_tol: float = 1e-10,
) -> QuadResult:
    """Integral  int_0^1 x^(alpha-1) f_smooth(x) dx  for alpha > 0.

    For alpha >= 1 the weight is bounded and the product is integrated
    directly.  For alpha < 1 the substitution s = x^alpha turns the
    integral into (1/alpha) int_0^1 f_smooth(s^(1/alpha)) ds, removing the
    endpoint singularity exactly.
    """
    if alpha <= 0.0:
        raise ValueError("integrate_power_weighted: alpha must be positive")
    if alpha >= 1.0:
        return adaptive_quad(
            lambda x: np.power(x, alpha - 1.0) * f_smooth(x), 0.0, 1.0, abs_tol
        )
    inv = 1.0 / alpha
    return adaptive_quad(
        lambda s: f_smooth(np.power(s, inv)) * inv, 0.0, 1.0, abs_tol
    )
