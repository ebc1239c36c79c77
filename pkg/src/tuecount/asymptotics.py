"""Large-n constants and cumulant coefficients by adaptive quadrature.

C1 = int_0^1 ln h_alpha dx and C2 = int_0^1 g_alpha dx
     + (ln h_alpha(1) - sum_j u_j)/2 give the exp(C1 n + C2 + o(1))
prediction; the first/second u-derivatives of C1 and C2 at u = 0 reduce to
the coefficient functions b1, c1, b11, c11, which are integrated directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .model import ParameterSet, g_alpha_reduced, h_alpha
from .quadrature import adaptive_quad, integrate_power_weighted
from .specfun import reg_inc_gamma_q

__all__ = [
    "AsymptoticConstants",
    "CumulantReport",
    "error_exponent",
    "compute_c1",
    "compute_c2",
    "asymptotic_constants",
    "predict_log_mgf",
    "b1_coeff",
    "b1_coeff_integral",
    "c1_coeff",
    "b11_coeff",
    "c11_coeff",
    "cumulant_coeffs",
]

_QUAD_TOL = 1e-10


@dataclass(frozen=True)
class AsymptoticConstants:
    C1: float
    C2: float
    error_exponent: float
    quadrature_err: float


@dataclass(frozen=True)
class CumulantReport:
    """Coefficients of the O(n) and O(1) parts of mean/variance/covariance.

    b11/c11 are stored symmetric; Sigma entries at a degenerate t = 0 index
    are None (the normalized count is identically zero there).
    """

    alpha: float
    t: tuple[float, ...]
    b1: np.ndarray
    c1: np.ndarray
    b11: np.ndarray
    c11: np.ndarray
    Sigma: list
    predicted_mean: np.ndarray | None = None
    predicted_var: np.ndarray | None = None
    predicted_cov: np.ndarray | None = None

    def to_json_dict(self, constants: AsymptoticConstants | None = None) -> dict:
        out = {
            "b1": self.b1.tolist(),
            "c1": self.c1.tolist(),
            "b11": self.b11.tolist(),
            "c11": self.c11.tolist(),
            "Sigma": self.Sigma,
        }
        if constants is not None:
            out = {
                "C1": constants.C1,
                "C2": constants.C2,
                "exponent": constants.error_exponent,
                **out,
            }
        return out


def error_exponent(alpha: float) -> float:
    """Decay exponent (2 min(alpha,1) + alpha) / (2 + alpha) of the remainder."""
    return (2.0 * min(alpha, 1.0) + alpha) / (2.0 + alpha)


def compute_c1(params: ParameterSet, abs_tol: float = _QUAD_TOL) -> float:
    res = adaptive_quad(lambda x: np.log(h_alpha(x, params)), 0.0, 1.0, abs_tol)
    return res.value


def compute_c2(params: ParameterSet, abs_tol: float = _QUAD_TOL) -> float:
    res = integrate_power_weighted(
        lambda x: g_alpha_reduced(x, params), params.alpha, abs_tol
    )
    boundary = (math.log(h_alpha(1.0, params)) - sum(params.u)) / 2.0
    return res.value + boundary


def asymptotic_constants(
    params: ParameterSet, abs_tol: float = _QUAD_TOL
) -> AsymptoticConstants:
    r1 = adaptive_quad(lambda x: np.log(h_alpha(x, params)), 0.0, 1.0, abs_tol)
    r2 = integrate_power_weighted(
        lambda x: g_alpha_reduced(x, params), params.alpha, abs_tol
    )
    c2 = r2.value + (math.log(h_alpha(1.0, params)) - sum(params.u)) / 2.0
    return AsymptoticConstants(
        r1.value, c2, error_exponent(params.alpha), r1.err_estimate + r2.err_estimate
    )


def predict_log_mgf(params: ParameterSet, abs_tol: float = _QUAD_TOL) -> float:
    """First-order prediction C1 * n + C2 of ln E_n."""
    return compute_c1(params, abs_tol) * params.n + compute_c2(params, abs_tol)


# ---------------------------------------------------------------------------
# cumulant coefficient functions
# ---------------------------------------------------------------------------


def b1_coeff(alpha: float, t: float) -> float:
    """Mean coefficient: int_0^1 Q(alpha, t x) dx in closed form.

    Fubini reduces the integral to Q(alpha, t) + alpha (1 - Q(alpha+1, t))/t,
    with limit 1 as t -> 0.
    """
    if t < 0.0:
        raise ValidationError("b1_coeff: t must be >= 0")
    if t == 0.0:
        return 1.0
    q = reg_inc_gamma_q(alpha, t)
    q1 = reg_inc_gamma_q(alpha + 1.0, t)
    return q + alpha * (1.0 - q1) / t


def b1_coeff_integral(alpha: float, t: float, abs_tol: float = _QUAD_TOL) -> float:
    """Quadrature form of b1, kept as a cross-check of the closed form."""
    if t == 0.0:
        return 1.0
    return adaptive_quad(
        lambda x: reg_inc_gamma_q(alpha, t * x), 0.0, 1.0, abs_tol
    ).value


def c1_coeff(alpha: float, t: float, abs_tol: float = _QUAD_TOL) -> float:
    """O(1) mean coefficient, by quadrature of the displayed integrand."""
    if t == 0.0:
        return 0.0
    # prefactor t^alpha / Gamma(alpha) stays inside the integrand so the
    # quadrature tolerance applies to the finished value
    pref = t**alpha / math.gamma(alpha)
    res = integrate_power_weighted(
        lambda x: pref * np.exp(-t * x) * (1.0 - alpha - t * x) / 2.0, alpha, abs_tol
    )
    return res.value + (reg_inc_gamma_q(alpha, t) - 1.0) / 2.0


def b11_coeff(alpha: float, tl: float, tk: float, abs_tol: float = _QUAD_TOL) -> float:
    """Covariance coefficient int_0^1 Q(alpha, t_big x)(1 - Q(alpha, t_small x)) dx."""
    big, small = max(tl, tk), min(tl, tk)
    if big == 0.0 or small == 0.0:
        return 0.0
    return adaptive_quad(
        lambda x: reg_inc_gamma_q(alpha, big * x)
        * (1.0 - reg_inc_gamma_q(alpha, small * x)),
        0.0,
        1.0,
        abs_tol,
    ).value


def c11_coeff(alpha: float, tl: float, tk: float, abs_tol: float = _QUAD_TOL) -> float:
    """O(1) covariance coefficient, by quadrature of the displayed integrand."""
    big, small = max(tl, tk), min(tl, tk)
    if big == 0.0 or small == 0.0:
        return 0.0

    def bracket(x):
        q_big = reg_inc_gamma_q(alpha, big * x)
        q_small = reg_inc_gamma_q(alpha, small * x)
        return (
            (alpha - 1.0 + small * x) * small**alpha * np.exp(-small * x) * q_big
            - (alpha - 1.0 + big * x)
            * big**alpha
            * np.exp(-big * x)
            * (1.0 - q_small)
        ) / (2.0 * math.gamma(alpha))

    res = integrate_power_weighted(bracket, alpha, abs_tol)
    boundary = (
        reg_inc_gamma_q(alpha, big) * (1.0 - reg_inc_gamma_q(alpha, small)) / 2.0
    )
    return res.value + boundary


def cumulant_coeffs(
    alpha: float,
    t,
    n: int | None = None,
    abs_tol: float = _QUAD_TOL,
) -> CumulantReport:
    """Assemble b1, c1, b11, c11 and the CLT correlation matrix Sigma."""
    t = tuple(float(x) for x in t)
    m = len(t)
    if m < 1:
        raise ValidationError("cumulant_coeffs: need at least one t")
    if any(t[i] <= t[i + 1] for i in range(m - 1)):
        raise ValidationError("t not strictly decreasing")
    if t[-1] < 0.0:
        raise ValidationError("t_m must be >= 0")

    b1 = np.array([b1_coeff(alpha, x) for x in t])
    c1 = np.array([c1_coeff(alpha, x, abs_tol) for x in t])
    b11 = np.empty((m, m))
    c11 = np.empty((m, m))
    for l in range(m):
        for k in range(l, m):
            b11[l, k] = b11[k, l] = b11_coeff(alpha, t[l], t[k], abs_tol)
            c11[l, k] = c11[k, l] = c11_coeff(alpha, t[l], t[k], abs_tol)

    sigma: list = [[None] * m for _ in range(m)]
    for l in range(m):
        for k in range(m):
            dl, dk = b11[l, l], b11[k, k]
            if dl > 0.0 and dk > 0.0:
                sigma[l][k] = float(b11[l, k] / math.sqrt(dl * dk))

    pm = pv = pc = None
    if n is not None:
        pm = b1 * n + c1
        pv = np.diag(b11) * n + np.diag(c11)
        pc = b11 * n + c11
    return CumulantReport(alpha, t, b1, c1, b11, c11, sigma, pm, pv, pc)
