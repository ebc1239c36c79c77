"""Monte Carlo generation of the eigenvalue point process by two routes.

``sample_haar_truncation`` draws the upper-left n x n block of an
(n+alpha) x (n+alpha) Haar unitary (integer alpha only) and solves for its
eigenvalues.  ``sample_kostlan_moduli`` uses the rotation-invariant
factorization of the squared moduli into independent Beta(j, alpha) draws,
valid for every alpha > 0 and much cheaper.  Agreement of the two count
laws is the empirical cross-validation of the whole pipeline.

Randomness comes from counter-based Philox streams keyed by
(seed, stream_index), so sample i is reproducible regardless of how a
batch is partitioned across workers.
"""

from __future__ import annotations

import concurrent.futures
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .asymptotics import b1_coeff, b11_coeff
from .errors import ValidationError
from .model import ParameterSet

__all__ = [
    "SamplerSource",
    "SampleCloud",
    "EmpiricalMoments",
    "MomentAccumulator",
    "sample_haar_truncation",
    "sample_kostlan_moduli",
    "counts_from_moduli",
    "empirical_moments",
    "clt_normalized_counts",
]


class SamplerSource(Enum):
    HAAR_TRUNCATION = "HaarTruncation"
    KOSTLAN_MODULI = "KostlanModuli"


_SOURCE_ALIASES = {
    "haar": SamplerSource.HAAR_TRUNCATION,
    "haartruncation": SamplerSource.HAAR_TRUNCATION,
    "kostlan": SamplerSource.KOSTLAN_MODULI,
    "kostlanmoduli": SamplerSource.KOSTLAN_MODULI,
}


def resolve_source(source) -> SamplerSource:
    if isinstance(source, SamplerSource):
        return source
    key = str(source).lower().replace("_", "").replace("-", "")
    if key not in _SOURCE_ALIASES:
        raise ValidationError(f"unknown sampler source: {source!r}")
    return _SOURCE_ALIASES[key]


@dataclass(frozen=True)
class SampleCloud:
    """One draw: sorted moduli, optional eigenvalues, counts per radius."""

    moduli: np.ndarray
    points: np.ndarray | None
    counts: np.ndarray | None
    source: SamplerSource


def _rng(seed: int, stream: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, stream & 0xFFFFFFFFFFFFFFFF],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def counts_from_moduli(moduli: np.ndarray, radii) -> np.ndarray:
    """N(r_l) = #{moduli < r_l}; at r = 1 the count is n by construction."""
    n = moduli.shape[0]
    out = np.empty(len(radii), dtype=np.int64)
    for i, r in enumerate(radii):
        out[i] = n if r >= 1.0 else int(np.searchsorted(moduli, r, side="left"))
    return out


def sample_kostlan_moduli(
    n: int,
    alpha: float,
    seed: int,
    *,
    radii=None,
    stream: int = 0,
) -> SampleCloud:
    """Moduli via the independent-Beta factorization: |z_(j)|^2 ~ Beta(j, alpha).

    Beta draws are formed from two Gamma variates (shapes j and alpha), which
    is exact for every alpha > 0.
    """
    if alpha <= 0.0:
        raise ValidationError("sample_kostlan_moduli: alpha must be positive")
    rng = _rng(seed, stream)
    shapes = np.arange(1, n + 1, dtype=float)
    g1 = rng.gamma(shapes)
    g2 = rng.gamma(alpha, size=n)
    moduli = np.sort(np.sqrt(g1 / (g1 + g2)))
    moduli = np.minimum(moduli, 1.0)
    counts = counts_from_moduli(moduli, radii) if radii is not None else None
    return SampleCloud(moduli, None, counts, SamplerSource.KOSTLAN_MODULI)


def sample_haar_truncation(
    n: int,
    alpha: int,
    seed: int,
    *,
    radii=None,
    stream: int = 0,
) -> SampleCloud:
    """Eigenvalues of the n x n truncation of an (n+alpha) x (n+alpha) Haar unitary.

    The unitary comes from QR of a complex Ginibre matrix with the phase of
    the R diagonal pushed into Q; without that phase fix the factor is not
    Haar distributed.
    """
    if not float(alpha).is_integer() or alpha < 1:
        raise ValidationError(
            "sample_haar_truncation: the matrix model needs integer alpha >= 1"
        )
    size = n + int(alpha)
    rng = _rng(seed, stream)
    z = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))
    eig = np.linalg.eigvals(q[:n, :n])
    order = np.argsort(np.abs(eig))
    points = eig[order]
    moduli = np.minimum(np.abs(points), 1.0)
    counts = counts_from_moduli(moduli, radii) if radii is not None else None
    return SampleCloud(moduli, points, counts, SamplerSource.HAAR_TRUNCATION)


def _draw_counts(params: ParameterSet, seed: int, stream: int,
                 source: SamplerSource) -> np.ndarray:
    if source is SamplerSource.KOSTLAN_MODULI:
        cloud = sample_kostlan_moduli(
            params.n, params.alpha, seed, radii=params.radii.r, stream=stream
        )
    else:
        cloud = sample_haar_truncation(
            params.n, params.alpha, seed, radii=params.radii.r, stream=stream
        )
    return cloud.counts


class MomentAccumulator:
    """Streaming mean/covariance of vectors; partial accumulators merge."""

    def __init__(self, dim: int):
        self.dim = dim
        self.count = 0
        self.mean = np.zeros(dim)
        self._m2 = np.zeros((dim, dim))

    def push(self, x) -> None:
        x = np.asarray(x, dtype=float)
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self._m2 += np.outer(delta, x - self.mean)

    def merge(self, other: "MomentAccumulator") -> None:
        if other.count == 0:
            return
        if self.count == 0:
            self.count = other.count
            self.mean = other.mean.copy()
            self._m2 = other._m2.copy()
            return
        total = self.count + other.count
        delta = other.mean - self.mean
        self._m2 = (
            self._m2 + other._m2
            + np.outer(delta, delta) * self.count * other.count / total
        )
        self.mean = self.mean + delta * other.count / total
        self.count = total

    def cov(self, ddof: int = 1) -> np.ndarray:
        if self.count <= ddof:
            raise ValidationError("MomentAccumulator: not enough samples")
        return self._m2 / (self.count - ddof)

    def var(self, ddof: int = 1) -> np.ndarray:
        return np.diagonal(self.cov(ddof)).copy()


@dataclass(frozen=True)
class EmpiricalMoments:
    mean: np.ndarray
    var: np.ndarray
    cov: np.ndarray
    n_samples: int
    std_error: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "mean": self.mean.tolist(),
            "var": self.var.tolist(),
            "cov": self.cov.tolist(),
            "n_samples": self.n_samples,
            "std_error": self.std_error.tolist(),
        }


def _chunk_ranges(n_samples: int, n_chunks: int):
    n_chunks = max(1, min(n_chunks, n_samples))
    step = math.ceil(n_samples / n_chunks)
    return [(lo, min(lo + step, n_samples)) for lo in range(0, n_samples, step)]


def _moments_chunk(args) -> tuple:
    params, seed, source, lo, hi = args
    acc = MomentAccumulator(params.m)
    for i in range(lo, hi):
        acc.push(_draw_counts(params, seed, i, source))
    return acc.count, acc.mean, acc._m2


def _counts_chunk(args) -> np.ndarray:
    params, seed, source, lo, hi = args
    out = np.empty((hi - lo, params.m), dtype=np.int64)
    for i in range(lo, hi):
        out[i - lo] = _draw_counts(params, seed, i, source)
    return out


def _map_chunks(fn, jobs, threads: int):
    if threads <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, jobs))


def empirical_moments(
    params: ParameterSet,
    n_samples: int,
    seed: int,
    source="kostlan",
    threads: int = 1,
) -> EmpiricalMoments:
    """Streaming moments of the count vector over independent clouds."""
    if n_samples < 2:
        raise ValidationError("empirical_moments: n_samples must be >= 2")
    source = resolve_source(source)
    jobs = [
        (params, seed, source, lo, hi)
        for lo, hi in _chunk_ranges(n_samples, threads if threads > 1 else 1)
    ]
    acc = MomentAccumulator(params.m)
    for count, mean, m2 in _map_chunks(_moments_chunk, jobs, threads):
        part = MomentAccumulator(params.m)
        part.count, part.mean, part._m2 = count, mean, m2
        acc.merge(part)
    cov = acc.cov()
    var = np.diagonal(cov).copy()
    return EmpiricalMoments(
        acc.mean.copy(), var, cov, n_samples, np.sqrt(var / n_samples)
    )


def sample_counts_matrix(
    params: ParameterSet,
    n_samples: int,
    seed: int,
    source="kostlan",
    threads: int = 1,
) -> np.ndarray:
    """(n_samples x m) matrix of count vectors, sample i on stream i."""
    source = resolve_source(source)
    jobs = [
        (params, seed, source, lo, hi)
        for lo, hi in _chunk_ranges(n_samples, threads if threads > 1 else 1)
    ]
    parts = _map_chunks(_counts_chunk, jobs, threads)
    return np.concatenate(parts, axis=0)


def clt_normalized_counts(
    params: ParameterSet,
    n_samples: int,
    seed: int,
    source="kostlan",
    threads: int = 1,
) -> np.ndarray:
    """Per-sample normalized counts (N(r_l) - b1 n) / sqrt(b11 n).

    Requires t_m > 0: at t_m = 0 the count is deterministic and the
    normalization degenerates.
    """
    if params.t[-1] == 0.0:
        raise ValidationError(
            "clt_normalized_counts: t_m = 0 makes N(r_m) = n almost surely; "
            "the normalized count is undefined"
        )
    counts = sample_counts_matrix(params, n_samples, seed, source, threads)
    b1 = np.array([b1_coeff(params.alpha, tl) for tl in params.t])
    b11 = np.array([b11_coeff(params.alpha, tl, tl) for tl in params.t])
    return (counts - b1 * params.n) / np.sqrt(b11 * params.n)
