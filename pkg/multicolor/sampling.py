"""Random multigraph models, exact binomial tails and theory-side predictions.

Every sampler draws from ``numpy.random.Generator(numpy.random.Philox(seed))``:
Philox-4x64 is counter based, so a seed pins the whole stream on every
platform numpy supports.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

import numpy as np
from scipy.special import gammaln

from .core import Multigraph, build
from .exceptions import InvalidGraphError

logger = logging.getLogger(__name__)

IID_PAIRS = "iid-pairs"
POISSON = "poisson"
MODELS = (IID_PAIRS, POISSON)
SUB_THRESHOLD = "sub-threshold"
SUPER_THRESHOLD = "super-threshold"

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SampleConfig:
    n: int
    m: int
    seed: int
    model: str = IID_PAIRS

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise InvalidGraphError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.n < 0 or self.m < 0:
            raise InvalidGraphError("n and m must be non-negative")
        if self.n < 2 and self.m > 0:
            raise InvalidGraphError(f"cannot place {self.m} edges on {self.n} vertices")


@dataclass(frozen=True)
class Prediction:
    n: int
    m: int
    epsilon: float
    d_plus: float
    rho_full: Fraction
    threshold: float
    regime: str
    d0: int
    d0_95: int
    mu_bound: float

    def to_text(self) -> str:
        """``key=value`` lines in field order."""

        return "".join(f"{key}={value}\n" for key, value in asdict(self).items())


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed) & _SEED_MASK))


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def decode_pairs(index: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Map indices in [0, C(n,2)) to pairs u < v in colex order (0,1), (0,2), (1,2), (0,3), ...

    The order does not depend on n, so v = ⌊(1 + √(1 + 8i)) / 2⌋ and
    u = i - v(v-1)/2, with an integer correction for rounding.
    """

    idx = np.asarray(index, dtype=np.int64)
    v = np.floor((1.0 + np.sqrt(1.0 + 8.0 * idx.astype(np.float64))) / 2.0).astype(np.int64)
    v -= (v * (v - 1) // 2 > idx).astype(np.int64)
    v += ((v + 1) * v // 2 <= idx).astype(np.int64)
    u = idx - v * (v - 1) // 2
    return u, v


def _from_counts(n: int, counts: np.ndarray) -> Multigraph:
    nonzero = np.flatnonzero(counts)
    u, v = decode_pairs(nonzero)
    return build(n, zip(u.tolist(), v.tolist(), counts[nonzero].tolist()))


def sample_mnm(cfg: SampleConfig) -> Multigraph:
    """M(n, m): m pairs drawn uniformly and independently with repetition."""

    if cfg.model != IID_PAIRS:
        raise InvalidGraphError(f"sample_mnm draws the {IID_PAIRS} model, not {cfg.model}")
    if cfg.m == 0:
        return Multigraph.empty(cfg.n)
    total = pair_count(cfg.n)
    draws = make_rng(cfg.seed).integers(0, total, size=cfg.m, dtype=np.int64)
    return _from_counts(cfg.n, np.bincount(draws, minlength=total))


def sample_poisson(n: int, rate: float, seed: int) -> Multigraph:
    """Independent Poisson(rate) multiplicity on every pair."""

    if rate < 0 or math.isnan(rate):
        raise InvalidGraphError(f"Poisson rate must be non-negative, got {rate}")
    if n < 2 or rate == 0:
        return Multigraph.empty(max(n, 0))
    counts = make_rng(seed).poisson(rate, size=pair_count(n)).astype(np.int64)
    return _from_counts(n, counts)


def sample_gnp(n: int, p: float, seed: int) -> Multigraph:
    """Simple G(n, p)."""

    if not 0.0 <= p <= 1.0:
        raise InvalidGraphError(f"edge probability must lie in [0, 1], got {p}")
    if n < 2:
        return Multigraph.empty(max(n, 0))
    counts = (make_rng(seed).random(pair_count(n)) < p).astype(np.int64)
    return _from_counts(n, counts)


def sample(cfg: SampleConfig) -> Multigraph:
    """Draw from the configured model; the Poisson rate is m / C(n, 2)."""

    if cfg.model == POISSON:
        rate = cfg.m / pair_count(cfg.n) if cfg.n >= 2 else 0.0
        return sample_poisson(cfg.n, rate, cfg.seed)
    return sample_mnm(cfg)


def binomial_tail(m: int, p: float, d: int) -> float:
    """Pr[Bin(m, p) >= d], summed in log space with compensated summation."""

    if m < 0:
        raise ValueError(f"number of trials must be non-negative, got {m}")
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    if d < 0:
        raise ValueError(f"threshold must be non-negative, got {d}")
    if d == 0:
        return 1.0
    if d > m or p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0

    upper = d > m * p
    j = np.arange(d, m + 1) if upper else np.arange(0, d)
    log_pmf = (
        gammaln(m + 1)
        - gammaln(j + 1)
        - gammaln(m - j + 1)
        + j * math.log(p)
        + (m - j) * math.log1p(-p)
    )
    peak = float(log_pmf.max())
    mass = math.exp(peak) * math.fsum(np.exp(log_pmf - peak).tolist())
    tail = mass if upper else 1.0 - mass
    return min(1.0, max(0.0, tail))


def degree_quantile_d0(n: int, m: int, exponent: float) -> int:
    """Largest d with Pr[Bin(m, 2/n) >= d] >= n^(-exponent)."""

    if exponent <= 0:
        raise ValueError(f"exponent must be positive, got {exponent}")
    if m == 0 or n < 2:
        return 0
    p = min(1.0, 2.0 / n)
    target = n ** (-exponent)
    lo, hi = 0, m
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if binomial_tail(m, p, mid) >= target:
            lo = mid
        else:
            hi = mid - 1
    return lo


def d_plus(n: int, m: int, epsilon: float) -> float:
    """2m/n + (1+ε)√((4m/n)(1-2/n) ln n)."""

    if n < 2 or m == 0:
        return 0.0
    return 2 * m / n + (1 + epsilon) * math.sqrt((4 * m / n) * (1 - 2 / n) * math.log(n))


def regime_threshold(n: int) -> float:
    return n ** 3 * math.log(n) if n >= 2 else 0.0


def multiplicity_window(n: int, m: int) -> Tuple[float, float]:
    """λ ± 4√(λ ln n) with λ = m / C(n, 2)."""

    lam = m / pair_count(n)
    spread = 4 * math.sqrt(lam * math.log(n))
    return lam - spread, lam + spread


def max_multiplicity_bound(n: int, m: int) -> float:
    """max{30 ln² n, λ + 4√(λ ln n)}."""

    return max(30 * math.log(n) ** 2, multiplicity_window(n, m)[1])


def fraction_in_window(graph: Multigraph, m: int) -> float:
    lo, hi = multiplicity_window(graph.n, m)
    total = pair_count(graph.n)
    inside = sum(1 for u, v, k in graph.pairs if lo <= k <= hi)
    if lo <= 0:
        inside += total - len(graph.pairs)
    return inside / total


def predict(n: int, m: int, epsilon: float) -> Prediction:
    """Degree envelope, full-set density, regime and degree quantiles for M(n, m)."""

    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if n < 2:
        raise InvalidGraphError("predictions need at least two vertices")
    threshold = regime_threshold(n)
    return Prediction(
        n=n,
        m=m,
        epsilon=epsilon,
        d_plus=d_plus(n, m, epsilon),
        rho_full=Fraction(m, n // 2),
        threshold=threshold,
        regime=SUPER_THRESHOLD if m >= threshold else SUB_THRESHOLD,
        d0=degree_quantile_d0(n, m, 0.9),
        d0_95=degree_quantile_d0(n, m, 0.95),
        mu_bound=max_multiplicity_bound(n, m),
    )


def parse_prediction(text: str) -> Dict[str, str]:
    pairs = (line.split("=", 1) for line in text.splitlines() if "=" in line)
    return {key.strip(): value.strip() for key, value in pairs}


def quantile_set(graph: Multigraph, d0: int) -> Tuple[int, ...]:
    """L0 = {v : d(v) >= d0}."""

    return tuple(v for v, d in enumerate(graph.degrees) if d >= d0)


def is_independent(graph: Multigraph, vertices: Iterable[int]) -> bool:
    members = set(vertices)
    return not any(u in members and v in members for u, v, _ in graph.pairs)
