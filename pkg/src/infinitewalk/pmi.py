"""PMI matrices of windowed random-walk co-occurrence.

Four routes to the same family of matrices:

  * pmi_exact        — power sums of the transition matrix (the reference)
  * pmi_closed_form  — spectral closed form, algebraically equal to exact
  * pmi_limit        — the infinite-window limit via the normalized
                       Laplacian pseudoinverse (and a rank-3 alternative
                       via the unnormalized one)
  * pmi_approx       — finite-window approximation log(R(1 + M_inf/T))
  * empirical_pmi    — Monte-Carlo estimate from sampled walks

All entrywise logs are guarded by a ramp: R_eps(x) = max(eps, x) by default,
or R_1(x) = max(1, x) for comparison runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from .graph import Graph, validate_walkable
from .spectral import SpectralCache, ensure_symmetric
from .spectral import normalized_laplacian_pinv, unnormalized_laplacian_pinv

DEFAULT_EPSILON = math.exp(-36.0)

RAMP_EPS = "eps"
RAMP_ONE = "one"
_RAMP_LABELS = {RAMP_EPS: "Reps", RAMP_ONE: "R1"}


@dataclass(frozen=True)
class PmiConfig:
    """Window size T, negative-sampling ratio b, and ramp settings."""

    T: int
    b: float = 1.0
    epsilon: float = DEFAULT_EPSILON
    ramp: str = RAMP_EPS

    def __post_init__(self):
        if self.T < 1:
            raise ValueError(f"window size T must be >= 1, got {self.T}")
        if self.b <= 0:
            raise ValueError(f"negative-sampling ratio b must be > 0, got {self.b}")
        if not (0 < self.epsilon < 1):
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.ramp not in _RAMP_LABELS:
            raise ValueError(f"unknown ramp {self.ramp!r}")

    @property
    def ramp_floor(self) -> float:
        return self.epsilon if self.ramp == RAMP_EPS else 1.0


@dataclass(frozen=True)
class PmiMatrix:
    """A dense symmetric PMI matrix plus the mask of ramp-floored entries."""

    values: np.ndarray
    config: PmiConfig
    kind: str  # exact_power_sum | closed_form | approx_from_limit | empirical
    ramped_mask: np.ndarray

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class LimitMatrix:
    """The infinite-window limit matrix M_inf for a graph."""

    values: np.ndarray
    graph: Graph

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class WalkConfig:
    """Sampling schedule for the empirical estimator."""

    gamma: int  # walks per start node
    L: int  # nodes per walk
    T: int  # co-occurrence window
    seed: int = 0

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError("gamma must be >= 1")
        if self.L < self.T + 1:
            raise ValueError(f"walk length {self.L} too short for window {self.T}")


def _ramp_log(arg: np.ndarray, cfg: PmiConfig) -> tuple[np.ndarray, np.ndarray]:
    """Entrywise log(R(arg)) - log(b); returns (values, ramped mask)."""
    floor = cfg.ramp_floor
    mask = arg < floor
    floored = math.log(floor) - math.log(cfg.b)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(mask, floored, np.log(np.maximum(arg, floor)) - math.log(cfg.b))
    return out, mask


def _clamp_tiny(arg: np.ndarray, rel: float = 1e-12) -> np.ndarray:
    """Zero out entries that are rounding noise around an exact zero.

    Unreachable node pairs have pre-log argument exactly 0; the spectral
    route reconstructs them as ~1e-14 noise, which straddles the default
    ramp floor e^-36. Clamping keeps the two routes' ramp masks identical.
    """
    tol = rel * np.abs(arg).max(initial=0.0)
    out = arg.copy()
    out[np.abs(out) < tol] = 0.0
    return out


def _inv_sqrt_stationary(g: Graph) -> np.ndarray:
    """Diagonal of the inverse square root of the stationary distribution."""
    return np.sqrt(g.volume / g.degree)


def pmi_exact(g: Graph, cfg: PmiConfig) -> PmiMatrix:
    """Reference finite-window PMI by explicit power sums.

    The power sum runs in the symmetric domain (powers of D^{-1/2}AD^{-1/2})
    so the pre-log argument is exactly symmetric.
    """
    validate_walkable(g)
    inv_sqrt_d = 1.0 / np.sqrt(g.degree)
    p_sym = g.adjacency() * np.outer(inv_sqrt_d, inv_sqrt_d)
    power = np.eye(g.n)
    acc = np.zeros((g.n, g.n))
    for _ in range(cfg.T):
        power = power @ p_sym
        acc += power
    acc /= cfg.T
    arg = g.volume * (acc * np.outer(inv_sqrt_d, inv_sqrt_d))
    arg = _clamp_tiny(ensure_symmetric(arg, atol=1e-7))
    values, mask = _ramp_log(arg, cfg)
    return PmiMatrix(values=values, config=cfg, kind="exact_power_sum", ramped_mask=mask)


def pmi_closed_form(g: Graph, s: SpectralCache, cfg: PmiConfig) -> PmiMatrix:
    """Finite-window PMI from the spectrum of the transition matrix.

    Only b = 1 is supported; the geometric-series form folds the negative
    sampling term away.
    """
    if cfg.b != 1.0:
        raise ValueError("closed form requires negative-sampling ratio b = 1")
    validate_walkable(g)
    lam = s.eigenvalues[1:]
    w = s.eigenvectors[:, 1:]
    coeff = lam * (1.0 - lam**cfg.T) / (1.0 - lam)
    core = (w * coeff) @ w.T
    scale = _inv_sqrt_stationary(g)
    arg = 1.0 + (core * np.outer(scale, scale)) / cfg.T
    arg = _clamp_tiny(ensure_symmetric(arg, atol=1e-7))
    values, mask = _ramp_log(arg, cfg)
    return PmiMatrix(values=values, config=cfg, kind="closed_form", ramped_mask=mask)


def pmi_limit(g: Graph, s: SpectralCache) -> LimitMatrix:
    """Infinite-window limit via the normalized Laplacian pseudoinverse."""
    validate_walkable(g)
    lpinv = normalized_laplacian_pinv(s)
    scale = _inv_sqrt_stationary(g)
    m = 1.0 + (lpinv - np.eye(g.n)) * np.outer(scale, scale)
    return LimitMatrix(values=ensure_symmetric(m, atol=1e-6), graph=g)


def pmi_limit_rank3(g: Graph) -> LimitMatrix:
    """Infinite-window limit via the unnormalized Laplacian pseudoinverse.

    Uses the identity expressing the limit as a rank-3-plus-diagonal
    adjustment of that pseudoinverse; must agree with pmi_limit.
    """
    validate_walkable(g)
    lpinv = unnormalized_laplacian_pinv(g)
    stat = g.degree / g.volume
    proj = np.eye(g.n) - np.outer(np.ones(g.n), stat)
    centered = proj @ lpinv @ proj.T
    m = 1.0 + g.volume * (centered - np.diag(1.0 / g.degree))
    return LimitMatrix(values=ensure_symmetric(m, atol=1e-6), graph=g)


def pmi_approx(m: LimitMatrix, cfg: PmiConfig) -> PmiMatrix:
    """Finite-window approximation log(R(1 + M_inf / T))."""
    arg = 1.0 + m.values / cfg.T
    values, mask = _ramp_log(arg, cfg)
    return PmiMatrix(values=values, config=cfg, kind="approx_from_limit", ramped_mask=mask)


@dataclass(frozen=True)
class ErrorReport:
    """Approximation quality of one PMI matrix against another."""

    relative_frobenius_error: float
    ramped_disagreement_fraction: float
    T: int
    ramp: str  # "R1" | "Reps"

    def to_json(self) -> str:
        return json.dumps(
            {
                "relative_frobenius_error": self.relative_frobenius_error,
                "ramped_disagreement_fraction": self.ramped_disagreement_fraction,
                "T": self.T,
                "ramp": self.ramp,
            }
        )


def approx_error_report(exact: PmiMatrix, approx: PmiMatrix) -> ErrorReport:
    """Relative Frobenius error and one-sided-ramp fraction.

    Both matrices must come from the same graph with the same window and
    ramp; the disagreement fraction counts entries floored in exactly one of
    the two, over n^2.
    """
    if exact.values.shape != approx.values.shape:
        raise ValueError("matrix dimensions differ")
    if exact.config.T != approx.config.T:
        raise ValueError("window sizes differ")
    if exact.config.ramp != approx.config.ramp:
        raise ValueError("ramp functions differ")
    denom = np.linalg.norm(exact.values)
    err = np.linalg.norm(exact.values - approx.values) / denom if denom > 0 else 0.0
    disagree = np.logical_xor(exact.ramped_mask, approx.ramped_mask)
    frac = float(disagree.sum()) / disagree.size
    return ErrorReport(
        relative_frobenius_error=float(err),
        ramped_disagreement_fraction=frac,
        T=exact.config.T,
        ramp=_RAMP_LABELS[exact.config.ramp],
    )


def _sample_walks(g: Graph, wcfg: WalkConfig) -> np.ndarray:
    """All walks as an array of node ids, shape (n * gamma, L).

    Walk (node, j) consumes only its own RNG substream keyed by
    (seed, node, j), so the result is independent of batching or ordering.
    """
    n = g.n
    num_walks = n * wcfg.gamma
    steps = wcfg.L - 1

    uniforms = np.empty((num_walks, steps))
    row = 0
    for node in range(n):
        for j in range(wcfg.gamma):
            rng = np.random.Generator(
                np.random.Philox(np.random.SeedSequence((wcfg.seed, node, j)))
            )
            uniforms[row] = rng.random(steps)
            row += 1

    adj = g.adjacency()
    cum = np.cumsum(adj / g.degree[:, None], axis=1)
    cum[:, -1] = 1.0  # guard against rounding shortfall

    walks = np.empty((num_walks, wcfg.L), dtype=np.int64)
    walks[:, 0] = np.repeat(np.arange(n), wcfg.gamma)
    for t in range(steps):
        rows = cum[walks[:, t]]
        walks[:, t + 1] = (rows > uniforms[:, t, None]).argmax(axis=1)
    return walks


def empirical_pmi(g: Graph, wcfg: WalkConfig, epsilon: float = DEFAULT_EPSILON) -> PmiMatrix:
    """Monte-Carlo PMI from windowed co-occurrence counts over sampled walks.

    Each offset r in [1, T] contributes both ordered pairs per occurrence,
    so the count matrix (and hence the PMI matrix) is exactly symmetric.
    Never-observed pairs are floored to log(epsilon) with the mask set.
    """
    validate_walkable(g)
    walks = _sample_walks(g, wcfg)
    n = g.n

    counts = np.zeros(n * n, dtype=np.int64)
    for r in range(1, wcfg.T + 1):
        left = walks[:, : wcfg.L - r].ravel()
        right = walks[:, r:].ravel()
        counts += np.bincount(left * n + right, minlength=n * n)
    counts = counts.reshape(n, n)
    counts = counts + counts.T  # both orderings of every pair

    total = counts.sum()
    occur = counts.sum(axis=1).astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = counts * float(total) / np.outer(occur, occur)
    arg = np.where(counts > 0, arg, 0.0)

    cfg = PmiConfig(T=wcfg.T, b=1.0, epsilon=epsilon, ramp=RAMP_EPS)
    mask = counts == 0
    with np.errstate(divide="ignore"):
        values = np.where(mask, math.log(epsilon), np.log(np.where(counts > 0, arg, 1.0)))
    values = ensure_symmetric(values, atol=1e-9)
    return PmiMatrix(values=values, config=cfg, kind="empirical", ramped_mask=mask)


def save_pmi(m: PmiMatrix, path: str) -> None:
    """Raw row-major float64 dump plus a '<path>.meta' JSON sidecar."""
    with open(path, "wb") as f:
        f.write(np.ascontiguousarray(m.values, dtype=np.float64).tobytes())
    meta = {
        "n": m.n,
        "T": m.config.T,
        "b": m.config.b,
        "epsilon": m.config.epsilon,
        "ramp": _RAMP_LABELS[m.config.ramp],
        "kind": m.kind,
    }
    with open(path + ".meta", "w") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
        f.write("\n")


def save_pmi_csv(m: PmiMatrix, sink: IO[str]) -> None:
    """Debug CSV dump, refused above 100 nodes."""
    if m.n > 100:
        raise ValueError(f"CSV export limited to n <= 100, got n = {m.n}")
    for row in m.values:
        sink.write(",".join(repr(float(x)) for x in row))
        sink.write("\n")
