"""Turning matrices into node embeddings.

The core primitive is a truncated symmetric factorization that keeps the d
eigenpairs of largest magnitude and scales eigenvectors by the square roots
of the |eigenvalues|. On top of it sit the four embedding methods: the
ramp-log transformed limit matrix, the binarized Laplacian pseudoinverse,
the raw adjacency matrix, and the raw limit matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO

import numpy as np

from .graph import Graph, validate_walkable
from . import pmi as pmi_mod
from .spectral import (
    SpectralCache,
    _fix_signs,
    ensure_symmetric,
    spectral_cache,
    unnormalized_laplacian_pinv,
)

METHOD_INFINITEWALK = "infinitewalk"
METHOD_BINARIZED_LPINV = "binarized_lpinv"
METHOD_ADJACENCY = "adjacency"
METHOD_LIMIT_RAW = "limit_raw"

_METHODS = (
    METHOD_INFINITEWALK,
    METHOD_BINARIZED_LPINV,
    METHOD_ADJACENCY,
    METHOD_LIMIT_RAW,
)


@dataclass(frozen=True)
class EmbedConfig:
    """Embedding dimension and method selection.

    T/epsilon/ramp apply to the infinitewalk method, q to binarized_lpinv;
    the others ignore them.
    """

    d: int = 128
    method: str = METHOD_INFINITEWALK
    T: int = 10
    epsilon: float = pmi_mod.DEFAULT_EPSILON
    ramp: str = pmi_mod.RAMP_EPS
    q: float = 0.95

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"unknown embedding method {self.method!r}")
        if self.d < 1:
            raise ValueError("embedding dimension must be >= 1")
        if not (0 < self.q < 1):
            raise ValueError(f"quantile q must lie in (0, 1), got {self.q}")


@dataclass(frozen=True)
class Embedding:
    """n x d node representations plus the signed eigenvalues they came from."""

    vectors: np.ndarray
    config: EmbedConfig
    eigenvalues_used: np.ndarray

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class BinaryMatrix:
    """Thresholded Laplacian pseudoinverse, kept with its threshold."""

    values: np.ndarray  # bool, symmetric
    threshold: float
    quantile: float


def factorize(m: np.ndarray, d: int, config: EmbedConfig | None = None) -> Embedding:
    """Rank-d symmetric factorization scaled by sqrt(|eigenvalue|).

    Keeps the d eigenpairs of largest absolute eigenvalue; magnitude ties
    prefer the more positive eigenvalue, then the lower index. The signed
    eigenvalues are recorded so callers can reconstruct m when d = n.
    """
    m = ensure_symmetric(np.asarray(m, dtype=np.float64), atol=1e-8)
    n = m.shape[0]
    if not (1 <= d <= n):
        raise ValueError(f"need 1 <= d <= {n}, got d = {d}")
    vals, vecs = np.linalg.eigh(m)
    order = sorted(range(n), key=lambda i: (-abs(vals[i]), -vals[i], i))
    keep = order[:d]
    w = vals[keep]
    v = _fix_signs(vecs[:, keep])
    if config is None:
        config = EmbedConfig(d=d, method=METHOD_LIMIT_RAW)
    return Embedding(vectors=v * np.sqrt(np.abs(w)), config=config, eigenvalues_used=w)


def binarize_lpinv(lpinv: np.ndarray, q: float) -> BinaryMatrix:
    """Threshold a Laplacian pseudoinverse at its q-quantile entry.

    The threshold is the nearest-rank quantile over all n^2 entries
    (diagonal included): entry number ceil(q * n^2) of the ascending sort.
    The comparison allows a tiny relative slack so entries that are equal
    in exact arithmetic (split only by eigensolver noise) tie consistently.
    """
    if not (0 < q < 1):
        raise ValueError(f"quantile q must lie in (0, 1), got {q}")
    lpinv = ensure_symmetric(np.asarray(lpinv, dtype=np.float64), atol=1e-8)
    flat = np.sort(lpinv, axis=None)
    rank = int(np.ceil(q * flat.size))  # 1-indexed nearest rank
    c = float(flat[rank - 1])
    tol = 1e-9 * np.abs(lpinv).max(initial=0.0)
    return BinaryMatrix(values=lpinv >= c - tol, threshold=c, quantile=q)


def embed(
    g: Graph,
    cfg: EmbedConfig,
    cache: SpectralCache | None = None,
) -> Embedding:
    """Build the matrix selected by cfg.method and factorize it."""
    validate_walkable(g)
    if cfg.method == METHOD_INFINITEWALK:
        if cache is None:
            cache = spectral_cache(g)
        limit = pmi_mod.pmi_limit(g, cache)
        approx = pmi_mod.pmi_approx(
            limit, pmi_mod.PmiConfig(T=cfg.T, epsilon=cfg.epsilon, ramp=cfg.ramp)
        )
        target = approx.values
    elif cfg.method == METHOD_BINARIZED_LPINV:
        binary = binarize_lpinv(unnormalized_laplacian_pinv(g), cfg.q)
        target = binary.values.astype(np.float64)
    elif cfg.method == METHOD_ADJACENCY:
        target = g.adjacency()
    elif cfg.method == METHOD_LIMIT_RAW:
        if cache is None:
            cache = spectral_cache(g)
        target = pmi_mod.pmi_limit(g, cache).values
    else:  # pragma: no cover - guarded by EmbedConfig
        raise ValueError(cfg.method)
    return factorize(target, cfg.d, config=cfg)


def save_embedding_text(emb: Embedding, g: Graph, sink: IO[str]) -> None:
    """One node per line: "name v1 ... vd" with 17 significant digits."""
    for i in range(emb.n):
        coords = " ".join(format(x, ".17g") for x in emb.vectors[i])
        sink.write(f"{g.name_of(i)} {coords}\n")


def load_embedding_text(source: IO[str]) -> tuple[list[str], np.ndarray]:
    """Inverse of save_embedding_text; returns (names, n x d array)."""
    names: list[str] = []
    rows: list[list[float]] = []
    for line in source:
        stripped = line.strip()
        if not stripped:
            continue
        tokens = stripped.split()
        names.append(tokens[0])
        rows.append([float(t) for t in tokens[1:]])
    return names, np.array(rows, dtype=np.float64)


def save_embedding_binary(emb: Embedding, path: str) -> None:
    """Row-major float64 dump plus a '<path>.meta' JSON sidecar."""
    with open(path, "wb") as f:
        f.write(np.ascontiguousarray(emb.vectors, dtype=np.float64).tobytes())
    meta = {"n": emb.n, "d": emb.d, "method": emb.config.method}
    with open(path + ".meta", "w") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
        f.write("\n")
