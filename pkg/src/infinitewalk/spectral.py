"""Dense spectral machinery: symmetrized transition matrix, its
eigendecomposition, and Laplacian pseudoinverses.

Everything here is dense; the target scale is graphs of at most ~10k nodes,
where a full symmetric eigendecomposition is cheap and exact enough to back
every downstream PMI construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np

from .graph import Graph, validate_walkable

SYMMETRY_ATOL = 1e-9


class SpectralError(Exception):
    pass


def ensure_symmetric(m: np.ndarray, atol: float = SYMMETRY_ATOL) -> np.ndarray:
    """Assert near-symmetry and return the exactly symmetrized matrix."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SpectralError(f"expected a square matrix, got shape {m.shape}")
    drift = np.abs(m - m.T).max(initial=0.0)
    if drift > atol:
        raise SpectralError(f"matrix asymmetry {drift:.3e} exceeds {atol:.0e}")
    return (m + m.T) / 2.0


def sym_transition(g: Graph) -> np.ndarray:
    """D^{-1/2} A D^{-1/2}: the symmetrized random-walk transition matrix."""
    validate_walkable(g)
    inv_sqrt_d = 1.0 / np.sqrt(g.degree)
    p_sym = g.adjacency() * np.outer(inv_sqrt_d, inv_sqrt_d)
    return ensure_symmetric(p_sym)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive.

    Ties in magnitude resolve to the lowest row index, making the convention
    deterministic across LAPACK builds.
    """
    idx = np.abs(vectors).argmax(axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


@dataclass(frozen=True)
class SpectralCache:
    """Full eigendecomposition of the symmetrized transition matrix.

    eigenvalues are sorted descending; eigenvectors[:, j] is the unit
    eigenvector for eigenvalues[j] under the deterministic sign convention.
    """

    graph: Graph
    eigenvalues: np.ndarray  # shape (n,), descending
    eigenvectors: np.ndarray  # shape (n, n), orthonormal columns


def eigendecompose(p_sym: np.ndarray, g: Graph) -> SpectralCache:
    """Decompose the symmetrized transition matrix of g.

    The top eigenvalue must be 1 (stationary walk) and all magnitudes at
    most 1; violations indicate the input was not a transition matrix of a
    walkable graph.
    """
    try:
        vals, vecs = np.linalg.eigh(p_sym)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigendecomposition failed: {exc}") from exc
    order = np.argsort(vals, kind="stable")[::-1]
    vals = vals[order]
    vecs = _fix_signs(vecs[:, order])
    if abs(vals[0] - 1.0) > 1e-8:
        raise SpectralError(f"top eigenvalue {vals[0]} != 1")
    if np.abs(vals).max() > 1.0 + 1e-8:
        raise SpectralError("eigenvalue magnitude exceeds 1")
    return SpectralCache(graph=g, eigenvalues=vals, eigenvectors=vecs)


def spectral_cache(g: Graph) -> SpectralCache:
    """Convenience: sym_transition followed by eigendecompose."""
    return eigendecompose(sym_transition(g), g)


def fiedler_value(s: SpectralCache) -> float:
    """Second-largest eigenvalue of the symmetrized transition matrix."""
    if len(s.eigenvalues) < 2:
        raise SpectralError("need at least 2 nodes for a Fiedler value")
    return float(s.eigenvalues[1])


def normalized_laplacian_pinv(s: SpectralCache) -> np.ndarray:
    """Pseudoinverse of I - D^{-1/2} A D^{-1/2} from the cached spectrum.

    Sums (1 - lambda_j)^{-1} w_j w_j^T over j >= 2; the top eigenvector
    spans the null space.
    """
    vals, vecs = s.eigenvalues, s.eigenvectors
    tail = vals[1:]
    if np.any(np.abs(1.0 - tail) < 1e-12):
        raise SpectralError("repeated unit eigenvalue: graph is disconnected")
    w = vecs[:, 1:]
    pinv = (w / (1.0 - tail)) @ w.T
    return ensure_symmetric(pinv, atol=1e-6)


def unnormalized_laplacian_pinv(g: Graph) -> np.ndarray:
    """Moore-Penrose pseudoinverse of the combinatorial Laplacian D - A.

    Eigenvalues below 1e-9 of the largest are treated as zero; for a
    connected graph that null space is exactly span{1}.
    """
    validate_walkable(g)
    lap = np.diag(g.degree) - g.adjacency()
    try:
        vals, vecs = np.linalg.eigh(lap)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigendecomposition failed: {exc}") from exc
    cutoff = 1e-9 * vals.max()
    inv = np.where(vals > cutoff, 1.0 / np.where(vals > cutoff, vals, 1.0), 0.0)
    pinv = (vecs * inv) @ vecs.T
    return ensure_symmetric(pinv, atol=1e-6)


def export_spectrum(s: SpectralCache, sink: IO[str]) -> None:
    """Write eigenvalues as CSV "index,eigenvalue", sorted descending."""
    sink.write("index,eigenvalue\n")
    for i, lam in enumerate(s.eigenvalues):
        sink.write(f"{i},{float(lam)!r}\n")
