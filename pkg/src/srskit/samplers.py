"""Column-sampling methods.

The spatial samplers pick, for each random direction on the unit
sphere, the unit-norm data column with the largest absolute inner
product along that direction.  Baselines cover uniform index sampling,
norm-proportional sampling, leverage-score sampling, and adaptive
residual (volume) sampling.

All samplers are pure given an explicit ``numpy.random.Generator``.
Callers running parallel trials should derive one generator per trial
as ``default_rng(master_seed + trial_index)``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from ._kernels import pick_distinct_argmax
from .errors import (
    NotNormalizedError,
    RankDeficientKError,
    ShapeError,
    TooManySamplesError,
    ZeroMatrixError,
)
from .matrix import SketchResult, as_matrix, numerical_rank

METHODS = ("srs", "srs_repl", "ris", "ris_repl", "norm", "leverage", "volume")

NORM_TOL = 1e-6

# rows of Phi are processed in blocks of this size to bound the memory
# of Q = Phi @ X during large with-replacement draws
_CHUNK_ROWS = 2048


@dataclass(frozen=True)
class SamplerSpec:
    """Which sampler to run and with what parameters."""

    method: str
    n: int
    seed: int | None = None
    leverage_k: int | None = None
    norm_squared: bool = True

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(
                f"unknown method {self.method!r}, expected one of {METHODS}"
            )
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.seed is not None and self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


def sample_gaussian_directions(n: int, N1: int, rng: np.random.Generator) -> np.ndarray:
    """n x N1 matrix of i.i.d. standard normal entries.

    Each row, once normalized, is a uniformly distributed point on the
    unit sphere in R^N1.
    """
    if n < 1 or N1 < 1:
        raise ValueError("n and N1 must be >= 1")
    return rng.standard_normal((n, N1))


def _check_unit_columns(X: np.ndarray):
    norms = np.sqrt(np.einsum("ij,ij->j", X, X))
    bad = np.flatnonzero(np.abs(norms - 1.0) > NORM_TOL)
    if bad.size:
        j = int(bad[0])
        raise NotNormalizedError(
            f"column {j} has norm {norms[j]:.6g}; call normalize_columns first"
        )


def srs_select_indices(
    X: np.ndarray, phi: np.ndarray, with_replacement: bool = False
) -> np.ndarray:
    """Deterministic spatial selection given an explicit direction matrix.

    Row i of ``phi`` selects the column maximizing |phi_i . x_j|; ties go
    to the lowest column index.  Without replacement, columns picked by
    earlier rows are excluded before taking the argmax.
    """
    X = as_matrix(X)
    phi = as_matrix(phi)
    if phi.shape[1] != X.shape[0]:
        raise ShapeError(
            f"phi has {phi.shape[1]} columns, data has {X.shape[0]} rows"
        )
    _check_unit_columns(X)
    n = phi.shape[0]
    if with_replacement:
        out = np.empty(n, dtype=np.int64)
        for start in range(0, n, _CHUNK_ROWS):
            block = phi[start : start + _CHUNK_ROWS]
            out[start : start + block.shape[0]] = np.argmax(
                np.abs(block @ X), axis=1
            )
        return out
    if n > X.shape[1]:
        raise TooManySamplesError(
            f"requested {n} distinct columns from {X.shape[1]}"
        )
    return pick_distinct_argmax(np.abs(phi @ X))


def _sketch(M, idx, method, with_replacement):
    return SketchResult(
        indices=idx,
        columns=M[:, idx],
        method=method,
        with_replacement=with_replacement,
    )


def srs_without_replacement(
    X: np.ndarray, n: int, rng: np.random.Generator
) -> SketchResult:
    """Spatial sampling of n distinct columns of unit-norm ``X``."""
    X = as_matrix(X)
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > X.shape[1]:
        raise TooManySamplesError(
            f"requested {n} distinct columns from {X.shape[1]}"
        )
    phi = sample_gaussian_directions(n, X.shape[0], rng)
    idx = srs_select_indices(X, phi, with_replacement=False)
    return _sketch(X, idx, "srs", False)


def srs_with_replacement(
    X: np.ndarray, n: int, rng: np.random.Generator
) -> SketchResult:
    """Spatial sampling of n columns, one independent draw per direction."""
    X = as_matrix(X)
    if n < 1:
        raise ValueError("n must be >= 1")
    phi = sample_gaussian_directions(n, X.shape[0], rng)
    idx = srs_select_indices(X, phi, with_replacement=True)
    return _sketch(X, idx, "srs_repl", True)


def ris(
    D: np.ndarray, n: int, with_replacement: bool, rng: np.random.Generator
) -> SketchResult:
    """Uniform sampling over the column index set."""
    D = as_matrix(D)
    n2 = D.shape[1]
    if n < 1:
        raise ValueError("n must be >= 1")
    if with_replacement:
        idx = rng.integers(0, n2, size=n)
        return _sketch(D, idx, "ris_repl", True)
    if n > n2:
        raise TooManySamplesError(f"requested {n} distinct columns from {n2}")
    idx = rng.permutation(n2)[:n]
    return _sketch(D, idx, "ris", False)


def norm_sampling(
    D: np.ndarray,
    n: int,
    rng: np.random.Generator,
    squared: bool = True,
) -> SketchResult:
    """i.i.d. draws proportional to column norms.

    With ``squared`` (the usual convention) column j is drawn with
    probability ||d_j||^2 / ||D||_F^2; otherwise plain norms are used.
    """
    D = as_matrix(D)
    if n < 1:
        raise ValueError("n must be >= 1")
    w = np.einsum("ij,ij->j", D, D)
    if not squared:
        w = np.sqrt(w)
    total = w.sum()
    if total == 0.0:
        raise ZeroMatrixError("all columns have zero norm")
    idx = rng.choice(D.shape[1], size=n, p=w / total)
    return _sketch(D, idx, "norm", True)


def leverage_sampling(
    D: np.ndarray,
    n: int,
    rng: np.random.Generator,
    k: int | None = None,
) -> SketchResult:
    """i.i.d. draws from leverage scores of the top-k right singular vectors."""
    D = as_matrix(D)
    if n < 1:
        raise ValueError("n must be >= 1")
    p = leverage_probabilities(D, k)
    idx = rng.choice(D.shape[1], size=n, p=p)
    return _sketch(D, idx, "leverage", True)


def leverage_probabilities(D: np.ndarray, k: int | None = None) -> np.ndarray:
    """Sampling distribution p_j = ||row j of V_k||^2 / k.

    ``k`` defaults to the numerical rank; values above it raise
    RankDeficientKError because trailing singular vectors of a rank
    deficient matrix are numerical noise.
    """
    D = as_matrix(D)
    rank = numerical_rank(D)
    if k is None:
        k = min(rank, D.shape[0])
    if k < 1 or k > rank:
        raise RankDeficientKError(
            f"k={k} outside 1..numerical_rank={rank}"
        )
    _, _, vt = np.linalg.svd(D, full_matrices=False)
    p = np.einsum("ij,ij->j", vt[:k], vt[:k]) / k
    return p / p.sum()


def volume_sampling(
    D: np.ndarray, n: int, rng: np.random.Generator
) -> SketchResult:
    """Adaptive residual sampling, restarted in passes.

    Within a pass, column j is drawn with probability proportional to
    the squared norm of its residual after projecting out the columns
    already sampled in that pass.  When every remaining residual norm
    drops below 1e-10 * ||D||_F the pass is exhausted: sampled columns
    stay removed and a fresh pass starts on the remaining ones, until n
    total columns are collected.
    """
    D = as_matrix(D)
    N1, n2 = D.shape
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > n2:
        raise TooManySamplesError(f"requested {n} distinct columns from {n2}")
    tol_sq = (1e-10 * np.linalg.norm(D)) ** 2
    uniforms = rng.random(n)
    active = np.ones(n2, dtype=bool)
    chosen = np.empty(n, dtype=np.int64)
    t = 0
    while t < n:
        R = D.copy()
        basis = np.empty((N1, 0))
        fresh = True
        while t < n:
            res_sq = np.einsum("ij,ij->j", R, R)
            res_sq[~active] = 0.0
            if res_sq.max(initial=0.0) <= tol_sq:
                if not fresh:
                    break  # pass exhausted, restart on remaining columns
                # remaining columns are numerically zero: fall back to a
                # uniform draw so the requested count is still reached
                act = np.flatnonzero(active)
                j = int(act[min(int(uniforms[t] * act.size), act.size - 1)])
            else:
                pos = np.flatnonzero(res_sq > 0.0)
                cum = np.cumsum(res_sq[pos])
                slot = np.searchsorted(cum, uniforms[t] * cum[-1], side="right")
                j = int(pos[min(slot, pos.size - 1)])
                b = R[:, j].copy()
                if basis.shape[1]:
                    b -= basis @ (basis.T @ b)
                b /= np.linalg.norm(b)
                basis = np.column_stack([basis, b])
                R -= np.outer(b, b @ R)
            chosen[t] = j
            active[j] = False
            fresh = False
            t += 1
        # loop restarts with a new pass
    return _sketch(D, chosen, "volume", False)


def sample_columns(
    M: np.ndarray, spec: SamplerSpec, rng: np.random.Generator | None = None
) -> SketchResult:
    """Dispatch on ``spec.method``.

    ``M`` must already be column-normalized for the spatial methods;
    normalization is deliberately not applied here.  When ``rng`` is
    omitted it is derived from ``spec.seed``.
    """
    if rng is None:
        if spec.seed is None:
            raise ValueError("either rng or spec.seed is required")
        rng = np.random.default_rng(spec.seed)
    if spec.method == "srs":
        result = srs_without_replacement(M, spec.n, rng)
    elif spec.method == "srs_repl":
        result = srs_with_replacement(M, spec.n, rng)
    elif spec.method == "ris":
        result = ris(M, spec.n, False, rng)
    elif spec.method == "ris_repl":
        result = ris(M, spec.n, True, rng)
    elif spec.method == "norm":
        result = norm_sampling(M, spec.n, rng, squared=spec.norm_squared)
    elif spec.method == "leverage":
        result = leverage_sampling(M, spec.n, rng, k=spec.leverage_k)
    else:
        result = volume_sampling(M, spec.n, rng)
    if spec.seed is not None:
        result = dataclasses.replace(result, seed=spec.seed)
    return result
