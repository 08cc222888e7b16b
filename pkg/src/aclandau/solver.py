"""Lowest eigenpairs of a sparse Hermitian operator.

Three paths:

* ``dense``     - LAPACK on the full matrix; the reference for small N.
* ``lanczos``   - single-vector Lanczos, full reorthogonalization, seeded start
                  vector, fresh seeded vector on breakdown.
* ``chebyshev`` - block subspace iteration with a Chebyshev filter that damps
                  everything above the current Ritz window. Block methods keep
                  whole degenerate Landau clusters, which a single Krylov
                  vector cannot resolve.

``auto`` uses ``dense`` up to DENSE_MAX_N and ``chebyshev`` above.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .discrete import DiscreteOperator
from .errors import ConvergenceFailure

log = logging.getLogger(__name__)

DENSE_MAX_N = 4096
DEFAULT_TOL = 1e-8
BUFFER = 8
METHODS = ("auto", "dense", "lanczos", "chebyshev")


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray
    residuals: np.ndarray
    eigenvectors: Optional[np.ndarray] = None
    method: str = ""
    iterations: int = 0
    tol: float = DEFAULT_TOL
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def converged(self) -> bool:
        return bool(np.all(self.residuals <= self.tol))

    @property
    def has_vectors(self) -> bool:
        return self.eigenvectors is not None

    def metadata(self) -> dict:
        return {"method": self.method, "iterations": self.iterations, "tol": self.tol,
                "k": len(self), **self.meta}


def _as_matrix(op):
    if isinstance(op, DiscreteOperator):
        return op.matrix
    return op


def _residuals(A, vals, vecs):
    R = A @ vecs - vecs * vals
    return np.linalg.norm(R, axis=0)


def _finish(A, vals, vecs, k, method, iterations, tol, want_vectors, meta=None):
    order = np.argsort(vals, kind="stable")[:k]
    vals = np.asarray(vals)[order].real.copy()
    vecs = vecs[:, order]
    res = _residuals(A, vals, vecs)
    return Spectrum(eigenvalues=vals, residuals=res, eigenvectors=vecs if want_vectors else None,
                    method=method, iterations=iterations, tol=tol, meta=meta or {})


def _dense(A, k, tol, want_vectors):
    M = A.toarray() if sp.issparse(A) else np.asarray(A)
    vals, vecs = sla.eigh(M, subset_by_index=[0, k - 1], driver="evr")
    return _finish(A, vals, vecs, k, "dense", 1, tol, want_vectors)


def _random_vector(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def _orthogonalize(V, m, w):
    # classical Gram-Schmidt twice is enough for full reorthogonalization
    for _ in range(2):
        w = w - V[:, :m] @ (V[:, :m].conj().T @ w)
    return w


def _lanczos(A, k, tol, want_vectors, seed, max_iter, check_every=10):
    n = A.shape[0]
    max_iter = min(n, max_iter if max_iter is not None else 50 * k)
    max_iter = max(max_iter, min(n, k + 1))
    rng = np.random.default_rng(seed)
    V = np.zeros((n, max_iter), dtype=complex)
    alpha = np.zeros(max_iter)
    beta = np.zeros(max_iter)
    V[:, 0] = _random_vector(rng, n)
    restarts = 0
    m = 0
    for j in range(max_iter):
        w = A @ V[:, j]
        alpha[j] = np.vdot(V[:, j], w).real
        w = _orthogonalize(V, j + 1, w)
        b = np.linalg.norm(w)
        m = j + 1
        if m >= k and (m % check_every == 0 or m == max_iter or b < 1e-10):
            T = np.diag(alpha[:m]) + np.diag(beta[: m - 1], 1) + np.diag(beta[: m - 1], -1)
            theta, S = np.linalg.eigh(T)
            # breakdown couples nothing to the next block, so the estimate is b*|s_last|
            est = np.abs(b * S[-1, :k])
            if np.all(est <= tol) and b >= 1e-10:
                break
        if m == max_iter:
            break
        if b < 1e-10:
            # invariant subspace found; continue from a fresh direction
            restarts += 1
            w = _orthogonalize(V, m, _random_vector(rng, n))
            b_new = np.linalg.norm(w)
            if b_new < 1e-10:
                break
            V[:, m] = w / b_new
            beta[j] = 0.0
        else:
            V[:, m] = w / b
            beta[j] = b
    T = np.diag(alpha[:m]) + np.diag(beta[: m - 1], 1) + np.diag(beta[: m - 1], -1)
    theta, S = np.linalg.eigh(T)
    vecs = V[:, :m] @ S[:, :k]
    spec = _finish(A, theta[:k], vecs, k, "lanczos", m, tol, True,
                   meta={"restarts": restarts, "krylov_dim": m})
    if not spec.converged:
        raise ConvergenceFailure(
            f"Lanczos did not converge in {m} iterations (max residual {spec.residuals.max():.2e})",
            eigenvalues=spec.eigenvalues, residuals=spec.residuals, iterations=m)
    if not want_vectors:
        spec = Spectrum(spec.eigenvalues, spec.residuals, None, spec.method, spec.iterations, tol, spec.meta)
    return spec


def spectral_upper_bound(A) -> float:
    """Gershgorin bound on the largest eigenvalue."""
    return float(np.max(np.asarray(abs(A).sum(axis=1)).ravel()))


def _chebyshev_filter(A, X, degree, lower, upper):
    """Apply T_degree of the map [lower, upper] -> [-1, 1] to the block X."""
    e = (upper - lower) / 2
    c = (upper + lower) / 2
    Y = (A @ X - c * X) / e
    Xp = X
    for _ in range(2, degree + 1):
        Yn = 2 * (A @ Y - c * Y) / e - Xp
        Xp, Y = Y, Yn
    return Y


def _rayleigh_ritz(A, X):
    X, _ = np.linalg.qr(X)
    AX = A @ X
    T = X.conj().T @ AX
    vals, U = np.linalg.eigh(0.5 * (T + T.conj().T))
    return vals, X @ U, AX @ U


def _chebyshev(A, k, tol, want_vectors, seed, max_iter, buffer, degree):
    n = A.shape[0]
    m = min(n, k + buffer)
    max_iter = max_iter if max_iter is not None else 200
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    upper = spectral_upper_bound(A)
    vals, X, AX = _rayleigh_ritz(A, X)
    res = np.linalg.norm(AX[:, :k] - X[:, :k] * vals[:k], axis=0)
    it = 0
    while it < max_iter and res.max() > tol:
        it += 1
        lower = vals[-1]
        if lower >= upper:
            upper = 2 * lower + 1
        X = _chebyshev_filter(A, X, degree, lower, upper)
        vals, X, AX = _rayleigh_ritz(A, X)
        res = np.linalg.norm(AX[:, :k] - X[:, :k] * vals[:k], axis=0)
        log.debug("chebyshev it=%d top=%.6f max_res=%.2e", it, vals[k - 1], res.max())
    spec = _finish(A, vals[:k], X[:, :k], k, "chebyshev", it, tol, True,
                   meta={"block": m, "degree": degree, "upper_bound": upper})
    if not spec.converged:
        raise ConvergenceFailure(
            f"filtered subspace iteration did not converge in {it} sweeps "
            f"(max residual {spec.residuals.max():.2e})",
            eigenvalues=spec.eigenvalues, residuals=spec.residuals, iterations=it)
    if not want_vectors:
        spec = Spectrum(spec.eigenvalues, spec.residuals, None, spec.method, spec.iterations, tol, spec.meta)
    return spec


def solve_lowest(op, k: int, tol: float = DEFAULT_TOL, method: str = "auto", *,
                 want_vectors: bool = True, seed: int = 0, max_iter: Optional[int] = None,
                 buffer: Optional[int] = None, degree: int = 40) -> Spectrum:
    """k lowest eigenpairs of a Hermitian operator, residuals ``||Hv - lv|| <= tol``.

    Iterative paths compute ``k + buffer`` pairs and drop the buffer, so a
    degenerate cluster straddling index k is not cut in half. The buffer
    defaults to max(8, k/4).
    """
    A = _as_matrix(op)
    n = A.shape[0]
    if buffer is None:
        # a wider block pushes the filter cut well above the wanted cluster
        buffer = max(BUFFER, math.ceil(k / 4))
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if method == "auto":
        method = "dense" if n <= DENSE_MAX_N else "chebyshev"
    t0 = time.perf_counter()
    if method == "dense":
        spec = _dense(A, k, tol, want_vectors)
    elif method == "lanczos":
        kk = min(n, k + buffer)
        spec = _lanczos(A, kk, tol, want_vectors, seed, max_iter if max_iter is not None else 50 * kk)
        spec = _truncate(spec, k)
    else:
        spec = _chebyshev(A, k, tol, want_vectors, seed, max_iter, buffer, degree)
    spec.meta["seconds"] = time.perf_counter() - t0
    return spec


def _truncate(spec: Spectrum, k: int) -> Spectrum:
    vecs = None if spec.eigenvectors is None else spec.eigenvectors[:, :k]
    return Spectrum(spec.eigenvalues[:k], spec.residuals[:k], vecs, spec.method,
                    spec.iterations, spec.tol, dict(spec.meta))
