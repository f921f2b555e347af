"""Dense linear algebra helpers: a cyclic Jacobi eigensolver and the exact
matrix-exponential oracle built on top of it.

Operators are plain ``numpy`` arrays indexed ``[row, column]`` so that
``A[i, j]`` is the coefficient of ``|i><j|``.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    pass


def is_hermitian(a: np.ndarray, atol: float = 1e-12) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and np.allclose(a, a.conj().T, rtol=0.0, atol=atol)


def is_unitary(u: np.ndarray, atol: float = 1e-10) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max(initial=0.0)) <= atol


@lru_cache(maxsize=None)
def _round_robin(size: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Pairings for one cyclic sweep in tournament (Brent-Luk) order.

    Every unordered pair of indices appears exactly once per sweep, and the
    pairs inside a round are disjoint so their rotations commute.
    """
    m = size + (size % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < size and b < size:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(
    a: np.ndarray,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
    basis: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a real symmetric or complex Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with ``a = V diag(w) V^H``,
    eigenvalues ascending.  Iterates whole sweeps until the off-diagonal
    Frobenius norm falls below ``tol * ||a||_F``; raises
    :class:`ConvergenceError` after ``max_sweeps`` sweeps.

    ``basis`` is an optional unitary guess for the eigenvectors (e.g. from a
    nearby matrix); the rotations then start from ``basis^H a basis``.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if not np.allclose(a, a.conj().T, rtol=0.0, atol=1e-12 * scale):
        raise ValueError("matrix is not symmetric/Hermitian")
    cplx = np.iscomplexobj(a) or (basis is not None and np.iscomplexobj(basis))
    dtype = complex if cplx else float
    a = np.array(0.5 * (a + a.conj().T), dtype=dtype)
    size = a.shape[0]
    threshold = tol * float(np.linalg.norm(a))
    if basis is None:
        v = np.eye(size, dtype=dtype)
    else:
        v = np.array(basis, dtype=dtype)
        a = v.conj().T @ a @ v
        a = 0.5 * (a + a.conj().T)
    rounds = _round_robin(size)

    for _ in range(max_sweeps):
        if _off_norm(a) <= threshold:
            break
        for p, q in rounds:
            if p.size == 0:
                continue
            apq = a[p, q]
            r = np.abs(apq)
            active = r != 0.0
            if not active.any():
                continue
            # phase that makes the pivot real and positive
            ph = np.where(active, apq / np.where(active, r, 1.0), 1.0)
            app, aqq = a[p, p].real, a[q, q].real
            theta = np.where(active, (aqq - app) / (2.0 * np.where(active, r, 1.0)), 0.0)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(theta == 0.0, 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            c = np.where(active, c, 1.0)
            s = np.where(active, s, 0.0)
            sc = s * ph.conj() if cplx else s * ph
            cc = c * ph.conj() if cplx else c * ph

            # A <- J^H A J and V <- V J with J = [[c, s], [-s e^{-ia}, c e^{-ia}]] per pair.
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - sc * aq
            a[:, q] = s * ap + cc * aq
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - np.conj(sc)[:, None] * aq
            a[q, :] = s[:, None] * ap + np.conj(cc)[:, None] * aq
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - sc * vq
            v[:, q] = s * vp + cc * vq
    else:
        if _off_norm(a) > threshold:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigvalsh(h: np.ndarray) -> np.ndarray:
    return jacobi_eigh(h)[0]


def expm_oracle(h: np.ndarray, t: float) -> np.ndarray:
    """Exact ``exp(-i h t)`` for a real symmetric ``h`` via its spectral decomposition."""
    h = np.asarray(h)
    if not is_hermitian(h, atol=1e-10):
        raise ValueError("expm_oracle requires a Hermitian matrix")
    if np.iscomplexobj(h) and np.abs(h.imag).max(initial=0.0) > 1e-10:
        raise ValueError("expm_oracle handles real symmetric matrices only")
    w, v = jacobi_eigh(np.real(h))
    u = (v * np.exp(-1j * w * t)) @ v.T
    if not is_unitary(u, atol=1e-9):
        raise ConvergenceError("oracle exponential failed the unitarity check")
    return u
