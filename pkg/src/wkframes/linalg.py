"""Dense complex linear algebra on small matrices.

All spectral work funnels through one kernel: a batched cyclic Jacobi
eigensolver for Hermitian matrices. The SVD, pseudoinverse, range projectors
and pencil reductions are built on top of it.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; real input is
embedded with zero imaginary part.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    NoConvergence,
    NonFinite,
    NotHermitian,
    UnboundedPencil,
    ZeroPencil,
)

RANK_TOL = 1e-10
HERMITIAN_TOL = 1e-10
MAX_DIM = 64
MAX_SWEEPS = 100
OFF_TOL = 1e-12
_PIVOT_FLOOR = 1e-150


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Coerce ``M`` to a finite 2-D complex array within the dimension cap."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if A.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NonFinite(f"{name} has NaN or infinite entries")
    if max(A.shape, default=0) > MAX_DIM:
        raise DimensionTooLarge(f"{name} has shape {A.shape}; the cap is {MAX_DIM}")
    return A


def adjoint(M: np.ndarray) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(M, -1, -2))


def fro(M: np.ndarray) -> float:
    return float(np.linalg.norm(M))


# --------------------------------------------------------------------------
# Jacobi kernel

@lru_cache(maxsize=None)
def _rounds(d: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # Round-robin ordering: each round is a set of disjoint (p, q) pairs, and
    # the d-1 rounds of one sweep visit every pair exactly once.
    players = list(range(d + (d % 2)))
    N = len(players)
    out = []
    for _ in range(N - 1):
        ps, qs = [], []
        for i in range(N // 2):
            a, b = players[i], players[N - 1 - i]
            if a < d and b < d:
                ps.append(min(a, b))
                qs.append(max(a, b))
        out.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(out)


def _offdiag_norm(A: np.ndarray) -> np.ndarray:
    mask = ~np.eye(A.shape[-1], dtype=bool)
    return np.sqrt(np.sum(np.abs(A[:, mask]) ** 2, axis=1))


def _jacobi(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalise a stack of Hermitian matrices, shape ``(B, d, d)``.

    Returns unsorted real eigenvalues ``(B, d)`` and unitary ``V`` with
    ``A = V diag(w) V*``.
    """
    B, d, _ = A.shape
    A = 0.5 * (A + adjoint(A))
    V = np.broadcast_to(np.eye(d, dtype=np.complex128), A.shape).copy()
    if d == 1 or B == 0:
        return np.real(np.einsum("bii->bi", A)).copy(), V
    limit = OFF_TOL * np.linalg.norm(A, axis=(1, 2))
    eye = np.eye(d, dtype=np.complex128)
    for _ in range(MAX_SWEEPS):
        if np.all(_offdiag_norm(A) <= limit):
            break
        for p, q in _rounds(d):
            app = A[:, p, p].real
            aqq = A[:, q, q].real
            apq = A[:, p, q]
            r = np.abs(apq)
            active = r > _PIVOT_FLOOR
            r_safe = np.where(active, r, 1.0)
            phase = np.where(active, apq / r_safe, 1.0)
            tau = (aqq - app) / (2.0 * r_safe)
            t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            J = np.broadcast_to(eye, A.shape).copy()
            J[:, p, p] = c
            J[:, p, q] = s
            J[:, q, p] = -np.conj(phase) * s
            J[:, q, q] = np.conj(phase) * c
            A = adjoint(J) @ A @ J
            V = V @ J
        A = 0.5 * (A + adjoint(A))
    else:
        if not np.all(_offdiag_norm(A) <= limit):
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    return np.real(np.einsum("bii->bi", A)).copy(), V


def _normalize_phase(V: np.ndarray) -> np.ndarray:
    # first component with non-negligible magnitude made real-positive
    mag = np.abs(V)
    lead = np.argmax(mag > 1e-8 * np.max(mag, axis=-2, keepdims=True), axis=-2)
    pivot = np.take_along_axis(V, lead[..., None, :], axis=-2)
    pm = np.abs(pivot)
    factor = np.where(pm > 0.0, np.conj(pivot) / np.where(pm > 0.0, pm, 1.0), 1.0)
    return V * factor


def eigh_batch(A: np.ndarray, vectors: bool = True):
    """Eigen-decompose a stack of Hermitian matrices (no validation).

    Eigenvalues come back ascending along the last axis; eigenvector columns
    are phase-normalised so results are reproducible bit for bit.
    """
    A = np.asarray(A, dtype=np.complex128)
    w, V = _jacobi(A)
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    if not vectors:
        return w
    V = np.take_along_axis(V, order[:, None, :], axis=-1)
    return w, _normalize_phase(V)


@dataclass(frozen=True)
class EigResult:
    values: np.ndarray
    vectors: np.ndarray


def check_hermitian(M: np.ndarray, tol: float = HERMITIAN_TOL, name: str = "matrix") -> None:
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got {M.shape}")
    if fro(M - adjoint(M)) > tol * (1.0 + fro(M)):
        raise NotHermitian(f"{name} is not Hermitian within tolerance {tol:g}")


def hermitian_eig(M, tol: float = HERMITIAN_TOL) -> EigResult:
    """Full spectrum of a Hermitian matrix, ascending, with orthonormal eigenvectors."""
    M = as_matrix(M)
    check_hermitian(M, tol)
    w, V = eigh_batch(M[None])
    return EigResult(w[0], V[0])


# --------------------------------------------------------------------------
# SVD and friends

def _orthonormalize(X: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Two-pass modified Gram-Schmidt over the columns flagged in ``keep``.

    Columns not kept (or that collapse) are replaced by completion vectors
    drawn from the standard basis, so the result always has orthonormal
    columns.
    """
    rows, k = X.shape
    Q = np.zeros((rows, k), dtype=np.complex128)
    filled = []
    pending = []
    for j in range(k):
        if not keep[j]:
            pending.append(j)
            continue
        v = X[:, j].copy()
        for _ in range(2):
            for i in filled:
                v -= Q[:, i] * np.vdot(Q[:, i], v)
        nv = np.linalg.norm(v)
        if nv <= 1e-8:
            pending.append(j)
            continue
        Q[:, j] = v / nv
        filled.append(j)
    for j in pending:
        R = np.eye(rows, dtype=np.complex128)
        for _ in range(2):
            for i in filled:
                R -= np.outer(Q[:, i], np.conj(Q[:, i]) @ R)
        norms = np.linalg.norm(R, axis=0)
        best = int(np.argmax(norms))
        Q[:, j] = R[:, best] / norms[best]
        filled.append(j)
    return Q


def svd(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``M = U diag(s) V*`` with ``s`` descending.

    Built from the eigendecomposition of the smaller Gram matrix: the right
    singular vectors are its eigenvectors, the singular values are recovered
    as column norms of ``M V`` (which keeps null directions near zero rather
    than at ``sqrt(eps)``), and ``U`` is re-orthonormalised.
    """
    M = as_matrix(M)
    rows, cols = M.shape
    if rows < cols:
        U, s, V = svd(adjoint(M))
        return V, s, U
    if cols == 0:
        return np.zeros((rows, 0), np.complex128), np.zeros(0), np.zeros((0, 0), np.complex128)
    # the Gram matrix squares magnitudes, so work with entries of order one
    scale = float(np.max(np.abs(M)))
    if scale == 0.0:
        return np.eye(rows, cols, dtype=np.complex128), np.zeros(cols), \
            np.eye(cols, dtype=np.complex128)
    M = M / scale
    _, V = eigh_batch((adjoint(M) @ M)[None])
    V = V[0][:, ::-1]
    X = M @ V
    s = np.linalg.norm(X, axis=0)
    order = np.argsort(-s, kind="stable")
    s, V, X = s[order], V[:, order], X[:, order]
    smax = s[0] if s.size else 0.0
    keep = s > max(np.finfo(float).eps * smax, np.finfo(float).tiny)
    safe = np.where(keep, s, 1.0)
    U = _orthonormalize(X / safe, keep)
    return U, s * scale, V


def op_norm(M) -> float:
    """Largest singular value."""
    M = as_matrix(M)
    if M.size == 0:
        return 0.0
    return float(svd(M)[1][0])


def pinv(M, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse.

    Singular values below ``rank_tol * s_max`` count as zero.
    """
    M = as_matrix(M)
    U, s, V = svd(M)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((M.shape[1], M.shape[0]), np.complex128)
    k = s > rank_tol * s[0]
    return (V[:, k] / s[k]) @ adjoint(U[:, k])


def numerical_rank(M, rank_tol: float = RANK_TOL) -> int:
    s = svd(M)[1]
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rank_tol * s[0]))


def range_basis(M, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of the numerical column space of ``M``."""
    U, s, _ = svd(M)
    if s.size == 0 or s[0] == 0.0:
        return U[:, :0]
    return U[:, s > rank_tol * s[0]]


def range_projector(M, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthogonal projector onto the column space, computed as ``M pinv(M)``."""
    M = as_matrix(M)
    return M @ pinv(M, rank_tol)


# --------------------------------------------------------------------------
# Definite pencils

@dataclass(frozen=True)
class PencilProblem:
    M1: np.ndarray
    M2: np.ndarray
    tol: float = RANK_TOL

    def __post_init__(self):
        M1 = as_matrix(self.M1, "M1")
        M2 = as_matrix(self.M2, "M2")
        if M1.shape != M2.shape:
            raise DimensionMismatch(f"pencil shapes differ: {M1.shape} vs {M2.shape}")
        check_hermitian(M1, HERMITIAN_TOL, "M1")
        check_hermitian(M2, HERMITIAN_TOL, "M2")
        object.__setattr__(self, "M1", M1)
        object.__setattr__(self, "M2", M2)


class PencilReduction:
    """Reduce ``<M1 f, f> / <M2 f, f>`` for a fixed PSD ``M2``.

    ``M2`` is split into its positive eigenspace and its kernel. For each
    left matrix, the kernel component of ``f`` is eliminated exactly (Schur
    complement onto the positive eigenspace) and the result is whitened, so
    the extremal quotients become ordinary extremal eigenvalues. Many left
    matrices can be processed at once, which is what partition sweeps need.
    """

    def __init__(self, M2: np.ndarray, rank_tol: float = RANK_TOL):
        M2 = np.asarray(M2, dtype=np.complex128)
        w, V = eigh_batch(M2[None])
        w, V = w[0], V[0]
        wmax = w[-1] if w.size else 0.0
        if wmax <= rank_tol ** 2:
            raise ZeroPencil("right-hand pencil matrix is numerically zero")
        keep = w >= rank_tol * wmax
        self.rank_tol = rank_tol
        self.dim = M2.shape[0]
        self.Vr = V[:, keep]
        self.Vn = V[:, ~keep]
        self.scale = 1.0 / np.sqrt(w[keep])

    def _blocks(self, M1s):
        Vr, Vn = self.Vr, self.Vn
        A11 = adjoint(Vr) @ M1s @ Vr
        A12 = adjoint(Vr) @ M1s @ Vn
        A22 = adjoint(Vn) @ M1s @ Vn
        return A11, A12, A22

    def _whiten(self, X):
        return self.scale[:, None] * X * self.scale[None, :]

    def smallest(self, M1s: np.ndarray):
        """Infimum of the quotient for each matrix in the stack ``(B, d, d)``.

        Returns ``(values, witnesses)`` where witnesses are unit vectors.
        """
        M1s = np.asarray(M1s, dtype=np.complex128)
        A11, A12, A22 = self._blocks(M1s)
        if self.Vn.shape[1]:
            w22, V22 = eigh_batch(A22)
            floor = self.rank_tol * np.maximum(np.linalg.norm(M1s, axis=(1, 2)), 1.0)
            inv = np.where(w22 > floor[:, None], 1.0 / np.where(w22 > 0, w22, 1.0), 0.0)
            A22p = (V22 * inv[:, None, :]) @ adjoint(V22)
            schur = A11 - A12 @ A22p @ adjoint(A12)
        else:
            A22p = None
            schur = A11
        w, Y = eigh_batch(self._whiten(schur))
        values = w[:, 0]
        x = self.scale[None, :] * Y[:, :, 0]
        f = x @ self.Vr.T
        if A22p is not None:
            z = -np.einsum("bij,bkj,bk->bi", A22p, np.conj(A12), x)
            f = f + z @ self.Vn.T
        f = f / np.linalg.norm(f, axis=1, keepdims=True)
        return values, f

    def kernel_leak(self, M1s: np.ndarray) -> np.ndarray:
        """Largest eigenvalue of ``M1`` compressed to the kernel of ``M2``."""
        if not self.Vn.shape[1]:
            return np.zeros(len(M1s))
        A22 = adjoint(self.Vn) @ M1s @ self.Vn
        return eigh_batch(A22, vectors=False)[:, -1]

    def largest(self, M1s: np.ndarray):
        """Supremum of the quotient, assuming ``M1`` vanishes on ``ker M2``.

        Callers check :meth:`kernel_leak` first; this ignores the kernel.
        """
        A11 = adjoint(self.Vr) @ np.asarray(M1s, dtype=np.complex128) @ self.Vr
        w, Y = eigh_batch(self._whiten(A11))
        x = self.scale[None, :] * Y[:, :, -1]
        f = x @ self.Vr.T
        f = f / np.linalg.norm(f, axis=1, keepdims=True)
        return w[:, -1], f


def smallest_pencil_eig(p: PencilProblem) -> tuple[float, np.ndarray]:
    """``inf <M1 f, f> / <M2 f, f>`` over ``f`` with ``M2 f != 0``, plus a minimiser."""
    red = PencilReduction(p.M2, p.tol)
    vals, f = red.smallest(p.M1[None])
    return float(vals[0]), f[0]


def largest_pencil_eig(p: PencilProblem) -> tuple[float, np.ndarray]:
    """``sup <M1 f, f> / <M2 f, f>``; raises :class:`UnboundedPencil` when infinite."""
    red = PencilReduction(p.M2, p.tol)
    leak = red.kernel_leak(p.M1[None])[0]
    if leak > p.tol * max(1.0, fro(p.M1)):
        raise UnboundedPencil(
            f"left matrix reaches {leak:.3e} on the kernel of the right matrix")
    vals, f = red.largest(p.M1[None])
    return float(vals[0]), f[0]
