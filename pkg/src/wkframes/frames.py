"""Finite families of vectors and their optimal frame / K-frame bounds."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    EmptyFamily,
    NonFinite,
    ZeroK,
    ZeroSubspace,
)
from .linalg import RANK_TOL, PencilReduction, adjoint

FRAME_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FrameFamily:
    """An ordered finite family ``{f_i}`` in ``C^dim``.

    ``vectors`` is stored as an ``(n, dim)`` complex array, one vector per
    row. Zero vectors are allowed and contribute nothing.
    """

    vectors: np.ndarray
    dim: int = None

    def __post_init__(self):
        V = np.asarray(self.vectors, dtype=np.complex128)
        if V.size == 0:
            if self.dim is None:
                raise DimensionMismatch("an empty family needs an explicit dim")
            V = V.reshape(0, int(self.dim))
        if V.ndim == 1:
            V = V.reshape(-1, 1) if self.dim == 1 else V.reshape(1, -1)
        if V.ndim != 2:
            raise DimensionMismatch(f"family vectors must form a 2-D array, got {V.shape}")
        if self.dim is not None and V.shape[1] != self.dim:
            raise DimensionMismatch(f"vectors have length {V.shape[1]}, expected {self.dim}")
        if not np.all(np.isfinite(V)):
            raise NonFinite("family has NaN or infinite entries")
        if V.shape[1] > linalg.MAX_DIM:
            raise linalg.DimensionTooLarge(f"dim {V.shape[1]} exceeds {linalg.MAX_DIM}")
        V.flags.writeable = False
        object.__setattr__(self, "vectors", V)
        object.__setattr__(self, "dim", V.shape[1])

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, i) -> np.ndarray:
        return self.vectors[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrameFamily):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.vectors, other.vectors)

    @property
    def synthesis(self) -> np.ndarray:
        """``dim x n`` matrix with the family vectors as columns."""
        return self.vectors.T

    def analysis(self, f) -> np.ndarray:
        """Coefficients ``<f, f_i>``."""
        return np.conj(self.vectors) @ np.asarray(f, dtype=np.complex128)

    def mapped(self, T) -> "FrameFamily":
        """The image family ``{T f_i}``."""
        T = linalg.as_matrix(T, "T")
        if T.shape[1] != self.dim:
            raise DimensionMismatch(f"operator of shape {T.shape} cannot act on dim {self.dim}")
        return FrameFamily(self.vectors @ T.T, dim=T.shape[0])

    def without(self, indices: Sequence[int]) -> "FrameFamily":
        keep = np.ones(len(self), dtype=bool)
        keep[list(indices)] = False
        return FrameFamily(self.vectors[keep], dim=self.dim)

    def subfamily(self, indices: Sequence[int]) -> "FrameFamily":
        return FrameFamily(self.vectors[list(indices)], dim=self.dim)


def stack_operators(vectors: np.ndarray) -> np.ndarray:
    """Frame operators for a stack of families shaped ``(B, n, dim)``."""
    return np.einsum("bni,bnj->bij", vectors, np.conj(vectors))


def frame_operator(F: FrameFamily) -> np.ndarray:
    """``S = sum_i f_i f_i*``, i.e. synthesis times analysis."""
    return stack_operators(F.vectors[None])[0]


@dataclass
class BoundsReport:
    lower: float
    upper: float
    is_frame: bool
    lower_witness: np.ndarray
    upper_witness: np.ndarray
    subspace_dim: int


@dataclass
class KBoundsReport:
    lower: float
    upper: float
    is_kframe: bool
    is_tight: bool
    tight_constant: Optional[float] = None
    lower_witness: np.ndarray = field(default=None, repr=False)
    upper_witness: np.ndarray = field(default=None, repr=False)


def subspace_basis(subspace, dim: int, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the column space of ``subspace``."""
    U = linalg.as_matrix(subspace, "subspace")
    if U.shape[0] != dim:
        raise DimensionMismatch(f"subspace has {U.shape[0]} rows, expected {dim}")
    U = linalg.range_basis(U, rank_tol)
    if U.shape[1] == 0:
        raise ZeroSubspace("subspace is numerically zero")
    return U


def _restrict(S: np.ndarray, U: Optional[np.ndarray]) -> np.ndarray:
    return S if U is None else adjoint(U) @ S @ U


def frame_bounds(F: FrameFamily, subspace=None, rank_tol: float = RANK_TOL,
                 frame_tol: float = FRAME_TOL) -> BoundsReport:
    """Optimal frame bounds, optionally over the column space of ``subspace``.

    Without a subspace the bounds are the extremal eigenvalues of the frame
    operator. With one, they are the extremal eigenvalues of ``U* S U`` for an
    orthonormal basis ``U`` of that subspace.
    """
    if len(F) == 0:
        raise EmptyFamily("frame bounds of an empty family")
    U = None if subspace is None else subspace_basis(subspace, F.dim, rank_tol)
    S = _restrict(frame_operator(F), U)
    res = linalg.hermitian_eig(S)
    lo, hi = res.vectors[:, 0], res.vectors[:, -1]
    if U is not None:
        lo, hi = U @ lo, U @ hi
    lower = max(float(res.values[0]), 0.0)
    return BoundsReport(
        lower=lower,
        upper=max(float(res.values[-1]), 0.0),
        is_frame=lower > frame_tol,
        lower_witness=lo,
        upper_witness=hi,
        subspace_dim=S.shape[0],
    )


def check_k(K, dim: int, rank_tol: float = RANK_TOL, name: str = "K") -> np.ndarray:
    K = linalg.as_matrix(K, name)
    if K.shape != (dim, dim):
        raise DimensionMismatch(f"{name} has shape {K.shape}, expected {(dim, dim)}")
    if linalg.op_norm(K) <= rank_tol:
        raise ZeroK(f"{name} is numerically zero")
    return K


class KPencil:
    """Scores families against a fixed ``K``, possibly on a subspace.

    Holds the reduction of ``U* K K* U`` so a partition sweep pays for it
    once. ``K = None`` means plain frame bounds (``K K*`` is the identity).
    """

    def __init__(self, dim: int, K=None, subspace=None, rank_tol: float = RANK_TOL):
        self.dim = dim
        self.rank_tol = rank_tol
        self.U = None if subspace is None else subspace_basis(subspace, dim, rank_tol)
        self.K = None if K is None else check_k(K, dim, rank_tol)
        if self.K is None:
            self.red = None
            return
        M2 = _restrict(self.K @ adjoint(self.K), self.U)
        try:
            self.red = PencilReduction(M2, rank_tol)
        except linalg.ZeroPencil as exc:
            raise ZeroK("K* vanishes on the subspace") from exc

    def operators(self, vectors: np.ndarray) -> np.ndarray:
        S = stack_operators(vectors)
        return S if self.U is None else adjoint(self.U) @ S @ self.U

    def lift(self, f: np.ndarray) -> np.ndarray:
        return f if self.U is None else f @ self.U.T

    def score(self, vectors: np.ndarray):
        """Lower and upper bounds for a stack of families ``(B, n, dim)``."""
        S = self.operators(vectors)
        if self.red is None:
            w = linalg.eigh_batch(S, vectors=False)
            return np.maximum(w[:, 0], 0.0), np.maximum(w[:, -1], 0.0)
        upper = linalg.eigh_batch(S, vectors=False)[:, -1]
        lower, _ = self.red.smallest(S)
        return np.maximum(lower, 0.0), np.maximum(upper, 0.0)


def kframe_bounds(F: FrameFamily, K, subspace=None, rank_tol: float = RANK_TOL,
                  frame_tol: float = FRAME_TOL) -> KBoundsReport:
    """Optimal K-frame bounds.

    ``lower`` is the largest ``A`` with ``A ||K* f||^2 <= sum |<f, f_i>|^2``
    for every ``f`` (over the subspace if one is given); ``upper`` is the
    optimal Bessel bound. Tightness is decided spectrally: the quotient must
    be constant on the positive eigenspace of ``K K*`` and the frame operator
    must vanish on ``ker K*``.
    """
    kp = KPencil(F.dim, K, subspace, rank_tol)
    S = kp.operators(F.vectors[None])
    w, V = linalg.eigh_batch(S)
    upper = max(float(w[0, -1]), 0.0)
    lower_raw, lo_f = kp.red.smallest(S)
    lower = max(float(lower_raw[0]), 0.0)
    scale = max(1.0, upper)
    leak = float(kp.red.kernel_leak(S)[0])
    is_tight = False
    if leak <= frame_tol * scale:
        top, _ = kp.red.largest(S)
        is_tight = float(top[0]) - float(lower_raw[0]) <= frame_tol * max(1.0, float(top[0]))
    is_kframe = lower > frame_tol
    return KBoundsReport(
        lower=lower,
        upper=upper,
        is_kframe=is_kframe,
        is_tight=is_tight and is_kframe,
        tight_constant=lower if (is_tight and is_kframe) else None,
        lower_witness=kp.lift(lo_f[0]),
        upper_witness=kp.lift(V[0, :, -1]),
    )


def bessel_bound(F: FrameFamily) -> float:
    """Optimal Bessel bound, the squared norm of the synthesis operator (0 if empty)."""
    if len(F) == 0:
        return 0.0
    return linalg.op_norm(F.synthesis) ** 2
