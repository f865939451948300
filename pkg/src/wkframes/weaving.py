"""Weavings of several families and universal (K-)frame bounds by partition sweep.

A partition assigns each index ``i`` in ``range(n)`` to one of ``m``
families; the weaving takes vector ``i`` from family ``assign[i]``. Families
are numbered from 0, so for two families ``sigma`` is the set of indices
assigned to family 0.

Partitions are visited in lexicographic order of ``assign``. The worst
partition is the first one (in that order) whose lower bound is within a
tiny tolerance of the minimum, so reports do not depend on rounding noise
between numerically tied partitions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetZero, DimensionMismatch, LengthMismatch
from .frames import FRAME_TOL, FrameFamily, KPencil
from .linalg import RANK_TOL, eigh_batch

DEFAULT_BUDGET = 1 << 20
TIE_TOL = 1e-12
_CHUNK = 4096


@dataclass(frozen=True)
class Partition:
    assign: tuple
    m: int = 2

    def __post_init__(self):
        assign = tuple(int(a) for a in self.assign)
        if any(a < 0 or a >= self.m for a in assign):
            raise ValueError(f"partition values must lie in range({self.m}): {assign}")
        object.__setattr__(self, "assign", assign)

    @property
    def n(self) -> int:
        return len(self.assign)

    @classmethod
    def from_sigma(cls, sigma, n: int) -> "Partition":
        """Two-family partition with ``sigma`` going to family 0."""
        sigma = set(sigma)
        return cls(tuple(0 if i in sigma else 1 for i in range(n)), 2)

    @property
    def sigma(self) -> tuple:
        return tuple(i for i, a in enumerate(self.assign) if a == 0)

    def complement(self) -> "Partition":
        if self.m != 2:
            raise ValueError("complement is defined for two families")
        return Partition(tuple(1 - a for a in self.assign), 2)

    def label(self) -> str:
        """``"10"``-style membership string for two families, else 1-based digits."""
        if self.m == 2:
            return "".join("1" if a == 0 else "0" for a in self.assign)
        return ",".join(str(a + 1) for a in self.assign)


@dataclass
class WeavingReport:
    universal_lower: float
    universal_upper: float
    verdict: bool
    worst_partition: Partition
    witness: np.ndarray
    partitions_checked: int
    exhaustive: bool


def _check_families(families: Sequence[FrameFamily]) -> tuple[int, int]:
    if not families:
        raise LengthMismatch("at least one family is required")
    n, dim = len(families[0]), families[0].dim
    for F in families[1:]:
        if F.dim != dim:
            raise DimensionMismatch(f"families live in dims {dim} and {F.dim}")
        if len(F) != n:
            raise LengthMismatch(f"families have lengths {n} and {len(F)}")
    return n, dim


def weave(families: Sequence[FrameFamily], p: Partition) -> FrameFamily:
    """The family whose ``i``-th vector comes from ``families[p.assign[i]]``."""
    n, dim = _check_families(families)
    if p.n != n:
        raise LengthMismatch(f"partition covers {p.n} indices, families have {n}")
    if p.m != len(families):
        raise LengthMismatch(f"partition is over {p.m} families, got {len(families)}")
    vecs = np.array([families[a][i] for i, a in enumerate(p.assign)],
                    dtype=np.complex128).reshape(n, dim)
    return FrameFamily(vecs, dim=dim)


def iter_partitions(n: int, m: int):
    """All ``m**n`` partitions in lexicographic order."""
    for assign in itertools.product(range(m), repeat=n):
        yield Partition(assign, m)


def _exhaustive_chunks(n: int, m: int):
    total = m ** n
    powers = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        k = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        yield (k[:, None] // powers[None, :]) % m


def _sampled_assignments(n: int, m: int, budget: int, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    drawn = rng.integers(0, m, size=(budget, n))
    pure = np.repeat(np.arange(m)[:, None], n, axis=1)
    # np.unique sorts rows lexicographically
    return np.unique(np.vstack([pure, drawn]), axis=0)


def _sweep(families, scorer: KPencil, budget: int, seed, frame_tol: float) -> WeavingReport:
    n, dim = _check_families(families)
    if budget < 1:
        raise BudgetZero("partition budget must be at least 1")
    m = len(families)
    stack = np.stack([F.vectors for F in families])  # (m, n, dim)
    exhaustive = m ** n <= budget
    if exhaustive:
        chunks = _exhaustive_chunks(n, m)
    else:
        rows = _sampled_assignments(n, m, budget, seed)
        chunks = (rows[i:i + _CHUNK] for i in range(0, len(rows), _CHUNK))

    lowers, uppers, assigns = [], [], []
    cols = np.arange(n)
    for P in chunks:
        lo, hi = scorer.score(stack[P, cols[None, :]])
        lowers.append(lo)
        uppers.append(hi)
        assigns.append(P)
    lower = np.concatenate(lowers)
    upper = np.concatenate(uppers)
    assign = np.concatenate(assigns)

    universal_upper = float(upper.max())
    floor = float(lower.min())
    tie = TIE_TOL * max(1.0, universal_upper)
    worst = int(np.flatnonzero(lower <= floor + tie)[0])
    worst_p = Partition(tuple(assign[worst]), m)

    # witness from a single, unbatched evaluation of the worst weaving
    W = weave(families, worst_p)
    if scorer.red is None:
        _, V = eigh_batch(scorer.operators(W.vectors[None]))
        witness = scorer.lift(V[0, :, 0])
    else:
        _, f = scorer.red.smallest(scorer.operators(W.vectors[None]))
        witness = scorer.lift(f[0])

    return WeavingReport(
        universal_lower=floor,
        universal_upper=universal_upper,
        verdict=bool(exhaustive and floor > frame_tol),
        worst_partition=worst_p,
        witness=witness,
        partitions_checked=int(len(lower)),
        exhaustive=exhaustive,
    )


def woven_report(families: Sequence[FrameFamily], subspace=None,
                 budget: int = DEFAULT_BUDGET, seed=0, rank_tol: float = RANK_TOL,
                 frame_tol: float = FRAME_TOL) -> WeavingReport:
    """Universal frame bounds over all weavings (or a sample of them).

    The verdict is only ever true for an exhaustive sweep: sampling can
    refute woven-ness but never certify it.
    """
    n, dim = _check_families(families)
    return _sweep(families, KPencil(dim, None, subspace, rank_tol), budget, seed, frame_tol)


def kwoven_report(families: Sequence[FrameFamily], K, subspace=None,
                  budget: int = DEFAULT_BUDGET, seed=0, rank_tol: float = RANK_TOL,
                  frame_tol: float = FRAME_TOL) -> WeavingReport:
    """Universal K-frame bounds over all weavings.

    Each weaving is scored by its optimal K-frame lower bound; the upper
    bound is the largest Bessel bound seen.
    """
    n, dim = _check_families(families)
    return _sweep(families, KPencil(dim, K, subspace, rank_tol), budget, seed, frame_tol)
