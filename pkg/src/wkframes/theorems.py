"""Numerical certificates for the transfer, perturbation and erasure results.

Each certifier first verifies its hypotheses (raising a
:class:`~wkframes.errors.HypothesisFails` subclass when the input does not
qualify), then builds the objects the result talks about, computes the
claimed bound constants from the input's measured bounds, measures the
optimal bounds actually achieved, and compares the two.

Result identifiers used in reports::

    L2.1  image of a K-frame is a T K T*-frame
    L2.2  pullback through an injective T is a T^+ K T-frame
    P2.3  K-woven pairs map to T K T*-woven pairs
    P2.4  pullback of K-woven pairs on R(T) is T^+ K T-woven
    P2.5  woven on R(K*)  <->  {K f_i}, {K g_i} K-woven
    P2.6  woven on R(K)   <->  K-woven (on R(K))
    T2.7  perturbation of K by T, on R(K)
    C2.7  two-parameter perturbation, unrestricted, both directions
    T2.8  erasure after pushing forward by T
    C2.9  erasure, T = identity
    T2.10 erasure after pulling back through T
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import (
    BadAlpha,
    CTooLarge,
    DimensionMismatch,
    HypothesisFails,
    NoFiniteC,
    NotInjective,
    NotKFrame,
    NotKFrameOnRange,
    NotKWoven,
    NotKWovenOnRange,
    UnboundedPencil,
    ZeroK,
    ZeroPencil,
    ZeroT,
)
from .frames import (
    FRAME_TOL,
    FrameFamily,
    bessel_bound,
    check_k,
    frame_operator,
    kframe_bounds,
)
from .linalg import RANK_TOL, PencilProblem, adjoint, op_norm, pinv
from .weaving import DEFAULT_BUDGET, kwoven_report, woven_report

CERT_TOL = 1e-8
RES_TOL = 1e-9


@dataclass
class CertificateReport:
    result_id: str
    claimed_lower: float
    claimed_upper: float
    achieved_lower: float
    achieved_upper: float
    passed: bool
    details: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        """achieved / claimed lower bound (inf when the claim is 0)."""
        if self.claimed_lower <= 0.0:
            return float("inf")
        return self.achieved_lower / self.claimed_lower


def _cert(result_id, claimed, achieved, cert_tol, **details) -> CertificateReport:
    cl, cu = (float(x) for x in claimed)
    al, au = (float(x) for x in achieved)
    ok = al >= cl * (1.0 - cert_tol) and au <= cu * (1.0 + cert_tol)
    return CertificateReport(result_id, cl, cu, al, au, bool(ok), details)


def _nonzero_norm(T, rank_tol) -> float:
    n = op_norm(T)
    if n <= rank_tol:
        raise ZeroT("T is numerically zero")
    return n


def _check_injective(T, rank_tol) -> np.ndarray:
    T = linalg.as_matrix(T, "T")
    r = linalg.numerical_rank(T, rank_tol)
    if r < T.shape[1]:
        raise NotInjective(f"T has numerical rank {r} on a domain of dim {T.shape[1]}")
    return T


def _same_dim(*families: FrameFamily) -> int:
    dims = {F.dim for F in families}
    if len(dims) != 1:
        raise DimensionMismatch(f"families live in different dims {sorted(dims)}")
    return dims.pop()


def _kwoven(families, K, subspace, budget, seed, rank_tol, frame_tol, err, what):
    """Run a K-woven sweep and insist on an exhaustive positive verdict."""
    try:
        rep = kwoven_report(families, K, subspace=subspace, budget=budget, seed=seed,
                            rank_tol=rank_tol, frame_tol=frame_tol)
    except ZeroK as exc:
        raise err(f"{what}: {exc}") from exc
    if not rep.exhaustive:
        raise err(f"{what}: budget {budget} too small for an exhaustive sweep")
    if not rep.verdict:
        raise err(f"{what}: universal lower bound {rep.universal_lower:.3e} "
                  f"at partition {rep.worst_partition.label()}")
    return rep


def _woven(families, subspace, budget, seed, rank_tol, frame_tol, what):
    rep = woven_report(families, subspace=subspace, budget=budget, seed=seed,
                       rank_tol=rank_tol, frame_tol=frame_tol)
    if not rep.exhaustive:
        raise HypothesisFails(f"{what}: budget {budget} too small for an exhaustive sweep")
    if not rep.verdict:
        raise HypothesisFails(f"{what}: universal lower bound {rep.universal_lower:.3e} "
                              f"at partition {rep.worst_partition.label()}")
    return rep


def _sweep_detail(rep) -> dict:
    return {"worst_partition": rep.worst_partition.label(),
            "partitions_checked": rep.partitions_checked,
            "witness": rep.witness}


# --------------------------------------------------------------------------
# single-family transfer

def pushforward_frame(F: FrameFamily, K, T, cert_tol: float = CERT_TOL,
                      rank_tol: float = RANK_TOL, frame_tol: float = FRAME_TOL):
    """Push a K-frame forward by ``T``; returns ``(TF, certificate)``."""
    kb = kframe_bounds(F, K, rank_tol=rank_tol, frame_tol=frame_tol)
    if not kb.is_kframe:
        raise NotKFrame(f"family is not a K-frame (lower bound {kb.lower:.3e})")
    T = linalg.as_matrix(T, "T")
    nT = _nonzero_norm(T, rank_tol)
    TF = F.mapped(T)
    K = linalg.as_matrix(K, "K")
    M = T @ K @ adjoint(T)
    out = kframe_bounds(TF, M, rank_tol=rank_tol, frame_tol=frame_tol)
    cert = _cert("L2.1", (kb.lower / nT ** 2, kb.upper * nT ** 2), (out.lower, out.upper),
                 cert_tol, input_lower=kb.lower, input_upper=kb.upper, norm_T=nT,
                 witness=out.lower_witness)
    return TF, cert


def pullback_frame(F: FrameFamily, T, K, cert_tol: float = CERT_TOL,
                   rank_tol: float = RANK_TOL, frame_tol: float = FRAME_TOL,
                   budget: int = DEFAULT_BUDGET) -> CertificateReport:
    """Certify ``F`` as a ``T^+ K T``-frame given ``{T f_i}`` is a K-frame on ``R(T)``."""
    T = _check_injective(T, rank_tol)
    if T.shape[1] != F.dim:
        raise DimensionMismatch(f"T of shape {T.shape} cannot act on dim {F.dim}")
    TF = F.mapped(T)
    inp = _kwoven([TF], K, T, budget, 0, rank_tol, frame_tol, NotKFrameOnRange,
                  "{T f_i} is not a K-frame on R(T)")
    Tp = pinv(T, rank_tol)
    out = kframe_bounds(F, Tp @ linalg.as_matrix(K, "K") @ T, rank_tol=rank_tol,
                        frame_tol=frame_tol)
    nT, nTp = op_norm(T), op_norm(Tp)
    return _cert("L2.2", (inp.universal_lower / nT ** 2, inp.universal_upper * nTp ** 2),
                 (out.lower, out.upper), cert_tol, input_lower=inp.universal_lower,
                 input_upper=inp.universal_upper, norm_T=nT, norm_T_pinv=nTp,
                 witness=out.lower_witness)


# --------------------------------------------------------------------------
# woven transfer

def woven_pushforward(F: FrameFamily, G: FrameFamily, K, T, budget: int = DEFAULT_BUDGET,
                      cert_tol: float = CERT_TOL, rank_tol: float = RANK_TOL,
                      frame_tol: float = FRAME_TOL, seed=0) -> CertificateReport:
    _same_dim(F, G)
    inp = _kwoven([F, G], K, None, budget, seed, rank_tol, frame_tol, NotKWoven,
                  "F, G are not K-woven")
    T = linalg.as_matrix(T, "T")
    nT = _nonzero_norm(T, rank_tol)
    TF, TG = F.mapped(T), G.mapped(T)
    M = T @ linalg.as_matrix(K, "K") @ adjoint(T)
    out = kwoven_report([TF, TG], M, budget=budget, seed=seed, rank_tol=rank_tol,
                        frame_tol=frame_tol)
    claimed_upper = bessel_bound(TF) + bessel_bound(TG)
    return _cert("P2.3", (inp.universal_lower / nT ** 2, claimed_upper),
                 (out.universal_lower, out.universal_upper), cert_tol,
                 input_lower=inp.universal_lower, norm_T=nT, **_sweep_detail(out))


def woven_pullback(F: FrameFamily, G: FrameFamily, T, K, budget: int = DEFAULT_BUDGET,
                   cert_tol: float = CERT_TOL, rank_tol: float = RANK_TOL,
                   frame_tol: float = FRAME_TOL, seed=0) -> CertificateReport:
    dim = _same_dim(F, G)
    T = _check_injective(T, rank_tol)
    if T.shape[1] != dim:
        raise DimensionMismatch(f"T of shape {T.shape} cannot act on dim {dim}")
    inp = _kwoven([F.mapped(T), G.mapped(T)], K, T, budget, seed, rank_tol, frame_tol,
                  NotKWovenOnRange, "{T f_i}, {T g_i} are not K-woven on R(T)")
    Tp = pinv(T, rank_tol)
    M = Tp @ linalg.as_matrix(K, "K") @ T
    out = kwoven_report([F, G], M, budget=budget, seed=seed, rank_tol=rank_tol,
                        frame_tol=frame_tol)
    nT, nTp = op_norm(T), op_norm(Tp)
    return _cert("P2.4", (inp.universal_lower / nT ** 2, inp.universal_upper * nTp ** 2),
                 (out.universal_lower, out.universal_upper), cert_tol,
                 input_lower=inp.universal_lower, input_upper=inp.universal_upper,
                 norm_T=nT, norm_T_pinv=nTp, **_sweep_detail(out))


def _direction(direction: str) -> str:
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return direction


def range_equivalence_kstar(F: FrameFamily, G: FrameFamily, K, direction: str = "forward",
                            budget: int = DEFAULT_BUDGET, cert_tol: float = CERT_TOL,
                            rank_tol: float = RANK_TOL, frame_tol: float = FRAME_TOL,
                            seed=0) -> CertificateReport:
    """Woven on ``R(K*)`` versus ``{K f_i}``, ``{K g_i}`` K-woven.

    forward: the woven lower bound on ``R(K*)`` is claimed as K-woven lower
    bound of the images. backward: the K-woven lower bound of the images is
    claimed as woven lower bound on ``R(K*)``.
    """
    dim = _same_dim(F, G)
    K = check_k(K, dim, rank_tol)
    KF, KG = F.mapped(K), G.mapped(K)
    Kstar = adjoint(K)
    if _direction(direction) == "forward":
        inp = _woven([F, G], Kstar, budget, seed, rank_tol, frame_tol,
                     "F, G are not woven on R(K*)")
        out = kwoven_report([KF, KG], K, budget=budget, seed=seed, rank_tol=rank_tol,
                            frame_tol=frame_tol)
        claimed_upper = bessel_bound(KF) + bessel_bound(KG)
    else:
        inp = _kwoven([KF, KG], K, None, budget, seed, rank_tol, frame_tol, HypothesisFails,
                      "{K f_i}, {K g_i} are not K-woven")
        out = woven_report([F, G], subspace=Kstar, budget=budget, seed=seed,
                           rank_tol=rank_tol, frame_tol=frame_tol)
        claimed_upper = bessel_bound(F) + bessel_bound(G)
    return _cert("P2.5", (inp.universal_lower, claimed_upper),
                 (out.universal_lower, out.universal_upper), cert_tol, direction=direction,
                 input_lower=inp.universal_lower, **_sweep_detail(out))


def _in_range(F: FrameFamily, P: np.ndarray, rank_tol: float) -> bool:
    V = F.vectors.T
    return linalg.fro(V - P @ V) <= 1e3 * rank_tol * max(1.0, linalg.fro(V))


def range_equivalence_k(F: FrameFamily, G: FrameFamily, K, direction: str = "forward",
                        budget: int = DEFAULT_BUDGET, cert_tol: float = CERT_TOL,
                        rank_tol: float = RANK_TOL, frame_tol: float = FRAME_TOL,
                        seed=0) -> CertificateReport:
    """Woven on ``R(K)`` versus K-woven.

    forward: families lying in ``R(K)`` and woven there with lower bound
    ``A`` are K-woven with lower bound ``A / ||K||^2``. backward: K-woven on
    ``R(K)`` with lower bound ``C`` gives woven on ``R(K)`` with
    ``C / ||K^+||^2``.
    """
    dim = _same_dim(F, G)
    K = check_k(K, dim, rank_tol)
    nK = op_norm(K)
    if _direction(direction) == "forward":
        P = linalg.range_projector(K, rank_tol)
        if not (_in_range(F, P, rank_tol) and _in_range(G, P, rank_tol)):
            raise HypothesisFails("family vectors must lie in R(K)")
        inp = _woven([F, G], K, budget, seed, rank_tol, frame_tol, "F, G are not woven on R(K)")
        out = kwoven_report([F, G], K, budget=budget, seed=seed, rank_tol=rank_tol,
                            frame_tol=frame_tol)
        claimed = (inp.universal_lower / nK ** 2, bessel_bound(F) + bessel_bound(G))
        extra = {"norm_K": nK}
    else:
        inp = _kwoven([F, G], K, K, budget, seed, rank_tol, frame_tol, HypothesisFails,
                      "F, G are not K-woven on R(K)")
        out = woven_report([F, G], subspace=K, budget=budget, seed=seed, rank_tol=rank_tol,
                           frame_tol=frame_tol)
        nKp = op_norm(pinv(K, rank_tol))
        claimed = (inp.universal_lower / nKp ** 2, inp.universal_upper)
        extra = {"norm_K_pinv": nKp}
    return _cert("P2.6", claimed, (out.universal_lower, out.universal_upper), cert_tol,
                 direction=direction, input_lower=inp.universal_lower, **extra,
                 **_sweep_detail(out))


# --------------------------------------------------------------------------
# perturbation

@dataclass
class PerturbationParams:
    """Constants of ``||(T* - K*) f|| <= a1 ||T* f|| + a2 ||K* f|| + a3 ||f||``.

    ``alpha3 = 0`` is accepted and gives the two-parameter form.
    """

    alpha1: float
    alpha2: float
    alpha3: float = 0.0
    max_residual: Optional[float] = None
    residual_witness: Optional[np.ndarray] = None

    def __post_init__(self):
        for name in ("alpha1", "alpha2"):
            a = getattr(self, name)
            if not 0.0 < a < 1.0:
                raise BadAlpha(f"{name} = {a} is not in (0, 1)")
        if not 0.0 <= self.alpha3 < 1.0:
            raise BadAlpha(f"alpha3 = {self.alpha3} is not in (0, 1)")

    @property
    def holds(self) -> bool:
        return self.max_residual is not None and self.max_residual <= RES_TOL


def _residual_fn(T, K, p: PerturbationParams):
    D = adjoint(T - K)
    Ts, Ks = adjoint(T), adjoint(K)

    def value_grad(f):
        parts = []
        grad = np.zeros_like(f)
        for A, w in ((D, 1.0), (Ts, -p.alpha1), (Ks, -p.alpha2)):
            Af = A @ f
            nf = np.linalg.norm(Af)
            parts.append(w * nf)
            if nf > 0.0:
                grad += w * (adjoint(A) @ Af) / nf
        return sum(parts) - p.alpha3 * np.linalg.norm(f), grad

    return value_grad


def perturbation_residual(T, K, p: PerturbationParams, probes: int = 16,
                          seed=0, steps: int = 50) -> PerturbationParams:
    """Search the unit sphere for a violation of the perturbation inequality.

    Maximises ``||(T*-K*)f|| - a1||T*f|| - a2||K*f|| - a3||f||`` by projected
    ascent from the left singular vectors of ``T - K``, the standard basis,
    and ``probes`` random starts. A positive maximum refutes the hypothesis;
    a non-positive one only corroborates it.
    """
    T = linalg.as_matrix(T, "T")
    K = linalg.as_matrix(K, "K")
    if T.shape != K.shape or T.shape[0] != T.shape[1]:
        raise DimensionMismatch(f"T {T.shape} and K {K.shape} must be square of equal size")
    d = T.shape[0]
    value_grad = _residual_fn(T, K, p)
    rng = np.random.default_rng(seed)
    starts = [u for u in linalg.svd(T - K)[0].T]
    starts += list(np.eye(d, dtype=np.complex128))
    for _ in range(probes):
        z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        starts.append(z / np.linalg.norm(z))

    best_val, best_f = -np.inf, None
    for f in starts:
        f = f / np.linalg.norm(f)
        val, grad = value_grad(f)
        step = 0.1
        for _ in range(steps):
            g = grad - np.real(np.vdot(f, grad)) * f
            cand = f + step * g
            cand = cand / np.linalg.norm(cand)
            cval, cgrad = value_grad(cand)
            if cval > val:
                f, val, grad = cand, cval, cgrad
            else:
                step *= 0.5
        if val > best_val:
            best_val, best_f = val, f
    return replace(p, max_residual=float(best_val), residual_witness=best_f)


def perturbed_woven_cert(F: FrameFamily, G: FrameFamily, T, K, p: PerturbationParams,
                         budget: int = DEFAULT_BUDGET, corollary: bool = False,
                         probes: int = 16, seed=0, cert_tol: float = CERT_TOL,
                         rank_tol: float = RANK_TOL,
                         frame_tol: float = FRAME_TOL) -> CertificateReport:
    """K-woven on ``R(K)`` plus the perturbation inequality gives T-woven on ``R(K)``.

    With ``corollary=True`` the two-parameter inequality (``alpha3`` forced
    to 0) is used without any range restriction, and the lower bounds are
    checked in both directions: K-woven to T-woven and back.
    """
    dim = _same_dim(F, G)
    K = check_k(K, dim, rank_tol)
    T = linalg.as_matrix(T, "T")
    if T.shape != K.shape:
        raise DimensionMismatch(f"T {T.shape} and K {K.shape} must have the same shape")
    if corollary:
        p = replace(p, alpha3=0.0)
    p = perturbation_residual(T, K, p, probes=probes, seed=seed)
    if not p.holds:
        raise HypothesisFails(f"perturbation inequality violated by {p.max_residual:.3e}")
    a1, a2, a3 = p.alpha1, p.alpha2, p.alpha3
    kw = dict(budget=budget, seed=seed, rank_tol=rank_tol, frame_tol=frame_tol)

    if not corollary:
        inp = _kwoven([F, G], K, K, budget, seed, rank_tol, frame_tol, NotKWovenOnRange,
                      "F, G are not K-woven on R(K)")
        nKp = op_norm(pinv(K, rank_tol))
        factor = ((1.0 - a1) / (1.0 + a2 + a3 * nKp)) ** 2
        try:
            out = kwoven_report([F, G], T, subspace=K, **kw)
        except ZeroK as exc:
            raise HypothesisFails(f"T* vanishes on R(K): {exc}") from exc
        return _cert("T2.7", (inp.universal_lower * factor, inp.universal_upper),
                     (out.universal_lower, out.universal_upper), cert_tol,
                     input_lower=inp.universal_lower, factor=factor, norm_K_pinv=nKp,
                     max_residual=p.max_residual, **_sweep_detail(out))

    check_k(T, dim, rank_tol, "T")
    kwK = kwoven_report([F, G], K, **kw)
    kwT = kwoven_report([F, G], T, **kw)
    to_T = ((1.0 - a1) / (1.0 + a2)) ** 2
    to_K = ((1.0 - a2) / (1.0 + a1)) ** 2
    forward = _cert("C2.7", (kwK.universal_lower * to_T, np.inf),
                    (kwT.universal_lower, kwT.universal_upper), cert_tol)
    backward = _cert("C2.7", (kwT.universal_lower * to_K, np.inf),
                     (kwK.universal_lower, kwK.universal_upper), cert_tol)
    return CertificateReport(
        "C2.7", forward.claimed_lower, kwK.universal_upper, kwT.universal_lower,
        kwT.universal_upper,
        bool(forward.passed and backward.passed and kwK.exhaustive),
        {"K_woven": kwK.verdict, "T_woven": kwT.verdict,
         "verdicts_agree": kwK.verdict == kwT.verdict,
         "reverse_claimed_lower": backward.claimed_lower,
         "reverse_achieved_lower": backward.achieved_lower,
         "max_residual": p.max_residual},
    )


# --------------------------------------------------------------------------
# erasure

def erasure_constant(F: FrameFamily, J: Sequence[int], M, rank_tol: float = RANK_TOL) -> float:
    """Smallest ``C`` with ``sum_{i in J} |<f, f_i>|^2 <= C ||M* f||^2`` for all ``f``."""
    J = sorted(set(int(j) for j in J))
    if not J:
        return 0.0
    if J[0] < 0 or J[-1] >= len(F):
        raise IndexError(f"erased indices {J} out of range for {len(F)} vectors")
    M = linalg.as_matrix(M, "M")
    if M.shape != (F.dim, F.dim):
        raise DimensionMismatch(f"M has shape {M.shape}, expected {(F.dim, F.dim)}")
    SJ = frame_operator(F.subfamily(J))
    if linalg.fro(SJ) == 0.0:
        return 0.0
    try:
        C, _ = linalg.largest_pencil_eig(PencilProblem(SJ, M @ adjoint(M), rank_tol))
    except (UnboundedPencil, ZeroPencil) as exc:
        raise NoFiniteC(f"no finite erasure constant: {exc}") from exc
    return max(C, 0.0)


ERASURE_MODES = ("pushforward", "identity", "pullback")


def erasure_woven_cert(F: FrameFamily, G: FrameFamily, J: Sequence[int], K, T=None,
                       mode: str = "identity", budget: int = DEFAULT_BUDGET,
                       cert_tol: float = CERT_TOL, rank_tol: float = RANK_TOL,
                       frame_tol: float = FRAME_TOL, seed=0) -> CertificateReport:
    """Remove indices ``J`` from a K-woven pair and certify what survives.

    mode ``identity``: K-woven with ``(A, B)`` and erasure constant ``C < A``
    gives K-woven with ``(A - C, B)``. mode ``pushforward``: the images under
    ``T`` are ``T K T*``-woven with lower bound ``A/||T||^2 - C``. mode
    ``pullback``: ``{T f_i}, {T g_i}`` K-woven on ``R(T)`` gives the erased
    families ``T^+ K T``-woven with lower bound ``A/||T||^2 - C``.
    """
    if mode not in ERASURE_MODES:
        raise ValueError(f"mode must be one of {ERASURE_MODES}, got {mode!r}")
    dim = _same_dim(F, G)
    if len(F) != len(G):
        raise linalg.DimensionMismatch("F and G must have equal length")
    J = sorted(set(int(j) for j in J))
    K = linalg.as_matrix(K, "K")
    kw = dict(budget=budget, seed=seed, rank_tol=rank_tol, frame_tol=frame_tol)

    if mode == "identity":
        if T is not None and not np.allclose(linalg.as_matrix(T, "T"), np.eye(dim)):
            raise ValueError("identity mode takes no T (or the identity)")
        inp = _kwoven([F, G], K, None, budget, seed, rank_tol, frame_tol, NotKWoven,
                      "F, G are not K-woven")
        C = erasure_constant(F, J, K, rank_tol)
        threshold = inp.universal_lower
        M, Fe, Ge = K, F.without(J), G.without(J)
        claimed_upper = inp.universal_upper
        rid = "C2.9"
    elif mode == "pushforward":
        if T is None:
            raise ValueError("pushforward mode needs T")
        T = linalg.as_matrix(T, "T")
        inp = _kwoven([F, G], K, None, budget, seed, rank_tol, frame_tol, NotKWoven,
                      "F, G are not K-woven")
        nT = _nonzero_norm(T, rank_tol)
        M = T @ K @ adjoint(T)
        TF, TG = F.mapped(T), G.mapped(T)
        C = erasure_constant(TF, J, M, rank_tol)
        threshold = inp.universal_lower / nT ** 2
        Fe, Ge = TF.without(J), TG.without(J)
        claimed_upper = bessel_bound(Fe) + bessel_bound(Ge)
        rid = "T2.8"
    else:
        if T is None:
            raise ValueError("pullback mode needs T")
        T = _check_injective(T, rank_tol)
        inp = _kwoven([F.mapped(T), G.mapped(T)], K, T, budget, seed, rank_tol, frame_tol,
                      NotKWovenOnRange, "{T f_i}, {T g_i} are not K-woven on R(T)")
        nT = op_norm(T)
        M = pinv(T, rank_tol) @ K @ T
        C = erasure_constant(F, J, M, rank_tol)
        threshold = inp.universal_lower / nT ** 2
        Fe, Ge = F.without(J), G.without(J)
        claimed_upper = bessel_bound(Fe) + bessel_bound(Ge)
        rid = "T2.10"

    if not C < threshold:
        raise CTooLarge(f"erasure constant {C:.6g} is not below {threshold:.6g}")
    out = kwoven_report([Fe, Ge], M, **kw)
    return _cert(rid, (threshold - C, claimed_upper),
                 (out.universal_lower, out.universal_upper), cert_tol,
                 erased=J, C=C, threshold=threshold, input_lower=inp.universal_lower,
                 **_sweep_detail(out))
