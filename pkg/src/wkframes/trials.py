"""Seeded randomized trial suites for the certifiers.

Every suite draws inputs that satisfy the certifier's hypotheses by
construction. Trials whose hypotheses still fail numerically (a sweep
landing on a near-degenerate weaving, say) are counted as skipped, never as
passes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import theorems as th
from .errors import HypothesisFails
from .frames import FrameFamily


def random_matrix(rng, rows, cols, rank=None, real=False) -> np.ndarray:
    def gauss(*shape):
        z = rng.standard_normal(shape)
        return z if real else z + 1j * rng.standard_normal(shape)

    if rank is None or rank >= min(rows, cols):
        return gauss(rows, cols)
    return gauss(rows, rank) @ gauss(rank, cols)


def random_unitary(rng, d) -> np.ndarray:
    Q, R = np.linalg.qr(random_matrix(rng, d, d))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_family(rng, dim, n) -> FrameFamily:
    return FrameFamily(random_matrix(rng, n, dim), dim=dim)


@dataclass
class TrialSummary:
    result_id: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    ratios: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def trials(self) -> int:
        return self.passed + self.failed

    def record(self, cert) -> None:
        if cert.passed:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(cert)
        self.ratios.append(cert.ratio)

    def ratio_summary(self) -> dict:
        r = np.array([x for x in self.ratios if np.isfinite(x)])
        if r.size == 0:
            return {}
        return {"min": float(r.min()), "median": float(np.median(r)), "max": float(r.max())}


def _run(result_id, trials, seed, draw, max_attempts=None) -> TrialSummary:
    rng = np.random.default_rng(seed)
    out = TrialSummary(result_id)
    attempts = 0
    max_attempts = max_attempts or 5 * trials
    while out.trials < trials and attempts < max_attempts:
        attempts += 1
        try:
            certs = draw(rng)
        except HypothesisFails:
            out.skipped += 1
            continue
        for cert in certs:
            out.record(cert)
    return out


def _dims(rng, lo=2, hi=6):
    return int(rng.integers(lo, hi + 1))


def _pair(rng, dim, n):
    return random_family(rng, dim, n), random_family(rng, dim, n)


def pushforward_suite(trials=200, seed=0, unitary=False) -> TrialSummary:
    def draw(rng):
        d1 = _dims(rng)
        d2 = d1 if unitary else _dims(rng)
        F = random_family(rng, d1, int(rng.integers(d1, d1 + 4)))
        K = np.eye(d1) if unitary else random_matrix(rng, d1, d1, rank=int(rng.integers(1, d1 + 1)))
        T = random_unitary(rng, d1) if unitary else random_matrix(rng, d2, d1)
        return [th.pushforward_frame(F, K, T)[1]]

    return _run("L2.1", trials, seed, draw)


def woven_pushforward_suite(trials=200, seed=0) -> TrialSummary:
    def draw(rng):
        d1, d2 = _dims(rng), _dims(rng)
        F, G = _pair(rng, d1, int(rng.integers(max(3, d1), 8)))
        K = random_matrix(rng, d1, d1, rank=int(rng.integers(1, d1 + 1)))
        return [th.woven_pushforward(F, G, K, random_matrix(rng, d2, d1))]

    return _run("P2.3", trials, seed, draw)


def _injective(rng):
    d1 = _dims(rng, 1, 5)
    d2 = int(rng.integers(d1, 7))
    return d1, d2, random_matrix(rng, d2, d1)


def pullback_suite(trials=100, seed=0) -> TrialSummary:
    def draw(rng):
        d1, d2, T = _injective(rng)
        F = random_family(rng, d1, int(rng.integers(d1, d1 + 4)))
        K = random_matrix(rng, d2, d2)
        return [th.pullback_frame(F, T, K)]

    return _run("L2.2", trials, seed, draw)


def woven_pullback_suite(trials=100, seed=0, scaled_unitary=False) -> TrialSummary:
    def draw(rng):
        if scaled_unitary:
            d1 = d2 = _dims(rng)
            T = rng.uniform(0.2, 5.0) * random_unitary(rng, d1)
        else:
            d1, d2, T = _injective(rng)
        F, G = _pair(rng, d1, int(rng.integers(max(3, d1), 8)))
        return [th.woven_pullback(F, G, T, random_matrix(rng, d2, d2))]

    return _run("P2.4", trials, seed, draw)


def kstar_suite(trials=100, seed=0) -> TrialSummary:
    def draw(rng):
        d = _dims(rng)
        F, G = _pair(rng, d, int(rng.integers(max(3, d), 8)))
        K = random_unitary(rng, d) if rng.random() < 0.5 else \
            random_matrix(rng, d, d, rank=int(rng.integers(1, d + 1)))
        return [th.range_equivalence_kstar(F, G, K, "forward"),
                th.range_equivalence_kstar(F, G, K, "backward")]

    return _run("P2.5", trials, seed, draw)


def krange_suite(trials=100, seed=0) -> TrialSummary:
    def draw(rng):
        d = _dims(rng)
        r = int(rng.integers(1, d + 1))
        K = random_matrix(rng, d, d, rank=r)
        n = int(rng.integers(max(3, r), 8))
        # vectors drawn inside R(K)
        F = FrameFamily(random_matrix(rng, n, d) @ K.T, dim=d)
        G = FrameFamily(random_matrix(rng, n, d) @ K.T, dim=d)
        return [th.range_equivalence_k(F, G, K, "forward"),
                th.range_equivalence_k(F, G, K, "backward")]

    return _run("P2.6", trials, seed, draw)


def perturbation_suite(trials=100, seed=0) -> TrialSummary:
    def draw(rng):
        d = _dims(rng, 2, 4)
        F, G = _pair(rng, d, int(rng.integers(max(3, d), 7)))
        K = random_matrix(rng, d, d)
        alphas = rng.uniform(0.1, 0.9, size=3)
        E = random_matrix(rng, d, d)
        # ||E|| <= 0.9 * alpha3 makes the inequality hold for every f
        E *= 0.9 * alphas[2] / np.linalg.norm(E, 2)
        p = th.PerturbationParams(*alphas)
        return [th.perturbed_woven_cert(F, G, K + E, K, p, probes=4, seed=0)]

    return _run("T2.7", trials, seed, draw)


def corollary_suite(trials=100, seed=0) -> TrialSummary:
    def draw(rng):
        d = _dims(rng, 2, 4)
        F, G = _pair(rng, d, int(rng.integers(max(3, d), 7)))
        K = random_matrix(rng, d, d)
        T = K * (1.0 + rng.uniform(-0.2, 0.2)) if rng.random() < 0.5 else \
            K + 0.05 * random_matrix(rng, d, d)
        p = th.PerturbationParams(0.3, 0.3)
        return [th.perturbed_woven_cert(F, G, T, K, p, corollary=True, probes=4, seed=0)]

    return _run("C2.7", trials, seed, draw)


def erasure_suite(trials=100, seed=0, mode="identity") -> TrialSummary:
    def draw(rng):
        d1 = _dims(rng, 2, 4)
        n = int(rng.integers(2 * d1 + 1, 2 * d1 + 3))
        J = [int(j) for j in rng.choice(n, size=int(rng.integers(0, 3)), replace=False)]
        # weak erased components keep the erasure constant below threshold
        V = random_matrix(rng, n, d1)
        V[J] *= 0.2
        F, G = FrameFamily(V, dim=d1), random_family(rng, d1, n)
        if mode == "pullback":
            d2 = int(rng.integers(d1, 6))
            T = random_matrix(rng, d2, d1)
            K = random_matrix(rng, d2, d2)
        else:
            K = random_matrix(rng, d1, d1)
            T = random_matrix(rng, _dims(rng, 2, 4), d1) if mode == "pushforward" else None
        return [th.erasure_woven_cert(F, G, J, K, T, mode=mode)]

    return _run({"identity": "C2.9", "pushforward": "T2.8", "pullback": "T2.10"}[mode],
                trials, seed, draw)
