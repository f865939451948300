import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wkframes import FrameFamily, bessel_bound, frame_bounds, frame_operator, kframe_bounds
from wkframes.errors import DimensionMismatch, EmptyFamily, NonFinite, ZeroK, ZeroSubspace

import oracles
from conftest import E1, E2, crandn, fam, onb


def mercedes_benz():
    ang = np.deg2rad([90.0, 210.0, 330.0])
    return FrameFamily(np.stack([np.cos(ang), np.sin(ang)], axis=1))


@pytest.mark.parametrize("F, expected", [
    (onb(2), np.eye(2)),
    (fam(E1, E1, E2), np.diag([2.0, 1.0])),
])
def test_frame_operator_trivial(F, expected):
    np.testing.assert_allclose(frame_operator(F), expected, atol=1e-15)


def test_mercedes_benz_frame_operator():
    F = mercedes_benz()
    expected = oracles.frame_operator_loop(F.vectors)
    np.testing.assert_allclose(expected, 1.5 * np.eye(2), atol=1e-12)
    np.testing.assert_allclose(frame_operator(F), expected, atol=1e-12)


def test_frame_operator_is_synthesis_times_analysis(rng):
    F = FrameFamily(crandn(rng, 5, 3))
    V = F.synthesis
    np.testing.assert_allclose(frame_operator(F), V @ V.conj().T, atol=1e-13)
    f = crandn(rng, 3)
    np.testing.assert_allclose(frame_operator(F) @ f, V @ F.analysis(f), atol=1e-13)


def test_family_validation():
    with pytest.raises(NonFinite):
        FrameFamily([[np.inf, 0.0]])
    with pytest.raises(DimensionMismatch):
        FrameFamily([[1.0, 0.0]], dim=3)
    F = onb(2)
    with pytest.raises(ValueError):
        F.vectors[0, 0] = 5


@pytest.mark.parametrize("F, sub, lower, upper, is_frame", [
    (onb(2), None, 1.0, 1.0, True),
    (fam(E1, E1, E2), None, 1.0, 2.0, True),
    (fam(E1), np.array([[1.0], [0.0]]), 1.0, 1.0, True),
    (fam(E1), None, 0.0, 1.0, False),
])
def test_frame_bounds_examples(F, sub, lower, upper, is_frame):
    b = frame_bounds(F, subspace=sub)
    assert b.lower == pytest.approx(lower, abs=1e-12)
    assert b.upper == pytest.approx(upper, abs=1e-12)
    assert b.is_frame is is_frame


def test_frame_bounds_errors():
    with pytest.raises(EmptyFamily):
        frame_bounds(FrameFamily(np.zeros((0, 2)), dim=2))
    with pytest.raises(ZeroSubspace):
        frame_bounds(onb(2), subspace=np.zeros((2, 1)))


def test_bounds_dominate_sampling(rng):
    for _ in range(5):
        d = int(rng.integers(2, 5))
        F = FrameFamily(crandn(rng, d + 2, d))
        b = frame_bounds(F)
        f = crandn(rng, 10000, d)
        f /= np.linalg.norm(f, axis=1, keepdims=True)
        sums = (np.abs(f.conj() @ F.vectors.T) ** 2).sum(axis=1)
        assert b.lower <= sums.min() + 1e-6
        assert b.upper >= sums.max() - 1e-6
        # witnesses attain the bounds exactly
        for wv, target in ((b.lower_witness, b.lower), (b.upper_witness, b.upper)):
            assert np.linalg.norm(wv) == pytest.approx(1.0)
            assert (np.abs(F.analysis(wv)) ** 2).sum() == pytest.approx(target, rel=1e-9, abs=1e-12)
        lo, hi = oracles.bounds(F.vectors)
        assert b.lower == pytest.approx(lo, abs=1e-10)
        assert b.upper == pytest.approx(hi, rel=1e-10)


def test_bessel_bound_is_op_norm_squared(rng):
    for _ in range(10):
        V = crandn(rng, int(rng.integers(1, 7)), 3)
        F = FrameFamily(V)
        ref = np.linalg.norm(V.T, 2) ** 2
        assert bessel_bound(F) == pytest.approx(ref, rel=1e-10)
        assert frame_bounds(F).upper == pytest.approx(ref, rel=1e-10)
    assert bessel_bound(FrameFamily(np.zeros((0, 2)), dim=2)) == 0.0


@pytest.mark.parametrize("F, K, lower, upper, tight", [
    (fam(E1), np.diag([1.0, 0.0]), 1.0, 1.0, True),
    (onb(2), np.eye(2), 1.0, 1.0, True),
    (fam(E1, E2 / 2), np.diag([1.0, 0.0]), 1.0, 1.0, False),
])
def test_kframe_bounds_examples(F, K, lower, upper, tight):
    b = kframe_bounds(F, K)
    assert b.lower == pytest.approx(lower, abs=1e-12)
    assert b.upper == pytest.approx(upper, abs=1e-12)
    assert b.is_kframe
    assert b.is_tight is tight
    if tight:
        assert b.tight_constant == pytest.approx(lower, abs=1e-12)
    else:
        assert b.tight_constant is None


def test_kframe_oracle_and_tight_sampling(rng):
    for _ in range(10):
        d = int(rng.integers(2, 5))
        r = int(rng.integers(1, d + 1))
        K = crandn(rng, d, r) @ crandn(rng, r, d)
        F = FrameFamily(crandn(rng, d + 1, d))
        b = kframe_bounds(F, K)
        ref = oracles.pencil_lower(oracles.frame_operator_loop(F.vectors), K @ K.conj().T)
        assert b.lower == pytest.approx(ref, rel=1e-8, abs=1e-10)
        # the lower witness attains the quotient
        w = b.lower_witness
        num = (np.abs(F.analysis(w)) ** 2).sum()
        den = np.linalg.norm(K.conj().T @ w) ** 2
        assert num / den == pytest.approx(b.lower, rel=1e-8)


def test_tight_kframe_equality_on_samples(rng):
    # {K e_i} with K a partial isometry composed with a scale is tight
    Q = np.linalg.qr(crandn(rng, 3, 3))[0]
    K = 2.0 * Q @ np.diag([1.0, 1.0, 0.0]) @ Q.conj().T
    F = FrameFamily(np.eye(3) @ K.T)  # rows K e_i
    b = kframe_bounds(F, K)
    assert b.is_tight
    f = crandn(rng, 1000, 3)
    lhs = (np.abs(f.conj() @ F.vectors.T) ** 2).sum(axis=1)
    rhs = b.tight_constant * np.linalg.norm(f @ K.conj(), axis=1) ** 2
    assert np.max(np.abs(lhs - rhs)) <= 1e-9 * max(1, lhs.max())


def test_k_identity_reproduces_frame_bounds(rng):
    for _ in range(10):
        F = FrameFamily(crandn(rng, 4, 3))
        a, b = frame_bounds(F), kframe_bounds(F, np.eye(3))
        assert b.lower == pytest.approx(a.lower, abs=1e-10)
        assert b.upper == pytest.approx(a.upper, abs=1e-10)


def test_kframe_errors():
    with pytest.raises(ZeroK):
        kframe_bounds(onb(2), np.zeros((2, 2)))
    with pytest.raises(DimensionMismatch):
        kframe_bounds(onb(2), np.eye(3))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_appending_never_decreases_lower(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 4))
    F = FrameFamily(crandn(rng, d, d))
    v = crandn(rng, 1, d)
    G = FrameFamily(np.vstack([F.vectors, v]))
    K = crandn(rng, d, d)
    assert frame_bounds(G).lower >= frame_bounds(F).lower - 1e-10
    assert kframe_bounds(G, K).lower >= kframe_bounds(F, K).lower * (1 - 1e-9) - 1e-10


def test_zero_padding_equals_removal(rng):
    V = crandn(rng, 4, 3)
    K = crandn(rng, 3, 3)
    F = FrameFamily(V)
    P = FrameFamily(np.vstack([V, np.zeros((2, 3))]))
    assert frame_bounds(P).lower == pytest.approx(frame_bounds(F).lower, abs=1e-12)
    assert kframe_bounds(P, K).lower == pytest.approx(kframe_bounds(F, K).lower, rel=1e-12)
    removed = FrameFamily(np.vstack([V, V[:2]])).without([4, 5])
    assert removed == F


def test_full_subspace_changes_nothing(rng):
    for _ in range(5):
        F = FrameFamily(crandn(rng, 5, 3))
        a = frame_bounds(F)
        b = frame_bounds(F, subspace=crandn(rng, 3, 3))
        assert b.lower == pytest.approx(a.lower, abs=1e-10)
        assert b.upper == pytest.approx(a.upper, rel=1e-10)
