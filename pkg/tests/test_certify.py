import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dianorm.bipartite import BipartiteOperator, choi_from_kraus, partial_trace_w
from dianorm.certify import (
    Verdict,
    certify_lower,
    certify_upper,
    gen_cptp_choi,
    gen_upper_saturator,
    holder_saturation,
    iterated_holder,
    norm12_gap,
    norm12_saturation,
    range_basis,
)
from dianorm.exceptions import DegenerateInputError, DimensionError
from dianorm.linalg import TOL_LIN, herm_eig, nuclear_norm, random_unitary
from dianorm.seesaw import SeesawConfig, square_norm

from conftest import gaussian, ket

FAST = SeesawConfig(restarts=4)


def unit(rng, n):
    v = gaussian(rng, n, 1)[:, 0]
    return v / np.linalg.norm(v)


def test_lower_examples(rng):
    assert certify_lower(choi_from_kraus([np.eye(2)]).choi).verdict is Verdict.LOWER_SATURATED
    assert certify_lower(BipartiteOperator(np.eye(6), 3, 2)).verdict is Verdict.LOWER_SATURATED
    X = gen_upper_saturator(gaussian(rng, 2), unit(rng, 3), unit(rng, 3))
    assert certify_lower(X).verdict is Verdict.NEITHER


def test_lower_residual_identity_channel():
    c = certify_lower(choi_from_kraus([np.eye(2)]).choi)
    assert c.lower_residual <= 1e-14
    np.testing.assert_allclose(c.left_partial, np.eye(2), atol=1e-14)


def test_upper_examples(rng):
    psi, phi = unit(rng, 2), unit(rng, 2)
    X = gen_upper_saturator(gaussian(rng, 3), psi, phi)
    c = certify_upper(X)
    assert c.verdict is Verdict.UPPER_SATURATED
    assert abs(np.vdot(c.psi, psi)) == pytest.approx(1, abs=1e-12)
    assert abs(np.vdot(c.phi, phi)) == pytest.approx(1, abs=1e-12)
    assert certify_upper(BipartiteOperator(np.eye(4), 2, 2)).verdict is Verdict.NEITHER


def test_dim_v_one_saturates_both(rng):
    X = BipartiteOperator(gaussian(rng, 3), 3, 1)
    assert certify_lower(X).verdict is Verdict.LOWER_SATURATED
    assert certify_upper(X).verdict is Verdict.UPPER_SATURATED


def test_degenerate_verdict():
    Z = BipartiteOperator(np.zeros((4, 4)), 2, 2)
    assert certify_lower(Z).verdict is Verdict.DEGENERATE
    assert certify_upper(Z).verdict is Verdict.DEGENERATE


def test_witness_phase_gauge(rng):
    X = gen_upper_saturator(gaussian(rng, 2), unit(rng, 3), unit(rng, 3))
    c = certify_upper(X)
    for v in (c.psi, c.phi):
        first = v[np.flatnonzero(np.abs(v) > 1e-8)[0]]
        assert abs(first.imag) < 1e-14 and first.real > 0
        assert np.linalg.norm(v) == pytest.approx(1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_certificate_invariants(dw, dv, seed):
    rng = np.random.default_rng(seed)
    X = BipartiteOperator(gaussian(rng, dw * dv), dw, dv)
    c = certify_upper(X)
    nuc = nuclear_norm(X.matrix)
    for P in (c.left_partial, c.right_partial):
        assert herm_eig(P).eigenvalues[-1] >= -1e-8 * nuc
        assert np.trace(P).real == pytest.approx(nuc, abs=TOL_LIN * max(1, nuc))
    if dv >= 2:
        # a rank-1 projector is never a multiple of the identity
        assert not (certify_lower(X).saturated and c.saturated)


def test_norm12_examples(rng):
    U = random_unitary(3, rng)
    assert norm12_saturation(U)
    assert not norm12_saturation(np.diag([2.0, 1.0]))
    assert norm12_saturation((2.5 - 1j) * U)
    with pytest.raises(DegenerateInputError):
        norm12_saturation(np.zeros((2, 2)))
    with pytest.raises(DimensionError):
        norm12_saturation(np.ones((2, 3)))
    # ||X||_2 = sqrt 5 vs ||X||_1 / sqrt 2 = 3 / sqrt 2
    assert norm12_gap(np.diag([2.0, 1.0])) == pytest.approx(np.sqrt(5) - 3 / np.sqrt(2))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.sampled_from(["unitary", "scaled", "random"]))
def test_norm12_agrees_with_norm_gap(n, seed, kind):
    rng = np.random.default_rng(seed)
    if kind == "random":
        X = gaussian(rng, n)
    else:
        X = random_unitary(n, rng) * (1.0 if kind == "unitary" else 3.7 * np.exp(1j))
    direct = abs(norm12_gap(X)) <= 1e-8 * np.linalg.norm(X)
    assert norm12_saturation(X) == direct


def test_holder_examples(rng):
    r = holder_saturation(random_unitary(3, rng), gaussian(rng, 3))
    assert r.saturated and r.singular_check and r.isometry_check
    e1 = np.outer(ket(2, 0), ket(2, 0))
    e2 = np.outer(ket(2, 1), ket(2, 1))
    A = np.diag([2.0, 1.0])
    r = holder_saturation(A, e1)
    assert r.saturated and r.conditions_agree and r.equality_gap == pytest.approx(0)
    r = holder_saturation(A, e2)
    assert not r.saturated and r.conditions_agree
    assert r.equality_gap == pytest.approx(1)
    with pytest.raises(DegenerateInputError):
        holder_saturation(np.zeros((2, 2)), e1)


def test_holder_zero_b_is_vacuous():
    r = holder_saturation(np.diag([2.0, 1.0]), np.zeros((2, 2)))
    assert r.saturated and r.conditions_agree and r.rank == 0


def test_range_basis(rng):
    G = gaussian(rng, 5, 2) @ gaussian(rng, 2, 5)
    P = range_basis(G)
    assert P.shape == (5, 2)
    np.testing.assert_allclose(P @ P.conj().T @ G, G, atol=1e-12)


def saturating_pair(rng, n, k):
    """A with a k-fold degenerate top singular value; ran(B) inside that top subspace."""
    U, W = random_unitary(n, rng), random_unitary(n, rng)
    top = rng.uniform(1.0, 3.0)
    s = np.concatenate([np.full(k, top), rng.uniform(0.0, 0.9 * top, n - k)])
    A = U @ np.diag(s) @ W.conj().T
    B = W[:, :k] @ gaussian(rng, k, n)
    return A, B


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.data())
def test_holder_conditions_equivalent(n, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    kind = data.draw(st.sampled_from(["unitary", "degenerate", "random"]))
    if kind == "unitary":
        A, B = random_unitary(n, rng) * 2.0, gaussian(rng, n)
    elif kind == "degenerate":
        A, B = saturating_pair(rng, n, data.draw(st.integers(1, n - 1)))
    else:
        A, B = gaussian(rng, n), gaussian(rng, n)
    r = holder_saturation(A, B, tol=1e-8)
    assert r.conditions_agree
    assert r.saturated == (kind != "random")


def test_iterated_examples(rng):
    B = gaussian(rng, 3)
    assert iterated_holder(random_unitary(3, rng), B, random_unitary(3, rng)).saturated
    e1 = np.outer(ket(2, 0), ket(2, 0))
    A = np.diag([2.0, 1.0])
    assert iterated_holder(A, e1, e1).saturated
    r = iterated_holder(A, np.eye(2), np.eye(2))
    assert not r.saturated and r.equality_gap == pytest.approx(1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.data())
def test_iterated_equivalence(n, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    kind = data.draw(st.sampled_from(["saturating", "left-only", "random"]))
    k = data.draw(st.integers(1, n - 1))
    U, W, Q, R = (random_unitary(n, rng) for _ in range(4))
    top_a, top_c = rng.uniform(1, 3, 2)
    sa = np.concatenate([np.full(k, top_a), rng.uniform(0, 0.9 * top_a, n - k)])
    sc = np.concatenate([np.full(k, top_c), rng.uniform(0, 0.9 * top_c, n - k)])
    A = U @ np.diag(sa) @ W.conj().T
    C = Q @ np.diag(sc) @ R.conj().T
    # ran(B) in A's top right subspace, ran(B^H) in C's top left subspace
    B = W[:, :k] @ gaussian(rng, k, k) @ Q[:, :k].conj().T
    if kind == "left-only":
        B = W[:, :k] @ gaussian(rng, k, n)
    elif kind == "random":
        A, B, C = gaussian(rng, n), gaussian(rng, n), gaussian(rng, n)
    r = iterated_holder(A, B, C)
    assert r.saturated == r.conditions_hold
    assert r.saturated == (kind == "saturating")


@pytest.mark.parametrize("dims,kraus", [((2, 2), 1), ((2, 2), 4), ((3, 2), 2)])
def test_gen_cptp(dims, kraus):
    X = gen_cptp_choi(*dims, kraus, seed=11)
    assert certify_lower(X).verdict is Verdict.LOWER_SATURATED
    np.testing.assert_allclose(partial_trace_w(X), np.eye(dims[1]), atol=TOL_LIN)


def test_gen_cptp_single_kraus_is_unitary_channel():
    X = gen_cptp_choi(2, 2, 1, seed=3)
    w = herm_eig(X.matrix).eigenvalues
    np.testing.assert_allclose(w, [2, 0, 0, 0], atol=1e-12)


def test_gen_cptp_errors():
    with pytest.raises(ValueError):
        gen_cptp_choi(2, 2, 0, seed=0)
    with pytest.raises(DimensionError):
        gen_cptp_choi(1, 3, 2, seed=0)


def test_gen_upper_examples(rng):
    e1 = ket(2, 0)
    X = gen_upper_saturator(np.eye(2), e1, e1)
    assert square_norm(X, FAST).value == pytest.approx(4, rel=1e-12)
    psi = unit(rng, 2)
    phi = np.array([-np.conj(psi[1]), np.conj(psi[0])])
    Y = gaussian(rng, 3)
    c = certify_upper(gen_upper_saturator(Y, psi, phi))
    nY = nuclear_norm(Y)
    np.testing.assert_allclose(c.left_partial, nY * np.outer(psi, psi.conj()), atol=1e-12)
    np.testing.assert_allclose(c.right_partial, nY * np.outer(phi, phi.conj()), atol=1e-12)
    X1 = gen_upper_saturator(Y, [1.0], [1j])
    assert certify_lower(X1).saturated and certify_upper(X1).saturated


def test_gen_upper_errors():
    with pytest.raises(DegenerateInputError):
        gen_upper_saturator(np.zeros((2, 2)), ket(2, 0), ket(2, 0))
    with pytest.raises(ValueError):
        gen_upper_saturator(np.eye(2), [1.0, 1.0], ket(2, 0))
    with pytest.raises(DimensionError):
        gen_upper_saturator(np.eye(2), ket(2, 0), ket(3, 0))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]), st.integers(0, 2**32 - 1))
def test_lower_round_trip(dims, seed):
    rng = np.random.default_rng(seed)
    dw, dv = dims
    # a channel needs at least ceil(dv / dw) Kraus operators
    X = gen_cptp_choi(dw, dv, int(rng.integers(-(-dv // dw), 5)), seed)
    assert square_norm(X, FAST).value == pytest.approx(nuclear_norm(X.matrix), rel=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]), st.integers(0, 2**32 - 1))
def test_upper_round_trip(dims, seed):
    rng = np.random.default_rng(seed)
    dw, dv = dims
    X = gen_upper_saturator(gaussian(rng, dw), unit(rng, dv), unit(rng, dv))
    assert square_norm(X, FAST).value == pytest.approx(dv * nuclear_norm(X.matrix), rel=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]), st.integers(0, 2**32 - 1))
def test_strict_gaps(dims, seed):
    rng = np.random.default_rng(seed)
    X = BipartiteOperator(gaussian(rng, dims[0] * dims[1]), *dims)
    c = certify_upper(X)
    nuc = nuclear_norm(X.matrix)
    v = square_norm(X, FAST).value
    if c.lower_residual > 0.05:
        assert v > nuc * (1 + 1e-4)
    if c.upper_residual > 0.05:
        assert v < dims[1] * nuc * (1 - 1e-4)
