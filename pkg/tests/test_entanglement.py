from math import log2

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_complex, random_unitary
from hybridqudit.entanglement import (
    asymptote_violations,
    e_sum_closed_form,
    entropy,
    fig1_sweep,
    lemma1_experiment,
    lemma1_state,
    operator_entanglement,
    operator_entanglement_cut,
    operator_schmidt,
    schmidt_state,
    state_entropy,
    sum_params,
    sum_schmidt_weights,
)
from hybridqudit.errors import PartitionError, RangeError, ShapeError
from hybridqudit.gates import full_swap, sum_gate, toffoli
from hybridqudit.register import HybridRegister, StateVector, basis_state


def lapack_operator_entropy(q, da, db):
    """Independent route: numpy SVD of the realigned operator, built by loops."""
    r = np.zeros((da * da, db * db), dtype=complex)
    for i1 in range(da):
        for j1 in range(da):
            for i2 in range(db):
                for j2 in range(db):
                    r[i1 * da + j1, i2 * db + j2] = q[i1 * db + i2, j1 * db + j2]
    s = np.linalg.svd(r, compute_uv=False)
    p = s**2 / np.sum(s**2)
    p = p[p > 1e-14]
    return float(-np.sum(p * np.log2(p)))


def partial_trace_entropy(psi, dims, left):
    """Independent route: eigenvalues of the reduced density matrix."""
    t = psi.reshape(dims)
    right = [i for i in range(len(dims)) if i not in left]
    t = t.transpose(list(left) + right)
    dl = int(np.prod([dims[i] for i in left]))
    m = t.reshape(dl, -1)
    w = np.linalg.eigvalsh(m @ m.conj().T)
    w = w[w > 1e-14]
    return float(-np.sum(w * np.log2(w)))


def test_entropy_conventions():
    assert entropy([1.0]) == 0.0
    assert entropy([0.5, 0.5, 0.0]) == pytest.approx(1.0)
    assert entropy([0.25] * 4) == pytest.approx(2.0)


@pytest.mark.parametrize("d_c,d_t", [(a, b) for a in range(2, 8) for b in range(2, 8)])
def test_sum_closed_form_vs_lapack(d_c, d_t):
    q = sum_gate(d_c, d_t).matrix
    ref = lapack_operator_entropy(q, d_c, d_t)
    assert e_sum_closed_form(d_c, d_t) == pytest.approx(ref, abs=1e-10)
    assert operator_entanglement(sum_gate(d_c, d_t)) == pytest.approx(ref, abs=1e-10)


@pytest.mark.parametrize("d_c,d_t", [(3, 2), (5, 3), (7, 4), (2, 5), (6, 3)])
def test_sum_schmidt_weights(d_c, d_t):
    got = operator_schmidt(sum_gate(d_c, d_t)).coefficients
    expected = sorted((w for w in sum_schmidt_weights(d_c, d_t) if w > 0), reverse=True)
    assert np.allclose(got, expected, atol=1e-12)
    assert sum(sum_schmidt_weights(d_c, d_t)) == pytest.approx(1.0)


def test_sum_params():
    assert sum_params(7, 3) == (7, 3, 2, 1)
    assert sum_params(2, 5) == (2, 5, 0, 2)


@pytest.mark.parametrize(
    "d_c,d_t,value",
    [(2, 3, 1.0), (3, 4, log2(3)), (4, 2, 1.0), (6, 3, log2(3)), (3, 2, 0.9182958340544896)],
)
def test_closed_form_values(d_c, d_t, value):
    assert e_sum_closed_form(d_c, d_t) == pytest.approx(value, abs=1e-12)


def test_operator_schmidt_factors_orthonormal():
    data = operator_schmidt(sum_gate(5, 3))
    for left in (data.left, data.right):
        gram = np.array([[np.vdot(a, b) for b in left] for a in left])
        assert np.allclose(gram, np.eye(len(left)), atol=1e-12)


def test_operator_schmidt_reconstructs(rng):
    q = random_unitary(rng, 6)
    data = operator_schmidt(q, (3, 2))
    norm = np.sqrt(np.vdot(q, q).real)
    rebuilt = sum(
        np.sqrt(p) * norm * np.kron(a, b)
        for p, a, b in zip(data.coefficients, data.left, data.right)
    )
    assert np.allclose(rebuilt, q, atol=1e-10)


def test_swap_is_maximal():
    for d in (2, 3, 4):
        assert operator_entanglement(full_swap(d)) == pytest.approx(2 * log2(d))


def test_operator_schmidt_needs_dims():
    with pytest.raises(ShapeError):
        operator_schmidt(np.eye(4))
    with pytest.raises(ShapeError):
        operator_schmidt(toffoli(2, 2, 2))


def test_operator_cut_on_three_sites():
    g = toffoli(2, 3, 2)
    reg = HybridRegister((2, 3, 2))
    for left in ((0,), (1,), (2,), (0, 2)):
        right = tuple(i for i in range(3) if i not in left)
        m = g.matrix.reshape((2, 3, 2) * 2)
        order = left + right
        m = m.transpose(order + tuple(3 + i for i in order))
        dl = int(np.prod([reg.dims[i] for i in left]))
        dr = reg.dimension // dl
        ref = lapack_operator_entropy(m.reshape(reg.dimension, -1), dl, dr)
        assert operator_entanglement_cut(g, reg, (left, right)) == pytest.approx(ref, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(dims=st.lists(st.integers(2, 4), min_size=2, max_size=4), data=st.data())
def test_state_entropy_vs_partial_trace(dims, data):
    reg = HybridRegister(tuple(dims))
    k = data.draw(st.integers(1, len(dims) - 1))
    perm = data.draw(st.permutations(range(len(dims))))
    left, right = tuple(perm[:k]), tuple(perm[k:])
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    amps = random_complex(rng, reg.dimension)
    psi = StateVector(reg, amps / np.linalg.norm(amps))
    ref = partial_trace_entropy(psi.amplitudes, dims, left)
    assert state_entropy(psi, (left, right)) == pytest.approx(ref, abs=1e-9)
    assert state_entropy(psi, (right, left)) == pytest.approx(ref, abs=1e-9)


def test_schmidt_state_product():
    data = schmidt_state(basis_state((3, 2), (1, 1)), ((0,), (1,)))
    assert data.schmidt_number == 1


@pytest.mark.parametrize("cut", [((0,), ()), ((0,), (0, 1)), ((0,), (2,))])
def test_bad_cuts(cut):
    with pytest.raises(PartitionError):
        state_entropy(basis_state((3, 2), (0, 0)), cut)


@pytest.mark.parametrize("kind", ["gamma", "alpha_t", "alpha_beta"])
@pytest.mark.parametrize("d_c,d_t", [(3, 2), (2, 3), (4, 2), (5, 3)])
def test_lemma1(kind, d_c, d_t):
    for t in range(d_t) if kind != "alpha_beta" else [0]:
        res = lemma1_experiment(kind, d_c, d_t, t)
        assert res.difference <= 1e-9
        assert res.operator_entropy == pytest.approx(e_sum_closed_form(d_c, d_t), abs=1e-10)


def test_lemma1_independent_route():
    from hybridqudit.register import apply

    psi, placement, cut = lemma1_state("alpha_beta", 3, 2)
    out = apply(psi, sum_gate(3, 2), placement)
    ref = partial_trace_entropy(out.amplitudes, (3, 3, 2, 2), cut[0])
    assert ref == pytest.approx(e_sum_closed_form(3, 2), abs=1e-10)


def test_lemma1_errors():
    with pytest.raises(RangeError):
        lemma1_state("gamma", 3, 2, t=2)
    with pytest.raises(ValueError):
        lemma1_state("delta", 3, 2)


def test_fig1_sweep_order_and_asymptote():
    rows = fig1_sweep(range(2, 21), [5, 2, 3, 4])
    assert len(rows) == 76
    assert [(r.d_t, r.d_c) for r in rows] == sorted((r.d_t, r.d_c) for r in rows)
    assert asymptote_violations(rows) == []


def test_asymptote_check_detects_violation():
    from hybridqudit.entanglement import SweepRow

    assert asymptote_violations([SweepRow(4, 2, 0.9)]) == [SweepRow(4, 2, 0.9)]
    assert asymptote_violations([SweepRow(8, 2, 0.5)]) == [SweepRow(8, 2, 0.5)]
