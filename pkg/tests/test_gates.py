import numpy as np
import pytest

from conftest import random_unitary
from hybridqudit.errors import (
    DimensionError,
    RangeError,
    ShapeError,
    UnsupportedConfigurationError,
    ValidationError,
)
from hybridqudit.gates import (
    Gate,
    compound_projectors,
    controlled_u,
    fourier,
    fredkin,
    fredkin_int,
    fredkin_int_parity,
    full_swap,
    identity,
    partial_swap,
    pauli_x,
    pauli_z,
    sum_forms,
    sum_gate,
    sum_projectors,
    sum_prime,
    swap_fujii,
    swap_via_sums,
    toffoli,
    toffoli_int,
    toffoli_int_compound,
    trace_swap_via_sums,
    zeta,
)
from hybridqudit.linalg import max_entry_distance_up_to_phase
from hybridqudit.register import HybridRegister

DIMS = range(2, 7)
PAIRS = [(a, b) for a in range(2, 7) for b in range(2, 7)]


def permutation_oracle(dims, rule):
    """Matrix with a single 1 per column at rule(digits)."""
    reg = HybridRegister(dims)
    out = np.zeros((reg.dimension, reg.dimension))
    for col in range(reg.dimension):
        out[reg.index(rule(reg.digits(col))), col] = 1
    return out


@pytest.mark.parametrize("d", range(2, 9))
def test_weyl_commutation(d):
    x, z = pauli_x(d).matrix, pauli_z(d).matrix
    assert np.allclose(z @ x, zeta(d) * x @ z)
    assert np.allclose(np.linalg.matrix_power(x, d), np.eye(d))
    assert np.allclose(np.linalg.matrix_power(z, d), np.eye(d), atol=1e-12)


@pytest.mark.parametrize("d", range(2, 9))
def test_fourier_order_and_parity(d):
    f = fourier(d).matrix
    f2 = f @ f
    assert np.allclose(np.linalg.matrix_power(f, 4), np.eye(d), atol=1e-10)
    for s in range(d):
        assert np.allclose(f2[:, s], np.eye(d)[(-s) % d], atol=1e-10)
    # F diagonalizes the shift
    assert np.allclose(f.conj().T @ pauli_z(d).matrix @ f, pauli_x(d).matrix, atol=1e-12)


def test_fourier_two_is_hadamard():
    assert np.allclose(fourier(2).matrix, np.array([[1, 1], [1, -1]]) / np.sqrt(2))


@pytest.mark.parametrize("d_c,d_t", PAIRS)
def test_sum_oracle_and_forms(d_c, d_t):
    ref = permutation_oracle((d_c, d_t), lambda m: (m[0], (m[1] + m[0]) % d_t))
    assert np.array_equal(sum_gate(d_c, d_t).matrix.real, ref)
    for name, form in sum_forms(d_c, d_t).items():
        assert np.array_equal(form, ref), name


def test_sum_three_two_projectors():
    fam = sum_projectors(3, 2)
    assert np.array_equal(np.diag(fam.members[0]), [1, 0, 1])
    assert np.array_equal(np.diag(fam.members[1]), [0, 1, 0])
    assert fam.is_resolution_of_identity()


def test_sum_projectors_incomplete_when_dc_lt_dt():
    assert sum_projectors(2, 3).is_resolution_of_identity()
    assert len(sum_projectors(2, 3).members) == 2


@pytest.mark.parametrize("d_c,d_t", PAIRS)
def test_sum_prime_identities(d_c, d_t):
    dp = sum_prime(d_c, d_t).matrix
    f2 = fourier(d_t).matrix @ fourier(d_t).matrix
    assert np.allclose(dp, sum_gate(d_c, d_t).matrix @ np.kron(np.eye(d_c), f2), atol=1e-10)
    assert np.allclose(dp @ dp, np.eye(d_c * d_t), atol=1e-10)


@pytest.mark.parametrize("d_c,d_t", PAIRS)
def test_partial_swap(d_c, d_t):
    dp = min(d_c, d_t)

    def rule(m):
        return (m[1], m[0]) if m[0] < dp and m[1] < dp else m

    assert np.array_equal(partial_swap(d_c, d_t).matrix.real, permutation_oracle((d_c, d_t), rule))


def test_partial_swap_cutoff_range():
    with pytest.raises(RangeError):
        partial_swap(3, 2, 3)
    with pytest.raises(RangeError):
        partial_swap(3, 3, 1)
    assert partial_swap(4, 3, 2).matrix.shape == (12, 12)


@pytest.mark.parametrize("d", range(2, 6))
def test_swap_constructions_equal_dims(d):
    ref = full_swap(d).matrix
    assert max_entry_distance_up_to_phase(swap_via_sums(d, d).matrix, ref) <= 1e-9
    assert max_entry_distance_up_to_phase(swap_fujii(d).matrix, ref) <= 1e-9


def test_swap_via_sums_counterexample_chain():
    assert trace_swap_via_sums(3, 2, (0, 1)) == [(0, 1), (0, 1), (2, 1), (2, 1), (1, 1)]
    col = swap_via_sums(3, 2).matrix[:, HybridRegister((3, 2)).index((0, 1))]
    assert col[HybridRegister((3, 2)).index((1, 1))] == 1


@pytest.mark.parametrize("d_c,d_t", [(3, 2), (2, 3), (4, 2), (5, 3)])
def test_swap_via_sums_fails_for_unequal_dims(d_c, d_t):
    g = swap_via_sums(d_c, d_t).matrix
    reg = HybridRegister((d_c, d_t))
    dmin = min(d_c, d_t)
    swapped = all(
        g[reg.index((j, i)), reg.index((i, j))] == 1 for i in range(dmin) for j in range(dmin)
    )
    assert not swapped


def test_swap_fujii_requires_equal_dims():
    with pytest.raises(UnsupportedConfigurationError):
        swap_fujii(3, 2)


DIMS3 = [(a, b, c) for a in range(2, 5) for b in range(2, 5) for c in range(2, 5)]


@pytest.mark.parametrize("dims", DIMS3)
def test_toffoli(dims):
    d1, d2, dt = dims
    ref = permutation_oracle(dims, lambda m: (m[0], m[1], (m[2] + m[0] * m[1]) % dt))
    assert np.array_equal(toffoli_int(*dims), ref)
    assert np.array_equal(toffoli_int(*dims), toffoli_int_compound(*dims))
    assert compound_projectors(*dims).is_resolution_of_identity()
    t = toffoli(*dims).matrix
    assert np.allclose(np.linalg.matrix_power(t, dt), np.eye(t.shape[0]), atol=1e-9)


@pytest.mark.parametrize("dims", DIMS3)
def test_fredkin(dims):
    dc, d1, d2 = dims
    dp = min(d1, d2)

    def rule(m):
        c, a, b = m
        if c % 2 == 1 and a < dp and b < dp:
            return (c, b, a)
        return m

    ref = permutation_oracle(dims, rule)
    assert np.array_equal(fredkin_int(*dims), ref)
    assert np.array_equal(fredkin_int_parity(*dims), ref)
    assert np.array_equal(fredkin(*dims).matrix.real, ref)


def test_controlled_u(rng):
    us = [random_unitary(rng, 3) for _ in range(2)]
    g = controlled_u(2, us).matrix
    assert np.allclose(g[:3, :3], us[0])
    assert np.allclose(g[3:, 3:], us[1])
    assert np.allclose(g[:3, 3:], 0)
    with pytest.raises(ShapeError):
        controlled_u(3, us)
    with pytest.raises(ValidationError):
        controlled_u(2, [us[0], 2 * us[1]])


def test_controlled_u_reproduces_sum():
    us = [np.linalg.matrix_power(pauli_x(2).matrix, s) for s in range(3)]
    assert np.allclose(controlled_u(3, us).matrix, sum_gate(3, 2).matrix)


def test_gate_validation():
    with pytest.raises(ValidationError):
        Gate("bad", (2,), np.array([[1, 1], [0, 1]]))
    with pytest.raises(ShapeError):
        Gate("bad", (2, 2), np.eye(3))
    with pytest.raises(DimensionError):
        sum_gate(1, 2)
    g = sum_gate(3, 2)
    with pytest.raises(ValueError):
        g.matrix[0, 0] = 5


def test_gate_algebra():
    g = sum_gate(3, 2)
    prod = g @ g.dagger()
    assert np.allclose(prod.matrix, identity(3, 2).matrix)
    with pytest.raises(ShapeError):
        g @ sum_gate(2, 3)
