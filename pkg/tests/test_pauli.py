import itertools

import numpy as np
import pytest

from conftest import random_unitary
from hybridqudit.errors import RangeError, ShapeError, ValidationError
from hybridqudit.gates import fourier, sum_gate, pauli_x, pauli_z
from hybridqudit.pauli import (
    PauliLabel,
    automorphism_verdict,
    conjugate,
    lemma2_check,
    pauli_matrix,
    pauli_membership,
    pauli_overlaps,
    site_pauli,
    sum_z_image_formula,
)
from hybridqudit.register import HybridRegister, embed


def overlap_oracle(q, dims):
    """tr(P^dag Q) by explicit matrices for every label."""
    out = np.zeros(tuple(dims) * 2, dtype=complex)
    for js in itertools.product(*[range(d) for d in dims]):
        for ks in itertools.product(*[range(d) for d in dims]):
            p = np.ones((1, 1))
            for j, k, d in zip(js, ks, dims):
                p = np.kron(
                    p,
                    np.linalg.matrix_power(pauli_x(d).matrix, j)
                    @ np.linalg.matrix_power(pauli_z(d).matrix, k),
                )
            out[js + ks] = np.trace(p.conj().T @ q)
    return out


@pytest.mark.parametrize("dims", [(2,), (3,), (3, 2), (2, 2, 3)])
def test_overlaps_match_oracle(rng, dims):
    n = int(np.prod(dims))
    q = random_unitary(rng, n)
    assert np.allclose(pauli_overlaps(q, dims), overlap_oracle(q, dims), atol=1e-10)


def test_site_pauli():
    assert np.allclose(
        site_pauli(3, 1, 2), pauli_x(3).matrix @ pauli_z(3).matrix @ pauli_z(3).matrix
    )


@pytest.mark.parametrize("dims", [(2, 3), (3, 3), (4, 2)])
def test_membership_recovers_every_label(dims):
    reg = HybridRegister(dims)
    for exps in itertools.product(*[[(j, k) for j in range(d) for k in range(d)] for d in dims]):
        label = PauliLabel(exps, np.exp(0.3j))
        verdict = pauli_membership(pauli_matrix(label, reg), reg)
        assert verdict.is_member
        assert verdict.label.exponents == label.exponents
        assert abs(verdict.label.phase - label.phase) < 1e-12


def test_membership_rejects_non_pauli(rng):
    assert not pauli_membership(fourier(3).matrix, (3,)).is_member
    assert not pauli_membership(random_unitary(rng, 6), (3, 2)).is_member
    with pytest.raises(ValidationError):
        pauli_membership(2 * np.eye(2), (2,))
    with pytest.raises(ShapeError):
        pauli_overlaps(np.eye(5), (3, 2))


def test_pauli_matrix_errors():
    with pytest.raises(RangeError):
        pauli_matrix(PauliLabel(((3, 0),)), (3,))
    with pytest.raises(ShapeError):
        pauli_matrix(PauliLabel(((1, 0),)), (3, 2))
    with pytest.raises(ValidationError):
        PauliLabel(((0, 0),), 2.0)


def test_label_str():
    assert str(PauliLabel(((1, 2), (0, 0)))) == "X^1Z^2 (x) I"


@pytest.mark.parametrize("d_c,d_t", [(a, b) for a in range(2, 7) for b in range(2, 7)])
def test_lemma2_verdict(d_c, d_t):
    rep = lemma2_check(d_c, d_t)
    assert rep.automorphism == (d_c % d_t == 0)
    assert rep.consistent
    assert not rep.printed_z_image_holds
    by_name = {img.generator: img for img in rep.images}
    assert by_name["Z(x)I"].formula_holds
    assert by_name["I(x)X"].formula_holds
    assert by_name["I(x)Z"].formula_holds
    assert by_name["X(x)I"].formula_holds == (d_c % d_t == 0)
    if d_c % d_t == 0:
        k = d_c // d_t
        label = by_name["I(x)Z"].verdict.label
        assert label.exponents == ((0, (-k) % d_c), (0, 1))


def test_lemma2_three_two_z_image_entrywise():
    rep = lemma2_check(3, 2)
    image = rep.images[3].image
    # independent: D (I (x) Z) D^dag has diagonal phase (-1)^(n) * (-1)^(-m) on |m, n>
    expected = np.diag([(-1) ** n * (-1) ** m for m in range(3) for n in range(2)])
    assert np.max(np.abs(image - expected)) <= 1e-10
    assert np.max(np.abs(image - sum_z_image_formula(3, 2))) <= 1e-10


def test_reversed_sum_is_automorphism_iff_divisible():
    for d_c, d_t in [(2, 4), (3, 6), (3, 2), (4, 6)]:
        reg = HybridRegister((d_c, d_t))
        d21 = embed(sum_gate(d_t, d_c), reg, (1, 0))
        assert automorphism_verdict(d21, reg) == (d_t % d_c == 0)


def test_conjugate_shape_check():
    with pytest.raises(ShapeError):
        conjugate(np.eye(2), np.eye(3))
