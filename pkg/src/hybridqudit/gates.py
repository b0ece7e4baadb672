"""Constructors for the hybrid gate library.

Permutation-type gates (X, SUM, D', partial SWAP, Toffoli, Fredkin) are first built
as integer 0/1 arrays by the ``*_int`` helpers so that alternative algebraic forms
can be compared exactly; the public constructors wrap them in :class:`Gate`.
"""

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import (
    DimensionError,
    RangeError,
    ShapeError,
    UnsupportedConfigurationError,
    ValidationError,
)
from .linalg import as_matrix, kron, unitarity_defect
from .register import HybridRegister, embed

UNITARY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Gate:
    """A unitary together with the dimensions of the sites it acts on."""

    name: str
    site_dims: tuple
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        dims = tuple(int(d) for d in self.site_dims)
        n = prod(dims)
        if m.shape != (n, n):
            raise ShapeError(f"{self.name}: matrix {m.shape} does not act on dims {dims}")
        defect = unitarity_defect(m)
        if defect > UNITARY_TOL:
            raise ValidationError(f"{self.name}: not unitary (defect {defect:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "site_dims", dims)

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def num_sites(self):
        return len(self.site_dims)

    def dagger(self):
        return Gate(self.name + "^dag", self.site_dims, self.matrix.conj().T)

    def __matmul__(self, other):
        if tuple(other.site_dims) != self.site_dims:
            raise ShapeError("cannot compose gates on different site dims")
        return Gate(f"{self.name}*{other.name}", self.site_dims, self.matrix @ other.matrix)

    def __repr__(self):
        return f"Gate({self.name!r}, site_dims={self.site_dims})"


def _check_dim(*dims):
    for d in dims:
        if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 2:
            raise DimensionError(f"dimension must be an integer >= 2, got {d!r}")


def zeta(d):
    return np.exp(2j * np.pi / d)


def _root_powers(exponents, d):
    """zeta_d ** exponents, with exponents reduced mod d before exponentiating.

    Quarter turns are returned exactly (1, i, -1, -i).
    """
    e = np.atleast_1d(np.asarray(exponents) % d)
    out = np.exp(2j * np.pi * e / d)
    quarter = (4 * e) % d == 0
    out[quarter] = np.array([1, 1j, -1, -1j])[(4 * e[quarter]) // d]
    return out[0] if np.ndim(exponents) == 0 else out


# ---- integer building blocks -------------------------------------------------


def projector_int(n, d):
    p = np.zeros((d, d), dtype=np.int64)
    p[n, n] = 1
    return p


def shift_int(d, power=1):
    """X^power on Z_d as an integer permutation matrix: |s> -> |s+power mod d>."""
    s = np.arange(d)
    x = np.zeros((d, d), dtype=np.int64)
    x[(s + power) % d, s] = 1
    return x


def parity_int(d):
    """F^2 = |s> -> |-s mod d>."""
    s = np.arange(d)
    p = np.zeros((d, d), dtype=np.int64)
    p[(-s) % d, s] = 1
    return p


def primitive_projectors(d):
    """P_n = |n><n| for n in Z_d."""
    _check_dim(d)
    return [projector_int(n, d) for n in range(d)]


@dataclass(frozen=True, eq=False)
class ProjectorFamily:
    dim: int
    members: tuple

    def is_resolution_of_identity(self):
        total = sum(self.members)
        return np.array_equal(total, np.eye(self.dim, dtype=total.dtype))


def sum_projectors(d_c, d_t):
    """Pi_s = sum of P_n over n < d_c with n = s (mod d_t), for s < min(d_c, d_t)."""
    _check_dim(d_c, d_t)
    members = []
    for s in range(min(d_c, d_t)):
        pi = np.zeros((d_c, d_c), dtype=np.int64)
        for n in range(s, d_c, d_t):
            pi[n, n] = 1
        members.append(pi)
    return ProjectorFamily(d_c, tuple(members))


def parity_projectors(d_c):
    """(Pi_+, Pi_-): sums of P_m over even and odd m."""
    _check_dim(d_c)
    m = np.arange(d_c)
    return (np.diag((m % 2 == 0).astype(np.int64)), np.diag((m % 2 == 1).astype(np.int64)))


def sum_int(d_c, d_t):
    """SUM as sum_{n < d_c} P_n (x) X^(n mod d_t)."""
    _check_dim(d_c, d_t)
    out = np.zeros((d_c * d_t, d_c * d_t), dtype=np.int64)
    for n in range(d_c):
        out += np.kron(projector_int(n, d_c), shift_int(d_t, n % d_t))
    return out


def sum_int_grouped(d_c, d_t):
    """SUM in the grouped form sum_{s < d_min} Pi_s (x) X^s."""
    family = sum_projectors(d_c, d_t)
    out = np.zeros((d_c * d_t, d_c * d_t), dtype=np.int64)
    for s, pi in enumerate(family.members):
        out += np.kron(pi, shift_int(d_t, s))
    return out


def sum_forms(d_c, d_t):
    """Integer matrices of every available algebraic form of the SUM gate.

    Keys: ``"primitive"`` (sum over P_n), ``"grouped"`` (sum over Pi_s up to d_min),
    and ``"grouped_dc_gt_dt"`` (the Pi_s form restricted to d_c > d_t; present only
    when d_c > d_t).
    """
    forms = {"primitive": sum_int(d_c, d_t), "grouped": sum_int_grouped(d_c, d_t)}
    if d_c > d_t:
        out = np.zeros_like(forms["primitive"])
        for s in range(d_t):
            pi = np.diag((np.arange(d_c) % d_t == s).astype(np.int64))
            out += np.kron(pi, shift_int(d_t, s))
        forms["grouped_dc_gt_dt"] = out
    return forms


def sum_prime_int(d_c, d_t):
    """|m, n> -> |m, m - n mod d_t>."""
    _check_dim(d_c, d_t)
    out = np.zeros((d_c * d_t, d_c * d_t), dtype=np.int64)
    for m in range(d_c):
        for n in range(d_t):
            out[m * d_t + (m - n) % d_t, m * d_t + n] = 1
    return out


def partial_swap_int(d_c, d_t, d_p):
    _check_dim(d_c, d_t)
    if not isinstance(d_p, (int, np.integer)) or not 2 <= d_p <= min(d_c, d_t):
        raise RangeError(f"partial-SWAP cutoff d_P={d_p} outside [2, {min(d_c, d_t)}]")
    out = np.zeros((d_c * d_t, d_c * d_t), dtype=np.int64)
    for i in range(d_c):
        for j in range(d_t):
            if i < d_p and j < d_p:
                out[j * d_t + i, i * d_t + j] = 1
            else:
                out[i * d_t + j, i * d_t + j] = 1
    return out


def toffoli_int(d_c, d_c2, d_t):
    """T as sum_s P_s (x) D^s, with D the SUM gate on (d_c2, d_t)."""
    _check_dim(d_c, d_c2, d_t)
    d = sum_int(d_c2, d_t)
    out = np.zeros((d_c * d_c2 * d_t,) * 2, dtype=np.int64)
    for s in range(d_c):
        out += np.kron(projector_int(s, d_c), np.linalg.matrix_power(d, s))
    return out


def compound_projectors(d_c, d_c2, d_t):
    """Pi_m = sum of P_r (x) P_s over r*s = m (mod d_t)."""
    _check_dim(d_c, d_c2, d_t)
    members = [np.zeros((d_c * d_c2,) * 2, dtype=np.int64) for _ in range(d_t)]
    for r in range(d_c):
        for s in range(d_c2):
            members[(r * s) % d_t][r * d_c2 + s, r * d_c2 + s] = 1
    return ProjectorFamily(d_c * d_c2, tuple(members))


def toffoli_int_compound(d_c, d_c2, d_t):
    """T as sum_m Pi_m (x) X^m over compound projectors."""
    family = compound_projectors(d_c, d_c2, d_t)
    out = np.zeros((d_c * d_c2 * d_t,) * 2, dtype=np.int64)
    for m, pi in enumerate(family.members):
        out += np.kron(pi, shift_int(d_t, m))
    return out


def fredkin_int(d_c, d_1, d_2, d_p=None):
    """sum_m P_m (x) S_P^m."""
    _check_dim(d_c, d_1, d_2)
    if d_p is None:
        d_p = min(d_1, d_2)
    sp = partial_swap_int(d_1, d_2, d_p)
    out = np.zeros((d_c * d_1 * d_2,) * 2, dtype=np.int64)
    for m in range(d_c):
        out += np.kron(projector_int(m, d_c), np.linalg.matrix_power(sp, m))
    return out


def fredkin_int_parity(d_c, d_1, d_2, d_p=None):
    """Pi_+ (x) I + Pi_- (x) S_P."""
    _check_dim(d_c, d_1, d_2)
    if d_p is None:
        d_p = min(d_1, d_2)
    sp = partial_swap_int(d_1, d_2, d_p)
    plus, minus = parity_projectors(d_c)
    return np.kron(plus, np.eye(d_1 * d_2, dtype=np.int64)) + np.kron(minus, sp)


# ---- public constructors -------------------------------------------------------


def pauli_x(d):
    _check_dim(d)
    return Gate("X", (d,), shift_int(d))


def pauli_z(d):
    _check_dim(d)
    return Gate("Z", (d,), np.diag(_root_powers(np.arange(d), d)))


def fourier(d):
    """F[k, s] = zeta_d^(s k) / sqrt(d)."""
    _check_dim(d)
    k = np.arange(d)
    return Gate("F", (d,), _root_powers(np.outer(k, k), d) / np.sqrt(d))


def identity(*dims):
    _check_dim(*dims)
    return Gate("I", dims, np.eye(prod(dims)))


def sum_gate(d_c, d_t):
    return Gate("SUM", (d_c, d_t), sum_int(d_c, d_t))


def sum_prime(d_c, d_t):
    return Gate("SUMP", (d_c, d_t), sum_prime_int(d_c, d_t))


def partial_swap(d_c, d_t, d_p=None):
    """S_P: swaps |i, j> when both i, j < d_P, identity otherwise.

    ``d_p`` defaults to min(d_c, d_t).
    """
    _check_dim(d_c, d_t)
    if d_p is None:
        d_p = min(d_c, d_t)
    return Gate("PSWAP", (d_c, d_t), partial_swap_int(d_c, d_t, d_p))


def full_swap(d):
    _check_dim(d)
    return Gate("SWAP", (d, d), partial_swap_int(d, d, d))


def sum_reversed_int(d_c, d_t):
    """D_21 on the (d_c, d_t) register: site 2 controls a shift of site 1."""
    reg = HybridRegister((d_c, d_t))
    return np.rint(embed(sum_int(d_t, d_c), reg, (1, 0)).real).astype(np.int64)


def swap_via_sums_steps(d_c, d_t):
    """The four factors of (F^2 (x) I) D_12 D_21^-1 D_12, in order of application."""
    _check_dim(d_c, d_t)
    d12 = sum_int(d_c, d_t)
    d21_inv = sum_reversed_int(d_c, d_t).T
    f2 = np.kron(parity_int(d_c), np.eye(d_t, dtype=np.int64))
    return [("D12", d12), ("D21^-1", d21_inv), ("D12", d12), ("F2(x)I", f2)]


def swap_via_sums(d_c, d_t):
    """(F^2 (x) I) D_12 D_21^-1 D_12 on (d_c, d_t).

    A full SWAP when d_c == d_t. For d_c != d_t the product is still unitary but
    does not swap, even on labels below min(d_c, d_t).
    """
    out = np.eye(d_c * d_t, dtype=np.int64)
    for _, factor in swap_via_sums_steps(d_c, d_t):
        out = factor @ out
    return Gate("SWAP3", (d_c, d_t), out)


def trace_swap_via_sums(d_c, d_t, digits):
    """Basis-state chain produced by each factor of :func:`swap_via_sums`."""
    reg = HybridRegister((d_c, d_t))
    idx = reg.index(digits)
    chain = [reg.digits(idx)]
    for _, factor in swap_via_sums_steps(d_c, d_t):
        col = factor[:, idx]
        if np.count_nonzero(col) != 1:
            raise ValidationError("factor is not a permutation")
        idx = int(np.flatnonzero(col)[0])
        chain.append(reg.digits(idx))
    return chain


def swap_fujii(d_c, d_t=None):
    """D_12 (F^2 (x) I) D_21 (F^2 (x) I) D_12 (I (x) F^2), only for equal dims."""
    if d_t is None:
        d_t = d_c
    _check_dim(d_c, d_t)
    if d_c != d_t:
        raise UnsupportedConfigurationError(
            f"the six-factor SWAP is only defined for equal dims, got ({d_c}, {d_t})"
        )
    d = d_c
    d12 = sum_int(d, d)
    d21 = sum_reversed_int(d, d)
    f2_1 = np.kron(parity_int(d), np.eye(d, dtype=np.int64))
    f2_2 = np.kron(np.eye(d, dtype=np.int64), parity_int(d))
    return Gate("SWAP_FUJII", (d, d), d12 @ f2_1 @ d21 @ f2_1 @ d12 @ f2_2)


def controlled_u(d_c, unitaries):
    """sum_s P_s (x) U_s for a list of d_c unitaries of equal size."""
    _check_dim(d_c)
    mats = [as_matrix(u) for u in unitaries]
    if len(mats) != d_c:
        raise ShapeError(f"need {d_c} target unitaries, got {len(mats)}")
    n = mats[0].shape[0]
    for s, u in enumerate(mats):
        if u.shape != (n, n):
            raise ShapeError(f"U_{s} has shape {u.shape}, expected {(n, n)}")
        defect = unitarity_defect(u)
        if defect > UNITARY_TOL:
            raise ValidationError(f"U_{s} is not unitary (defect {defect:.3g})")
    target_dims = getattr(unitaries[0], "site_dims", (n,))
    out = sum(kron(projector_int(s, d_c), u) for s, u in enumerate(mats))
    return Gate("CU", (d_c, *target_dims), out)


def toffoli(d_c, d_c2, d_t):
    return Gate("TOFFOLI", (d_c, d_c2, d_t), toffoli_int(d_c, d_c2, d_t))


def fredkin(d_c, d_1, d_2, d_p=None):
    """Controlled partial swap; ``d_p`` defaults to min(d_1, d_2)."""
    return Gate("FREDKIN", (d_c, d_1, d_2), fredkin_int(d_c, d_1, d_2, d_p))
