"""Spin and two-mode bosonic realizations of the hybrid gates.

Bosonic modes are represented exactly on the span of Fock states with
n1 + n2 <= n_max. Every operator used here conserves n1 + n2, so truncation
introduces no error inside that span.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import DimensionError, RangeError, ValidationError
from .gates import Gate, _check_dim, _root_powers, fourier
from .linalg import max_entry_distance_up_to_phase


def spin_dimension(j):
    """2j + 1 for a spin given as int, float, Fraction or a string like "3/2"."""
    jf = Fraction(j) if not isinstance(j, float) else Fraction(j).limit_denominator(2)
    two_j = 2 * jf
    if two_j.denominator != 1 or two_j < 1:
        raise DimensionError(f"spin must be a positive half-integer, got {j!r}")
    return int(two_j) + 1


@dataclass(frozen=True)
class SpinSystem:
    j: Fraction

    def __post_init__(self):
        object.__setattr__(self, "j", Fraction(spin_dimension(self.j) - 1, 2))

    @property
    def dim(self):
        return int(2 * self.j) + 1


def number_operator(j):
    """N = J_z + j I = diag(0, 1, ..., 2j)."""
    d = spin_dimension(j)
    return np.diag(np.arange(d, dtype=np.complex128))


def spin_jz(j):
    d = spin_dimension(j)
    return number_operator(j) - (d - 1) / 2 * np.eye(d)


def spin_x(j):
    """sum_n |n+1><n| with the top level wrapping to |0>."""
    d = spin_dimension(j)
    x = np.zeros((d, d), dtype=np.complex128)
    x[(np.arange(d) + 1) % d, np.arange(d)] = 1.0
    return x


def spin_z(j):
    """exp(i 2 pi N / (2j + 1))."""
    d = spin_dimension(j)
    return np.diag(np.exp(2j * np.pi * np.diag(number_operator(j)).real / d))


def controlled_phase(d_c, d_t):
    """zeta_{d_t}^(N_c N_t): diagonal with entries zeta_{d_t}^(m n)."""
    _check_dim(d_c, d_t)
    m, n = np.meshgrid(np.arange(d_c), np.arange(d_t), indexing="ij")
    return Gate("CPHASE", (d_c, d_t), np.diag(_root_powers((m * n).ravel(), d_t)))


def sum_from_phase(d_c, d_t):
    """(I (x) F^dag) zeta_{d_t}^(N_c N_t) (I (x) F)."""
    f = fourier(d_t).matrix
    local = np.kron(np.eye(d_c), f)
    v = controlled_phase(d_c, d_t).matrix
    return Gate("SUM_FROM_PHASE", (d_c, d_t), local.conj().T @ v @ local)


def three_body_phase(d_1, d_2, d_3, theta):
    """W(theta) = exp(i theta N_1 N_2 N_3)."""
    _check_dim(d_1, d_2, d_3)
    n = np.indices((d_1, d_2, d_3)).reshape(3, -1)
    return Gate("W", (d_1, d_2, d_3), np.diag(np.exp(1j * theta * n.prod(axis=0))))


def toffoli_from_phase(d_1, d_2, d_3):
    """(I (x) I (x) F^dag) W(2 pi / d_3) (I (x) I (x) F)."""
    f = fourier(d_3).matrix
    local = np.kron(np.eye(d_1 * d_2), f)
    w = three_body_phase(d_1, d_2, d_3, 2 * np.pi / d_3).matrix
    return Gate("TOFFOLI_FROM_PHASE", (d_1, d_2, d_3), local.conj().T @ w @ local)


# ---- two bosonic modes --------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedTwoMode:
    """Fock states (n1, n2) with n1 + n2 <= n_max, grouped by total photon number."""

    n_max: int

    def __post_init__(self):
        if not isinstance(self.n_max, (int, np.integer)) or self.n_max < 1:
            raise RangeError(f"n_max must be a positive integer, got {self.n_max!r}")

    @cached_property
    def basis(self):
        return [(n - k, k) for n in range(self.n_max + 1) for k in range(n + 1)]

    @property
    def dim(self):
        return len(self.basis)

    @cached_property
    def blocks(self):
        """Index slice of each total-number block, n = 0..n_max."""
        out, start = [], 0
        for n in range(self.n_max + 1):
            out.append(slice(start, start + n + 1))
            start += n + 1
        return out

    @cached_property
    def block_of(self):
        return np.array([n1 + n2 for n1, n2 in self.basis])

    def number(self, mode):
        return np.diag(np.array([b[mode - 1] for b in self.basis], dtype=np.complex128))

    @cached_property
    def j_plus(self):
        """a1^dag a2: |n1, n2> -> sqrt((n1 + 1) n2) |n1 + 1, n2 - 1>."""
        index = {b: i for i, b in enumerate(self.basis)}
        m = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for i, (n1, n2) in enumerate(self.basis):
            if n2 > 0:
                m[index[(n1 + 1, n2 - 1)], i] = np.sqrt((n1 + 1) * n2)
        return m

    @property
    def j_minus(self):
        return self.j_plus.conj().T

    @property
    def j_z(self):
        return (self.number(1) - self.number(2)) / 2

    @property
    def j_x(self):
        return (self.j_plus + self.j_minus) / 2

    @property
    def j_y(self):
        return (self.j_plus - self.j_minus) / 2j

    def offblock_norm(self, op):
        """Largest entry of ``op`` coupling different total-number blocks."""
        mask = self.block_of[:, None] != self.block_of[None, :]
        return float(np.max(np.abs(op[mask]), initial=0.0))

    def exp_i(self, h, theta):
        """exp(i theta H) for Hermitian, number-conserving H, block by block."""
        if np.max(np.abs(h - h.conj().T)) > 1e-12:
            raise ValidationError("generator is not Hermitian")
        if self.offblock_norm(h) > 1e-12:
            raise ValidationError("generator does not conserve total photon number")
        out = np.zeros_like(h)
        for blk in self.blocks:
            w, v = np.linalg.eigh(h[blk, blk])
            out[blk, blk] = (v * np.exp(1j * theta * w)) @ v.conj().T
        return out


def schwinger_commutator_defects(n_max):
    """Residuals of [J_z, J_+] = J_+, [J_z, J_-] = -J_-, [J_+, J_-] = 2 J_z."""
    modes = TruncatedTwoMode(n_max)
    jz, jp, jm = modes.j_z, modes.j_plus, modes.j_minus

    def comm(a, b):
        return a @ b - b @ a

    return (
        float(np.max(np.abs(comm(jz, jp) - jp))),
        float(np.max(np.abs(comm(jz, jm) + jm))),
        float(np.max(np.abs(comm(jp, jm) - 2 * jz))),
    )


def bosonic_swap(n_max):
    """S_12 = exp(i pi a2^dag a2) exp((pi/2)(a1^dag a2 - a2^dag a1))."""
    modes = TruncatedTwoMode(n_max)
    # (pi/2)(J+ - J-) = i (pi/2) H with Hermitian H = -i (J+ - J-)
    h = -1j * (modes.j_plus - modes.j_minus)
    return modes.exp_i(modes.number(2), np.pi) @ modes.exp_i(h, np.pi / 2)


def _controlled_diag(d, diag_modes, theta):
    """exp(i theta N (x) diag_modes) with N the control number operator."""
    values = np.diag(diag_modes).real
    return np.diag(np.concatenate([np.exp(1j * theta * m * values) for m in range(d)]))


def bosonic_fredkin(d, n_max):
    """Five-factor controlled swap on control (dim d) (x) two truncated modes.

    exp(i pi a2^dag a2 N) exp(i pi/4 (a1^dag a2 + h.c.)) exp(i pi/2 a1^dag a1 N)
    exp(-i pi/2 a2^dag a2 N) exp(-i pi/4 (a1^dag a2 + h.c.)), in that product order.
    """
    _check_dim(d)
    modes = TruncatedTwoMode(n_max)
    hop = modes.j_plus + modes.j_minus
    eye_c = np.eye(d)
    n1, n2 = modes.number(1), modes.number(2)
    factors = [
        _controlled_diag(d, n2, np.pi),
        np.kron(eye_c, modes.exp_i(hop, np.pi / 4)),
        _controlled_diag(d, n1, np.pi / 2),
        _controlled_diag(d, n2, -np.pi / 2),
        np.kron(eye_c, modes.exp_i(hop, -np.pi / 4)),
    ]
    out = factors[0]
    for f in factors[1:]:
        out = out @ f
    return out


@dataclass
class FredkinBlockReport:
    d: int
    n_max: int
    distances: dict
    offblock: float

    @property
    def max_distance(self):
        return max(self.distances.values())


def fredkin_block_report(d, n_max):
    """Compare :func:`bosonic_fredkin` with S_12^m on every (control m, total n) block.

    Distances are max-entry distances up to a phase chosen per block.
    """
    modes = TruncatedTwoMode(n_max)
    full = bosonic_fredkin(d, n_max)
    s12 = bosonic_swap(n_max)
    md = modes.dim
    control_of = np.repeat(np.arange(d), md)
    total_of = np.tile(modes.block_of, d)
    mask = (control_of[:, None] != control_of[None, :]) | (total_of[:, None] != total_of[None, :])
    offblock = float(np.max(np.abs(full[mask]), initial=0.0))
    distances = {}
    for m in range(d):
        sm = np.linalg.matrix_power(s12, m)
        rows = slice(m * md, (m + 1) * md)
        sub = full[rows, rows]
        for n, blk in enumerate(modes.blocks):
            distances[(m, n)] = max_entry_distance_up_to_phase(sub[blk, blk], sm[blk, blk])
    return FredkinBlockReport(d, n_max, distances, offblock)


def uprime_sides(d, n_max):
    """Both sides of exp(i pi/2 J_x) exp(i pi J_z N) exp(-i pi/2 J_x) = exp(i pi J_y N)."""
    modes = TruncatedTwoMode(n_max)
    eye_c = np.eye(d)
    rot = np.kron(eye_c, modes.exp_i(modes.j_x, np.pi / 2))
    lhs = rot @ _controlled_diag(d, modes.j_z, np.pi) @ rot.conj().T
    rhs = np.zeros((d * modes.dim,) * 2, dtype=np.complex128)
    for m in range(d):
        rows = slice(m * modes.dim, (m + 1) * modes.dim)
        rhs[rows, rows] = modes.exp_i(modes.j_y, np.pi * m)
    return lhs, rhs
