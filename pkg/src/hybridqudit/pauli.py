"""Generalized Pauli operators on hybrid registers and conjugation by the SUM gate."""

from dataclasses import dataclass, field

import numpy as np

from .errors import RangeError, ShapeError, ValidationError
from .gates import _check_dim, _root_powers, pauli_x, pauli_z, sum_gate
from .linalg import as_matrix, kron_all, max_entry_distance, unitarity_defect
from .register import HybridRegister, embed

MEMBER_TOL = 1e-9


@dataclass(frozen=True)
class PauliLabel:
    """phase * (x)_i X_i^{j_i} Z_i^{k_i}; ``exponents`` holds one (j_i, k_i) per site."""

    exponents: tuple
    phase: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple((int(j), int(k)) for j, k in self.exponents))
        if abs(abs(self.phase) - 1.0) > 1e-12:
            raise ValidationError(f"global phase {self.phase} is not unit modulus")

    @classmethod
    def reduced(cls, exponents, dims, phase=1.0):
        return cls(tuple((j % d, k % d) for (j, k), d in zip(exponents, dims)), phase)

    def __str__(self):
        sites = []
        for j, k in self.exponents:
            parts = [f"X^{j}" if j else "", f"Z^{k}" if k else ""]
            sites.append("".join(p for p in parts if p) or "I")
        ph = complex(self.phase)
        prefix = "" if abs(ph - 1) < 1e-12 else f"({ph.real:.6g}{ph.imag:+.6g}j)"
        return prefix + " (x) ".join(sites)


def site_pauli(d, j, k):
    """X^j Z^k on Z_d."""
    s = np.arange(d)
    m = np.zeros((d, d), dtype=np.complex128)
    m[(s + j) % d, s] = _root_powers(k * s, d)
    return m


def pauli_matrix(label, reg):
    reg = reg if isinstance(reg, HybridRegister) else HybridRegister(tuple(reg))
    if len(label.exponents) != reg.size:
        raise ShapeError(f"label has {len(label.exponents)} sites, register has {reg.size}")
    for (j, k), d in zip(label.exponents, reg.dims):
        if not (0 <= j < d and 0 <= k < d):
            raise RangeError(f"exponents ({j}, {k}) outside Z_{d}")
    factors = [site_pauli(d, j, k) for (j, k), d in zip(label.exponents, reg.dims)]
    return complex(label.phase) * kron_all(factors)


def conjugate(gate, p):
    """G P G^dagger."""
    g = as_matrix(gate)
    p = as_matrix(p)
    if g.shape != p.shape:
        raise ShapeError(f"gate {g.shape} and operator {p.shape} differ in shape")
    return g @ p @ g.conj().T


def pauli_overlaps(q, reg):
    """tr(P^dagger Q) for every Pauli P on ``reg``, as an array of shape
    (d_1, ..., d_N, d_1, ..., d_N) indexed by (j_1..j_N, k_1..k_N).
    """
    reg = reg if isinstance(reg, HybridRegister) else HybridRegister(tuple(reg))
    q = as_matrix(q)
    n = reg.dimension
    if q.shape != (n, n):
        raise ShapeError(f"operator {q.shape} does not act on register {reg.dims}")
    digits = np.indices(reg.dims).reshape(reg.size, -1)
    cols = np.arange(n)
    # g[j, b] = Q[b + j, b]; tr(P^dag Q) = sum_b g[j, b] * prod_i zeta_i^(-k_i b_i)
    gathered = np.empty((n, n), dtype=np.complex128)
    for jflat in range(n):
        shift = np.unravel_index(jflat, reg.dims)
        rows = np.zeros(n, dtype=np.intp)
        for i, d in enumerate(reg.dims):
            rows += ((digits[i] + shift[i]) % d) * reg.strides[i]
        gathered[jflat] = q[rows, cols]
    table = np.fft.fftn(gathered.reshape((n, *reg.dims)), axes=range(1, reg.size + 1))
    return table.reshape(reg.dims + reg.dims)


@dataclass(frozen=True)
class MembershipVerdict:
    is_member: bool
    label: PauliLabel | None
    residual: float
    overlap: complex = field(default=0j, repr=False)


def pauli_membership(q, reg):
    """Decide whether unitary ``q`` is a Pauli element up to a global phase.

    Exhaustive over every exponent tuple; ``residual`` is d - max |tr(P^dagger q)|
    with d the register dimension. Ties go to the lexicographically first label.
    """
    reg = reg if isinstance(reg, HybridRegister) else HybridRegister(tuple(reg))
    q = as_matrix(q)
    if q.shape[0] != q.shape[1]:
        raise ShapeError(f"expected a square operator, got {q.shape}")
    defect = unitarity_defect(q)
    if defect > 1e-10:
        raise ValidationError(f"membership test needs a unitary (defect {defect:.3g})")
    table = pauli_overlaps(q, reg)
    mags = np.abs(table).ravel()
    best = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    n = reg.dimension
    residual = float(n - mags[best])
    idx = np.unravel_index(best, table.shape)
    js, ks = idx[: reg.size], idx[reg.size :]
    overlap = complex(table.ravel()[best])
    if residual > MEMBER_TOL:
        return MembershipVerdict(False, None, residual, overlap)
    phase = overlap / abs(overlap)
    label = PauliLabel(tuple(zip((int(j) for j in js), (int(k) for k in ks))), phase)
    return MembershipVerdict(True, label, residual, overlap)


# ---- SUM conjugation --------------------------------------------------------------


@dataclass
class GeneratorImage:
    generator: str
    input_label: PauliLabel
    image: np.ndarray = field(repr=False)
    verdict: MembershipVerdict
    formula: str
    formula_holds: bool

    def as_record(self):
        return {
            "generator": self.generator,
            "input_label": [list(e) for e in self.input_label.exponents],
            "member": self.verdict.is_member,
            "recovered_label": (
                [list(e) for e in self.verdict.label.exponents] if self.verdict.label else None
            ),
            "recovered_phase": (
                [self.verdict.label.phase.real, self.verdict.label.phase.imag]
                if self.verdict.label
                else None
            ),
            "residual": self.verdict.residual,
            "formula": self.formula,
            "formula_holds": self.formula_holds,
        }


@dataclass
class Lemma2Report:
    d_c: int
    d_t: int
    images: list
    automorphism: bool
    expected: bool
    reversed_automorphism: bool
    printed_z_image_holds: bool

    @property
    def consistent(self):
        return self.automorphism == self.expected

    @property
    def quotient(self):
        return self.d_c // self.d_t if self.d_c % self.d_t == 0 else None


def _generator_set(d_c, d_t):
    x_c, z_c = pauli_x(d_c).matrix, pauli_z(d_c).matrix
    x_t, z_t = pauli_x(d_t).matrix, pauli_z(d_t).matrix
    i_c, i_t = np.eye(d_c), np.eye(d_t)
    return [
        ("X(x)I", PauliLabel(((1, 0), (0, 0))), np.kron(x_c, i_t)),
        ("I(x)X", PauliLabel(((0, 0), (1, 0))), np.kron(i_c, x_t)),
        ("Z(x)I", PauliLabel(((0, 1), (0, 0))), np.kron(z_c, i_t)),
        ("I(x)Z", PauliLabel(((0, 0), (0, 1))), np.kron(i_c, z_t)),
    ]


def sum_z_image_formula(d_c, d_t):
    """(sum_s zeta_{d_c}^{-s d_c/d_t} P_s) (x) Z, with the rational exponent taken literally."""
    s = np.arange(d_c)
    control = np.diag(np.exp(-2j * np.pi * s / d_t))
    return np.kron(control, pauli_z(d_t).matrix)


def automorphism_verdict(gate, reg):
    """True iff every single-site X and Z maps to a Pauli element under conjugation."""
    reg = reg if isinstance(reg, HybridRegister) else HybridRegister(tuple(reg))
    g = as_matrix(gate)
    for site, d in enumerate(reg.dims):
        for gen in (pauli_x(d), pauli_z(d)):
            p = embed(gen, reg, [site])
            if not pauli_membership(conjugate(g, p), reg).is_member:
                return False
    return True


def lemma2_check(d_c, d_t, tol=1e-10):
    """Conjugate X(x)I, I(x)X, Z(x)I, I(x)Z by SUM(d_c, d_t) and classify the images.

    Each image is tested for Pauli membership and compared with its closed form:
    X(x)X, I(x)X, Z(x)I and the s-dependent phase form for I(x)Z (Z^-K (x) Z when
    d_t divides d_c). ``printed_z_image_holds`` records whether Z(x)I maps to Z(x)X.
    """
    _check_dim(d_c, d_t)
    d = sum_gate(d_c, d_t).matrix
    reg = HybridRegister((d_c, d_t))
    x_c, z_c = pauli_x(d_c).matrix, pauli_z(d_c).matrix
    x_t = pauli_x(d_t).matrix
    divisible = d_c % d_t == 0
    z_formula = sum_z_image_formula(d_c, d_t)
    if divisible:
        k = d_c // d_t
        z_formula_name = f"Z^-{k} (x) Z"
    else:
        z_formula_name = "sum_s zeta_dc^(-s dc/dt) P_s (x) Z"
    expected_images = {
        "X(x)I": ("X (x) X", np.kron(x_c, x_t)),
        "I(x)X": ("I (x) X", np.kron(np.eye(d_c), x_t)),
        "Z(x)I": ("Z (x) I", np.kron(z_c, np.eye(d_t))),
        "I(x)Z": (z_formula_name, z_formula),
    }
    images = []
    for name, label, p in _generator_set(d_c, d_t):
        image = conjugate(d, p)
        formula, target = expected_images[name]
        images.append(
            GeneratorImage(
                generator=name,
                input_label=label,
                image=image,
                verdict=pauli_membership(image, reg),
                formula=formula,
                formula_holds=max_entry_distance(image, target) <= tol,
            )
        )
    z_image = images[2].image
    printed = max_entry_distance(z_image, np.kron(z_c, x_t)) <= tol
    automorphism = all(img.verdict.is_member for img in images)
    d21 = embed(sum_gate(d_t, d_c), reg, (1, 0))
    return Lemma2Report(
        d_c=d_c,
        d_t=d_t,
        images=images,
        automorphism=automorphism,
        expected=divisible,
        reversed_automorphism=automorphism_verdict(d21, reg),
        printed_z_image_holds=printed,
    )
