"""Schmidt decompositions, entropies, and the SUM gate's operator entanglement."""

from dataclasses import dataclass
from math import log2, prod
from typing import NamedTuple

import numpy as np

from .errors import PartitionError, RangeError, ShapeError
from .gates import _check_dim, sum_gate
from .linalg import as_matrix, realign, svd
from .register import HybridRegister, apply, product_state

COEFF_CUTOFF = 1e-12
LEMMA1_KINDS = ("gamma", "alpha_t", "alpha_beta")


@dataclass(frozen=True)
class SchmidtData:
    """Descending Schmidt weights p_n (summing to one) and their factor pairs.

    For states the factors are vectors; for operators they are matrices that are
    orthonormal under the Hilbert-Schmidt product.
    """

    coefficients: np.ndarray
    left: tuple
    right: tuple

    @property
    def schmidt_number(self):
        return len(self.coefficients)


@dataclass(frozen=True)
class EntanglementReport:
    entropy_bits: float
    schmidt_number: int
    coefficients: np.ndarray


def entropy(s):
    """Von Neumann entropy in bits, -sum p log2 p with 0 log 0 = 0."""
    p = np.asarray(getattr(s, "coefficients", s), dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p))) + 0.0 if p.size else 0.0


def report(s):
    return EntanglementReport(entropy(s), s.schmidt_number, s.coefficients)


def _check_cut(reg, cut):
    left, right = (tuple(int(i) for i in side) for side in cut)
    if not left or not right:
        raise PartitionError("both sides of the cut must be non-empty")
    if sorted(left + right) != list(range(reg.size)) or set(left) & set(right):
        raise PartitionError(f"cut {left}|{right} is not a partition of sites 0..{reg.size - 1}")
    return left, right


def _truncate(sv_squared_norm, result, dims_left, dims_right, reshape_factors):
    p = result.singular_values**2 / sv_squared_norm
    keep = p > COEFF_CUTOFF
    left = tuple(
        reshape_factors(result.left_vectors[:, n], dims_left) for n in np.flatnonzero(keep)
    )
    right = tuple(
        reshape_factors(result.right_vectors[:, n].conj(), dims_right) for n in np.flatnonzero(keep)
    )
    return SchmidtData(p[keep], left, right)


def schmidt_state(psi, cut):
    """Schmidt decomposition of a pure state across ``cut = (left_sites, right_sites)``.

    Left factors are vectors over the left sites in the listed order; likewise right.
    """
    reg = psi.register
    left, right = _check_cut(reg, cut)
    tensor = psi.tensor().transpose(left + right)
    dl = prod(reg.dims[i] for i in left)
    dr = prod(reg.dims[i] for i in right)
    result = svd(tensor.reshape(dl, dr))
    return _truncate(1.0, result, dl, dr, lambda v, _d: v)


def state_entropy(psi, cut):
    return entropy(schmidt_state(psi, cut))


def operator_schmidt(q, dims=None):
    """Operator Schmidt decomposition of a two-part operator via realignment + SVD.

    ``dims = (d_A, d_B)`` defaults to the gate's two site dims. Weights are
    p_n = s_n^2 / ||Q||^2 (= s_n^2 / (d_A d_B) for unitaries).
    """
    if dims is None:
        site_dims = getattr(q, "site_dims", None)
        if site_dims is None or len(site_dims) != 2:
            raise ShapeError("operator_schmidt needs a two-site gate or explicit dims")
        dims = site_dims
    da, db = (int(d) for d in dims)
    m = as_matrix(q)
    r = realign(m, da, db)
    norm2 = float(np.vdot(m, m).real)
    result = svd(r)
    return _truncate(norm2, result, da, db, lambda v, d: v.reshape(d, d))


def operator_entanglement(q, dims=None):
    return entropy(operator_schmidt(q, dims))


def operator_entanglement_cut(q, reg, cut):
    """Operator entanglement of a multi-site operator across a site bipartition."""
    reg = reg if isinstance(reg, HybridRegister) else HybridRegister(tuple(reg))
    left, right = _check_cut(reg, cut)
    order = left + right
    m = as_matrix(q).reshape(reg.dims + reg.dims)
    perm = order + tuple(reg.size + i for i in order)
    dl = prod(reg.dims[i] for i in left)
    dr = prod(reg.dims[i] for i in right)
    m = m.transpose(perm).reshape(dl * dr, dl * dr)
    return operator_entanglement(m, (dl, dr))


class SumEntanglementParams(NamedTuple):
    d_c: int
    d_t: int
    quotient: int
    remainder: int


def sum_params(d_c, d_t):
    """d_c = K d_t + r with 0 <= r < d_t (K = 0, r = d_c when d_c < d_t)."""
    _check_dim(d_c, d_t)
    k, r = divmod(d_c, d_t)
    return SumEntanglementParams(d_c, d_t, k, r)


def sum_schmidt_weights(d_c, d_t):
    """Closed-form operator Schmidt weights of SUM(d_c, d_t), in Pi_s order."""
    _, _, k, r = sum_params(d_c, d_t)
    return [(k + 1) / d_c if s < r else k / d_c for s in range(min(d_c, d_t))]


def _xlog2x(x):
    return x * log2(x) if x > 0 else 0.0


def e_sum_closed_form(d_c, d_t):
    """Operator entanglement (bits) of SUM(d_c, d_t) from its Schmidt weights:

        -r (K+1)/d_c log2((K+1)/d_c) - (d_t - r) K/d_c log2(K/d_c)

    where d_c = K d_t + r; terms with a zero weight contribute nothing.
    """
    _, _, k, r = sum_params(d_c, d_t)
    return -r * _xlog2x((k + 1) / d_c) - (d_t - r) * _xlog2x(k / d_c)


# ---- entanglement generated by SUM --------------------------------------------------


def uniform_state(d):
    return np.full(d, 1.0 / np.sqrt(d), dtype=np.complex128)


def max_entangled(d):
    """(1/sqrt d) sum_m |m>|m>."""
    return np.eye(d, dtype=np.complex128).ravel() / np.sqrt(d)


def basis_vector(d, t):
    v = np.zeros(d, dtype=np.complex128)
    v[t] = 1.0
    return v


def lemma1_state(kind, d_c, d_t, t=0):
    """Initial product state, SUM placement and entanglement cut for one experiment.

    gamma:      |gamma>|t>       on (d_c, d_t);            SUM on (0, 1); cut {0}|{1}
    alpha_t:    |alpha>|t>       on (d_c, d_c, d_t);       SUM on (1, 2); cut {0,1}|{2}
    alpha_beta: |alpha>|beta>    on (d_c, d_c, d_t, d_t);  SUM on (1, 2); cut {0,1}|{2,3}
    """
    _check_dim(d_c, d_t)
    if kind == "gamma":
        if not 0 <= t < d_t:
            raise RangeError(f"target basis index {t} outside Z_{d_t}")
        psi = product_state((d_c, d_t), [uniform_state(d_c), basis_vector(d_t, t)])
        return psi, (0, 1), ((0,), (1,))
    if kind == "alpha_t":
        if not 0 <= t < d_t:
            raise RangeError(f"target basis index {t} outside Z_{d_t}")
        psi = product_state((d_c, d_c, d_t), [max_entangled(d_c), basis_vector(d_t, t)])
        return psi, (1, 2), ((0, 1), (2,))
    if kind == "alpha_beta":
        psi = product_state((d_c, d_c, d_t, d_t), [max_entangled(d_c), max_entangled(d_t)])
        return psi, (1, 2), ((0, 1), (2, 3))
    raise ValueError(f"unknown initial-state kind {kind!r}; expected one of {LEMMA1_KINDS}")


class Lemma1Result(NamedTuple):
    generated_entropy: float
    operator_entropy: float

    @property
    def difference(self):
        return abs(self.generated_entropy - self.operator_entropy)


def lemma1_experiment(kind, d_c, d_t, t=0):
    """Entropy generated by SUM on a product state vs the SUM operator entanglement."""
    psi, placement, cut = lemma1_state(kind, d_c, d_t, t)
    gate = sum_gate(d_c, d_t)
    out = apply(psi, gate, placement)
    return Lemma1Result(state_entropy(out, cut), operator_entanglement(gate))


# ---- entanglement sweep over (d_c, d_t) ---------------------------------------


class SweepRow(NamedTuple):
    d_c: int
    d_t: int
    entropy_bits: float


def fig1_sweep(dc_range, dt_set):
    """Closed-form SUM operator entanglement on a grid, d_t-major then d_c ascending."""
    dcs = sorted(set(int(d) for d in dc_range))
    dts = sorted(set(int(d) for d in dt_set))
    if not dcs or not dts:
        raise ValueError("sweep ranges must be non-empty")
    return [SweepRow(dc, dt, e_sum_closed_form(dc, dt)) for dt in dts for dc in dcs]


def asymptote_violations(rows, exact_tol=1e-12):
    """Rows breaking the approach to log2(d_t).

    For d_c >= d_t the gap |E - log2 d_t| must not exceed log2(d_t) * d_t / d_c,
    and it must vanish (within ``exact_tol``) whenever d_t divides d_c.
    """
    bad = []
    for row in rows:
        target = log2(row.d_t)
        gap = abs(row.entropy_bits - target)
        if row.d_c >= row.d_t and gap > target * row.d_t / row.d_c:
            bad.append(row)
        elif row.d_c % row.d_t == 0 and gap > exact_tol:
            bad.append(row)
    return bad


def sum_oracle_entanglement(d_c, d_t):
    """Operator entanglement of SUM(d_c, d_t) through realignment + Jacobi SVD."""
    return operator_entanglement(sum_gate(d_c, d_t))
