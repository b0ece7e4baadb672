"""Hybrid registers: basis states, index flattening, and gate placement."""

from dataclasses import dataclass
from functools import cached_property
from math import prod

import numpy as np

from ._backend import kernels
from .errors import (
    DimensionError,
    DimensionTooLargeError,
    PlacementError,
    RangeError,
    ShapeError,
)
from .linalg import as_matrix, max_dimension


@dataclass(frozen=True)
class HybridRegister:
    """Ordered site dimensions (d_1, ..., d_N), flattened big-endian."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(self.dims)
        if not dims:
            raise DimensionError("a register needs at least one site")
        for d in dims:
            if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 2:
                raise DimensionError(f"site dimension must be an integer >= 2, got {d!r}")
        dims = tuple(int(d) for d in dims)
        limit = max_dimension()
        if prod(dims) > limit:
            raise DimensionTooLargeError(
                f"register {dims} has dimension {prod(dims)} > bound {limit} (set HQ_MAX_DIM)"
            )
        object.__setattr__(self, "dims", dims)

    @property
    def size(self):
        return len(self.dims)

    @property
    def dimension(self):
        return prod(self.dims)

    @cached_property
    def strides(self):
        out, acc = [], 1
        for d in reversed(self.dims):
            out.append(acc)
            acc *= d
        return tuple(reversed(out))

    def index(self, digits):
        digits = tuple(digits)
        if len(digits) != self.size:
            raise RangeError(f"expected {self.size} digits, got {len(digits)}")
        for i, (m, d) in enumerate(zip(digits, self.dims)):
            if not 0 <= m < d:
                raise RangeError(f"digit {m} at site {i} outside Z_{d}")
        return sum(m * s for m, s in zip(digits, self.strides))

    def digits(self, index):
        if not 0 <= index < self.dimension:
            raise RangeError(f"index {index} outside register of dimension {self.dimension}")
        return tuple(int(x) for x in np.unravel_index(index, self.dims))

    def check_placement(self, targets):
        targets = tuple(int(t) for t in targets)
        if not targets:
            raise PlacementError("placement needs at least one site")
        if len(set(targets)) != len(targets):
            raise PlacementError(f"repeated site in placement {targets}")
        for t in targets:
            if not 0 <= t < self.size:
                raise PlacementError(f"site {t} outside register of {self.size} sites")
        return targets

    def offsets(self, targets):
        """Index offsets splitting a full index into (rest, targeted sub-index).

        Full index of sub-index ``a`` (big-endian over ``targets`` in listed order)
        within complement configuration ``r`` is ``rest[r] + sub[a]``.
        """
        targets = self.check_placement(targets)
        others = [i for i in range(self.size) if i not in targets]
        return (
            _offset_table([self.dims[t] for t in targets], [self.strides[t] for t in targets]),
            _offset_table([self.dims[o] for o in others], [self.strides[o] for o in others]),
        )


def _offset_table(dims, strides):
    out = np.zeros(1, dtype=np.intp)
    for d, s in zip(dims, strides):
        out = (out[:, None] + np.arange(d, dtype=np.intp)[None, :] * s).ravel()
    return out


@dataclass(frozen=True)
class StateVector:
    register: HybridRegister
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if amps.size != self.register.dimension:
            raise ShapeError(
                f"{amps.size} amplitudes for a register of dimension {self.register.dimension}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self):
        return self.amplitudes.reshape(self.register.dims)

    def nonzero(self, tol=1e-12):
        """(index, digits, amplitude) for each amplitude with modulus above ``tol``."""
        return [
            (int(i), self.register.digits(int(i)), complex(self.amplitudes[i]))
            for i in np.flatnonzero(np.abs(self.amplitudes) > tol)
        ]


def _register(reg):
    return reg if isinstance(reg, HybridRegister) else HybridRegister(tuple(reg))


def basis_state(reg, digits):
    reg = _register(reg)
    amps = np.zeros(reg.dimension, dtype=np.complex128)
    amps[reg.index(digits)] = 1.0
    return StateVector(reg, amps)


def product_state(reg, factors):
    """Tensor product of per-group vectors; ``factors`` must cover the sites in order."""
    reg = _register(reg)
    amps = np.ones(1, dtype=np.complex128)
    for f in factors:
        amps = np.kron(amps, np.asarray(f, dtype=np.complex128).ravel())
    return StateVector(reg, amps)


def _gate_dim_check(gate, reg, targets):
    g = as_matrix(gate)
    expected = prod(reg.dims[t] for t in targets)
    if g.shape != (expected, expected):
        raise ShapeError(
            f"gate of shape {g.shape} does not match targeted dims "
            f"{[reg.dims[t] for t in targets]} (dimension {expected})"
        )
    site_dims = getattr(gate, "site_dims", None)
    if site_dims is not None and tuple(site_dims) != tuple(reg.dims[t] for t in targets):
        raise ShapeError(
            f"gate site dims {tuple(site_dims)} do not match targeted dims "
            f"{tuple(reg.dims[t] for t in targets)}"
        )
    return g


def embed(gate, reg, targets):
    """Full-register operator acting as ``gate`` on ``targets`` and identity elsewhere.

    ``targets`` may be non-adjacent or permuted; the gate's first tensor factor acts
    on ``targets[0]`` and so on.
    """
    reg = _register(reg)
    targets = reg.check_placement(targets)
    g = _gate_dim_check(gate, reg, targets)
    sub, rest = reg.offsets(targets)
    full = np.zeros((reg.dimension, reg.dimension), dtype=g.dtype)
    rows = rest[:, None, None] + sub[None, :, None]
    cols = rest[:, None, None] + sub[None, None, :]
    full[rows, cols] = g[None, :, :]
    return full


def apply(state, gate, targets):
    """Apply ``gate`` on ``targets`` of ``state`` without renormalizing."""
    reg = state.register
    targets = reg.check_placement(targets)
    g = np.ascontiguousarray(_gate_dim_check(gate, reg, targets))
    sub, rest = reg.offsets(targets)
    out = kernels.apply_gate(g, state.amplitudes, sub, rest)
    return StateVector(reg, out)
