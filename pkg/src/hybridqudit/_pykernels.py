"""Pure-Python (numpy) versions of the compiled kernels.

Both functions share their signatures with :mod:`hybridqudit._kernels`.
"""

import numpy as np


def _round_robin(n):
    """Tournament schedule: n-1 rounds of disjoint column pairs (n even)."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        half = n // 2
        ps = np.array(players[:half], dtype=np.intp)
        qs = np.array(players[half:][::-1], dtype=np.intp)
        lo = np.minimum(ps, qs)
        hi = np.maximum(ps, qs)
        rounds.append((lo, hi))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_sweeps(a, v, tol, floor, max_sweeps):
    """Orthogonalize the columns of ``a`` in place by one-sided Jacobi rotations.

    Every rotation applied to ``a`` is also applied to ``v``. Returns the number
    of sweeps used, or -1 if ``max_sweeps`` passed without convergence.

    Rotations within a round act on disjoint column pairs, so each round is a
    single vectorized update.
    """
    n = a.shape[1]
    if n < 2:
        return 1
    padded = n + (n % 2)
    if padded != n:
        a_work = np.zeros((a.shape[0], padded), dtype=np.complex128)
        v_work = np.zeros((v.shape[0], padded), dtype=np.complex128)
        a_work[:, :n] = a
        v_work[:, :n] = v
    else:
        a_work, v_work = a, v
    rounds = _round_robin(padded)

    for sweep in range(max_sweeps):
        rotated = 0
        for ps, qs in rounds:
            ap = a_work[:, ps]
            aq = a_work[:, qs]
            alpha = np.einsum("ij,ij->j", ap.conj(), ap).real
            beta = np.einsum("ij,ij->j", aq.conj(), aq).real
            gamma = np.einsum("ij,ij->j", ap.conj(), aq)
            gabs = np.abs(gamma)
            mask = (alpha > floor) & (beta > floor) & (gabs > tol * np.sqrt(alpha * beta))
            if not mask.any():
                continue
            rotated += int(mask.sum())
            ps, qs = ps[mask], qs[mask]
            alpha, beta, gamma, gabs = alpha[mask], beta[mask], gamma[mask], gabs[mask]
            phc = gamma.conj() / gabs
            zeta = (beta - alpha) / (2.0 * gabs)
            sign = np.where(zeta >= 0, 1.0, -1.0)
            t = sign / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            for mat in (a_work, v_work):
                x = mat[:, ps]
                y = mat[:, qs] * phc
                mat[:, ps] = c * x - s * y
                mat[:, qs] = s * x + c * y
        if rotated == 0:
            if padded != n:
                a[:, :] = a_work[:, :n]
                v[:, :] = v_work[:, :n]
            return sweep + 1
    if padded != n:
        a[:, :] = a_work[:, :n]
        v[:, :] = v_work[:, :n]
    return -1


def apply_gate(g, psi, sub, rest):
    """Return the state with ``g`` applied on the sub-register given by offsets.

    Full index of (complement configuration r, gate basis index a) is
    ``rest[r] + sub[a]``.
    """
    idx = rest[:, None] + sub[None, :]
    out = np.empty_like(psi)
    out[idx] = psi[idx] @ g.T
    return out
