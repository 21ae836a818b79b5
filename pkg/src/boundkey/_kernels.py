"""Numba-compiled numerical kernels.

Everything here is deterministic: fixed cyclic pivot order, no fastmath,
no threading. Callers own input copies; ``jacobi_cyclic`` destroys its
argument.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def jacobi_cyclic(a, want_vectors, tol, max_sweeps):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(eigenvalues, vectors, sweeps)`` with unsorted real
    eigenvalues. ``sweeps`` is the number of completed sweeps, or -1 if the
    off-diagonal maximum is still above threshold after ``max_sweeps``.
    The threshold is ``tol * max(1, max|a_ij|)`` so unit-scale density
    operators see ``tol`` as an absolute bound.
    """
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            m = abs(a[i, j])
            if m > scale:
                scale = m
    thresh = tol * max(1.0, scale)
    if scale == 0.0:
        return np.zeros(n), v, 0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                m = abs(a[p, q])
                if m > off:
                    off = m
        if off <= thresh:
            return np.real(np.diag(a)).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= thresh:
                    continue
                phase = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # plane unitary diag(1, conj(phase)) @ [[c, s], [-s, c]]
                upp = c + 0.0j
                upq = s + 0.0j
                uqp = -np.conj(phase) * s
                uqq = np.conj(phase) * c
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = aip * upp + aiq * uqp
                    a[i, q] = aip * upq + aiq * uqq
                for j in range(n):
                    apj = a[p, j]
                    aqj = a[q, j]
                    a[p, j] = np.conj(upp) * apj + np.conj(uqp) * aqj
                    a[q, j] = np.conj(upq) * apj + np.conj(uqq) * aqj
                # re-symmetrize the zeroed pair against rounding drift
                a[p, q] = 0.5 * (a[p, q] + np.conj(a[q, p]))
                a[q, p] = np.conj(a[p, q])
                if want_vectors:
                    for i in range(n):
                        vip = v[i, p]
                        viq = v[i, q]
                        v[i, p] = vip * upp + viq * uqp
                        v[i, q] = vip * upq + viq * uqq
    return np.real(np.diag(a)).copy(), v, -1


@njit(cache=True)
def jacobi_svd(a, tol, max_sweeps):
    """Singular values by one-sided Jacobi: orthogonalize column pairs.

    Destroys ``a``. Returns unsorted singular values (the column norms at
    convergence), or first entry -1.0 if some pair still violates the
    relative orthogonality criterion |<a_p, a_q>| <= tol * |a_p| |a_q|
    after ``max_sweeps``. Never forms a^H a, so small singular values
    keep full absolute accuracy.
    """
    n = a.shape[1]
    rows = a.shape[0]
    # columns annihilated down to rounding junk have garbage mutual
    # overlaps that never converge; deflate anything whose norm falls
    # below tol times the largest column norm
    scale_sq = 0.0
    for p in range(n):
        norm_sq = 0.0
        for i in range(rows):
            norm_sq += (a[i, p].real ** 2 + a[i, p].imag ** 2)
        if norm_sq > scale_sq:
            scale_sq = norm_sq
    floor_sq = scale_sq * tol * tol
    for sweep in range(max_sweeps + 1):
        worst = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                gpp = 0.0
                gqq = 0.0
                gpq = 0.0 + 0.0j
                for i in range(rows):
                    gpp += (a[i, p].real ** 2 + a[i, p].imag ** 2)
                    gqq += (a[i, q].real ** 2 + a[i, q].imag ** 2)
                    gpq += np.conj(a[i, p]) * a[i, q]
                if gpp <= floor_sq or gqq <= floor_sq:
                    continue
                r = abs(gpq)
                denom = np.sqrt(gpp * gqq)
                if r <= tol * denom:
                    continue
                rel = r / denom
                if rel > worst:
                    worst = rel
                phase = gpq / r
                tau = (gqq - gpp) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                upp = c + 0.0j
                upq = s + 0.0j
                uqp = -np.conj(phase) * s
                uqq = np.conj(phase) * c
                for i in range(rows):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = aip * upp + aiq * uqp
                    a[i, q] = aip * upq + aiq * uqq
        if worst == 0.0:
            out = np.empty(n)
            for p in range(n):
                norm_sq = 0.0
                for i in range(rows):
                    norm_sq += (a[i, p].real ** 2 + a[i, p].imag ** 2)
                out[p] = np.sqrt(norm_sq)
            return out
    out = np.empty(n)
    out[0] = -1.0
    return out


@njit(cache=True)
def sum_singular_values(m):
    """Trace norm via one-sided Jacobi; -1.0 on non-convergence."""
    sv = jacobi_svd(m.copy(), 1e-14, 100)
    if sv[0] < 0.0:
        return -1.0
    total = 0.0
    for i in range(sv.shape[0]):
        total += sv[i]
    return total


@njit(cache=True)
def filtered_block_norms(blocks, inner):
    """Trace norms of the six key blocks scaled by diag(inner) on both sides.

    ``blocks`` has shape (6, 4, 4); entry k is scaled to
    ``diag(inner) @ blocks[k] @ diag(inner)`` before taking the norm.
    Returns a length-6 vector, or first entry -1.0 on eigensolver failure.
    """
    out = np.empty(6)
    sb = np.empty((4, 4), dtype=np.complex128)
    for k in range(6):
        for i in range(4):
            for j in range(4):
                sb[i, j] = inner[i] * blocks[k, i, j] * inner[j]
        tn = sum_singular_values(sb)
        if tn < 0.0:
            out[0] = -1.0
            return out
        out[k] = tn
    return out
